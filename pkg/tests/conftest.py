from __future__ import annotations

import pytest

import suite


@pytest.fixture(scope="session")
def certificates():
    """Every certificate of the instance suite, built once per session."""
    return dict(suite.all_certificates())


@pytest.fixture(scope="session")
def sixfifth_certificates(certificates):
    return {k: v for k, v in certificates.items() if k.startswith("sixfifth-")}
