import json
import subprocess
import sys
from fractions import Fraction

import pytest

from twoec.cli import main
from twoec.formats import format_costs, format_graph
from twoec.instances import named_cubic, triangle_expansion, two_triangles


@pytest.fixture
def files(tmp_path):
    k4 = named_cubic("K4")
    prism = named_cubic("prism")
    tt = two_triangles()
    paths = {
        "k4": tmp_path / "k4.graph",
        "prism": tmp_path / "prism.graph",
        "prism_ht": tmp_path / "prism_ht.graph",
        "unit": tmp_path / "unit.costs",
        "c4": tmp_path / "c4.graph",
        "big": tmp_path / "big.graph",
    }
    paths["k4"].write_text(format_graph(k4))
    paths["prism"].write_text(format_graph(prism))
    paths["prism_ht"].write_text(format_graph(tt.graph, tt.value))
    paths["unit"].write_text(format_costs(prism, {e: Fraction(1) for e in prism.edge_ids}))
    paths["c4"].write_text("4 4\n0 1 1\n1 2 1\n2 3 1\n0 3 1\n")
    big = triangle_expansion(named_cubic("cube"))
    paths["big"].write_text(format_graph(big.graph, big.value))
    return {k: str(v) for k, v in paths.items()}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decompose_p_k4(files, tmp_path, capsys):
    out = tmp_path / "k4.cert"
    code, _, _ = run(capsys, "decompose", "--mode", "P", files["k4"], "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert len(doc["terms"]) == 4 and doc["target_kind"] == "P"
    assert doc["manifest"]["command"] == "decompose" and "timing" not in doc["manifest"]
    assert run(capsys, "verify", str(out))[0] == 0


def test_decompose_sixfifth_and_q(files, tmp_path, capsys):
    for mode in ("sixfifth", "Q"):
        out = tmp_path / f"{mode}.cert"
        assert run(capsys, "decompose", "--mode", mode, files["prism_ht"], "--out", str(out))[0] == 0
        code, text, _ = run(capsys, "verify", str(out))
        assert code == 0 and text.startswith("accepted")


def test_decompose_to_stdout(files, capsys):
    code, text, err = run(capsys, "decompose", "--mode", "P", files["prism"])
    assert code == 0 and json.loads(text)["target_kind"] == "P"
    assert "terms" in err


def test_non_cubic_input_exit_3(files, capsys):
    assert run(capsys, "decompose", "--mode", "P", files["c4"])[0] == 3


def test_not_half_triangle_exit_3(files, capsys):
    assert run(capsys, "decompose", "--mode", "sixfifth", files["k4"])[0] == 3


def test_parse_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("3 5\n0 1 1\n")
    assert run(capsys, "decompose", "--mode", "P", str(bad))[0] == 2
    assert run(capsys, "decompose", "--mode", "P", str(tmp_path / "missing"))[0] == 2


def test_size_cap_exit_4(files, capsys):
    assert run(capsys, "decompose", "--mode", "sixfifth", files["big"], "--size-cap", "6")[0] == 4
    assert run(capsys, "oracle", "opt", files["big"], "--unit")[0] == 4


def test_verify_corrupted_and_truncated(files, tmp_path, capsys):
    out = tmp_path / "k4.cert"
    run(capsys, "decompose", "--mode", "P", files["k4"], "--out", str(out))
    text = out.read_text()
    corrupted = tmp_path / "corrupt.cert"
    corrupted.write_text(text.replace('"multiplier":"2/5"', '"multiplier":"1/4"'))
    code, report, _ = run(capsys, "verify", str(corrupted))
    assert code == 1 and "multiplier-sum" in report.splitlines()[0]
    truncated = tmp_path / "trunc.cert"
    truncated.write_text(text[: len(text) // 2])
    assert run(capsys, "verify", str(truncated))[0] == 2


def test_oracle_opt(files, capsys):
    code, text, _ = run(capsys, "oracle", "opt", files["prism"], files["unit"])
    assert code == 0 and text.splitlines()[0] == "6"


def test_oracle_ratio(files, capsys):
    code, text, _ = run(capsys, "oracle", "ratio", files["prism_ht"], files["unit"])
    fields = dict(line.split("\t", 1) for line in text.splitlines())
    assert code == 0
    # computed at run time: c.x = 6 and OPT = 6 on this instance
    assert fields["lp_value"] == "6" and fields["opt"] == "6" and fields["ratio"] == "1"


def test_oracle_feas(files, capsys):
    code, text, _ = run(capsys, "oracle", "feas", files["k4"], "--target", "4/5")
    assert code == 0 and text.splitlines()[0] == "feasible"
    code, text, _ = run(capsys, "oracle", "feas", files["c4"], "--target", "4/5")
    assert code == 0 and text.splitlines()[0] == "infeasible"
    code, text, _ = run(capsys, "oracle", "feas", files["prism_ht"], "--kind", "Q")
    assert text.splitlines()[0] == "feasible"


def test_generate_flags_and_config(tmp_path, capsys):
    code, text, _ = run(capsys, "generate", "--kind", "triangle-expansion", "--base", "K4", "--path-lengths", "1,2")
    assert code == 0 and text.startswith("# triangle-expansion")
    cfg = tmp_path / "spec.cfg"
    cfg.write_text("kind = chained-gadgets\nk = 2\n")
    out = tmp_path / "g.graph"
    assert run(capsys, "generate", "--config", str(cfg), "--out", str(out))[0] == 0
    assert run(capsys, "decompose", "--mode", "sixfifth", str(out))[0] == 0
    cfg.write_text("kind = chained-gadgets\nwidth = 2\n")
    assert run(capsys, "generate", "--config", str(cfg))[0] == 2


def test_decompose_is_byte_identical(files, capsys):
    first = run(capsys, "decompose", "--mode", "sixfifth", files["prism_ht"])[1]
    second = run(capsys, "decompose", "--mode", "sixfifth", files["prism_ht"])[1]
    assert first == second


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "twoec", "oracle", "opt", files["prism"], "--unit"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines()[0] == "6"
