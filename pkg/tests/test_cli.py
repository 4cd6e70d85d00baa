"""Command-line surface: exit codes, JSON shapes, determinism, input
validation, and the golden-file override."""

import json
from fractions import Fraction

import pytest

from dp4 import serialize
from dp4.binforms import BinaryForm
from dp4.cli import main
from dp4.plane_quintic import pencil_fixture, quadrilateral_fixture

F = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out.strip() else None), err


def write_json(path, tree):
    path.write_text(serialize.dumps_canonical(tree))
    return str(path)


@pytest.fixture
def pencil_file(tmp_path):
    P = [["1" if i == j else "0" for j in range(5)] for i in range(5)]
    Q = [[str(i) if i == j else "0" for j in range(5)] for i in range(5)]
    return write_json(tmp_path / "pencil.json", {"type": "pencil", "P": P, "Q": Q})


@pytest.fixture
def quintic_file(tmp_path):
    f = BinaryForm.from_roots([0, 1, 2, 3, 4])
    return write_json(tmp_path / "quintic.json", serialize.encode_form(f))


def test_no_arguments_is_usage_error(capsys):
    code, _, _ = run(capsys)
    assert code == 2


def test_unknown_subcommand_is_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_pencil_analyze(capsys, pencil_file):
    code, tree, _ = run_json(capsys, "pencil", "analyze", "--input", pencil_file)
    assert code == 0
    assert tree["label"] == "smooth"
    assert len(tree["profile"]) == 5
    assert "moduli_point" in tree["quintic"]


def test_pencil_analyze_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "pencil", "analyze", "--input", str(tmp_path / "none.json"))
    assert code == 3
    assert err


def test_pencil_analyze_degenerate(capsys, tmp_path):
    zero = [["0"] * 5 for _ in range(5)]
    path = write_json(tmp_path / "zero.json", {"type": "pencil", "P": zero, "Q": zero})
    code, tree, _ = run_json(capsys, "pencil", "analyze", "--input", path)
    assert code == 1
    assert "error" in tree


def test_pencil_analyze_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "pencil", "analyze", "--input", str(path))
    assert code == 3


def test_quintic_invariants(capsys, quintic_file):
    code, tree, _ = run_json(capsys, "quintic", "invariants", "--input", quintic_file)
    assert code == 0
    assert set(tree) >= {"J4", "J8", "J12", "J18", "discriminant", "stability", "moduli_point"}
    assert tree["stability"] == "all-simple"


def test_quintic_invariants_wrong_degree(capsys, tmp_path):
    f = BinaryForm.from_roots([0, 1, 2])
    path = write_json(tmp_path / "cubic.json", serialize.encode_form(f))
    code, _, err = run(capsys, "quintic", "invariants", "--input", path)
    assert code == 3


def test_lines_report(capsys):
    code, tree, _ = run_json(capsys, "lines", "report")
    assert code == 0
    assert tree["group_order"] == 1920
    assert tree["matches_golden"] is True


def test_lines_report_golden_override(capsys, tmp_path, monkeypatch):
    bogus = tmp_path / "lines_golden.json"
    bogus.write_text(json.dumps({"group_order": 1}))
    monkeypatch.setenv("DP4_GOLDEN_DIR", str(tmp_path))
    code, tree, _ = run_json(capsys, "lines", "report")
    assert code == 1
    assert tree["matches_golden"] is False


def test_family_analyze_accepts_build_output(capsys, tmp_path):
    code, built, _ = run_json(capsys, "examples", "build", "h10_ci", "--seed", "1")
    assert code == 0
    path = write_json(tmp_path / "fam.json", built)
    code2, tree, _ = run_json(capsys, "family", "analyze", "--input", path)
    assert code2 == 0
    assert tree["height"] == 10
    assert tree["genus"] == 6
    assert tree["discriminant_degree"] == 20
    assert tree["g1_prime"] is True
    assert tree["spectral_class"]["alpha"] == 5


def test_family_analyze_bare_family(capsys, tmp_path):
    code, built, _ = run_json(capsys, "examples", "build", "h8_ci", "--seed", "1")
    path = write_json(tmp_path / "fam8.json", built["family"])
    code2, tree, _ = run_json(capsys, "family", "analyze", "--input", path)
    assert code2 == 0
    assert tree["height"] == 8
    assert tree["discriminant_degree"] == 16


def test_family_analyze_malformed(capsys, tmp_path):
    path = write_json(tmp_path / "bad.json", {"type": "family", "d": [0]})
    code, _, err = run(capsys, "family", "analyze", "--input", path)
    assert code == 3


def test_family_scan_heights(capsys):
    code, tree, _ = run_json(capsys, "family", "scan-heights", "--max", "12")
    assert code == 0
    rows = {entry["height"]: entry for entry in tree["heights"]}
    assert rows[2]["reduced"] == []
    assert rows[6]["irreducible"] == []
    assert len(rows[10]["irreducible"]) == 1
    assert rows[10]["irreducible"][0]["a"] == -3


def test_family_scan_heights_bad_max(capsys):
    code, _, _ = run(capsys, "family", "scan-heights", "--max", "999")
    assert code == 2


def test_classify_low_heights_empty(capsys):
    for h in ("0", "4", "6"):
        code, tree, _ = run_json(capsys, "classify", "--height", h)
        assert code == 0
        assert tree["label"] == "empty"


def test_classify_h8_orbits(capsys):
    code, tree, _ = run_json(capsys, "classify", "--height", "8", "--torsion", "1,2")
    assert code == 0
    assert tree["orbit_label"] == 1
    assert tree["label"] == "W-component-A"
    code, tree, _ = run_json(capsys, "classify", "--height", "8", "--torsion", "1,2,3,4")
    assert tree["label"] == "W-component-B"
    code, tree, _ = run_json(capsys, "classify", "--height", "8", "--torsion", "")
    assert tree["label"] == "S5-only"


def test_classify_h8_requires_torsion(capsys):
    code, _, _ = run(capsys, "classify", "--height", "8")
    assert code == 2


def test_classify_h8_odd_subset_rejected(capsys):
    code, _, err = run(capsys, "classify", "--height", "8", "--torsion", "1,2,3")
    assert code == 3


def test_classify_h10_parity_zero(capsys, tmp_path):
    fx = pencil_fixture()
    curve = write_json(tmp_path / "curve.json", serialize.encode_curve(fx.curve))
    plus, minus = fx.eta(0, 1)
    eta = write_json(tmp_path / "eta.json", {
        "plus": serialize.encode_divisor(plus),
        "minus": serialize.encode_divisor(minus),
    })
    code, tree, _ = run_json(
        capsys, "classify", "--height", "10", "--quintic", curve, "--eta", eta
    )
    assert code == 0
    assert tree["principal"] is False
    assert tree["theta_parity"] == 0
    assert tree["label"] == "W-component-A"


def test_classify_h10_parity_one(capsys, tmp_path):
    fx = quadrilateral_fixture()
    curve = write_json(tmp_path / "curve.json", serialize.encode_curve(fx.curve))
    plus, minus = fx.eta("12|34")
    eta = write_json(tmp_path / "eta.json", {
        "plus": serialize.encode_divisor(plus),
        "minus": serialize.encode_divisor(minus),
    })
    code, tree, _ = run_json(
        capsys, "classify", "--height", "10", "--quintic", curve, "--eta", eta
    )
    assert code == 0
    assert tree["theta_parity"] == 1
    assert tree["label"] == "W-component-B"


def test_classify_h10_trivial_class(capsys, tmp_path):
    fx = pencil_fixture()
    curve = write_json(tmp_path / "curve.json", serialize.encode_curve(fx.curve))
    eta = write_json(tmp_path / "eta.json", {"plus": [], "minus": []})
    code, tree, _ = run_json(
        capsys, "classify", "--height", "10", "--quintic", curve, "--eta", eta
    )
    assert code == 0
    assert tree["principal"] is True
    assert tree["label"] == "S5-only"


def test_classify_h10_non_torsion_rejected(capsys, tmp_path):
    fx = pencil_fixture()
    curve = write_json(tmp_path / "curve.json", serialize.encode_curve(fx.curve))
    (a1, b1), (a2, _) = fx.pairs[0], fx.pairs[1]
    eta = write_json(tmp_path / "eta.json", {
        "plus": serialize.encode_divisor([(a1, 1), (b1, 1)]),
        "minus": serialize.encode_divisor([(a2, 1), (fx.center, 1)]),
    })
    code, _, err = run(
        capsys, "classify", "--height", "10", "--quintic", curve, "--eta", eta
    )
    assert code == 3
    assert "not 2-torsion" in err


def test_classify_h10_requires_files(capsys):
    code, _, _ = run(capsys, "classify", "--height", "10")
    assert code == 2


def test_classify_h12_torsion_presence(capsys):
    code, tree, _ = run_json(capsys, "classify", "--height", "12", "--torsion", "1,2")
    assert code == 0
    assert tree["torsion_nonzero"] is True
    assert tree["label"] == "W-single"
    code, tree, _ = run_json(capsys, "classify", "--height", "12", "--torsion", "")
    assert tree["label"] == "S5-only"


def test_classify_odd_height_rejected(capsys):
    code, _, _ = run(capsys, "classify", "--height", "9")
    assert code == 3


def test_examples_build_deterministic(capsys):
    code1, out1, _ = run(capsys, "examples", "build", "h8_conic", "--seed", "2")
    code2, out2, _ = run(capsys, "examples", "build", "h8_conic", "--seed", "2")
    assert code1 == code2 == 0
    assert out1 == out2
    code3, out3, _ = run(capsys, "examples", "build", "h8_conic", "--seed", "3")
    assert out3 != out1


def test_examples_build_unknown_name(capsys):
    code, _, _ = run(capsys, "examples", "build", "h99_无", "--seed", "1")
    assert code == 2


def test_examples_build_conic_shape(capsys):
    code, tree, _ = run_json(capsys, "examples", "build", "h8_conic", "--seed", "1")
    assert code == 0
    assert tree["conic"]["type"] == "conic-bundle"
    # degree 5 along the fiber line, 2 along the base line
    assert tree["discriminant"]["bidegree"] == [5, 2]


def test_examples_verify_all(capsys):
    code, tree, _ = run_json(capsys, "examples", "verify-all", "--seeds", "1,2")
    assert code == 0
    assert len(tree["results"]) == 8
    assert all(item["ok"] for item in tree["results"])


def test_examples_verify_bad_seed_range(capsys):
    code, _, _ = run(capsys, "examples", "verify-all", "--seeds", "0..1000")
    assert code == 2


def test_verify_subset(capsys):
    code, tree, _ = run_json(
        capsys, "verify", "paper-checks", "--only", "height-bounds", "chern-identity",
        "--seed", "7",
    )
    assert code == 0
    names = [c["name"] for c in tree["checks"]]
    assert names == ["height-bounds", "chern-identity"]
    assert all(c["status"] == "pass" for c in tree["checks"])


def test_verify_unknown_check_rejected(capsys):
    code, _, _ = run(capsys, "verify", "paper-checks", "--only", "nonexistent")
    assert code == 2


def test_verify_byte_deterministic_without_timings(capsys):
    args = ("verify", "paper-checks", "--only", "height-bounds", "--seed", "7")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    assert "elapsed" not in out1


def test_verify_timings_flag(capsys):
    code, tree, _ = run_json(
        capsys, "verify", "paper-checks", "--only", "height-bounds", "--timings"
    )
    assert code == 0
    assert "elapsed" in tree["checks"][0]


def test_output_to_file(capsys, tmp_path, quintic_file):
    out = tmp_path / "result.json"
    code, stdout, _ = run(
        capsys, "quintic", "invariants", "--input", quintic_file, "--out", str(out)
    )
    assert code == 0
    assert stdout == ""
    tree = json.loads(out.read_text())
    assert tree["stability"] == "all-simple"


def test_text_format(capsys, quintic_file):
    code, out, _ = run(
        capsys, "quintic", "invariants", "--input", quintic_file, "--format", "text"
    )
    assert code == 0
    assert "stability: all-simple" in out


def test_data_commands_byte_deterministic(capsys):
    code1, out1, _ = run(capsys, "family", "scan-heights", "--max", "20")
    code2, out2, _ = run(capsys, "family", "scan-heights", "--max", "20")
    assert out1 == out2
    code3, out3, _ = run(capsys, "lines", "report")
    code4, out4, _ = run(capsys, "lines", "report")
    assert out3 == out4
