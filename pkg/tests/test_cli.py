import io
import json
import subprocess
import sys

from jacring import forms as FM
from jacring.cli import main
from jacring.siegel import gritsenko_lift


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_pretty(capsys):
    code, out, _ = run(capsys, "expand", "phi_0_1", "--prec", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "q^0: ζ^-1 + 10 + ζ"
    assert lines[2] == "q^1: 10ζ^-2 - 64ζ^-1 + 108 - 64ζ + 10ζ^2"


def test_expand_half_integral_exponents(capsys):
    code, out, _ = run(capsys, "expand", "phi_m1_half", "--prec", "1")
    assert code == 0 and "q^0: -ζ^(-1/2) + ζ^(1/2)" in out


def test_expand_json_round_trip_is_byte_identical(capsys, tmp_path):
    code, out, _ = run(capsys, "expand", "E4_2", "--prec", "5", "--format", "json")
    assert code == 0
    f = FM.JacobiForm.from_json(json.loads(out))
    again = json.dumps(f.to_json(), sort_keys=True, ensure_ascii=False)
    assert again == out.strip()
    poly = {"ring": "WEAK_EVEN_14", "terms": [{"exps": {"E4_2": 1}, "coeff": "1"}]}
    path = tmp_path / "p.json"
    path.write_text(json.dumps(poly))
    code, out2, _ = run(capsys, "expand", "--poly", str(path), "--prec", "5", "--format", "json")
    assert json.loads(out2)["terms"] == json.loads(out)["terms"]


def test_expand_mod(capsys):
    code, out, _ = run(capsys, "expand", "E4", "--prec", "3", "--mod", "7")
    assert "q^1: 2" in out and "q^2: 4" in out  # 240 = 2, 2160 = 4 mod 7


def test_unknown_generator_is_a_parse_error(capsys):
    code, _, err = run(capsys, "expand", "phi_7_7")
    assert code == 1 and json.loads(err)["error"] == "ParseError"
    code, _, err = run(capsys, "frobnicate")
    assert code == 1


def test_prec_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("JACRING_PREC", "3")
    code, out, _ = run(capsys, "expand", "Delta")
    assert out.strip().endswith("O(q^3)")
    monkeypatch.setenv("JACRING_PREC", "x")
    assert run(capsys, "expand", "Delta")[0] == 1


def test_decompose_psi01_from_stdin(capsys, monkeypatch):
    _, payload, _ = run(capsys, "expand", "psi_0_1", "--prec", "4", "--format", "json")
    code, out, _ = run(capsys, "decompose", "--ring", "wh0", stdin=payload, monkeypatch=monkeypatch)
    assert code == 0 and out.strip() == "-56*phi_0_1 + G4_1"


def test_decompose_failure_exit_code(capsys, monkeypatch):
    _, payload, _ = run(capsys, "expand", "E6_3", "--prec", "4", "--format", "json")
    code, _, err = run(capsys, "decompose", "--ring", "weak-even", stdin=payload, monkeypatch=monkeypatch)
    assert code == 2 and json.loads(err)["error"] == "NotInRing"


def test_bad_payload_exit_code(capsys, monkeypatch):
    code, _, err = run(capsys, "decompose", "--ring", "weak0", stdin="{not json", monkeypatch=monkeypatch)
    assert code == 1
    code, _, _ = run(capsys, "decompose", "--ring", "weak0", stdin='{"prec24": 24}', monkeypatch=monkeypatch)
    assert code == 1


def test_certify(capsys, monkeypatch):
    e41 = {"ring": "WEAK_EVEN_14", "terms": [{"exps": {"E4_1": 1}, "coeff": "1"}]}
    code, out, _ = run(capsys, "certify", stdin=json.dumps(e41), monkeypatch=monkeypatch)
    assert code == 0 and out.startswith("INTEGRAL")
    half = {"ring": "WEAK_EVEN_14", "terms": [{"exps": {"phi_0_1": 1}, "coeff": "1/2"}]}
    code, out, _ = run(capsys, "certify", "--format", "json", stdin=json.dumps(half), monkeypatch=monkeypatch)
    assert code == 2 and json.loads(out)["verdict"] == "NOT-INTEGRAL"


def test_lift_and_certify_siegel(capsys, monkeypatch, tmp_path):
    phi = FM.generator("Delta", 24 * 8) * FM.generator("phi_m2_1", 24 * 8)
    path = tmp_path / "phi.json"
    path.write_text(json.dumps(phi.to_json()))
    code, out, _ = run(capsys, "lift", str(path), "-M", "2", "--format", "json")
    assert code == 0
    ref = gritsenko_lift(phi, 2).to_json()
    assert json.loads(out) == json.loads(json.dumps(ref))
    code, out, _ = run(capsys, "certify-siegel", stdin=out, monkeypatch=monkeypatch)
    assert code == 0 and out.startswith("INTEGRAL")


def test_verify_relations(capsys):
    code, out, _ = run(capsys, "verify-relations", "--prec", "6", "--workers", "2")
    assert code == 0 and out.splitlines()[-1].startswith("38/38")


def test_psi_basis_json(capsys):
    code, out, _ = run(capsys, "psi-basis", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["basis"][1]["q0"] == [6, -4, 1]


def test_singular_and_realize(capsys, monkeypatch, tmp_path):
    _, payload, _ = run(capsys, "expand", "psi_0_2", "--prec", "2", "--format", "json")
    code, out, _ = run(capsys, "singular", "--format", "json", stdin=payload, monkeypatch=monkeypatch)
    data = json.loads(out)
    assert code == 0 and data["borcherds_weight"] == "12" and data["q0_identity_residual"] == "0"
    target = tmp_path / "out.txt"
    code, _, _ = run(capsys, "singular", "--realize", "--out", str(target),
                     stdin=json.dumps(data["singular"]), monkeypatch=monkeypatch)
    assert code == 0 and target.read_text().strip() == "-14*phi_0_1^2 + 216*phi_0_2 + G4_2"


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "jacring.cli", "expand", "j", "--prec", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "q^-1: 1" in r.stdout and "q^0: 744" in r.stdout
