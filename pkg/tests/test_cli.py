import json
import subprocess
import sys

import pytest

from wiring.cli import main

KM = "l=7: (3,5)(1,3)(5,6)(3,5)(5,7)(2,3)(3,5)(1,3)(5,6)"
NODAL = "l=3: (2,3)(1,2)(2,3)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def structured(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "structured")
    assert code == 0
    return json.loads(out)


def test_validate_exit_codes(capsys, tmp_path):
    f = tmp_path / "d.txt"
    f.write_text(f"# two diagrams\n{KM}\n{NODAL}\n")
    assert run(capsys, "validate", str(f))[0] == 0
    code, out, _ = run(capsys, "validate", "--diagram", "l=3: (1,2)(1,2)(2,3)")
    assert code == 1 and "cross twice" in out
    code, _, err = run(capsys, "validate", "--diagram", "l=3: (1,2)(2")
    assert code == 1 and "column" in err


def test_missing_input_is_usage_error(capsys):
    code, _, err = run(capsys, "canon")
    assert code == 1 and "input" in err


def test_signature_command(capsys):
    code, out, _ = run(capsys, "signature", "--diagram", KM)
    assert code == 0 and "[2^3 3^6]" in out
    doc = structured(capsys, "signature", "--signature", "2^13 3^3 4^1")
    assert doc["lines"] == 8 and doc["points"] == 17 and doc["fits"]
    assert run(capsys, "signature", "--signature", "2^3", "--ell", "4")[0] == 1


def test_canon_and_act(capsys):
    code, out, _ = run(capsys, "canon", "--diagram", "l=4: (3,4)(1,2)(2,3)(1,2)(3,4)(2,3)")
    assert out.strip() == "l=4: (1,2)(3,4)(2,3)(1,2)(3,4)(2,3)"
    code, out, _ = run(capsys, "act", "--diagram", "l=3: (1,2)(2,3)(1,2)", "--op", "sigma")
    assert out.strip() == "l=3: (2,3)(1,2)(2,3)"
    code, out, _ = run(capsys, "act", "--diagram", KM, "--op", "sigma", "--power", "6")
    assert out.strip() == KM
    doc = structured(capsys, "act", "--diagram", "l=5: (4,5)(2,4)(1,2)(4,5)(2,3)(3,4)(4,5)(2,3)", "--op", "mu")
    assert doc["results"][0]["canonical"] == "l=5: (3,4)(1,3)(3,4)(4,5)(3,4)(2,3)(1,2)(3,4)"


def test_act_rejects_invalid_diagram(capsys):
    assert run(capsys, "act", "--diagram", "l=3: (1,2)", "--op", "tau")[0] == 1


def test_pi1_projective_fingerprint(capsys):
    code, out, _ = run(capsys, "pi1", "--diagram", NODAL, "--space", "projective", "--fingerprint")
    assert code == 0 and out.startswith("Z^2 |")
    doc = structured(capsys, "pi1", "--diagram", NODAL, "--space", "projective", "--fingerprint")
    fp = doc["results"][0]["fingerprint"]
    assert fp["rank"] == 2 and fp["torsion"] == []
    code, out, _ = run(capsys, "pi1", "--diagram", NODAL)
    assert out.splitlines()[0] == "gens 3" and len(out.splitlines()) == 4


def test_pi1_targets_flag(capsys):
    doc = structured(capsys, "pi1", "--diagram", NODAL, "--fingerprint", "--targets", "S3,Q8")
    assert set(doc["results"][0]["fingerprint"]["hom_counts"]) == {"S3", "Q8"}
    assert run(capsys, "pi1", "--diagram", NODAL, "--fingerprint", "--targets", "A5")[0] == 1


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--diagram", KM, "--group", "sigma,tau")
    assert out.split()[0] == "12"
    doc = structured(capsys, "orbit", "--diagram", KM, "--group", "sigma", "--members")
    assert doc["results"][0]["size"] == 6 and len(doc["results"][0]["members"]) == 6


def test_lattice_and_render(capsys):
    code, out, _ = run(capsys, "lattice", "--diagram", NODAL)
    assert out.strip() == "{1,2}{1,3}{2,3}"
    code, out, _ = run(capsys, "render", "--diagram", NODAL)
    assert code == 0 and out.count("X") == 6


def test_text_and_structured_payloads_agree(capsys, tmp_path):
    cache = str(tmp_path)
    code, out, _ = run(capsys, "table", "--signature", "2^7 3^1", "--ell", "5", "--cache-dir", cache)
    doc = structured(capsys, "table", "--signature", "2^7 3^1", "--ell", "5", "--cache-dir", cache)
    rows = [ln.split() for ln in out.splitlines()[2:] if ln[:1] in "+-"]
    names = out.splitlines()[1].split()[4:]
    assert len(rows) == 16
    for row in rows:
        label = "".join(row[:4])
        for name, value in zip(names, row[4:]):
            assert doc["counts"][name][label] == int(value)
    code, out, _ = run(capsys, "classify", "--signature", "2^7 3^1", "--moves", "mu", "--cache-dir", cache)
    doc = structured(capsys, "classify", "--signature", "2^7 3^1", "--moves", "mu", "--cache-dir", cache)
    assert f": {doc['count']} of {doc['classes']} classes" in out


def test_enumerate_budget_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "enumerate", "--signature", "2^9 3^4", "--budget-time", "0.05", "--cache-dir", str(tmp_path))
    assert code == 2 and "budget" in err
    code, out, _ = run(capsys, "enumerate", "--signature", "2^9 3^4", "--cache-dir", str(tmp_path))
    assert code == 0 and "9534" in out


def test_classify_lattices(capsys, tmp_path):
    doc = structured(capsys, "classify", "--signature", "2^3 3^6", "--ell", "7", "--moves", "all",
                     "--lattices", "--cache-dir", str(tmp_path), "--targets", "S3,D4")
    assert doc["count"] == sum(len(b["classes"]) for b in doc["lattices"])


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "wiring.cli", "orbit", "--diagram", KM],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.split()[0] == "12"


def test_usage_error_from_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["act", "--diagram", NODAL])
    assert exc.value.code != 0
