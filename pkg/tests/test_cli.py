import io
import json
import subprocess
import sys

import jsonschema
import pytest
from conftest import CORPUS

from lnd.cli import CERTIFICATE_SCHEMA, main

NONRIGID = str(CORPUS / "triangular_nonrigid.lnd")
PLANE = str(CORPUS / "plane_rank2.lnd")
FIVE = str(CORPUS / "five_dim_rank3.lnd")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--json")
    obj = json.loads(out)
    jsonschema.validate(obj, CERTIFICATE_SCHEMA)
    assert json.loads(json.dumps(obj)) == obj
    return code, obj


def test_rigid_pair_refutes_with_certificate():
    code, out, _ = run("rigid-pair", NONRIGID, "--tuple", "t1", "--tuple", "t2", "--rank", "2")
    assert code == 1 and out == "NonRigidityCertificate: T' not in Q[X][T]\n"
    code, obj = run_json("rigid-pair", NONRIGID, "--tuple", "t1", "--tuple", "t2", "--rank", "2")
    assert code == 1 and obj["verdict"] == "refuted"
    assert obj["certificate"]["element"] == "T'"
    assert obj["certificate"]["element_expanded"] == "-Y^2 + 2*X*Z + T"
    assert obj["certificate"]["subalgebra"] == "Q[X][T]"


def test_rigid_pair_consistent_and_gamma_failure():
    code, out, _ = run("rigid-pair", NONRIGID, "--tuple", "t1", "--tuple", "(T + X, Y, Z)", "--rank", "2")
    assert code == 0 and out.startswith("consistent")
    code, out, _ = run("rigid-pair", NONRIGID, "--tuple", "t1", "--tuple", "(Y, T, Z)", "--rank", "2")
    assert code == 1 and "not in Gamma_D" in out


def test_apply_prints_zero():
    assert run("apply", NONRIGID, "--poly", "T - Y^2 + 2*X*Z") == (0, "0\n", "")


def test_lnd_check():
    code, out, _ = run("lnd-check", FIVE)
    assert code == 0 and out == "witnesses X:1 S:2 T:3 U:4 V:2\n"
    code, out, _ = run("lnd-check", FIVE, "--cap", "3")
    assert code == 2 and out.startswith("unknown")
    code, obj = run_json("lnd-check", FIVE)
    assert obj["certificate"]["witnesses"] == {"X": 1, "S": 2, "T": 3, "U": 4, "V": 2}
    assert obj["budgets"]["nilpotency_cap"] == 256


def test_exp():
    code, out, _ = run("exp", PLANE, "--poly", "X")
    assert code == 0 and out == "Y -> X^2 + Y\nZ -> 1/2*X^3 + X*Y + Z\n"
    code, out, _ = run("exp", PLANE, "--poly", "Z")
    assert code == 1 and out == "not in ker D: D(Z) = Y\n"


def test_coords_gamma_rank():
    assert run("coords-check", NONRIGID, "--tuple", "t2")[0] == 0
    assert run("coords-check", NONRIGID, "--tuple", "(T, X*Y, Z)")[0] == 1
    assert run("gamma-check", FIVE, "--tuple", "c", "--rank", "3")[0] == 0
    code, out, _ = run("gamma-check", FIVE, "--tuple", "std", "--rank", "3")
    assert code == 1 and "entry 2" in out
    assert run("rank-bound", FIVE, "--tuple", "c") == (0, "rank D <= 3\n", "")
    assert run("rank-bound", FIVE, "--tuple", "(X, S^2, T, U, V)")[0] == 1


def test_irreducible_gcd_member():
    assert run("irreducible", FIVE)[0] == 0
    assert run("gcd", PLANE, "--poly", "X^2*Y", "--poly", "X*Y*Z") == (0, "X*Y\n", "")
    code, out, _ = run("member", NONRIGID, "--poly", "T", "--tuple", "t2")
    assert code == 0 and out.splitlines()[0] == "member of Q[X][T',Y,Z]"
    code, out, _ = run("member", NONRIGID, "--poly", "T", "--tuple", "(T', Z)")
    assert code == 1 and out == "T not in Q[X][T',Z]\n"


def test_kernel_commands():
    code, out, _ = run("kernel-basis", PLANE, "--degree", "2")
    assert code == 0 and out == "dimension 4 (degree <= 2)\n1\nX\nX^2\nY^2 - 2*X*Z\n"
    code, obj = run_json("kernel-rounds", PLANE)
    assert code == 0 and obj["certificate"]["generators"] == ["Y^2 - 2*X*Z"]
    assert obj["budgets"] == {"max_steps": 100000, "nilpotency_cap": 256, "oracle_degree": 6,
                              "rounds": 6, "slice_cap": 3}
    code, out, _ = run("kernel-rounds", FIVE)
    assert code == 2 and out.startswith("not stabilized")


def test_budget_exhaustion_is_unknown():
    code, obj = run_json("coords-check", NONRIGID, "--tuple", "t2", "--max-steps", "0")
    assert code == 2 and obj["verdict"] == "unknown"
    assert obj["certificate"]["error"] == "ResourceError"


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["apply"],
    ["apply", "/nonexistent.lnd", "--poly", "X"],
    ["apply", NONRIGID, "--poly", "W"],
    ["apply", NONRIGID],
    ["rigid-pair", NONRIGID, "--tuple", "t1", "--rank", "2"],
    ["rigid-pair", NONRIGID, "--tuple", "t1", "--tuple", "t2"],
    ["gamma-check", NONRIGID, "--tuple", "t1", "--rank", "7"],
    ["apply", NONRIGID, "--poly", "X", "--rank", "two"],
    ["apply", NONRIGID, "--der", "E", "--poly", "X"],
])
def test_usage_errors_exit_3(argv):
    code, out, err = run(*argv)
    assert code == 3 and out == "" and err


def test_verify_corpus_is_byte_stable():
    code1, out1, _ = run("verify-corpus")
    code2, out2, _ = run("verify-corpus")
    assert code1 == code2 == 0 and out1 == out2
    assert out1.endswith("38/38 expectations passed\n")
    code, obj = run_json("verify-corpus")
    assert code == 0 and all(o["passed"] for o in obj["certificate"]["outcomes"])


def test_verify_corpus_failure_exit_code(tmp_path):
    bad = tmp_path / "bad.lnd"
    bad.write_text("ring Q[Y,Z]\nder D: Z -> Y\nexpect apply D Z => 0 [trivial]\n")
    code, out, _ = run("verify-corpus", str(bad))
    assert code == 1 and out.startswith("FAIL")


def test_console_entry_point_process():
    proc = subprocess.run([sys.executable, "-m", "lnd.cli", "apply", NONRIGID, "--poly", "T'"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "0\n"
