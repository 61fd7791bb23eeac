"""CLI behavior and byte-exact golden outputs.

Regenerate goldens after an intentional output change with
``python tests/test_cli.py --regen`` and review the diff.
"""
import json
import subprocess
import sys
from pathlib import Path

import pytest

from cgftools.cgf_core import RationalForm
from cgftools.cli import capture, parse_spec
from cgftools.families import Partition
from cgftools.polyring import IntPoly

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "check_poly": ["check", "--poly", "1,1,3,4,6,6,8,6,6,4,3,1,1"],
    "check_ratform_negative": ["check", "--ratform", "4,4,15/2,3,5"],
    "check_ratform_ok": ["check", "--ratform", "6,5/3,2"],
    "check_not_polynomial": ["check", "--ratform", "5/2"],
    "check_residue": ["check", "--poly", "1,2"],
    "forms_cyclo": ["forms", "--cyclo", "3,4"],
    "coeffs_csv": ["coeffs", "--ratform", "6,5/3,2", "--format", "csv"],
    "coeffs_k": ["coeffs", "--ratform", "6,5,5,4/3,2,2,1", "--k", "6"],
    "cumulants_text": ["cumulants", "--ratform", "6,5,5,4/3,2,2,1", "--max-d", "6", "--format", "text"],
    "moments_central": ["moments", "--ratform", "2/1", "--central", "--format", "csv"],
    "charfun_csv": ["charfun", "--poly", "1,1", "--t", "0,1.5", "--standardized", "--format", "csv"],
    "diagnose": ["diagnose", "--ratform", "6,5,5,4/3,2,2,1"],
    "scan_macmahon": ["scan", "--family", "macmahon", "--grid", "2,2,2;4,4,4;8,8,8", "--format", "csv"],
    "family_qbinomial": ["family", "qbinomial", "4,2"],
    "family_hook": ["family", "hook", "3,1"],
    "oracle_plane": ["oracle", "plane_partitions", "3,2,2"],
    "enumerate_plus_bfile": ["enumerate", "--class", "plus", "--max-degree", "18", "--format", "bfile"],
    "enumerate_plus_list": ["enumerate", "--class", "plus", "--min-degree", "2", "--max-degree", "2", "--list"],
    "generators_pm_bfile": ["generators", "--class", "pm", "--max-degree", "20", "--format", "bfile"],
    "conjecture_nongale": ["conjecture", "nongale_count", "--max-degree", "12", "--format", "bfile"],
    "graphpath": ["graphpath", "--denom", "2,3", "--from", "2,3", "--to", "6,5"],
}


def render(argv):
    code, out = capture(argv)
    return f"exit {code}\n{out}"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    assert render(CASES[name]) == (GOLDEN / f"{name}.txt").read_text()


def test_documented_examples():
    code, out = capture(CASES["check_poly"])
    assert code == 0 and json.loads(out)["indices"] == [4, 5, 5, 6]
    code, out = capture(CASES["check_ratform_negative"])
    assert code == 2 and json.loads(out)["reason"] == "NotNonnegative"
    code, out = capture(CASES["enumerate_plus_bfile"])
    assert code == 0
    assert [int(line.split()[1]) for line in out.splitlines()] == [
        1, 3, 4, 10, 12, 27, 33, 68, 82, 154, 189, 350, 417, 728, 874, 1492, 1767, 2937]


def test_usage_errors_exit_1():
    assert capture(["bogus"])[0] == 1
    assert capture(["check"])[0] == 1
    assert capture(["check", "--poly", "1,x"])[0] == 1
    assert capture(["cumulants", "--ratform", "6,5/3,2", "--format", "bfile"])[0] == 1


def test_bfile_stable_across_threads():
    a = capture(["enumerate", "--class", "gale", "--max-degree", "12", "--format", "bfile"])
    b = capture(["enumerate", "--class", "gale", "--max-degree", "12", "--format", "bfile", "--threads", "2"])
    assert a == b


def test_parse_spec():
    assert parse_spec("6,5,5,4/3,2,2,1") == RationalForm((6, 5, 5, 4), (3, 2, 2, 1))
    assert parse_spec("1,1,3,4") == IntPoly((1, 1, 3, 4))
    assert parse_spec("4,2,1", partition=True) == Partition((4, 2, 1))
    for s in ("6,5,5,4/3,2,2,1", "1,1,3,4"):
        obj = parse_spec(s)
        assert parse_spec(obj.to_text()) == obj
    with pytest.raises(ValueError, match="position"):
        parse_spec("1,2/3,y")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cgftools", "check", "--ratform", "1,6/2,3"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and '"NotNonnegative"' in proc.stdout and proc.stderr == ""


if __name__ == "__main__" and "--regen" in sys.argv:
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        (GOLDEN / f"{name}.txt").write_text(render(argv))
