"""End-to-end tests of the command-line tool, run as a subprocess."""

import csv
import io
import json
import subprocess
import sys

import pytest


def run(*args):
    return subprocess.run(
        [sys.executable, "-m", "isoresidual", *args], capture_output=True, text=True, timeout=300
    )


def run_json(*args):
    proc = run(*args)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


def test_profile_report_shape():
    doc = run_json("profile", "--mu", "1,1,-2,-1,-1")
    assert list(doc) == ["command", "stratum", "result", "version"]
    res = doc["result"]
    assert res["fiber_signature"] == [2, 2, -1, -1, -2, -2]
    assert (res["num_components"], res["genus_per_component"]) == (1, 0)
    assert res["zeros"] == [
        {"order": 2, "multiplicity": 2, "residue": {"vector": [0, 0, 0], "expression": "0"}, "sources": ["zero-merge"]}
    ]


def test_profile_two_pole_counterexample():
    res = run_json("profile", "--mu", "3,3,-1,-7")["result"]
    assert [p["order"] for p in res["poles"]] == [4, 4]
    assert {p["residue"]["expression"] for p in res["poles"]} == {"l1", "l2"}  # l2 = -l1
    assert res["genus_per_component"] == 0
    pred = res["predicates"]
    assert pred["all_even_from_profile"] and not pred["all_even"]
    assert not pred["pattern_matches_profile"] and "note" in pred


def test_profile_two_three():
    res = run_json("profile", "--mu", "2,3,-1,-2,-4")["result"]
    assert res["degree"] == 0 and res["genus_per_component"] == 1
    assert sum(p["multiplicity"] for p in res["poles"]) == 10


def test_profile_csv():
    proc = run("profile", "--mu", "3,3,-1,-7", "--format", "csv")
    rows = list(csv.reader(io.StringIO(proc.stdout)))
    assert rows[0] == ["kind", "order", "multiplicity", "residue", "sources"]
    assert len(rows) == 4


def test_xi_three_ways():
    res = run_json("xi", "--a1", "4", "--a2", "4", "--b", "6,2,2")["result"]
    assert res["closed_form"] == res["oracle"] == 2
    assert res["recursion"] == [2, 2, 2] and res["all_equal"]


def test_components():
    assert run_json("components", "--mu", "3,3,-6,-1,-1")["result"]["num_components"] == 3


def test_chamber():
    res = run_json("chamber", "--mu", "3,16,-7,-7,-7")["result"]
    assert res["num_walls"] == 38 and res["in_one_chamber"] and res["leading_form"] == -136


def test_graphs(tmp_path):
    out = tmp_path / "g.dot"
    res = run_json("graphs", "--mu", "1,1,-1,-1,-1,-1", "--positive-pole", "1", "--dot-out", str(out))["result"]
    assert res["zero_graphs"] == 2 and res["components"] == 1
    assert res["endpoint_closure_violations"] == 0
    text = out.read_text()
    assert text.count("digraph") == res["zero_graphs"] + res["saddle_graphs"]


@pytest.mark.parametrize(
    "args, code",
    [
        (("profile", "--mu", "1,1,-3"), 1),
        (("profile", "--mu", "1,x"), 1),
        (("profile",), 1),
        (("frobnicate",), 1),
        (("profile", "--mu", "1,1,-4"), 1),
        (("xi", "--a1", "1", "--a2", "1", "--b", "3"), 1),
        (("graphs", "--mu", "1,1,-2,-1,-1", "--positive-pole", "4"), 1),
        (("graphs", "--mu", "4,4,-8,-1,-1"), 3),
        (("scan", "--max-poles", "6"), 3),
    ],
)
def test_exit_codes(args, code):
    proc = run(*args)
    assert proc.returncode == code
    assert proc.stderr.strip().count("\n") == 0  # one-line diagnostic


def test_verify_empty_range():
    proc = run("verify", "--max-order", "1")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)["result"]
    assert doc["total_checks"] == 0 and doc["note"].startswith("0 checks")


def test_verify_small_range_passes():
    doc = run_json("verify", "--max-order", "7")["result"]
    assert doc["ok"] and doc["total_checks"] > 0


def test_verify_fault_injection():
    proc = run("verify", "--max-order", "6", "--corrupt-xi")
    assert proc.returncode == 2
    doc = json.loads(proc.stdout)["result"]
    assert doc["counterexample"]["identity"] == "xi closed form = coefficient oracle"
    assert "xi closed form" in proc.stderr


def test_scan_rows():
    proc = run("scan", "--max-order", "8")
    assert proc.returncode == 0
    rows = list(csv.DictReader(io.StringIO(proc.stdout)))
    assert rows and all(int(r["degree"]) % 2 == 0 for r in rows)
    keys = [tuple(int(x) for x in r["mu"].split(",")) for r in rows]
    assert keys == sorted(keys)
    by_mu = {r["mu"]: r for r in rows}
    for a in (2, 3):
        assert int(by_mu[f"{a},{a},-{2 * a},-1,-1"]["chi"]) == 2 * a


def test_scan_json_matches_csv():
    rows = list(csv.DictReader(io.StringIO(run("scan", "--max-order", "6").stdout)))
    doc = run_json("scan", "--max-order", "6", "--format", "json")["result"]
    assert [r["mu"] for r in rows] == [d["mu"] for d in doc]
