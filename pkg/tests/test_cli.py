import json
import subprocess

import pytest

from rispace import jsonio
from rispace.cli import main, parse_schedule


def run_cli(*argv):
    return main(list(argv))


# ---------------------------------------------------------------------------
# schedule parsing
# ---------------------------------------------------------------------------


def test_parse_schedule():
    assert parse_schedule("dyadic:3") == (1, 2, 4, 8)
    assert parse_schedule("1,3,9") == (1, 3, 9)
    for bad in ("3,1", "0,2", "1,1", "dyadic:-1", "fred"):
        with pytest.raises(Exception):
            parse_schedule(bad)


# ---------------------------------------------------------------------------
# run-example
# ---------------------------------------------------------------------------


def test_run_example_writes_reports(tmp_path, capsys):
    rc = run_cli("run-example", "counterex-l1", "--out", str(tmp_path))
    out = capsys.readouterr().out
    assert rc == 0
    assert "verdict: pass" in out
    csv_text = (tmp_path / "counterex-l1.csv").read_text()
    assert csv_text.splitlines()[0].startswith("n,")
    report = json.loads((tmp_path / "counterex-l1.json").read_text())
    assert report["columns"][0] == "n"
    verdict = json.loads((tmp_path / "counterex-l1-verdict.json").read_text())
    assert verdict["verdict"] == "pass"
    assert all(c["passed"] for c in verdict["checks"])


def test_run_example_format_selection(tmp_path):
    run_cli("run-example", "shift-n", "--out", str(tmp_path), "--format", "csv")
    assert (tmp_path / "shift-n.csv").exists()
    assert not (tmp_path / "shift-n.json").exists()
    assert (tmp_path / "shift-n-verdict.json").exists()  # verdict always written


def test_run_example_reruns_are_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run_cli("run-example", "permutation-demo", "--out", str(a))
    run_cli("run-example", "permutation-demo", "--out", str(b))
    for name in ("permutation-demo.csv", "permutation-demo.json", "permutation-demo-verdict.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_run_example_unknown_id(tmp_path, capsys):
    rc = run_cli("run-example", "nope", "--out", str(tmp_path))
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_run_example_schedule_flag(tmp_path):
    run_cli("run-example", "shift-z", "--out", str(tmp_path), "--schedule", "1,2,4")
    report = json.loads((tmp_path / "shift-z.json").read_text())
    assert [row[0] for row in report["rows"]] == [1, 2, 4]


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_passes(tmp_path, capsys):
    rc = run_cli("verify", "--trials", "10", "--out", str(tmp_path))
    out = capsys.readouterr().out
    assert rc == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert lines and all(l.startswith("PASS") for l in lines)
    assert not (tmp_path / "verify-failures.json").exists()


def test_verify_inject_failure(tmp_path, capsys):
    rc = run_cli("verify", "--trials", "10", "--inject-failure", "--out", str(tmp_path))
    out = capsys.readouterr().out
    assert rc == 1
    assert any(l.startswith("FAIL injected-violation") for l in out.splitlines())
    failures = json.loads((tmp_path / "verify-failures.json").read_text())
    assert failures["counterexamples"]
    assert failures["seed"] == 42


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

HALFLINE_FN = {
    "space": {"kind": "lebesgue_halfline"},
    "breakpoints": [0, 1, 2],
    "values": [1, 3],
    "right_tail": 0,
}


def _eval(tmp_path, capsys, payload, *argv):
    src = tmp_path / "in.json"
    src.write_text(jsonio.dumps(payload))
    rc = run_cli("eval", *argv, "--in", str(src))
    out = capsys.readouterr().out
    return rc, (json.loads(out) if rc == 0 else out)


def test_eval_rearrange(tmp_path, capsys):
    rc, got = _eval(tmp_path, capsys, {"function": HALFLINE_FN}, "rearrange")
    assert rc == 0
    assert got["values"] == [3, 1] and got["breakpoints"] == [0, 1, 2]


def test_eval_norm(tmp_path, capsys):
    payload = {
        "spec": {"kind": "lp", "space": {"kind": "lebesgue_halfline"}, "p": 1},
        "function": HALFLINE_FN,
    }
    rc, got = _eval(tmp_path, capsys, payload, "norm")
    assert rc == 0 and got == {"value": 4}


def test_eval_norm_infinite_p(tmp_path, capsys):
    payload = {
        "spec": {"kind": "lp", "space": {"kind": "lebesgue_halfline"}, "p": "inf"},
        "function": HALFLINE_FN,
    }
    rc, got = _eval(tmp_path, capsys, payload, "norm")
    assert rc == 0 and got == {"value": 3}


def test_eval_xi(tmp_path, capsys):
    payload = {
        "weight": {
            "space": {"kind": "lebesgue_halfline"},
            "breakpoints": [0, 1],
            "values": [1],
            "right_tail": 0,
        },
        "function": HALFLINE_FN,
    }
    rc, got = _eval(tmp_path, capsys, payload, "xi")
    assert rc == 0 and got == {"value": 3}


def test_eval_apply_and_cesaro(tmp_path, capsys):
    sym = {
        "space": {"kind": "atomic_z", "atom_mass": 1},
        "table": [],
        "shift": 1,
    }
    fn = {"space": {"kind": "atomic_z", "atom_mass": 1}, "entries": [[0, 1]]}
    rc, got = _eval(tmp_path, capsys, {"symbol": sym, "function": fn}, "apply")
    assert rc == 0 and got["entries"] == [[-1, 1]]
    rc, got = _eval(tmp_path, capsys, {"symbol": sym, "function": fn, "n": 2}, "cesaro")
    assert rc == 0 and got["entries"] == [[-1, 0.5], [0, 0.5]]


def test_eval_maximal(tmp_path, capsys):
    sym = {"space": {"kind": "atomic_z", "atom_mass": 1}, "table": [], "shift": 1}
    fn = {"space": {"kind": "atomic_z", "atom_mass": 1}, "entries": [[0, 1]]}
    rc, got = _eval(tmp_path, capsys, {"symbol": sym, "function": fn, "K": 4}, "maximal")
    assert rc == 0
    assert got["entries"] == [[-3, 0.25], [-2, "1/3"], [-1, 0.5], [0, 1]]


def test_eval_analyze_symbol(tmp_path, capsys):
    sym = {
        "space": {"kind": "lebesgue_interval", "length": 1},
        "branches": [{"lo": 0, "hi": 1, "form": {"kind": "power_on_unit", "n": 2}}],
    }
    rc, got = _eval(tmp_path, capsys, {"symbol": sym}, "analyze-symbol")
    assert rc == 0
    assert got["measure_bound"] == "inf"
    assert got["lower_bound"] == 2
    assert got["condition_I1"] is False
    assert got["power_certified"] is False


def test_eval_errors(tmp_path, capsys):
    # invalid json
    src = tmp_path / "bad.json"
    src.write_text("not json")
    assert run_cli("eval", "norm", "--in", str(src)) == 2
    capsys.readouterr()
    # missing field
    rc, err = _eval(tmp_path, capsys, {"function": HALFLINE_FN}, "norm")
    assert rc == 2
    # schema violation: breakpoints holding a non-number string
    bad = dict(HALFLINE_FN, breakpoints=[0, "one", 2])
    rc, err = _eval(tmp_path, capsys, {"function": bad}, "rearrange")
    assert rc == 2
    # cesaro needs n >= 1
    sym = {"space": {"kind": "atomic_z", "atom_mass": 1}, "table": [], "shift": 1}
    fn = {"space": {"kind": "atomic_z", "atom_mass": 1}, "entries": [[0, 1]]}
    rc, err = _eval(tmp_path, capsys, {"symbol": sym, "function": fn, "n": 0}, "cesaro")
    assert rc == 2


def test_eval_out_file_is_written_atomically(tmp_path, capsys):
    src = tmp_path / "in.json"
    src.write_text(jsonio.dumps({"function": HALFLINE_FN}))
    dst = tmp_path / "sub" / "out.json"
    rc = run_cli("eval", "rearrange", "--in", str(src), "--out", str(dst))
    assert rc == 0
    assert json.loads(dst.read_text())["values"] == [3, 1]
    leftovers = [p for p in dst.parent.iterdir() if p.name.startswith(".tmp-")]
    assert not leftovers


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        run_cli("frobnicate")
    assert exc.value.code == 2


def test_console_script_is_installed():
    out = subprocess.run(["rispace", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "run-example" in out.stdout and "verify" in out.stdout and "eval" in out.stdout
