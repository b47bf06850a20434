"""Command-line interface.

Three subcommands:

* ``run-example ID`` — execute a pinned example, write its report (CSV and
  JSON) plus a verdict file into ``--out``, print one line per check, and
  exit 0/1 with the verdict.
* ``verify`` — run the randomized property suite, print one line per
  property, and write minimized counterexamples to a JSON file on failure.
* ``eval CMD`` — evaluate one operation on a JSON input document (``--in``
  or stdin), validating the document against the shipped schemas first.

Outputs are deterministic: fixed seeds, sorted JSON keys, shortest
round-trip number formatting, and ``inf`` for infinities.  Exit codes:
0 success, 1 a verdict or property failed, 2 usage or schema error,
3 internal error.
"""

from __future__ import annotations

import argparse
import functools
import json
import os
import sys
import tempfile
from importlib.resources import files

import jsonschema

from . import jsonio
from .ergodic import apply, cesaro, maximal_truncated
from .examples import DEFAULT_SEED, EXAMPLE_IDS, run_example
from .num import json_real
from .properties import verify_suite
from .rearrange import rearrangement
from .spaces import norm_eval, xi_seminorm
from .symbols import check_condition_I


class UsageError(Exception):
    """Bad input from the user: malformed JSON, schema violation, bad flags."""


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def parse_schedule(text: str) -> tuple[int, ...]:
    """Comma-separated indices, or ``dyadic:k`` for 1, 2, 4, ..., 2^k."""
    if text.startswith("dyadic:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad dyadic schedule {text!r}") from None
        if k < 0:
            raise UsageError("dyadic exponent must be >= 0")
        return tuple(2**j for j in range(k + 1))
    try:
        sched = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"bad schedule {text!r}") from None
    if not sched or any(n < 1 for n in sched) or any(
        a >= b for a, b in zip(sched, sched[1:])
    ):
        raise UsageError("schedule must be strictly increasing positive integers")
    return sched


def _write_text(path: str, text: str) -> None:
    """Atomic write: the file either holds the old content or the new."""
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-rispace-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


@functools.lru_cache(maxsize=None)
def _schema(name: str) -> dict:
    return json.loads(
        files("rispace.schemas").joinpath(f"{name}.schema.json").read_text()
    )


def _validated(obj: dict, field: str, schema: str, decode) -> object:
    if field not in obj:
        raise UsageError(f"input is missing the {field!r} field")
    try:
        jsonschema.validate(obj[field], _schema(schema))
    except jsonschema.ValidationError as e:
        raise UsageError(f"{field} does not match the {schema} schema: {e.message}") from None
    return decode(obj[field])


def _int_field(obj: dict, field: str) -> int:
    if field not in obj:
        raise UsageError(f"input is missing the {field!r} field")
    value = obj[field]
    if isinstance(value, bool) or not isinstance(value, int):
        raise UsageError(f"{field} must be an integer")
    return value


# ---------------------------------------------------------------------------
# run-example
# ---------------------------------------------------------------------------


def _cmd_run_example(args) -> int:
    if args.example_id not in EXAMPLE_IDS:
        raise UsageError(
            f"unknown example {args.example_id!r}; choose from: {', '.join(EXAMPLE_IDS)}"
        )
    schedule = parse_schedule(args.schedule) if args.schedule else None
    result = run_example(
        args.example_id,
        seed=args.seed,
        trials=args.trials,
        horizon=args.horizon,
        schedule=schedule,
    )
    out = args.out
    if args.format in ("csv", "both"):
        _write_text(os.path.join(out, f"{result.example_id}.csv"), result.report.to_csv())
    if args.format in ("json", "both"):
        _write_text(os.path.join(out, f"{result.example_id}.json"), result.report.to_json())
    verdict_obj = {
        "example": result.example_id,
        "verdict": "pass" if result.verdict else "fail",
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in result.checks
        ],
    }
    _write_text(
        os.path.join(out, f"{result.example_id}-verdict.json"), jsonio.dumps(verdict_obj)
    )
    for c in result.checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    print(f"verdict: {'pass' if result.verdict else 'fail'}")
    return 0 if result.verdict else 1


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    suite = verify_suite(
        seed=args.seed, trials=args.trials, inject_failure=args.inject_failure
    )
    for r in suite.results:
        print(r.line())
    if not suite.ok:
        payload = {
            "seed": suite.seed,
            "trials": suite.trials,
            "counterexamples": [r.counterexample for r in suite.failed],
        }
        path = os.path.join(args.out, "verify-failures.json")
        _write_text(path, jsonio.dumps(payload))
        print(f"counterexamples written to {path}")
        return 1
    return 0


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def _eval_rearrange(obj):
    f = _validated(obj, "function", "measfn", jsonio.measfn_from_obj)
    return jsonio.measfn_to_obj(rearrangement(f))


def _eval_norm(obj):
    spec = _validated(obj, "spec", "normspec", jsonio.normspec_from_obj)
    f = _validated(obj, "function", "measfn", jsonio.measfn_from_obj)
    return {"value": json_real(norm_eval(spec, f))}


def _eval_xi(obj):
    if "weight" not in obj:
        raise UsageError("input is missing the 'weight' field")
    try:
        jsonschema.validate({"weight": obj["weight"]}, _schema("xiweight"))
    except jsonschema.ValidationError as e:
        raise UsageError(f"weight does not match the xiweight schema: {e.message}") from None
    w = jsonio.xiweight_from_obj({"weight": obj["weight"]})
    f = _validated(obj, "function", "measfn", jsonio.measfn_from_obj)
    return {"value": json_real(xi_seminorm(w, f))}


def _eval_apply(obj):
    sym = _validated(obj, "symbol", "symbol", jsonio.symbol_from_obj)
    f = _validated(obj, "function", "measfn", jsonio.measfn_from_obj)
    return jsonio.measfn_to_obj(apply(sym, f))


def _eval_cesaro(obj):
    sym = _validated(obj, "symbol", "symbol", jsonio.symbol_from_obj)
    f = _validated(obj, "function", "measfn", jsonio.measfn_from_obj)
    n = _int_field(obj, "n")
    if n < 1:
        raise UsageError("n must be >= 1")
    return jsonio.measfn_to_obj(cesaro(sym, f, n))


def _eval_maximal(obj):
    sym = _validated(obj, "symbol", "symbol", jsonio.symbol_from_obj)
    f = _validated(obj, "function", "measfn", jsonio.measfn_from_obj)
    k = _int_field(obj, "K")
    if k < 1:
        raise UsageError("K must be >= 1")
    return jsonio.measfn_to_obj(maximal_truncated(sym, f, k))


def _make_eval_analyze(horizon: int):
    def _eval_analyze(obj):
        sym = _validated(obj, "symbol", "symbol", jsonio.symbol_from_obj)
        h = obj.get("horizon", horizon)
        if isinstance(h, bool) or not isinstance(h, int) or h < 1:
            raise UsageError("horizon must be a positive integer")
        return jsonio.analysis_to_obj(check_condition_I(sym, h))

    return _eval_analyze


def _cmd_eval(args) -> int:
    if args.infile:
        with open(args.infile) as handle:
            text = handle.read()
    else:
        text = sys.stdin.read()
    try:
        obj = jsonio.loads(text)
    except (json.JSONDecodeError, ValueError) as e:
        raise UsageError(f"input is not valid JSON: {e}") from None
    if not isinstance(obj, dict):
        raise UsageError("input must be a JSON object")
    handlers = {
        "rearrange": _eval_rearrange,
        "norm": _eval_norm,
        "xi": _eval_xi,
        "apply": _eval_apply,
        "cesaro": _eval_cesaro,
        "maximal": _eval_maximal,
        "analyze-symbol": _make_eval_analyze(args.horizon),
    }
    try:
        result = handlers[args.operation](obj)
    except UsageError:
        raise
    except (ValueError, KeyError) as e:
        raise UsageError(str(e)) from None
    text = jsonio.dumps(result)
    if args.outfile:
        _write_text(args.outfile, text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rispace",
        description="Exact rearrangements, function-space norms, and ergodic averages.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run-example", help="run a pinned example and check it")
    runp.add_argument("example_id", metavar="ID", help=f"one of: {', '.join(EXAMPLE_IDS)}")
    runp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    runp.add_argument("--trials", type=int, default=50)
    runp.add_argument("--horizon", type=int, default=5)
    runp.add_argument("--schedule", help="comma-separated indices or dyadic:k")
    runp.add_argument("--out", default=".", help="directory for report and verdict files")
    runp.add_argument("--format", choices=("csv", "json", "both"), default="both")
    runp.set_defaults(func=_cmd_run_example)

    verp = sub.add_parser("verify", help="run the randomized property suite")
    verp.add_argument("--seed", type=int, default=42)
    verp.add_argument("--trials", type=int, default=500)
    verp.add_argument("--out", default=".", help="directory for counterexample files")
    verp.add_argument(
        "--inject-failure",
        action="store_true",
        help="include a deliberately broken property (self-test of the reporting path)",
    )
    verp.set_defaults(func=_cmd_verify)

    evp = sub.add_parser("eval", help="evaluate one operation on a JSON document")
    evp.add_argument(
        "operation",
        choices=(
            "rearrange", "norm", "xi", "apply", "cesaro", "maximal", "analyze-symbol"
        ),
    )
    evp.add_argument("--in", dest="infile", help="input file (default: stdin)")
    evp.add_argument("--out", dest="outfile", help="output file (default: stdout)")
    evp.add_argument("--horizon", type=int, default=5, help="horizon for analyze-symbol")
    evp.set_defaults(func=_cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0
    except Exception as e:  # pragma: no cover - defensive
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
