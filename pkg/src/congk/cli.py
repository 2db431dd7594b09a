"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 resource budget, 4 internal
consistency failure.  Output is deterministic: identical invocations give
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import signal
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

from . import __version__
from .congmon import (
    CongruenceMonoidSpec,
    Modulus,
    is_class_field_galois_heuristic,
    minus_one_in_M,
    ray_class_group,
    roots_of_unity_in_M,
)
from .errors import BudgetExceeded, CongKError, ConsistencyError, InputError
from .ktheory import (
    boundary_rational_ktheory,
    ktheory,
    ktheory_real_quadratic_plus,
    summand_structure,
)
from .quadfield import (
    MAX_ABS_D,
    FieldSpec,
    class_group,
    fundamental_unit,
    is_squarefree,
    narrow_class_group,
    rational_ideal,
    totally_positive_fundamental_unit,
)
from .reconstruct import build_profile, distinguish
from .specio import load_spec, spec_to_json

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 2, 3, 4
MAX_SCAN_ROWS = 2000


# ---------------------------------------------------------------------------
# helpers


@contextmanager
def _budget():
    """Honour CM_BUDGET_MS as a soft wall-clock cap."""
    raw = os.environ.get("CM_BUDGET_MS")
    if not raw or not hasattr(signal, "setitimer"):
        yield
        return
    try:
        ms = int(raw)
    except ValueError:
        raise InputError("CM_BUDGET_MS must be an integer number of milliseconds") from None
    if ms <= 0:
        raise InputError("CM_BUDGET_MS must be positive")

    def handler(signum, frame):
        raise BudgetExceeded(f"time budget of {ms} ms exceeded")

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, ms / 1000)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _elem(a) -> dict:
    return {"x": a[0], "y": a[1]}


def _try(fn):
    try:
        return fn()
    except (BudgetExceeded, ConsistencyError):
        raise
    except CongKError as exc:
        return {"error": type(exc).__name__, "message": str(exc)}


# ---------------------------------------------------------------------------
# commands


def cmd_invariants(spec: CongruenceMonoidSpec, prime_bound: int, norm_bound: int) -> dict:
    rc = ray_class_group(spec)
    mu, m = roots_of_unity_in_M(spec)
    K = ktheory(spec)
    prof = build_profile(spec, norm_bound)
    out = {
        "spec": spec_to_json(spec),
        "m": m,
        "minus_one_in_M": minus_one_in_M(spec),
        "class_group": rc.group.to_json(),
        "U": rc.U.to_json(),
        "class_number": rc.cl_order,
        "k_theory": K.to_json() if K is not None else None,
        "summands": [
            {"class": list(s.cls), "ideal": list(s.ideal), "value": s.value.to_json() if s.value else None, "symbol": s.symbol}
            for s in summand_structure(spec)
        ],
        "profile": {
            "bound": norm_bound,
            "threshold": prof.threshold,
            "columns": ["p", "index", "N", "f", "o"],
            "rows": [[r.prime.p, r.prime.index, r.norm, r.f, r.torsion_order if not r.skipped else "SKIPPED"] for r in prof.records],
        },
        "boundary": {side: _try(lambda side=side: boundary_rational_ktheory(spec, side).to_json()) for side in ("LEFT", "RIGHT")},
        "galois": _try(lambda: is_class_field_galois_heuristic(spec, min(norm_bound, prime_bound)).to_json()),
    }
    return out


def cmd_compare(a: CongruenceMonoidSpec, b: CongruenceMonoidSpec, prime_bound: int) -> dict:
    rep = distinguish(a, b, prime_bound)
    out = rep.to_json()
    if rep.levels:
        out["summary"] = "DISTINGUISHED at " + ", ".join(rep.levels)
    else:
        out["summary"] = "consistent at all levels"
    out["specs"] = [spec_to_json(a), spec_to_json(b)]
    return out


SCAN_COLUMNS = ["key", "h_plus", "trace_eps", "k1_torsion", "C_order"]


def _scan_real(d: int) -> list | None:
    if not is_squarefree(d):
        return None
    rq = ktheory_real_quadratic_plus(d)
    tors = "x".join(str(t) for t in rq.kgroup.k1.torsion_factors)
    return [d, rq.narrow_class_number, rq.trace, tors, rq.narrow_class_number]


def _scan_rational(args) -> list:
    m0, places = args
    F = FieldSpec.rational()
    spec = CongruenceMonoidSpec(F, Modulus(rational_ideal(F, m0), places))
    K = ktheory(spec)
    tors = "x".join(str(t) for t in K.k1.torsion_factors) if K is not None else ""
    return [m0, "", "", tors, ray_class_group(spec).order]


def cmd_scan(family: str, lo: int, hi: int, jobs: int, infinite: bool) -> list[list]:
    if hi - lo + 1 > MAX_SCAN_ROWS:
        raise BudgetExceeded(f"scan range has {hi - lo + 1} values; the limit is {MAX_SCAN_ROWS}")
    if family == "real-quadratic-plus":
        if hi > MAX_ABS_D:
            raise BudgetExceeded(f"d must stay below {MAX_ABS_D}")
        keys = list(range(max(lo, 2), hi + 1))
        fn = _scan_real
    elif family == "rational-moduli":
        if lo < 1:
            raise InputError("rational-moduli scan starts at m0 = 1")
        keys = [(m0, ("w0",) if infinite else ()) for m0 in range(lo, hi + 1)]
        fn = _scan_rational
    else:
        raise InputError(f"unknown scan family {family!r}")
    if jobs > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(fn, keys))
    else:
        rows = [fn(k) for k in keys]
    return [r for r in rows if r is not None]


def cmd_pell(d: int) -> dict:
    F = FieldSpec.quadratic(d)
    if not F.is_real:
        raise InputError("d must be > 1 for the Pell equation")
    e0 = fundamental_unit(F)
    pd = totally_positive_fundamental_unit(F)
    u, v, w = F.to_sqrt_d(pd.eps)
    return {
        "d": d,
        "t": pd.t,
        "u": pd.u,
        "eps": _elem(pd.eps),
        "eps_sqrt_d": {"u": u, "v": v, "w": w},
        "trace": F.trace(pd.eps),
        "fundamental_unit": _elem(e0),
        "fundamental_unit_norm": F.norm(e0),
    }


def cmd_classgroup(d: int) -> dict:
    F = FieldSpec.quadratic(d)
    wide, _ = class_group(F)
    out = {"d": d, "wide": wide.to_json(), "h": wide.torsion_order}
    if F.is_real:
        narrow, _ = narrow_class_group(F)
        out["narrow"] = narrow.to_json()
        out["h_plus"] = narrow.torsion_order
    return out


def cmd_boundary(spec: CongruenceMonoidSpec, sides, search_bound: int, window: int) -> dict:
    return {
        "spec": spec_to_json(spec),
        "results": {s: _try(lambda s=s: boundary_rational_ktheory(spec, s, search_bound, window).to_json()) for s in sides},
    }


# ---------------------------------------------------------------------------
# argument parsing and output


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime-bound", type=_positive, default=10**4, help="prime bound for comparisons (default 10000)")
    common.add_argument("--norm-bound", type=_positive, default=100, help="norm bound for tables and heuristics (default 100)")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=["json", "csv"], default=None, help="output format")

    p = argparse.ArgumentParser(prog="congk", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"congk {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", parents=[common], help="class group, K-theory, prime table, boundary, Galois check")
    s.add_argument("spec")
    s = sub.add_parser("compare", parents=[common], help="run every distinguishing invariant on two specs")
    s.add_argument("spec_a")
    s.add_argument("spec_b")
    s = sub.add_parser("scan", parents=[common], help="tabulate a family")
    s.add_argument("family", choices=["real-quadratic-plus", "rational-moduli"])
    s.add_argument("--from", dest="lo", type=_integer, required=True)
    s.add_argument("--to", dest="hi", type=_integer, required=True)
    s.add_argument("--infinite", action="store_true", help="rational-moduli: include the real place")
    s = sub.add_parser("pell", parents=[common], help="fundamental and totally positive units")
    s.add_argument("d", type=_integer)
    s = sub.add_parser("classgroup", parents=[common], help="wide and narrow class groups")
    s.add_argument("d", type=_integer)
    s = sub.add_parser("boundary", parents=[common], help="rational K-theory of the boundary quotients")
    s.add_argument("spec")
    s.add_argument("--side", choices=["LEFT", "RIGHT", "both"], default="both")
    s.add_argument("--search-bound", type=_positive, default=50)
    s.add_argument("--window", type=_positive, default=4)
    return p


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv_text(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _flat_rows(obj: dict) -> tuple[list, list]:
    """Two-column CSV view of a JSON report."""
    rows = []

    def walk(prefix, v):
        if isinstance(v, dict):
            for k, x in v.items():
                walk(f"{prefix}.{k}" if prefix else k, x)
        else:
            rows.append([prefix, json.dumps(v, ensure_ascii=False)])

    walk("", obj)
    return ["field", "value"], rows


def run(args) -> str:
    cmd = args.command
    if cmd == "scan":
        rows = cmd_scan(args.family, args.lo, args.hi, args.jobs, args.infinite)
        if args.format == "json":
            return _json_text([dict(zip(SCAN_COLUMNS, r)) for r in rows])
        return _csv_text(SCAN_COLUMNS, rows)
    if cmd == "invariants":
        out = cmd_invariants(load_spec(args.spec), args.prime_bound, args.norm_bound)
        if args.format == "csv":
            return _csv_text(out["profile"]["columns"], out["profile"]["rows"])
        return _json_text(out)
    if cmd == "compare":
        out = cmd_compare(load_spec(args.spec_a), load_spec(args.spec_b), args.prime_bound)
        if args.format == "csv":
            cols = ["invariant", "verdict", "witness", "bound"]
            rows = [[e["invariant"], e["verdict"], json.dumps(e["witness"]), e["bound"]] for e in out["invariants"]]
            return _csv_text(cols, rows)
        return _json_text(out)
    if cmd == "pell":
        out = cmd_pell(args.d)
    elif cmd == "classgroup":
        out = cmd_classgroup(args.d)
    else:
        sides = ("LEFT", "RIGHT") if args.side == "both" else (args.side,)
        out = cmd_boundary(load_spec(args.spec), sides, args.search_bound, args.window)
    if args.format == "csv":
        return _csv_text(*_flat_rows(out))
    return _json_text(out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with _budget():
            text = run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConsistencyError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CongKError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
