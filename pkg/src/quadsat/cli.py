"""Command line entry point: ``quadsat <subcommand> ...``.

Exit status is 0 on success, 1 when a check or verification fails and 2 for
bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import bounds as bd
from .codes import (
    DegenerateSetError,
    SizeLimitError,
    covering_radius_le3,
    min_distance,
    parity_check_from_set,
)
from .estimator import GreedySaturator
from .field import FieldError, build_field, field_of_order, prime_power
from .geometry import ProjectiveSpace3
from .quadric import EllipticQuadric
from .saturator import ConstructionStall, verify_2saturating
from .setfile import SetFileError, format_set, read_set

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
THREADS_ENV = "QUADSAT_THREADS"

SWEEP_COLUMNS = ["q", "nA", "nA_norm", "nB", "nB_norm", "nC", "nC_norm", "nknw", "nknw_norm", "ratio_knw_A"]
TABLE1_COLUMNS = ["k", "ceilW", "nC_norm", "nknw_norm", "ratio"]

log = logging.getLogger("quadsat")


class UsageError(Exception):
    pass


def _fmt(x, digits=4):
    if x is None or x == "":
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{x:.{digits}f}"


def _write_rows(rows, columns, csv_path=None, json_path=None, out=None):
    """Human table on stdout; optional CSV/JSON files ("-" means stdout)."""
    out = out or sys.stdout
    if csv_path:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: _fmt(r.get(c)) if not isinstance(r.get(c), str) else r[c] for c in columns})
        if csv_path == "-":
            out.write(buf.getvalue())
            return
        with open(csv_path, "w", newline="") as fh:
            fh.write(buf.getvalue())
    if json_path:
        payload = json.dumps(rows, indent=2, default=lambda o: int(o) if isinstance(o, np.integer) else str(o))
        if json_path == "-":
            out.write(payload + "\n")
            return
        with open(json_path, "w") as fh:
            fh.write(payload + "\n")
    widths = {c: max(len(c), *(len(_fmt(r.get(c)) if not isinstance(r.get(c), str) else r[c]) for r in rows)) for c in columns} if rows else {}
    out.write("  ".join(c.rjust(widths.get(c, len(c))) for c in columns) + "\n")
    for r in rows:
        cells = [(_fmt(r.get(c)) if not isinstance(r.get(c), str) else r[c]).rjust(widths[c]) for c in columns]
        out.write("  ".join(cells) + "\n")


def _require_prime_power(q: int) -> None:
    if prime_power(q) is None:
        raise UsageError(f"q={q} is not a prime power")


def _warn_not_prime_power(qs) -> None:
    bad = [q for q in qs if prime_power(int(q)) is None]
    if bad:
        log.warning("%d of %d q values are not prime powers; formulas evaluated anyway", len(bad), len(qs))


# --- subcommands ----------------------------------------------------------------

def cmd_field_info(args) -> int:
    if args.q is not None:
        F = field_of_order(args.q)
    else:
        F = build_field(args.p, args.h)
    print(F.header())
    print(f"generator {F.generator}")
    if args.tables:
        print("log   " + " ".join(str(int(F._log[a])) if a else "-" for a in range(F.q)))
        print("inv   " + " ".join(str(F.inv(a)) if a else "-" for a in range(F.q)))
    return EXIT_OK


def cmd_quadric_check(args) -> int:
    _require_prime_power(args.q)
    space = ProjectiveSpace3(field_of_order(args.q))
    Q = EllipticQuadric(space)
    q = args.q
    sizes = Q.section_sizes()
    checks = {
        "points == q^2+1": len(Q) == q * q + 1,
        "sections in {1, q+1}": set(np.unique(sizes).tolist()) <= {1, q + 1},
        "no external planes": bool((sizes > 0).all()),
        "tangent planes == q^2+1": int((sizes == 1).sum()) == q * q + 1,
        "secant planes == q(q^2+1)": int((sizes == q + 1).sum()) == q * (q * q + 1),
    }
    print(space.F.header())
    print(Q.header())
    ok = True
    for name, passed in checks.items():
        print(f"{'PASS' if passed else 'FAIL'}  {name}")
        ok &= passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_saturate(args) -> int:
    _require_prime_power(args.q)
    strategy = args.strategy
    est = GreedySaturator(
        q=args.q, strategy=strategy, seed=args.seed, pool_size=args.pool, delta_method=args.delta_method
    )
    try:
        est.fit()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except ConstructionStall as exc:
        print(f"construction stalled: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = format_set(est.quadric_, est.saturating_set_)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    A = est.bound_a_
    print(f"q {args.q} strategy {est._config().strategy} seed {args.seed} n {est.n_} nA {A.n}")
    print(f"{'w':>4} {'point':>8} {'delta':>8} {'#U':>10} {'boundA#U':>10}")
    print(f"{3:>4} {'':>8} {'':>8} {est.trace_.initial_uncovered:>10} {A.trajectory[0]:>10}")
    for s in est.trace_.steps:
        cap = "" if s.bound_a_cap is None else s.bound_a_cap
        tag = " final" if s.final else ""
        print(f"{s.w + 1:>4} {s.point:>8} {s.delta:>8} {s.uncovered_after:>10} {cap:>10}{tag}")
    ok = est.verify() and est.n_ <= A.n
    print("verified 2-saturating" if est.verify() else "VERIFICATION FAILED")
    if args.json:
        payload = {
            "q": args.q,
            "n": est.n_,
            "nA": A.n,
            "points": est.saturating_set_.tolist(),
            "trace": [s.__dict__ for s in est.trace_.steps],
        }
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        sf = read_set(args.path)
        Q = sf.quadric()
    except (SetFileError, FieldError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    res = verify_2saturating(Q.space, sf.points)
    on_q = all(Q.member[p] for p in sf.points)
    print(f"{sf.field.header()}\nn {len(sf.points)}  on quadric {on_q}")
    if res.ok:
        print("2-saturating: yes")
        return EXIT_OK
    wit = " ".join(str(int(x)) for x in Q.space.points[res.witness])
    print(f"2-saturating: no ({res.n_uncovered} uncovered; first: {wit})")
    return EXIT_FAIL


def sample_qs(q_from: int, q_to: int, samples: int) -> list[int]:
    if q_to < q_from or q_from < 2:
        raise UsageError("empty or invalid q range")
    if samples < 1:
        raise UsageError("samples must be >= 1")
    raw = np.geomspace(q_from, q_to, samples)
    qs = np.unique(np.clip(np.rint(raw).astype(np.int64), q_from, q_to))
    return [int(x) for x in qs]


def sweep_row(q: int, which=("A", "B", "C", "knw"), k: float = bd.K_MAX) -> dict:
    """One CSV row; cells outside a bound's validity region stay empty."""
    row = {c: "" for c in SWEEP_COLUMNS}
    row["q"] = q
    norm = bd.cbrt_qlnq(q)
    nA = None
    if "A" in which or "ratio" in which:
        nA = bd.bound_a(q).n
        if "A" in which:
            row["nA"], row["nA_norm"] = nA, nA / norm
    if "B" in which and q >= bd.Q0:
        b = bd.bound_b(q)
        if b.applicable:
            row["nB"], row["nB_norm"] = b.n, b.n / norm
    if "C" in which:
        sol = bd.solve_W(k)
        if sol.usable and q >= sol.ceil_w:
            c = bd.bound_c(k, q, check_region=False)
            row["nC"], row["nC_norm"] = c.value, c.normalized
    if q >= bd.KNOWN_Q_FLOOR and ("knw" in which or "ratio" in which):
        kb = bd.known_bound(q)
        if "knw" in which:
            row["nknw"], row["nknw_norm"] = kb.value, kb.normalized
        if nA is not None and "ratio" in which:
            row["ratio_knw_A"] = kb.value / nA
    return row


def _sweep_worker(arg):
    q, which, k = arg
    return sweep_row(q, which, k)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def cmd_bounds_sweep(args) -> int:
    which = tuple(x.strip() for x in args.bounds.split(",") if x.strip())
    unknown = set(which) - {"A", "B", "C", "knw", "ratio", "compare"}
    if unknown:
        raise UsageError(f"unknown bounds: {sorted(unknown)}")
    if "compare" in which:
        which = tuple(set(which) - {"compare"}) + ("A", "knw", "ratio")
    qs = sample_qs(args.q_from, args.q_to, args.samples)
    _warn_not_prime_power(qs)
    work = [(q, which, args.k) for q in qs]
    n = _threads()
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as ex:
            rows = list(ex.map(_sweep_worker, work))
    else:
        rows = [_sweep_worker(w) for w in work]
    _write_rows(rows, SWEEP_COLUMNS, args.csv, args.json)
    return EXIT_OK


def table1_rows() -> list[dict]:
    rows = []
    for r in bd.table1():
        rows.append(
            {
                "k": f"{r.k:g}",
                "ceilW": r.ceil_w if r.usable else f"{r.ceil_w} (<V)",
                "nC_norm": r.nc_norm,
                "nknw_norm": r.nknw_norm,
                "ratio": r.ratio,
            }
        )
    return rows


def cmd_table1(args) -> int:
    _write_rows(table1_rows(), TABLE1_COLUMNS, args.csv, args.json)
    return EXIT_OK


def cmd_solve_wk(args) -> int:
    try:
        sol = bd.solve_W(args.k)
    except bd.OutOfRegion as exc:
        raise UsageError(str(exc)) from exc
    flag = "usable" if sol.usable else f"below V={bd.V_THRESHOLD}, not usable"
    print(f"k {args.k:g} ceilW {sol.ceil_w} ({flag})")
    return EXIT_OK


def cmd_lift(args) -> int:
    q, r = args.q, args.r
    _warn_not_prime_power([q])
    try:
        if args.n0 is not None:
            n0 = args.n0
            src = "n0"
        else:
            src = args.bound
            if src == "A":
                n0 = bd.bound_a(q).n
            elif src == "B":
                n0 = bd.bound_b(q).n
                if n0 is None:
                    raise UsageError(f"Bound B not applicable at q={q}")
            elif src == "E":
                n0 = bd.bound_e(q).value
            elif src == "C":
                n0 = bd.bound_c(args.k, q).value
            elif src == "D":
                n0 = bd.bound_d(q, args.eps).value
            else:
                raise UsageError(f"unknown bound {src}")
        if src == "C":
            n = bd.lifted_bound_c(args.k, r, q)
        elif src == "D":
            n = bd.lifted_bound_d(args.eps, r, q)
        else:
            n = bd.lift_length(n0, r, q)
    except (bd.OutOfRegion, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    print(f"r {r} q {q} n0 {_fmt(n0)} ({src}) Delta {bd.delta_lift(r, q)} n {_fmt(n)}")
    print(f"normalized n / (q^((r-3)/3) (ln q)^(1/3)) = {n / bd.lift_normalizer(r, q):.4f}")
    if q >= bd.KNOWN_Q_FLOOR:
        kn = bd.known_lift(r, q)
        print(f"known lift {kn:.2f}  ratio known/new {kn / n:.4f}")
    return EXIT_OK


def cmd_compare(args) -> int:
    q = args.q
    _warn_not_prime_power([q])
    rep = bd.report(q, k=args.k, eps=args.eps)
    rows = []
    for name in ("A", "B", "C", "D", "E", "knw"):
        if name in rep.values:
            v, nv, valid = rep.values[name]
            rows.append({"bound": name, "n": v, "norm": nv, "valid": "yes" if valid else "no"})
    _write_rows(rows, ["bound", "n", "norm", "valid"], args.csv, args.json)
    if "knw" in rep.values and q >= bd.KNOWN_Q_FLOOR:
        print(f"ratio knw/A {rep.values['knw'][0] / rep.values['A'][0]:.4f}")
    return EXIT_OK


def cmd_code_check(args) -> int:
    try:
        sf = read_set(args.path)
        Q = sf.quadric()
        C = parity_check_from_set(Q.space, sf.points)
    except (SetFileError, FieldError, DegenerateSetError, ValueError) as exc:
        print(f"invalid set: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.dump_matrix:
        print(C.dump())
    print(f"[{C.n}, {C.n - 4}] code over GF({C.q}), rank 4")
    ok = True
    try:
        d = min_distance(C)
        print(f"d = {d}" if d is not None else "d >= 5")
    except SizeLimitError as exc:
        print(f"d: skipped ({exc})")
    try:
        r3 = covering_radius_le3(C)
        geo = verify_2saturating(Q.space, sf.points).ok
        print(f"R <= 3: {r3}  geometric 2-saturating: {geo}  agree: {r3 == geo}")
        ok = r3 and r3 == geo
    except SizeLimitError as exc:
        print(f"R: skipped ({exc})")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadsat", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("field-info", help="modulus and generator of GF(q)")
    s.add_argument("--q", type=int)
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--h", type=int, default=1)
    s.add_argument("--tables", action="store_true")
    s.set_defaults(func=cmd_field_info)

    s = sub.add_parser("quadric-check", help="check plane-section properties of the quadric")
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_quadric_check)

    s = sub.add_parser("saturate", help="greedy 2-saturating set on the quadric")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--strategy", default="greedy-max", help="greedy-max, randomized-greedy (rand) or fop")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--pool", type=int, default=50)
    s.add_argument("--delta-method", default="auto", choices=["auto", "plane", "pencil"])
    s.add_argument("--out", help="write the set file here")
    s.add_argument("--json", help="write n, points and trace as JSON")
    s.set_defaults(func=cmd_saturate)

    s = sub.add_parser("verify", help="verify a set file is 2-saturating")
    s.add_argument("path")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bounds-sweep", help="bounds over a log-spaced q grid")
    s.add_argument("--q-from", type=int, required=True)
    s.add_argument("--q-to", type=int, required=True)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--bounds", default="A,B,C,knw", help="comma list of A,B,C,knw,ratio,compare")
    s.add_argument("--k", type=float, default=bd.K_MAX)
    s.add_argument("--csv")
    s.add_argument("--json")
    s.set_defaults(func=cmd_bounds_sweep)

    s = sub.add_parser("table1", help="threshold table for Bound C")
    s.add_argument("--csv")
    s.add_argument("--json")
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("solve-wk", help="smallest integer q with F(k, q) >= 0")
    s.add_argument("--k", type=float, required=True)
    s.set_defaults(func=cmd_solve_wk)

    s = sub.add_parser("lift", help="lifted length for r = 3t+1")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n0", type=int)
    s.add_argument("--bound", default="A", choices=["A", "B", "C", "D", "E"])
    s.add_argument("--k", type=float, default=bd.K_MAX)
    s.add_argument("--eps", type=float, default=1e-3)
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("compare", help="all bounds at one q")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--k", type=float, default=bd.K_MAX)
    s.add_argument("--eps", type=float, default=1e-3)
    s.add_argument("--csv")
    s.add_argument("--json")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("code-check", help="parity-check matrix checks for a set file")
    s.add_argument("path")
    s.add_argument("--dump-matrix", action="store_true")
    s.set_defaults(func=cmd_code_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
