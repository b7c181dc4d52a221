"""Command-line driver: verify named examples or ad-hoc matrices, print the
relation table, solve fibers, stratify ranks.  JSON is the single report
format; exit codes are 0 pass, 1 fail, 2 budget exhausted, 3 usage error.

Reports are byte-identical across runs with the same configuration and seed;
per-check timings are all zero unless --timings is given.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import RunConfig
from .detmap import build_map, fiber, polymatrix_from_json, rank_stratum
from .errors import ArityError, BudgetExceeded, CremonaError, ShapeError, UnknownId
from .fields import GF
from .gallery import (
    EXAMPLE_IDS,
    ExampleInstance,
    Manifest,
    build_example,
    default_matrix_manifest,
    verify_manifest,
)
from .poly import ProjPoint
from .relations import relation_table

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_BUDGET = 2
EXIT_USAGE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser():
    parser = _Parser(prog="cremona", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--prime", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--gb-pairs", type=int, default=None, dest="gb_pairs")
        p.add_argument("--enum-budget", type=int, default=None, dest="enum_budget")
        p.add_argument("--extension-bound", type=int, default=None, dest="extension_bound")
        p.add_argument("--output", type=str, default=None)
        p.add_argument("--timings", action="store_true")

    pv = sub.add_parser("verify", help="run an example manifest or a default matrix manifest")
    pv.add_argument("example", nargs="?", default=None)
    pv.add_argument("--matrix", type=str, default=None)
    add_common(pv)

    pr = sub.add_parser("relations", help="print the numerical relation table")
    pr.add_argument("--table", action="store_true")
    add_common(pr)

    pf = sub.add_parser("fiber", help="solve the fiber of a determinantal example at a point")
    pf.add_argument("example")
    pf.add_argument("--point", required=True)
    add_common(pf)

    ps = sub.add_parser("stratify", help="rank stratum of the flip matrix")
    ps.add_argument("example")
    ps.add_argument("--rank", type=int, required=True)
    add_common(ps)

    return parser


def _config(args):
    return RunConfig.from_env(
        prime=args.prime,
        seed=args.seed,
        trials=args.trials,
        gb_pair_budget=args.gb_pairs,
        enumeration_budget=args.enum_budget,
        extension_bound=args.extension_bound,
        output=args.output,
        timings=args.timings or None,
    )


def _emit(report, cfg):
    text = json.dumps(report, indent=2, sort_keys=True)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def _cmd_verify(args):
    cfg = _config(args)
    if (args.example is None) == (args.matrix is None):
        raise _UsageError("give exactly one of an example id or --matrix FILE")
    field = GF(cfg.prime)
    if args.matrix is not None:
        with open(args.matrix, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        A = polymatrix_from_json(data, field)
        mp = build_map(A)
        inst = ExampleInstance("adhoc_matrix", "DetMatrix", mp, field,
                               default_matrix_manifest(mp), cfg.seed)
    else:
        inst = build_example(args.example, field, cfg)
    rep = verify_manifest(inst, cfg)
    _emit(rep.to_json(), cfg)
    if not rep.passed:
        failed_hard = any(r.outcome == "done" and not r.passed for r in rep.checks) or any(
            r.outcome == "error" for r in rep.checks
        )
        return EXIT_FAIL if failed_hard else EXIT_BUDGET
    return EXIT_PASS


def _cmd_relations(args):
    cfg = _config(args)
    rows = relation_table()
    _emit({"rows": rows}, cfg)
    return EXIT_PASS


def _load_detmap_example(example, field, cfg):
    inst = build_example(example, field, cfg)
    if inst.kind != "DetMatrix":
        raise _UsageError(f"{example} is not a determinantal-matrix example")
    return inst


def _cmd_fiber(args):
    cfg = _config(args)
    field = GF(cfg.prime)
    inst = _load_detmap_example(args.example, field, cfg)
    try:
        point = ProjPoint.parse(inst.field, args.point)
    except (ArityError, ShapeError) as exc:
        raise _UsageError(str(exc))
    if len(point.coords) != inst.payload.n + 1:
        raise _UsageError("point arity does not match the target space")
    rep = fiber(inst.payload, point, cfg, with_hilbert=True)
    out = {
        "example": inst.id,
        "prime": inst.field.char,
        "seed": cfg.seed,
        "point": str(point),
        "rank": rep.rank,
        "fiber_dim": rep.fiber_dim,
        "equations": [[int(v) for v in row] for row in rep.subspace.equations],
    }
    if rep.intersection_hilbert is not None:
        hd = rep.intersection_hilbert
        out["intersection"] = {
            "dimension": hd.projective_dimension,
            "degree": hd.degree,
            "sectional_genus": hd.sectional_genus,
        }
    _emit(out, cfg)
    return EXIT_PASS


def _cmd_stratify(args):
    cfg = _config(args)
    field = GF(cfg.prime)
    inst = _load_detmap_example(args.example, field, cfg)
    mp = inst.payload
    if not (1 <= args.rank < mp.n):
        raise _UsageError(f"rank must be in 1..{mp.n - 1}")
    st = rank_stratum(mp, args.rank, cfg)
    out = {
        "example": inst.id,
        "prime": inst.field.char,
        "seed": cfg.seed,
        "rank": st.r,
        "note": st.note,
        "certified_all_extensions": st.certified_all_extensions,
    }
    if st.hilbert is not None:
        out["hilbert"] = {
            "dimension": st.hilbert.projective_dimension,
            "degree": st.hilbert.degree,
            "sectional_genus": st.hilbert.sectional_genus,
        }
    if st.points is not None:
        out["points"] = {
            str(e): sorted(str(q) for q in pts) for e, pts in st.points
        }
    _emit(out, cfg)
    if st.hilbert is None:
        return EXIT_BUDGET
    return EXIT_PASS


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "relations":
            return _cmd_relations(args)
        if args.command == "fiber":
            return _cmd_fiber(args)
        if args.command == "stratify":
            return _cmd_stratify(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownId as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CremonaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
