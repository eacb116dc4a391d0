"""Command-line entry point.

Subcommands: gen-set, gen-perm, outcomes-1d, outcomes-2d, triple, star,
realizable, stanley, density, verify, export, play, serve.

Exit codes: 0 ok, 1 usage error, 2 engine error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import exports
from .conditions import (
    CandidateSearchExhausted,
    ConditionSyntaxError,
    builtin,
    parse_mode,
)
from .dsl import parse_condition
from .greedysets import (
    base3_members,
    density_profile,
    greedy_avoid_set,
    stanley_sequence,
)
from .heapgames import (
    DiscrepancyPairs,
    ExplicitFamily,
    NotRealizable,
    Realizable,
    comply_number_outcomes,
    comply_set_outcomes,
    noninvariant_outcomes,
    realizable_as_subtraction_P,
    realizable_as_nim_values,
    star,
    subtraction_nim_values,
)
from .injections import greedy_injection, named
from .multiheap import TripleAP, comply_outcomes_2d, three_heap_classify
from .sessions import GAME_KINDS, GameSession, SessionError

USAGE_EXIT, ENGINE_EXIT, VERIFY_EXIT = 1, 2, 3


def _cond_arg(text: str):
    """A condition given either as a DSL string or builtin name."""
    return parse_condition(text)


def _write_out(text: str, path: Optional[str]):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_set(gs, args):
    if args.format == "json":
        _write_out(exports.greedy_set_json(gs, include_witnesses=args.witnesses), args.out)
    elif args.format == "svg":
        exports.set_figure(gs, args.out or "set.svg")
    elif args.out:
        _write_out(exports.greedy_set_text(gs), args.out)
    else:
        print(" ".join(str(x) for x in gs.elements))
    if args.fig:
        exports.set_figure(gs, args.fig)


def cmd_gen_set(args):
    cond = _cond_arg(args.cond)
    gs = greedy_avoid_set(cond, args.n, seed=args.seed or (), start=args.start)
    _emit_set(gs, args)


def cmd_stanley(args):
    gs = stanley_sequence(args.initial, args.n)
    _emit_set(gs, args)


def cmd_gen_perm(args):
    mode = parse_mode(args.mode)
    if args.cond in ("nim", "wythoff", "sidon", "line", "parallel"):
        inj = named(args.cond, mode, args.n)
    elif args.cond.startswith("kterm"):
        k = int(args.cond[6:-1]) if "(" in args.cond else 3
        inj = named("kterm", mode, args.n, k=k)
    else:
        inj = greedy_injection(_cond_arg(args.cond), mode, args.n)
    if args.format == "json":
        _write_out(exports.injection_json(inj), args.out)
    elif args.format == "svg":
        exports.injection_figure(inj, args.out or "perm.svg")
    elif args.out or args.format == "csv":
        _write_out(exports.injection_csv(inj), args.out)
    else:
        print(" ".join(f"({n},{v})" for n, v in inj.pairs))
    if args.fig:
        exports.injection_figure(inj, args.fig)


def _family_from_args(args):
    if args.family == "all":
        return DiscrepancyPairs(lambda d: True, "pairs{d,2d}, d in N")
    if args.family == "base3":
        from .greedysets import is_base3_01

        return DiscrepancyPairs(is_base3_01, "pairs{d,2d}, d in base-3{0,1}")
    if args.family:
        sets = [frozenset(map(int, part.split(","))) for part in args.family.split(";")]
        return ExplicitFamily(sets)
    return None


def cmd_outcomes_1d(args):
    if args.cond:
        table = noninvariant_outcomes(_cond_arg(args.cond), args.n, terminal=args.terminal)
    else:
        fam = _family_from_args(args)
        if fam is None:
            print("need --cond or --family", file=sys.stderr)
            raise SystemExit(USAGE_EXIT)
        solve = comply_set_outcomes if args.comply_set else comply_number_outcomes
        table = solve(fam, args.n)
    if args.format == "json":
        _write_out(exports.outcome_json(table), args.out)
    elif args.out or args.format == "csv":
        _write_out(exports.outcome_csv(table), args.out)
    else:
        print("P:", " ".join(map(str, table.p_set())))


def cmd_outcomes_2d(args):
    cond = _cond_arg(args.cond)
    mode = parse_mode(args.mode)
    grid = comply_outcomes_2d(cond, mode, args.x, args.y)
    if args.format == "json":
        _write_out(exports.grid_json(grid), args.out)
    elif args.format == "svg":
        exports.grid_figure(grid, args.out or "grid.svg")
    elif args.out or args.format == "csv":
        _write_out(exports.grid_csv(grid), args.out)
    else:
        print("P:", " ".join(f"({x},{y})" for x, y in grid.p_set()))
    if args.fig:
        exports.grid_figure(grid, args.fig)


def cmd_nimvalues(args):
    amounts = frozenset(map(int, args.amounts.split(",")))
    table = subtraction_nim_values(amounts, args.n)
    _write_out(exports.nim_values_csv(table), args.out)


def cmd_triple(args):
    x, y, z = map(int, args.triple.split(","))
    print(three_heap_classify(TripleAP(x, y, z)))


def cmd_star(args):
    if args.family == "all":
        member = lambda d: True  # noqa: E731
    elif args.family == "base3":
        from .greedysets import is_base3_01 as member
    else:
        ds = set(map(int, args.family.split(",")))
        member = ds.__contains__
    prefix = star(member, args.n)
    print(" ".join(map(str, prefix)))


def cmd_realizable(args):
    if args.nim_values:
        f = list(map(int, args.nim_values.split(",")))
        verdict = realizable_as_nim_values(f)
    else:
        A = sorted(map(int, args.set.split(",")))
        verdict = realizable_as_subtraction_P(A, args.horizon or max(A))
    if isinstance(verdict, NotRealizable):
        print(f"not realizable (witness {verdict.witness})")
    else:
        extra = f" with S={sorted(verdict.witness)}" if verdict.witness else ""
        print(f"realizable{extra}")


def cmd_density(args):
    cond = _cond_arg(args.cond)
    gs = greedy_avoid_set(cond, args.n)
    checkpoints = (
        list(map(int, args.checkpoints.split(",")))
        if args.checkpoints
        else [(3 ** t - 1) // 2 for t in range(1, 9) if (3 ** t - 1) // 2 <= args.n]
    )
    counts = density_profile(gs.elements, checkpoints)
    for c, cnt in zip(checkpoints, counts):
        print(f"{c},{cnt}")


def cmd_verify(args):
    """Exhaustive agreement between optimized engines and naive oracles."""
    from .verify import agreement_report

    report = agreement_report(scale=args.scale, rng_seed=args.rng_seed)
    doc = json.dumps(report, indent=None if args.out else 2)
    _write_out(doc + "\n", args.out)
    if report["failures"]:
        raise SystemExit(VERIFY_EXIT)


def cmd_export(args):
    """One-stop export: compute an artifact and write it out."""
    if args.kind == "set":
        cmd_gen_set(args)
    elif args.kind == "perm":
        cmd_gen_perm(args)
    elif args.kind == "grid":
        cmd_outcomes_2d(args)
    elif args.kind == "outcomes":
        cmd_outcomes_1d(args)
    elif args.kind == "nim":
        cmd_nimvalues(args)
    else:
        print(f"unknown export kind {args.kind!r}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def cmd_play(args):
    start = None
    if args.start:
        start = args.start[0] if len(args.start) == 1 else list(args.start)
    sess = GameSession.create(
        args.kind,
        bounds=args.bounds,
        start=start,
        cond_text=args.cond,
        mode=args.mode,
        human_role=args.role,
    )
    out = sys.stdout
    while True:
        st = sess.state(proposal_cap=12)
        print(f"position: {st['position']}  [{st['outcomeAnnotation']['outcome']}]", file=out)
        if st["winner"]:
            print(f"winner: {st['winner']}", file=out)
            return
        if st["phase"] == "propose":
            print("your proposal (targets like '3,6' or '1 2;3 4'):", file=out)
            for i, p in enumerate(st["legalProposals"][:12]):
                print(f"  e.g. {p}", file=out)
                if i >= 2:
                    break
            line = sys.stdin.readline()
            if not line:
                return
            try:
                targets = _parse_targets(line.strip(), sess.engine.dims)
                sess.propose(targets)
            except (SessionError, ValueError) as exc:
                print(f"rejected: {exc}", file=out)
        else:
            print(f"engine proposes: {st['pendingProposal']}", file=out)
            print("pick an index:", file=out)
            line = sys.stdin.readline()
            if not line:
                return
            try:
                sess.choose(int(line.strip()))
            except (SessionError, ValueError) as exc:
                print(f"rejected: {exc}", file=out)


def _parse_targets(text: str, dims: int):
    if dims == 1:
        return [int(t) for t in text.replace(";", ",").split(",") if t.strip()]
    out = []
    for part in text.split(";"):
        coords = [int(t) for t in part.replace("(", " ").replace(")", " ").replace(",", " ").split()]
        if len(coords) != 2:
            raise ValueError("each 2D target needs two coordinates")
        out.append(coords)
    return out


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    app = create_app(ui_dir=args.ui_dir, preload=args.load or ())
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="complygames")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fig=True):
        p.add_argument("--format", choices=["csv", "json", "svg", "text"], default="text")
        p.add_argument("--out")
        if fig:
            p.add_argument("--fig", help="also render a matplotlib figure to this path")

    p = sub.add_parser("gen-set", help="greedy condition-avoiding set")
    p.add_argument("--cond", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--start", type=int)
    p.add_argument("--seed", type=int, nargs="*")
    p.add_argument("--witnesses", action="store_true")
    common(p)
    p.set_defaults(func=cmd_gen_set)

    p = sub.add_parser("stanley", help="greedy 3-AP-free continuation of an initial set")
    p.add_argument("--initial", type=int, nargs="+", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--witnesses", action="store_true")
    common(p)
    p.set_defaults(func=cmd_stanley)

    p = sub.add_parser("gen-perm", help="greedy injection avoiding a condition")
    p.add_argument("--cond", required=True, help="DSL text or a named instance")
    p.add_argument("--mode", default="max")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_gen_perm)

    p = sub.add_parser("outcomes-1d", help="one-heap comply outcome table")
    p.add_argument("--cond", help="heap-dependent rules from a condition")
    p.add_argument("--family", help="'all', 'base3', or explicit '1,2;3,6'")
    p.add_argument("--comply-set", action="store_true")
    p.add_argument("--terminal", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    common(p, fig=False)
    p.set_defaults(func=cmd_outcomes_1d)

    p = sub.add_parser("outcomes-2d", help="two-heap comply outcome grid")
    p.add_argument("--cond", required=True)
    p.add_argument("--mode", default="max")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_outcomes_2d)

    p = sub.add_parser("nim-values", help="subtraction-game nim values")
    p.add_argument("--amounts", required=True, help="comma separated, e.g. 1,2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_nimvalues)

    p = sub.add_parser("triple", help="three-heap progression game outcome")
    p.add_argument("--triple", required=True, help="x,y,z with x<y and x+z=2y")
    p.set_defaults(func=cmd_triple)

    p = sub.add_parser("star", help="P-positions of the pairs game as a new set")
    p.add_argument("--family", default="all", help="'all', 'base3', or d list '1,3,4'")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("realizable", help="subtraction-game realizability tests")
    p.add_argument("--set", help="candidate P-set, comma separated")
    p.add_argument("--horizon", type=int)
    p.add_argument("--nim-values", help="candidate nim-value table, comma separated")
    p.set_defaults(func=cmd_realizable)

    p = sub.add_parser("density", help="greedy-set density profile")
    p.add_argument("--cond", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--checkpoints")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("verify", help="run naive-oracle agreement checks")
    p.add_argument("--scale", type=float, default=1.0,
                   help="shrink documented sizes for a quick pass")
    p.add_argument("--rng-seed", type=int, default=20240811)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="compute an artifact and write it out")
    p.add_argument("--kind", required=True,
                   choices=["set", "perm", "grid", "outcomes", "nim"])
    p.add_argument("--cond")
    p.add_argument("--mode", default="max")
    p.add_argument("--n", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--y", type=int)
    p.add_argument("--amounts")
    p.add_argument("--family")
    p.add_argument("--comply-set", action="store_true")
    p.add_argument("--terminal", type=int, default=1)
    p.add_argument("--start", type=int)
    p.add_argument("--seed", type=int, nargs="*")
    p.add_argument("--witnesses", action="store_true")
    common(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("play", help="text-mode play against the engine")
    p.add_argument("--kind", choices=sorted(GAME_KINDS), default="ap3-board")
    p.add_argument("--bounds", type=int, nargs="*")
    p.add_argument("--start", type=int, nargs="*")
    p.add_argument("--cond")
    p.add_argument("--mode", default="max")
    p.add_argument("--role", choices=["proposer", "chooser"], default="proposer")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("serve", help="run the JSON HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--ui-dir", help="static directory for the browser client")
    p.add_argument("--load", nargs="*", help="saved session files to preload")
    p.set_defaults(func=cmd_serve)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_EXIT if exc.code not in (0, None) else 0
    try:
        args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    except (ConditionSyntaxError, SessionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except CandidateSearchExhausted as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return ENGINE_EXIT
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
