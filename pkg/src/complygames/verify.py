"""Deliberately naive re-implementations used as independent oracles.

Nothing here shares search machinery with the optimized engines: sets are
grown by full re-scans, outcome tables by top-down memoized recursion, and
forbidden images by direct tuple enumeration.  Sizes are capped on purpose.

Documented comparison caps (exhaustive agreement checked by `cli verify`
and the acceptance suite):
  greedy sets  ap(3), mean(3), ky_xz(1), ky_xz(3), empty at N <= 500;
               sidon(2) at N <= 250; mean(4) at N <= 300
  1-heap games explicit families at N <= 500 (30 seeded random families)
  2-heap grids empty / ap(3) / line at 30 x 30 (MAX_AC)
  injections   ap(3) and line at N <= 40, sidon(2) at N <= 24
               (all three modes; quartic scans cap sidon lower)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .conditions import AvoidanceMode, ConditionExpr
from .heapgames import GameFamily, OutcomeTable
from .multiheap import GridOutcomeTable, Pos


@dataclass(frozen=True)
class Violation:
    form: Optional[object]
    values: tuple[int, ...]


def naive_condition_scan(cond: ConditionExpr, elements) -> list[Violation]:
    """Exhaustive scan for condition instances inside a finite set.  Only
    tuples whose maximum entry occupies a single slot count (the greedy
    scan can only ever be offered those)."""
    elems = sorted(set(elements))
    k = cond.arity
    out = []
    if k == 0 or not elems:
        return out
    for t in itertools.product(elems, repeat=k):
        if t.count(max(t)) == 1 and cond.holds(t):
            out.append(Violation(None, t))
    return out


def brute_force_greedy(cond: ConditionExpr, N: int, seed=(), start: Optional[int] = None):
    """Greedy set by full re-scan per candidate; no incremental state."""
    if start is None:
        start = 0 if cond.translation_invariant else 1
    k = cond.arity
    elements = list(sorted(set(seed)))
    for n in range(start, N + 1):
        hit = False
        for j in range(k):
            for rest in itertools.product(elements, repeat=k - 1):
                t = rest[:j] + (n,) + rest[j:]
                if cond.holds(t):
                    hit = True
                    break
            if hit:
                break
        if not hit:
            elements.append(n)
    return elements


def exhaustive_comply_solver(game: GameFamily, N: int) -> OutcomeTable:
    """Comply-number outcomes by top-down memoized recursion."""
    memo: dict[int, bool] = {}

    def is_n(x: int) -> bool:
        if x in memo:
            return memo[x]
        memo[x] = False  # cycle-safe: options strictly decrease anyway
        res = any(all(not is_n(x - a) for a in s) for s in game.applicable(x))
        memo[x] = res
        return res

    return OutcomeTable(game.describe(), N, tuple(not is_n(x) for x in range(N + 1)))


def exhaustive_2d_solver(
    cond: ConditionExpr, mode: AvoidanceMode, X: int, Y: int
) -> GridOutcomeTable:
    """2-heap comply outcomes by top-down recursion over full proposal
    enumeration (every option tuple, not just P-tuples)."""
    k = cond.arity
    memo: dict[Pos, bool] = {}

    def arrangements_hold(pts: Sequence[Pos]) -> bool:
        for perm in itertools.permutations(pts):
            xs = tuple(p[0] for p in perm)
            ys = tuple(p[1] for p in perm)
            if mode is AvoidanceMode.ORDER_PRESERVING:
                if any(xs[i] > xs[i + 1] for i in range(k - 1)):
                    continue
                if any(ys[i] > ys[i + 1] for i in range(k - 1)):
                    continue
            if cond.paired_holds(xs, ys):
                return True
        return False

    def winning_proposal_exists(pos: Pos) -> bool:
        x, y = pos
        for nx in range(x):
            if not is_n((nx, y)):
                return True
        for ny in range(y):
            if not is_n((x, ny)):
                return True
        if k < 2:
            return False
        if mode is AvoidanceMode.UNRESTRICTED:
            cells = [(cx, cy) for cx in range(x) for cy in range(Y + 1)]
        else:
            cells = [(cx, cy) for cx in range(x) for cy in range(y)]
        for members in itertools.combinations(cells, k - 1):
            # a proposal only wins when every member is P; check that
            # before the (costly) arrangement legality
            if any(is_n(m) for m in members):
                continue
            if mode is AvoidanceMode.ORDER_PRESERVING:
                ok = True
                for a, b in itertools.combinations(members, 2):
                    lo, hi = (a, b) if a[0] < b[0] else (b, a)
                    if lo[0] < hi[0] and not lo[1] < hi[1]:
                        ok = False
                        break
                if not ok:
                    continue
            if arrangements_hold(list(members) + [pos]):
                return True
        return False

    def is_n(pos: Pos) -> bool:
        if pos in memo:
            return memo[pos]
        memo[pos] = False
        res = winning_proposal_exists(pos)
        memo[pos] = res
        return res

    grid = tuple(
        tuple(not is_n((x, y)) for y in range(Y + 1)) for x in range(X + 1)
    )
    band = Y if mode is AvoidanceMode.UNRESTRICTED and k >= 2 else 0
    return GridOutcomeTable(cond.describe(), mode, X, Y, grid, band)


def agreement_report(scale: float = 1.0, rng_seed: int = 20240811) -> dict:
    """Run every documented optimized-vs-naive agreement check; the report
    lists each check and any divergence with its minimal counterexample."""
    import random

    from .conditions import builtin
    from .greedysets import greedy_avoid_set
    from .heapgames import ExplicitFamily, comply_number_outcomes, comply_set_outcomes
    from .injections import greedy_injection
    from .multiheap import comply_outcomes_2d

    report = {"checks": [], "failures": []}
    rng = random.Random(rng_seed)

    def check(name, ok, detail=None):
        report["checks"].append({"name": name, "ok": bool(ok)})
        if not ok:
            report["failures"].append({"name": name, "detail": detail})

    for name, params, N in [
        ("ap", (3,), 500), ("mean", (3,), 500), ("ky_xz", (1,), 500),
        ("ky_xz", (3,), 500), ("empty", (), 500), ("sidon", (2,), 250),
        ("mean", (4,), 300),
    ]:
        N = max(20, int(N * scale))
        cond = builtin(name, params)
        a = list(greedy_avoid_set(cond, N).elements)
        b = brute_force_greedy(cond, N)
        diff = next((i for i, (x, y) in enumerate(zip(a, b)) if x != y), None)
        check(f"greedy {cond.describe()} N={N}", a == b, {"first_diff_index": diff})

    for i in range(30):
        fam = ExplicitFamily([
            frozenset(rng.sample(range(1, 21), rng.randint(1, 4)))
            for _ in range(rng.randint(1, 8))
        ])
        N = max(50, int(500 * scale))
        a = comply_number_outcomes(fam, N)
        b = exhaustive_comply_solver(fam, N)
        bad = next((x for x in range(N + 1) if a.is_p[x] != b.is_p[x]), None)
        check(f"comply-number random family {i}", bad is None, {"heap": bad})
        cs = comply_set_outcomes(fam, N)
        dual_bad = next((x for x in range(N + 1) if cs.is_p[x] == a.is_p[x]), None)
        check(f"duality random family {i}", dual_bad is None, {"heap": dual_bad})

    side = max(10, int(30 * scale))
    for cname, params in [("empty", ()), ("ap", (3,)), ("line", ())]:
        cond = builtin(cname, params)
        a = comply_outcomes_2d(cond, AvoidanceMode.MAX_AC, side, side)
        b = exhaustive_2d_solver(cond, AvoidanceMode.MAX_AC, side, side)
        bad = next(
            ((x, y) for x in range(side + 1) for y in range(side + 1)
             if a.is_p[x][y] != b.is_p[x][y]),
            None,
        )
        check(f"grid {cname} {side}x{side}", bad is None, {"position": bad})

    for cname, params, N in [("ap", (3,), 40), ("line", (), 40), ("sidon", (2,), 24)]:
        N = max(10, int(N * scale))
        cond = builtin(cname, params)
        for mode in AvoidanceMode:
            a = list(greedy_injection(cond, mode, N).images)
            b = brute_injection(cond, mode, N)
            diff = next((i for i, (x, y) in enumerate(zip(a, b)) if x != y), None)
            check(f"injection {cname} {mode.value} N={N}", a == b, {"first_diff": diff})

    return report


def _brute_image_banned(cond: ConditionExpr, mode: AvoidanceMode,
                        images: Sequence[int], n: int, v: int) -> bool:
    """Direct arrangement scan: does image v for input n complete a
    mode-restricted instance against the prefix?"""
    k = cond.arity
    for j in range(k):
        for rest in itertools.product(range(n), repeat=k - 1):
            xs = rest[:j] + (n,) + rest[j:]
            ys = tuple(v if x == n else images[x] for x in xs)
            if mode is AvoidanceMode.MAX_AC:
                if any(y >= v for x, y in zip(xs, ys) if x != n):
                    continue
            elif mode is AvoidanceMode.ORDER_PRESERVING:
                if any(xs[i] > xs[i + 1] for i in range(k - 1)):
                    continue
                if any(ys[i] > ys[i + 1] for i in range(k - 1)):
                    continue
            if cond.paired_holds(xs, ys):
                return True
    return False


def brute_forbidden(
    cond: ConditionExpr,
    mode: AvoidanceMode,
    history: Sequence[tuple[int, int]],
    n: int,
    v_max: int,
) -> set[int]:
    """Forbidden images up to v_max by direct tuple enumeration."""
    images = [w for _, w in sorted(history)]
    return {
        v for v in range(1, v_max + 1)
        if _brute_image_banned(cond, mode, images, n, v)
    }


def brute_injection(cond: ConditionExpr, mode: AvoidanceMode, N: int, cap_factor: int = 512):
    """Greedy injection via per-candidate brute scans; returns images."""
    images = [0]
    used = {0}
    for n in range(1, N + 1):
        cap = cap_factor * (n + 4)
        v = 1
        while v in used or _brute_image_banned(cond, mode, images, n, v):
            v += 1
            if v > cap:
                raise RuntimeError("brute injection exhausted")
        images.append(v)
        used.add(v)
    return images
