"""Comply games on two heaps and the three-heap progression game.

A position is a lattice point.  A proposal is either a Nim move (one
coordinate decreases; a singleton option) or an unordered (k-1)-tuple of
positions completing a condition instance with the current position,
restricted by the avoidance mode.  A position is a next-player win exactly
when some proposal has every member a previous-player win.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .conditions import AvoidanceMode, ConditionExpr
from .greedysets import is_base3_01

Pos = tuple[int, int]


class OrderViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class GridOutcomeTable:
    condition: str
    mode: AvoidanceMode
    X: int
    Y: int
    is_p: tuple[tuple[bool, ...], ...]  # indexed [x][y]
    boundary_band: int = 0  # rows y > Y - band are approximate (unrestricted)

    def outcome(self, x: int, y: int) -> str:
        return "P" if self.is_p[x][y] else "N"

    def p_set(self) -> list[Pos]:
        return [
            (x, y)
            for x in range(self.X + 1)
            for y in range(self.Y + 1)
            if self.is_p[x][y]
        ]


def _arrangement_ok(cond: ConditionExpr, mode: AvoidanceMode, pts: Sequence[Pos]) -> bool:
    """Does some slot arrangement of the points satisfy the paired condition
    (with ORDER_PRESERVING restricted to sorted arrangements)?"""
    for perm in itertools.permutations(pts):
        xs = tuple(p[0] for p in perm)
        ys = tuple(p[1] for p in perm)
        if mode is AvoidanceMode.ORDER_PRESERVING:
            if any(xs[i] > xs[i + 1] for i in range(len(xs) - 1)):
                continue
            if any(ys[i] > ys[i + 1] for i in range(len(ys) - 1)):
                continue
        if cond.paired_holds(xs, ys):
            return True
    return False


def _mode_members_ok(mode: AvoidanceMode, pos: Pos, members: Sequence[Pos]) -> bool:
    x, y = pos
    if mode is AvoidanceMode.UNRESTRICTED:
        if not all(m[0] < x for m in members):
            return False
    else:
        if not all(m[0] < x and m[1] < y for m in members):
            return False
    if mode is AvoidanceMode.ORDER_PRESERVING:
        for a, b in itertools.combinations(members, 2):
            if a[0] < b[0] and not a[1] < b[1]:
                return False
            if b[0] < a[0] and not b[1] < a[1]:
                return False
    return True


def legal_tuple_proposal(
    cond: ConditionExpr,
    mode: AvoidanceMode,
    pos: Pos,
    members: Sequence[Pos],
) -> bool:
    """Is the unordered member tuple a legal condition proposal at pos?"""
    k = cond.arity
    if k == 0 or len(members) != k - 1:
        return False
    if any(m[0] < 0 or m[1] < 0 for m in members):
        return False
    if not _mode_members_ok(mode, pos, members):
        return False
    return _arrangement_ok(cond, mode, list(members) + [pos])


def proposals_2d(
    cond: ConditionExpr,
    mode: AvoidanceMode,
    pos: Pos,
    bounds: Optional[Pos] = None,
    limit: Optional[int] = None,
) -> tuple[list[list[Pos]], bool]:
    """All legal proposals at pos (Nim singletons first), capped at `limit`
    with a truncation flag.  Tuple members stay within `bounds` (default:
    the position itself for dominated modes)."""
    x, y = pos
    out: list[list[Pos]] = []
    truncated = False

    def push(p: list[Pos]) -> bool:
        nonlocal truncated
        if limit is not None and len(out) >= limit:
            truncated = True
            return False
        out.append(p)
        return True

    for nx in range(x):
        if not push([(nx, y)]):
            return out, truncated
    for ny in range(y):
        if not push([(x, ny)]):
            return out, truncated
    k = cond.arity
    if k < 2:
        return out, truncated
    if bounds is None:
        bx, by = (x, y) if mode is not AvoidanceMode.UNRESTRICTED else (x, y)
    else:
        bx, by = bounds
    xs_range = range(min(x - 1, bx) + 1)
    ys_range = range((y if mode is not AvoidanceMode.UNRESTRICTED else by) + 1)
    cells = [
        (cx, cy)
        for cx in xs_range
        for cy in ys_range
        if cx < x and (mode is AvoidanceMode.UNRESTRICTED or cy < y)
    ]
    for members in itertools.combinations_with_replacement(cells, k - 1):
        if len(set(members)) != len(members):
            continue  # repeated positions never form a nontrivial instance
        if legal_tuple_proposal(cond, mode, pos, members):
            if not push(sorted(members)):
                return out, truncated
    return out, truncated


def comply_outcomes_2d(
    cond: ConditionExpr,
    mode: AvoidanceMode,
    X: int,
    Y: int,
) -> GridOutcomeTable:
    """Bottom-up outcome grid.  A position is N iff a legal proposal exists
    whose members are all P, so the search runs over P-position tuples; for
    MAX_AC/ORDER_PRESERVING members are dominated componentwise and the
    grid is exact.  For UNRESTRICTED, members with larger y are legal, so
    verdicts near the top edge are approximate (boundary_band reports the
    affected height: tuple members can reach beyond the grid)."""
    k = cond.arity
    is_p = [[False] * (Y + 1) for _ in range(X + 1)]
    p_rows: list[list[int]] = [[] for _ in range(Y + 1)]  # per y: P xs
    p_cols: list[list[int]] = [[] for _ in range(X + 1)]  # per x: P ys
    p_all: list[Pos] = []

    for x in range(X + 1):
        for y in range(Y + 1):
            win = False
            # Nim moves to a P in the same row / column
            if any(px < x for px in p_rows[y]):
                win = True
            if not win and any(py < y for py in p_cols[x]):
                win = True
            if not win and k >= 2:
                if mode is AvoidanceMode.UNRESTRICTED:
                    pool = [p for p in p_all if p[0] < x]
                else:
                    pool = [p for p in p_all if p[0] < x and p[1] < y]
                for members in itertools.combinations(pool, k - 1):
                    if legal_tuple_proposal(cond, mode, (x, y), members):
                        win = True
                        break
            if not win:
                is_p[x][y] = True
                p_rows[y].append(x)
                p_cols[x].append(y)
                p_all.append((x, y))
    band = Y if mode is AvoidanceMode.UNRESTRICTED and k >= 2 else 0
    return GridOutcomeTable(
        cond.describe(), mode, X, Y, tuple(tuple(col) for col in is_p), band
    )


def best_proposal_2d(
    cond: ConditionExpr,
    mode: AvoidanceMode,
    pos: Pos,
    table: GridOutcomeTable,
) -> Optional[list[Pos]]:
    """A winning proposal (all members P) from an N-position, else None."""
    x, y = pos
    if x > table.X or y > table.Y:
        raise ValueError("position outside the computed table")
    if table.is_p[x][y]:
        return None
    pset = table.p_set()
    for px, py in pset:
        if px < x and py == y:
            return [(px, py)]
        if py < y and px == x:
            return [(x, py)]
    k = cond.arity
    if k >= 2:
        if mode is AvoidanceMode.UNRESTRICTED:
            pool = [p for p in pset if p[0] < x]
        else:
            pool = [p for p in pset if p[0] < x and p[1] < y]
        for members in itertools.combinations(pool, k - 1):
            if legal_tuple_proposal(cond, mode, pos, members):
                return sorted(members)
    return None


def best_choice_2d(proposal: Sequence[Pos], table: GridOutcomeTable) -> Pos:
    """From a proposal, pick an N member when one exists."""
    for m in proposal:
        if not table.is_p[m[0]][m[1]]:
            return m
    return proposal[0]


# ---------------------------------------------------------------------------
# three heaps in arithmetic progression


@dataclass(frozen=True)
class TripleAP:
    x: int
    y: int
    z: int

    def __post_init__(self):
        if not (0 <= self.x < self.y):
            raise ValueError("need 0 <= x < y")
        if self.x + self.z != 2 * self.y:
            raise ValueError("need x + z = 2y")


def three_heap_classify(t: TripleAP) -> str:
    """N when the largest heap is a base-3 {0,1} number; else P exactly when
    both smaller heaps are."""
    if is_base3_01(t.z):
        return "N"
    return "P" if is_base3_01(t.x) and is_base3_01(t.y) else "N"


def three_heap_solve(t: TripleAP, _memo: Optional[dict] = None) -> str:
    """Recursive outcome: keep one of the two smaller heaps as the new
    largest and rebuild the progression below it."""
    memo = _memo if _memo is not None else {}

    def rec(x: int, y: int) -> str:
        key = (x, y)
        if key in memo:
            return memo[key]
        out = "P"
        for w in (x, y):
            for d in range(1, w // 2 + 1):
                if rec(w - 2 * d, w - d) == "P":
                    out = "N"
                    break
            if out == "N":
                break
        memo[key] = out
        return out

    return rec(t.x, t.y)


def three_heap_options(t: TripleAP) -> list[TripleAP]:
    out = []
    for w in (t.x, t.y):
        for d in range(1, w // 2 + 1):
            out.append(TripleAP(w - 2 * d, w - d, w))
    return out
