"""One-heap engines: subtraction games and their comply variants.

A comply move has two parts: one player proposes a finite set of amounts,
the other picks which amount is subtracted.  In the comply-number game the
player to move proposes; a heap is a next-player win exactly when some
applicable set has all its options previous-player wins.  The comply-set
game swaps the roles (and, positionwise, the outcomes).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .conditions import ConditionExpr


@dataclass(frozen=True)
class MoveSet:
    amounts: frozenset[int]

    def __post_init__(self):
        if not self.amounts:
            raise ValueError("a move set must be nonempty")
        if any(a <= 0 for a in self.amounts):
            raise ValueError("move amounts must be positive")

    @property
    def max(self) -> int:
        return max(self.amounts)


def _as_moveset(s) -> MoveSet:
    return s if isinstance(s, MoveSet) else MoveSet(frozenset(s))


class GameFamily:
    """Family of proposable move sets; applicable sets per heap are finite."""

    def applicable(self, x: int) -> list[frozenset[int]]:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class ExplicitFamily(GameFamily):
    sets: tuple[MoveSet, ...]

    def __init__(self, sets):
        object.__setattr__(self, "sets", tuple(_as_moveset(s) for s in sets))

    def applicable(self, x):
        return [s.amounts for s in self.sets if s.max <= x]

    def describe(self):
        inner = ", ".join("{" + ",".join(map(str, sorted(s.amounts))) + "}" for s in self.sets)
        return f"explicit[{inner}]"


@dataclass(frozen=True)
class DiscrepancyPairs(GameFamily):
    """Move sets {d, 2d} for d in a membership predicate; d = 0 is ignored."""

    member: Callable[[int], bool]
    name: str = "discrepancy"

    def applicable(self, x):
        out = []
        for d in range(1, x // 2 + 1):
            if self.member(d):
                out.append(frozenset((d, 2 * d)))
        return out

    def describe(self):
        return self.name


@dataclass(frozen=True)
class ConditionMoves(GameFamily):
    """Heap-dependent move sets read off a condition: a proposal at heap x
    is the set of gaps {x - t_i} for a tuple satisfying the condition with
    x in one slot and every other entry in [terminal, x)."""

    cond: ConditionExpr
    terminal: int = 1

    def applicable(self, x):
        if x < self.terminal:
            return []
        out = []
        seen = set()
        for t in _condition_tuples(self.cond, x, self.terminal):
            amounts = frozenset(x - ti for ti in t if ti != x)
            if amounts and amounts not in seen and all(a > 0 for a in amounts):
                seen.add(amounts)
                out.append(amounts)
        return out

    def describe(self):
        return f"noninvariant[{self.cond.describe()}, terminal={self.terminal}]"


def _condition_tuples(cond: ConditionExpr, x: int, floor: int):
    """Tuples satisfying the condition with x in exactly one slot and the
    remaining entries in [floor, x)."""
    k = cond.arity
    domain = range(floor, x)
    out = []

    def rec(prefix, x_used):
        i = len(prefix)
        if i == k:
            if x_used and cond.holds(prefix):
                out.append(tuple(prefix))
            return
        if not x_used:
            rec(prefix + [x], True)
        for val in domain:
            rec(prefix + [val], x_used)

    rec([], False)
    return out


@dataclass(frozen=True)
class OutcomeTable:
    game: str
    N: int
    is_p: tuple[bool, ...]

    def outcome(self, x: int) -> str:
        return "P" if self.is_p[x] else "N"

    def p_set(self) -> list[int]:
        return [x for x, p in enumerate(self.is_p) if p]

    def n_set(self) -> list[int]:
        return [x for x, p in enumerate(self.is_p) if not p]


@dataclass(frozen=True)
class NimValueTable:
    amounts: frozenset[int]
    values: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def p_set(self) -> list[int]:
        return [x for x, g in enumerate(self.values) if g == 0]


def mex(values) -> int:
    """Least natural number absent from the collection."""
    seen = set(values)
    m = 0
    while m in seen:
        m += 1
    return m


def subtraction_nim_values(amounts, N: int) -> NimValueTable:
    s = sorted(set(amounts))
    if not s or s[0] <= 0:
        raise ValueError("subtraction amounts must be positive")
    g = []
    for x in range(N + 1):
        g.append(mex(g[x - a] for a in s if x - a >= 0))
    return NimValueTable(frozenset(s), tuple(g))


def subtraction_outcomes(amounts, N: int) -> OutcomeTable:
    s = sorted(set(amounts))
    is_p: list[bool] = []
    for x in range(N + 1):
        is_p.append(not any(x - a >= 0 and is_p[x - a] for a in s))
    return OutcomeTable(f"subtraction{{{','.join(map(str, s))}}}", N, tuple(is_p))


def comply_number_outcomes(game: GameFamily, N: int) -> OutcomeTable:
    """x is N iff some applicable set has every option in P."""
    is_p: list[bool] = []
    if isinstance(game, DiscrepancyPairs):
        # walk current P-positions p = x - d and test x - 2d = 2p - x
        p_list: list[int] = []
        p_mask = [False] * (N + 1)
        member = game.member
        for x in range(N + 1):
            win = False
            half = (x + 1) // 2
            for p in p_list:
                if p < half or p >= x:
                    continue
                d = x - p
                if member(d) and p_mask[2 * p - x]:
                    win = True
                    break
            is_p.append(not win)
            if not win:
                p_list.append(x)
                p_mask[x] = True
    else:
        for x in range(N + 1):
            win = any(
                all(is_p[x - a] for a in s)
                for s in game.applicable(x)
            )
            is_p.append(not win)
    return OutcomeTable(game.describe(), N, tuple(is_p))


def comply_set_outcomes(game: GameFamily, N: int) -> OutcomeTable:
    """x is N iff every applicable set (vacuously, when none) contains an
    option in P."""
    is_p: list[bool] = []
    for x in range(N + 1):
        win = all(
            any(is_p[x - a] for a in s)
            for s in game.applicable(x)
        )
        is_p.append(not win)
    return OutcomeTable(game.describe() + " (comply-set)", N, tuple(is_p))


def noninvariant_outcomes(cond: ConditionExpr, N: int, terminal: int = 1) -> OutcomeTable:
    """Comply-number outcomes for the heap-dependent family read off a
    (typically non-translation-invariant) condition."""
    if cond.arity < 2:
        raise ValueError("need a condition of arity >= 2")
    return comply_number_outcomes(ConditionMoves(cond, terminal), N)


# ---------------------------------------------------------------------------
# realizability


@dataclass(frozen=True)
class Realizable:
    witness: Optional[frozenset[int]] = None  # a subtraction set, when built


@dataclass(frozen=True)
class NotRealizable:
    witness: int


def realizable_as_subtraction_P(A, horizon: int) -> Union[Realizable, NotRealizable]:
    """Can A be exactly the P-positions of a subtraction game (on this
    horizon)?  A NotRealizable witness survives any horizon extension; a
    Realizable verdict carries a witnessing subtraction set."""
    members = sorted(set(A))
    if any(a < 0 or a > horizon for a in members):
        raise ValueError("A must lie within [0, horizon]")
    aset = set(members)
    if 0 not in aset:
        return NotRealizable(0)
    diffs = {y - x for i, x in enumerate(members) for y in members[i + 1:]}
    chosen: set[int] = set()
    for a in range(horizon + 1):
        if a in aset:
            continue
        picks = [a - b for b in members if b < a and (a - b) not in diffs]
        if not picks:
            return NotRealizable(a)
        chosen.add(picks[0])
    return Realizable(frozenset(chosen) or frozenset({horizon + 1}))


def realizable_as_nim_values(f: Sequence[int]) -> Union[Realizable, NotRealizable]:
    """Can f be the nim-value table of a subtraction game?  Checks, per heap
    a with f(a) > 0 and per value v < f(a), for a donor b' with f(b') = v
    whose gap a - b' is not a difference of two zero-value heaps."""
    f = list(f)
    zeros = [x for x, g in enumerate(f) if g == 0]
    zdiffs = {y - x for i, x in enumerate(zeros) for y in zeros[i + 1:]}
    by_value: dict[int, list[int]] = {}
    for x, g in enumerate(f):
        by_value.setdefault(g, []).append(x)
    for a, g in enumerate(f):
        if g == 0:
            continue
        for v in range(g):
            donors = [b for b in by_value.get(v, ()) if b < a]
            if all((a - b) in zdiffs for b in donors):
                return NotRealizable(a)
    return Realizable()


def star(member: Callable[[int], bool], N: int) -> list[int]:
    """P-positions of the comply-number game on move sets {d, 2d} with d in
    the given predicate, returned as the next discrepancy set."""
    return comply_number_outcomes(DiscrepancyPairs(member), N).p_set()


def star_iterates(member: Callable[[int], bool], N: int, k: int) -> list[list[int]]:
    """k successive star applications (prefixes on [0, N])."""
    out = []
    current = member
    for _ in range(k):
        prefix = star(current, N)
        out.append(prefix)
        pset = set(prefix)
        current = pset.__contains__
    return out
