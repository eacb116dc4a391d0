"""Greedy injections avoiding an arithmetic condition.

pi(0) = 0; for each n >= 1, pi(n) is the least positive unused integer that
does not complete a mode-restricted condition instance against the prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .avoidance import oracle_for
from .conditions import (
    AvoidanceMode,
    CandidateSearchExhausted,
    ConditionExpr,
    NAMED_CONDITIONS,
)


@dataclass(frozen=True)
class GreedyInjection:
    condition: ConditionExpr
    mode: AvoidanceMode
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        images = [v for _, v in self.pairs]
        if self.pairs and self.pairs[0] != (0, 0):
            raise ValueError("a greedy injection starts with (0, 0)")
        if len(set(images)) != len(images):
            raise ValueError("images must be injective")

    @property
    def n_max(self) -> int:
        return self.pairs[-1][0]

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.pairs)

    def image(self, n: int) -> int:
        return self.pairs[n][1]

    def describe(self) -> str:
        return f"{self.condition.describe()} [{self.mode.value}]"


def greedy_injection(
    cond: ConditionExpr,
    mode: AvoidanceMode,
    N: int,
    cap_factor: int = 16,
) -> GreedyInjection:
    """Build the prefix pi(0..N).  Raises CandidateSearchExhausted when no
    admissible image exists at or below cap_factor*(n+4)."""
    k = cond.arity
    if k == 1:
        raise ValueError("conditions on a single variable cannot be avoided by images")
    oracle = oracle_for(cond, mode)
    pairs = [(0, 0)]
    used = {0}
    oracle.record(0, 0)
    for n in range(1, N + 1):
        cap = cap_factor * (n + 4)
        fb = oracle.forbidden(n, cap)
        banned = fb.__contains__ if isinstance(fb, set) else fb
        v = 1
        while v <= cap:
            if v not in used and not banned(v):
                break
            v += 1
        else:
            raise CandidateSearchExhausted(n, cap)
        pairs.append((n, v))
        used.add(v)
        oracle.record(n, v)
    return GreedyInjection(cond, mode, tuple(pairs))


# parallel-greedy images grow superlinearly; give it candidate headroom
NAMED_CAP_FACTORS = {"parallel": 512}


def named(name: str, mode: AvoidanceMode, N: int, **params) -> GreedyInjection:
    """Named instances: nim, wythoff, kterm(k), sidon, line, parallel."""
    try:
        factory = NAMED_CONDITIONS[name]
    except KeyError:
        raise ValueError(f"unknown named injection: {name!r}") from None
    cap = NAMED_CAP_FACTORS.get(name, 16)
    return greedy_injection(factory(**params), mode, N, cap_factor=cap)


def is_involution(inj: GreedyInjection) -> Union[bool, int]:
    """True when pi(pi(n)) == n for every n whose image stays inside the
    prefix; otherwise the least witness n.  Images beyond the prefix are
    unverifiable, not failures."""
    top = inj.n_max
    for n, v in inj.pairs:
        if v <= top and inj.image(v) != n:
            return n
    return True


def unverifiable_points(inj: GreedyInjection) -> list[int]:
    top = inj.n_max
    return [n for n, v in inj.pairs if v > top]


def ratio_bounds(inj: GreedyInjection) -> tuple[Fraction, Fraction]:
    """Exact extremes of pi(n)/n over 1 <= n <= N."""
    ratios = [Fraction(v, n) for n, v in inj.pairs if n >= 1]
    if not ratios:
        raise ValueError("need at least one pair beyond (0, 0)")
    return min(ratios), max(ratios)


def permutation_coverage(inj: GreedyInjection) -> int:
    """Least value missing from the image of the prefix."""
    have = set(inj.images)
    v = 0
    while v in have:
        v += 1
    return v
