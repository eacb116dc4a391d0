"""Arithmetic conditions: boolean combinations of families of integer linear forms.

A condition constrains k-tuples of naturals.  An atom is a (finite or
enumerable) family of linear forms and holds on a tuple when some member
form vanishes on it nontrivially; AND/OR combine atoms.  Conditions drive
both set avoidance (a set avoids a condition when no tuple drawn from it
satisfies the condition) and two-sided avoidance for injections and
two-heap games, where the same member form must vanish on an input tuple
and on its pointwise image tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Callable, Iterable, Optional, Sequence


class ConditionSyntaxError(ValueError):
    """Raised by the DSL parser; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ArityMismatch(ValueError):
    pass


class CandidateSearchExhausted(RuntimeError):
    """No admissible candidate value at or below the configured cap."""

    def __init__(self, n: int, cap: int):
        super().__init__(f"no admissible value for input {n} within cap {cap}")
        self.n = n
        self.cap = cap


class AvoidanceMode(Enum):
    UNRESTRICTED = "unrestricted"
    MAX_AC = "max"
    ORDER_PRESERVING = "order"


_MODE_ALIASES = {
    "unrestricted": AvoidanceMode.UNRESTRICTED,
    "u": AvoidanceMode.UNRESTRICTED,
    "asym": AvoidanceMode.UNRESTRICTED,
    "max": AvoidanceMode.MAX_AC,
    "maxac": AvoidanceMode.MAX_AC,
    "max-ac": AvoidanceMode.MAX_AC,
    "m": AvoidanceMode.MAX_AC,
    "order": AvoidanceMode.ORDER_PRESERVING,
    "order-preserving": AvoidanceMode.ORDER_PRESERVING,
    "op": AvoidanceMode.ORDER_PRESERVING,
}


def parse_mode(text: str) -> AvoidanceMode:
    try:
        return _MODE_ALIASES[text.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown avoidance mode: {text!r}") from None


@dataclass(frozen=True)
class LinearForm:
    """coeffs[i] multiplies x_{i+1}; constant is the absolute term."""

    coeffs: tuple[int, ...]
    constant: int = 0

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("a linear form needs at least one variable")
        if not any(self.coeffs) and self.constant == 0:
            raise ValueError("the zero form is not a valid linear form")

    @property
    def arity(self) -> int:
        return len(self.coeffs)

    def value(self, t: Sequence[int]) -> int:
        if len(t) != len(self.coeffs):
            raise ArityMismatch(f"expected {len(self.coeffs)} values, got {len(t)}")
        return sum(c * x for c, x in zip(self.coeffs, t)) + self.constant

    def is_trivial_solution(self, t: Sequence[int]) -> bool:
        """Constant must vanish and each maximal equal-value group of
        coefficients must sum to zero."""
        if len(t) != len(self.coeffs):
            raise ArityMismatch(f"expected {len(self.coeffs)} values, got {len(t)}")
        if self.constant != 0:
            return False
        groups: dict[int, int] = {}
        for c, x in zip(self.coeffs, t):
            groups[x] = groups.get(x, 0) + c
        return all(s == 0 for s in groups.values())

    def holds(self, t: Sequence[int]) -> bool:
        return self.value(t) == 0 and not self.is_trivial_solution(t)

    def solve_slot(self, slot: int, others: Sequence[int]) -> Optional[int]:
        """Value for `slot` (0-based) making the form vanish, given the other
        slots in order; None when not integral or the slot coefficient is 0."""
        a = self.coeffs[slot]
        if a == 0:
            return None
        it = iter(others)
        acc = self.constant
        for i, c in enumerate(self.coeffs):
            if i == slot:
                continue
            acc += c * next(it)
        if acc % a:
            return None
        return -acc // a

    def to_dsl(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            var = f"x{i + 1}"
            mag = abs(c)
            term = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {term}")
        if self.constant:
            sign = "+" if self.constant > 0 else "-"
            if parts:
                parts.append(f"{sign} {abs(self.constant)}")
            else:
                parts.append(str(self.constant))
        return " ".join(parts) + " = 0"


def is_translation_invariant(form: LinearForm) -> bool:
    """Unchanged under shifting every variable; a nonzero constant is read as
    breaking invariance (families whose constant ranges over all of N are
    classified at the family level instead)."""
    return sum(form.coeffs) == 0 and form.constant == 0


def is_trivial_solution(form: LinearForm, t: Sequence[int]) -> bool:
    return form.is_trivial_solution(t)


# ---------------------------------------------------------------------------
# form families


class FormFamily:
    """A finite or enumerable family of linear forms of one arity.

    `members(bound)` lists every member that can have a nontrivial solution
    with all variables <= bound; it is finite and deterministic.
    """

    arity: int
    translation_invariant: bool

    def members(self, bound: int) -> list[LinearForm]:
        raise NotImplementedError

    def holds(self, t: Sequence[int]) -> bool:
        b = max(t) if t else 0
        return any(f.holds(t) for f in self.members(b))

    def paired(self, xs: Sequence[int], ys: Sequence[int]) -> bool:
        """Some member vanishes nontrivially on both tuples (same member)."""
        b = max(max(xs), max(ys))
        return any(f.holds(xs) and f.holds(ys) for f in self.members(b))

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class ExplicitFamily(FormFamily):
    forms: tuple[LinearForm, ...]

    def __post_init__(self):
        if not self.forms:
            raise ValueError("explicit family needs at least one form")
        if len({f.arity for f in self.forms}) != 1:
            raise ArityMismatch("explicit family forms must share one arity")

    @property
    def arity(self) -> int:  # type: ignore[override]
        return self.forms[0].arity

    @property
    def translation_invariant(self) -> bool:  # type: ignore[override]
        return all(is_translation_invariant(f) for f in self.forms)

    def members(self, bound: int) -> list[LinearForm]:
        return list(self.forms)

    def describe(self) -> str:
        if len(self.forms) == 1:
            return self.forms[0].to_dsl()
        return " ; ".join(f.to_dsl() for f in self.forms)


def _primitive_pairs(bound: int) -> Iterable[tuple[int, int]]:
    """Coprime (a, b), canonical sign (a > 0, or a == 0 and b > 0)."""
    yield (0, 1)
    for a in range(1, bound + 1):
        for b in range(-bound, bound + 1):
            if gcd(a, abs(b)) == 1:
                yield (a, b)


@dataclass(frozen=True)
class DiagonalFamily(FormFamily):
    """x2 - x1 - i for i in N0: pairs at a fixed positive gap."""

    arity = 2
    translation_invariant = True  # constants range over the whole family

    def members(self, bound: int) -> list[LinearForm]:
        return [LinearForm((-1, 1), -i) for i in range(0, bound + 1)]

    def holds(self, t: Sequence[int]) -> bool:
        a, b = t
        return b > a

    def paired(self, xs, ys) -> bool:
        return xs[1] - xs[0] == ys[1] - ys[0] > 0

    def describe(self) -> str:
        return "diagonal"


@dataclass(frozen=True)
class LineFamily(FormFamily):
    """a*(x1-x3) + b*(x2-x3) over coprime (a, b): three collinear points
    under the two-sided reading."""

    arity = 3
    translation_invariant = True

    def members(self, bound: int) -> list[LinearForm]:
        out = []
        for a, b in _primitive_pairs(bound):
            out.append(LinearForm((a, b, -(a + b))))
        return out

    def holds(self, t: Sequence[int]) -> bool:
        u1, u2 = t[0] - t[2], t[1] - t[2]
        if u1 == 0 and u2 == 0:
            return False
        g = gcd(abs(u1), abs(u2))
        a, b = u2 // g, -u1 // g
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        return LinearForm((a, b, -(a + b))).holds(t)

    def paired(self, xs, ys) -> bool:
        pts = list(zip(xs, ys))
        if len(set(pts)) != 3:
            return False
        (x1, y1), (x2, y2), (x3, y3) = pts
        return (x1 - x3) * (y2 - y3) == (x2 - x3) * (y1 - y3)

    def describe(self) -> str:
        return "line"


@dataclass(frozen=True)
class ParallelFamily(FormFamily):
    """a*(x2-x1) + b*(x4-x3) over coprime (a, b): four distinct points whose
    slot pairs (1,2) and (3,4) span parallel lines.  Coincident lines count
    (four collinear points can be paired into two parallel lines); requiring
    distinct lines would let every prefix sit on one straight line and the
    condition would forbid nothing at all."""

    arity = 4
    translation_invariant = True

    def members(self, bound: int) -> list[LinearForm]:
        out = []
        for a, b in _primitive_pairs(bound):
            out.append(LinearForm((-a, a, -b, b)))
        return out

    def holds(self, t: Sequence[int]) -> bool:
        u1, u2 = t[1] - t[0], t[3] - t[2]
        if u1 == 0 and u2 == 0:
            return False
        g = gcd(abs(u1), abs(u2))
        a, b = u2 // g, -u1 // g
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        return LinearForm((-a, a, -b, b)).holds(t)

    def paired(self, xs, ys) -> bool:
        pts = list(zip(xs, ys))
        if len(set(pts)) != 4:
            return False
        p1, p2, p3, p4 = pts
        v1 = (p2[0] - p1[0], p2[1] - p1[1])
        v2 = (p4[0] - p3[0], p4[1] - p3[1])
        if v1 == (0, 0) or v2 == (0, 0):
            return False
        return v1[0] * v2[1] == v1[1] * v2[0]

    def describe(self) -> str:
        return "parallel"


@dataclass(frozen=True)
class EmptyFamily(FormFamily):
    """The empty condition: never holds."""

    arity = 0
    translation_invariant = True

    def members(self, bound: int) -> list[LinearForm]:
        return []

    def holds(self, t) -> bool:
        return False

    def paired(self, xs, ys) -> bool:
        return False

    def describe(self) -> str:
        return "empty"


# ---------------------------------------------------------------------------
# condition expressions


@dataclass(frozen=True)
class ConditionExpr:
    label: Optional[str] = field(default=None, kw_only=True)

    @property
    def arity(self) -> int:
        arities = {a for a in self._arities() if a}
        if len(arities) > 1:
            raise ArityMismatch(f"mixed arities in condition: {sorted(arities)}")
        return arities.pop() if arities else 0

    def _arities(self) -> set[int]:
        raise NotImplementedError

    def holds(self, t: Sequence[int]) -> bool:
        raise NotImplementedError

    def paired_holds(self, xs: Sequence[int], ys: Sequence[int]) -> bool:
        raise NotImplementedError

    @property
    def translation_invariant(self) -> bool:
        raise NotImplementedError

    def atoms(self) -> list["Atom"]:
        raise NotImplementedError

    def to_dsl(self) -> str:
        raise NotImplementedError

    def describe(self) -> str:
        return self.label or self.to_dsl()


@dataclass(frozen=True)
class Atom(ConditionExpr):
    family: FormFamily

    def _arities(self) -> set[int]:
        return {self.family.arity}

    def holds(self, t) -> bool:
        return self.family.holds(t)

    def paired_holds(self, xs, ys) -> bool:
        return self.family.paired(xs, ys)

    @property
    def translation_invariant(self) -> bool:
        return self.family.translation_invariant

    def atoms(self):
        return [self]

    def to_dsl(self) -> str:
        if self.label:
            return self.label
        return self.family.describe()


@dataclass(frozen=True)
class And(ConditionExpr):
    children: tuple[ConditionExpr, ...]

    def __post_init__(self):
        if not self.children:
            raise ValueError("AND of nothing")

    def _arities(self):
        return set().union(*(c._arities() for c in self.children))

    def holds(self, t) -> bool:
        return all(c.holds(t) for c in self.children)

    def paired_holds(self, xs, ys) -> bool:
        return all(c.paired_holds(xs, ys) for c in self.children)

    @property
    def translation_invariant(self) -> bool:
        return all(c.translation_invariant for c in self.children)

    def atoms(self):
        return [a for c in self.children for a in c.atoms()]

    def to_dsl(self) -> str:
        if self.label:
            return self.label
        parts = []
        for c in self.children:
            s = c.to_dsl()
            parts.append(f"({s})" if isinstance(c, Or) and not c.label else s)
        return " AND ".join(parts)


@dataclass(frozen=True)
class Or(ConditionExpr):
    children: tuple[ConditionExpr, ...]

    def __post_init__(self):
        if not self.children:
            raise ValueError("OR of nothing")

    def _arities(self):
        return set().union(*(c._arities() for c in self.children))

    def holds(self, t) -> bool:
        return any(c.holds(t) for c in self.children)

    def paired_holds(self, xs, ys) -> bool:
        return any(c.paired_holds(xs, ys) for c in self.children)

    @property
    def translation_invariant(self) -> bool:
        return all(c.translation_invariant for c in self.children)

    def atoms(self):
        return [a for c in self.children for a in c.atoms()]

    def to_dsl(self) -> str:
        if self.label:
            return self.label
        return " OR ".join(c.to_dsl() for c in self.children)


def holds(cond: ConditionExpr, t: Sequence[int]) -> bool:
    k = cond.arity
    if k and len(t) != k:
        raise ArityMismatch(f"condition has arity {k}, tuple has {len(t)}")
    return cond.holds(tuple(t))


# ---------------------------------------------------------------------------
# builtins


BUILTIN_NAMES = ("ap", "mean", "sidon", "ky_xz", "diagonal", "line", "parallel", "empty")


def builtin(name: str, params: Sequence[int] = ()) -> ConditionExpr:
    params = tuple(int(p) for p in params)
    if name == "ap":
        if not params or params[0] < 2:
            raise ValueError("ap(k) needs k >= 2")
        k = params[0]
        if k == 2:
            return Atom(DiagonalFamily(), label="ap(2)")
        forms = []
        for i in range(k - 2):
            coeffs = [0] * k
            coeffs[i] = 1
            coeffs[i + 1] = -2
            coeffs[i + 2] = 1
            forms.append(LinearForm(tuple(coeffs)))
        expr = And(tuple(Atom(ExplicitFamily((f,))) for f in forms), label=f"ap({k})")
        return expr
    if name == "mean":
        if not params or params[0] < 2:
            raise ValueError("mean(k) needs k >= 2")
        k = params[0]
        coeffs = tuple([1] * (k - 1) + [-(k - 1)])
        return Atom(ExplicitFamily((LinearForm(coeffs),)), label=f"mean({k})")
    if name == "sidon":
        k = params[0] if params else 2
        if k < 1:
            raise ValueError("sidon(k) needs k >= 1")
        if k == 2:
            # outer/inner slot split so sorted arrangements can fire
            coeffs: tuple[int, ...] = (1, -1, -1, 1)
        else:
            coeffs = tuple([1] * k + [-1] * k)
        return Atom(ExplicitFamily((LinearForm(coeffs),)), label=f"sidon({k})")
    if name == "ky_xz":
        if not params or params[0] < 1:
            raise ValueError("ky_xz(k) needs k >= 1")
        k = params[0]
        return Atom(ExplicitFamily((LinearForm((-1, k, -1)),)), label=f"ky_xz({k})")
    if name == "diagonal":
        return Atom(DiagonalFamily(), label="diagonal")
    if name == "line":
        return Atom(LineFamily(), label="line")
    if name == "parallel":
        return Atom(ParallelFamily(), label="parallel")
    if name == "empty":
        return Atom(EmptyFamily(), label="empty")
    raise ValueError(f"unknown builtin condition: {name!r}")


# named two-heap instances; kterm(k) aliases ap(k)
NAMED_CONDITIONS: dict[str, Callable[..., ConditionExpr]] = {
    "nim": lambda: builtin("empty"),
    "wythoff": lambda: builtin("diagonal"),
    "kterm": lambda k=3: builtin("ap", (k,)),
    "sidon": lambda k=2: builtin("sidon", (k,)),
    "line": lambda: builtin("line"),
    "parallel": lambda: builtin("parallel"),
}


def forbidden_values(
    cond: ConditionExpr,
    mode: AvoidanceMode,
    history: Sequence[tuple[int, int]],
    n: int,
    cap: Optional[int] = None,
) -> set[int]:
    """Candidate images v that would complete a mode-restricted condition
    instance when paired with input n, given the injection prefix `history`
    (pairs (m, pi(m)) for m = 0..n-1).  Values are capped at `cap`
    (default 16*(n+4))."""
    from .avoidance import oracle_for

    if cap is None:
        cap = 16 * (n + 4)
    inputs = sorted(m for m, _ in history)
    if inputs != list(range(len(history))):
        raise ValueError("history must cover inputs 0..n-1")
    if len(history) != n:
        raise ValueError(f"history length {len(history)} does not match n={n}")
    oracle = oracle_for(cond, mode)
    for m, w in sorted(history):
        oracle.record(m, w)
    fb = oracle.forbidden(n, cap)
    if isinstance(fb, set):
        return {v for v in fb if 1 <= v <= cap}
    return {v for v in range(1, cap + 1) if fb(v)}
