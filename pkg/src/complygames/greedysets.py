"""Greedy generators for condition-avoiding sets and closed-form comparators.

The generator scans upward and admits n exactly when no tuple drawn from
the current elements plus n (with n used at least once) satisfies the
condition nontrivially.  Exclusions are certified: completions are marked
ahead when their second-largest element is admitted, so every excluded n
carries a concrete witnessing tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .avoidance import _dnf
from .conditions import (
    And,
    Atom,
    ConditionExpr,
    ExplicitFamily,
    LinearForm,
    builtin,
)


@dataclass(frozen=True)
class GreedySet:
    condition: str
    N: int
    start: int
    seed: tuple[int, ...]
    elements: tuple[int, ...]
    witnesses: dict[int, tuple] = field(compare=False, repr=False)

    def __contains__(self, x: int) -> bool:
        return x in set(self.elements)

    def witness_for(self, n: int):
        """(form, tuple) certifying why n was excluded."""
        return self.witnesses.get(n)


class _BranchSieve:
    """Marks future completions for one conjunctive system of forms."""

    def __init__(self, forms: list[LinearForm]):
        self.forms = forms
        self.k = forms[0].arity
        single = len(forms) == 1
        self.numpy_ok = single and self.k == 3

    # -- generic DFS over element assignments ------------------------------

    def _complete(self, elems: list[int], pinned: dict[int, int], future: Optional[int]):
        """Assignments of the remaining slots from elems; yields (tuple, u)
        where u is the solved future-slot value (or None when future is
        None and the tuple is complete)."""
        forms, k = self.forms, self.k
        results = []
        assign = dict(pinned)

        def rec():
            for f in forms:
                acc = f.constant
                unknown = None
                cnt = 0
                for i, c in enumerate(f.coeffs):
                    if i in assign:
                        acc += c * assign[i]
                    elif c != 0:
                        cnt += 1
                        unknown = i
                if cnt == 0:
                    if acc != 0:
                        return
                elif cnt == 1 and unknown != future:
                    c = f.coeffs[unknown]
                    if acc % c:
                        return
                    val = -acc // c
                    if val not in self._elem_set:
                        return
                    assign[unknown] = val
                    rec()
                    del assign[unknown]
                    return
            free = [i for i in range(k) if i not in assign and i != future]
            if free:
                slot = free[0]
                for val in elems:
                    assign[slot] = val
                    rec()
                assign.pop(slot, None)
                return
            if future is None:
                t = tuple(assign[i] for i in range(k))
                if all(f.value(t) == 0 and not f.is_trivial_solution(t) for f in forms):
                    results.append((t, None))
                return
            # solve the future slot
            u = None
            for f in forms:
                a = f.coeffs[future]
                acc = f.constant + sum(
                    c * assign[i] for i, c in enumerate(f.coeffs) if i != future
                )
                if a == 0:
                    if acc != 0:
                        return
                    continue
                if acc % a:
                    return
                cand = -acc // a
                if u is None:
                    u = cand
                elif u != cand:
                    return
            if u is None:
                return
            t = tuple(u if i == future else assign[i] for i in range(self.k))
            if all(not f.is_trivial_solution(t) for f in forms):
                results.append((t, u))

        self._elem_set = set(elems)
        rec()
        return results

    def marks_for(self, a: int, elems: list[int], elem_arr, limit: int):
        """Future values u > a completed by admitting a (a occupies at least
        one slot; the rest come from elems which already contains a)."""
        if self.numpy_ok and elem_arr is not None and len(elems) > 16:
            return self._marks_numpy(a, elem_arr, limit)
        out = []
        k = self.k
        seen_sigs = set()
        single = len(self.forms) == 1
        for future in range(k):
            for a_slot in range(k):
                if a_slot == future:
                    continue
                if single:
                    # slots with equal coefficients are interchangeable
                    sig = (self.forms[0].coeffs[future], self.forms[0].coeffs[a_slot])
                    if sig in seen_sigs:
                        continue
                    seen_sigs.add(sig)
                for t, u in self._complete(elems, {a_slot: a}, future):
                    if u is not None and a < u <= limit and max(t) == u and a in t:
                        out.append((u, t))
        return out

    def _marks_numpy(self, a: int, elem_arr, limit: int):
        """Vectorised completions for a single arity-3 form."""
        f = self.forms[0]
        c, const = f.coeffs, f.constant
        out = []
        for future in range(3):
            others = [i for i in range(3) if i != future]
            for a_slot in others:
                (e_slot,) = [i for i in others if i != a_slot]
                ce, cf = c[e_slot], c[future]
                if cf == 0:
                    continue
                num = -(const + c[a_slot] * a + ce * elem_arr)
                mask = num % cf == 0
                u = np.where(mask, num // cf, 0)
                mask &= (u > a) & (u <= limit) & (u > elem_arr)
                if not mask.any():
                    continue
                es = elem_arr[mask]
                us = u[mask]
                t0 = {future: us, a_slot: np.full_like(us, a), e_slot: es}
                triv = _np_group_trivial(c, const, t0[0], t0[1], t0[2])
                for e_val, u_val, tr in zip(es.tolist(), us.tolist(), (~triv).tolist()):
                    if tr:
                        t = tuple(
                            u_val if i == future else (a if i == a_slot else e_val)
                            for i in range(3)
                        )
                        out.append((u_val, t))
        return out



def _np_group_trivial(c, const, t0, t1, t2):
    if const != 0:
        return np.zeros(np.broadcast(t0, t1, t2).shape, dtype=bool)
    e01, e02, e12 = t0 == t1, t0 == t2, t1 == t2
    res = (e01 & e02) & (sum(c) == 0)
    res |= (e01 & ~e02) & (c[0] + c[1] == 0 and c[2] == 0)
    res |= (e02 & ~e01) & (c[0] + c[2] == 0 and c[1] == 0)
    res |= (e12 & ~e01) & (c[1] + c[2] == 0 and c[0] == 0)
    return res


def _branches(cond: ConditionExpr) -> Optional[list[list[LinearForm]]]:
    """Explicit form systems in disjunctive normal form, or None when the
    condition mixes in enumerable families (handled by brute scanning)."""
    out: list[list[LinearForm]] = []
    for branch in _dnf(cond):
        fams = [atom.family for atom in branch]
        if not all(isinstance(f, ExplicitFamily) for f in fams):
            return None
        for combo in itertools.product(*[f.forms for f in fams]):
            out.append(list(combo))
    return out


def greedy_avoid_set(
    cond: ConditionExpr,
    N: int,
    seed: Sequence[int] = (),
    start: Optional[int] = None,
) -> GreedySet:
    """Greedy scan from `start` (default 0 for translation-invariant
    conditions, else 1).  Seed values must precede the scan window and must
    themselves avoid the condition."""
    if start is None:
        start = 0 if cond.translation_invariant else 1
    seed = tuple(sorted(set(seed)))
    if seed and seed[-1] >= start:
        raise ValueError("seed values must be smaller than the scan start")
    if _violates(cond, list(seed)):
        raise ValueError("seed already contains a condition instance")

    branches = _branches(cond)
    if branches is None:
        return _greedy_brute(cond, N, seed, start)

    sieves = [_BranchSieve(forms) for forms in branches]
    elements: list[int] = list(seed)
    elem_arr = np.array(elements, dtype=np.int64)
    forbidden: dict[int, tuple] = {}
    witnesses: dict[int, tuple] = {}

    def admit(a: int):
        nonlocal elem_arr
        elements.append(a)
        elem_arr = np.append(elem_arr, a)
        for sieve in sieves:
            for u, t in sieve.marks_for(a, elements, elem_arr, N):
                if u not in forbidden:
                    forbidden[u] = (sieve.forms[0], t)

    staged = list(elements)
    elements, elem_arr = [], np.array([], dtype=np.int64)
    for s in staged:
        admit(s)

    for n in range(start, N + 1):
        hit = forbidden.get(n)
        if hit is None:
            admit(n)
        else:
            witnesses[n] = hit
    return GreedySet(cond.describe(), N, start, seed, tuple(elements), witnesses)


def _violates(cond: ConditionExpr, elems: list[int]) -> bool:
    """A greedy-reachable violation: some holding tuple whose maximum entry
    occupies exactly one slot (the candidate's slot at admission time)."""
    k = cond.arity
    if k == 0 or not elems:
        return False
    for t in itertools.product(elems, repeat=k):
        if t.count(max(t)) == 1 and cond.holds(t):
            return True
    return False


def _greedy_brute(cond, N, seed, start) -> GreedySet:
    k = cond.arity
    elements = list(seed)
    witnesses: dict[int, tuple] = {}
    for n in range(start, N + 1):
        hit = None
        for j in range(k):
            for rest in itertools.product(elements, repeat=k - 1):
                t = rest[:j] + (n,) + rest[j:]
                if cond.holds(t):
                    hit = (None, t)
                    break
            if hit:
                break
        if hit is None:
            elements.append(n)
        else:
            witnesses[n] = hit
    return GreedySet(cond.describe(), N, start, tuple(seed), tuple(elements), witnesses)


def stanley_sequence(initial: Sequence[int], N: int) -> GreedySet:
    """Greedy 3-AP-free continuation of a prescribed initial set."""
    initial = tuple(sorted(set(initial)))
    if not initial:
        raise ValueError("initial set must be nonempty")
    cond = builtin("ap", (3,))
    if _violates(cond, list(initial)):
        raise ValueError("initial set contains a three-term arithmetic progression")
    return greedy_avoid_set(cond, N, seed=initial, start=max(initial) + 1)


# ---------------------------------------------------------------------------
# closed forms


def is_base3_01(x: int) -> bool:
    while x:
        if x % 3 == 2:
            return False
        x //= 3
    return True


def base3_members(N: int) -> list[int]:
    return [x for x in range(N + 1) if is_base3_01(x)]


def basek_01_members(k: int, N: int) -> list[int]:
    """All x <= N whose base-k digits are 0 or 1."""
    if k < 3:
        raise ValueError("need base k >= 3")
    out = []
    for x in range(N + 1):
        y = x
        while y:
            if y % k > 1:
                break
            y //= k
        else:
            out.append(x)
    return out


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    d = 2
    while d * d <= k:
        if k % d == 0:
            return False
        d += 1
    return True


def kprime_closed_form(k: int, N: int) -> list[int]:
    """Digit rule for k-term progression avoidance with k > 3 prime, taken
    literally: digit k-1 never used except in the least digit, where 0 is
    never used.  Exploratory; compare against the greedy set rather than
    asserting equality."""
    if not _is_prime(k) or k <= 3:
        raise ValueError("need a prime k > 3")
    out = []
    for x in range(N + 1):
        digits = []
        y = x
        while y:
            digits.append(y % k)
            y //= k
        if not digits:
            digits = [0]
        ok = digits[0] != 0 and all(d != k - 1 for d in digits[1:])
        if ok:
            out.append(x)
    return out


def density_profile(elements: Sequence[int], checkpoints: Sequence[int]) -> list[int]:
    """#(elements ∩ [0, c]) per checkpoint."""
    s = sorted(elements)
    out = []
    import bisect

    for c in checkpoints:
        out.append(bisect.bisect_right(s, c))
    return out
