"""Forbidden-image oracles for greedy injections.

An oracle tracks an injection prefix pi(0..n-1) and answers, for input n,
which candidate images v would complete a condition instance: some member
form vanishing nontrivially on an input tuple (drawn from 0..n-1 plus n)
and on its pointwise image tuple, in the same slot arrangement, subject to
the avoidance mode:

  UNRESTRICTED      every arrangement counts
  MAX_AC            only arrangements whose history images are all < v
  ORDER_PRESERVING  only sorted input arrangements with sorted images

Specialised oracles cover the diagonal, line, parallel and two-against-two
sum families; a generic solver handles systems of explicit forms, and a
brute-force fallback covers anything else at small scale.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .conditions import (
    And,
    Atom,
    AvoidanceMode,
    CandidateSearchExhausted,
    ConditionExpr,
    DiagonalFamily,
    EmptyFamily,
    ExplicitFamily,
    LineFamily,
    LinearForm,
    Or,
    ParallelFamily,
)

Forbidden = Union[set, Callable[[int], bool]]


class Oracle:
    def record(self, n: int, v: int) -> None:
        raise NotImplementedError

    def forbidden(self, n: int, cap: int) -> Forbidden:
        raise NotImplementedError


class EmptyOracle(Oracle):
    def record(self, n, v):
        pass

    def forbidden(self, n, cap):
        return set()


class DiagonalOracle(Oracle):
    """Pairs at equal positive input and image gaps.  The image gap solved
    from the member is always positive, so every mode yields the same set."""

    def __init__(self, mode: AvoidanceMode):
        self.images: list[int] = []

    def record(self, n, v):
        self.images.append(v)

    def forbidden(self, n, cap):
        return {w + (n - m) for m, w in enumerate(self.images)}


class LineOracle(Oracle):
    """Candidate images lying on a line through two earlier points.

    Lines are keyed by the reduced normal (dy/g, -dx/g) with dx > 0 and the
    offset; per line we keep the two smallest images (for MAX_AC) and the
    slope sign (for ORDER_PRESERVING)."""

    def __init__(self, mode: AvoidanceMode):
        self.mode = mode
        self.points: list[tuple[int, int]] = []
        self.lines: dict[tuple[int, int, int], dict] = {}

    @staticmethod
    def line_key(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int, int]:
        (x1, y1), (x2, y2) = (p, q) if p[0] < q[0] else (q, p)
        dx, dy = x2 - x1, y2 - y1
        g = gcd(dx, abs(dy))
        a, b = dy // g, -dx // g
        return (a, b, a * x1 + b * y1)

    def record(self, n, v):
        pt = (n, v)
        for q in self.points:
            key = self.line_key(q, pt)
            entry = self.lines.get(key)
            if entry is None:
                self.lines[key] = {
                    "imgs": sorted((q[1], v)),
                    "up": v > q[1],
                }
            else:
                entry["imgs"] = sorted(set(entry["imgs"] + [q[1], v]))[:2]
        self.points.append(pt)

    def forbidden(self, n, cap):
        out = set()
        for (a, b, c), entry in self.lines.items():
            num = c - a * n
            if num % b:
                continue
            v = num // b
            if v < 1:
                continue
            if self.mode is AvoidanceMode.ORDER_PRESERVING and not entry["up"]:
                continue
            if self.mode is AvoidanceMode.MAX_AC and entry["imgs"][1] >= v:
                continue
            out.add(v)
        return out


class ParallelOracle(Oracle):
    """Four distinct points split into two pairs spanning parallel
    (possibly coincident) lines.  History points are grouped by
    (direction, line) so a candidate test costs O(points * lines-per-dir);
    images along one line are monotone in the input, so the per-line
    input-sorted point list answers every mode filter from its ends."""

    def __init__(self, mode: AvoidanceMode):
        self.mode = mode
        self.points: list[tuple[int, int]] = []
        # direction -> line offset -> input-sorted points on that line
        self.by_dir: dict[tuple[int, int], dict[int, list]] = {}

    @staticmethod
    def _dir(p, q):
        (x1, y1), (x2, y2) = (p, q) if p[0] < q[0] else (q, p)
        dx, dy = x2 - x1, y2 - y1
        g = gcd(dx, abs(dy))
        return (dx // g, dy // g)

    def record(self, n, v):
        pt = (n, v)
        for q in self.points:
            d = self._dir(q, pt)
            off = d[1] * q[0] - d[0] * q[1]
            pts = self.by_dir.setdefault(d, {}).setdefault(off, [])
            if q not in pts:
                pts.append(q)
                pts.sort()
            if pt not in pts:
                pts.append(pt)  # pt has the largest input so far
        self.points.append(pt)

    def _line_pair(self, pts, p, v, dy):
        """Two points on one line, excluding p, passing the mode filter."""
        elig = pts if p not in pts else [q for q in pts if q != p]
        if len(elig) < 2:
            return False
        if self.mode is AvoidanceMode.UNRESTRICTED:
            return True
        if self.mode is AvoidanceMode.MAX_AC:
            # two smallest images sit at the input extremes (monotone)
            two = elig[:2] if dy > 0 else elig[-2:]
            return max(q[1] for q in two) < v
        # ORDER_PRESERVING: ascending images need dy > 0; the pair must
        # precede p in both coordinates (p < v is checked by the caller)
        if dy <= 0:
            return False
        return elig[1][0] < p[0] and elig[1][1] < p[1]

    def forbidden(self, n, cap):
        def hit(v: int) -> bool:
            for p in self.points:
                if self.mode is not AvoidanceMode.UNRESTRICTED and p[1] >= v:
                    continue
                d = self._dir(p, (n, v))
                lines = self.by_dir.get(d)
                if not lines:
                    continue
                for pts in lines.values():
                    if self._line_pair(pts, p, v, d[1]):
                        return True
            return False

        return hit


class TwoSumOracle(Oracle):
    """Single form splitting into two +1 slots versus two -1 slots
    (sum-collision avoidance).  Every instance pairs n with a partner t on
    one side against a pair (b, c) on the other: n + t = b + c; the partner
    is always the smallest entry, so the sorted arrangement splits
    outer/inner and fires under ORDER_PRESERVING only when the form's sign
    slots do."""

    def __init__(self, mode: AvoidanceMode, form: LinearForm):
        self.mode = mode
        self.images: list[int] = []
        self.pairs_by_sum: list[list[tuple[int, int]]] = []
        plus = frozenset(i for i, c in enumerate(form.coeffs) if c > 0)
        self.op_active = plus in (frozenset({0, 3}), frozenset({1, 2}))

    def record(self, n, v):
        self.images.append(v)
        need = 2 * n + 1
        while len(self.pairs_by_sum) < need:
            self.pairs_by_sum.append([])
        for b in range(n + 1):
            self.pairs_by_sum[b + n].append((b, n))

    def forbidden(self, n, cap):
        pi = self.images
        mode = self.mode
        out: set[int] = set()
        if mode is AvoidanceMode.ORDER_PRESERVING and not self.op_active:
            return out
        top = len(self.pairs_by_sum)
        for t in range(n):
            s = t + n
            if s >= top:
                break
            ut = pi[t]
            for b, c in self.pairs_by_sum[s]:
                ub, uc = pi[b], pi[c]
                v = ub + uc - ut
                if v < 1:
                    continue
                if mode is AvoidanceMode.MAX_AC:
                    if ut >= v or ub >= v or uc >= v:
                        continue
                elif mode is AvoidanceMode.ORDER_PRESERVING:
                    # sorted inputs are (t, b, c, n) since t < min(b, c)
                    lo, hi = (ub, uc) if b <= c else (uc, ub)
                    if not (ut <= lo <= hi <= v):
                        continue
                out.add(v)
        return out


def _trivial_on(form: LinearForm, t: Sequence[int]) -> bool:
    return form.is_trivial_solution(t)


class SystemOracle(Oracle):
    """Generic solver for a disjunction of conjunctive systems of explicit
    forms.  Enumerates input arrangements (with n in any nonempty slot
    subset) by constraint propagation, then solves the image equations for
    the candidate image."""

    def __init__(self, branches: list[list[LinearForm]], mode: AvoidanceMode):
        self.branches = branches
        self.mode = mode
        self.images: list[int] = []
        self._np_images = None

    def record(self, n, v):
        self.images.append(v)
        self._np_images = None

    # -- input-side enumeration ------------------------------------------

    def _assignments(self, forms, k, n_slots, n):
        """Complete input tuples with value n at n_slots and the remaining
        slots in 0..n-1, satisfying every form nontrivially.  DFS with
        single-unknown propagation keeps the search linear for chain
        systems."""
        results: list[tuple[int, ...]] = []
        assign: dict[int, int] = {s: n for s in n_slots}

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
                elif cnt == 1:
                    c = f.coeffs[unknown]
                    if acc % c:
                        return
                    val = -acc // c
                    if not (0 <= val < n):
                        return
                    assign[unknown] = val
                    rec()
                    del assign[unknown]
                    return
            free = [i for i in range(k) if i not in assign]
            if not free:
                t = tuple(assign[i] for i in range(k))
                if all(f.value(t) == 0 and not _trivial_on(f, t) for f in forms):
                    results.append(t)
                return
            slot = free[0]
            for val in range(n):
                assign[slot] = val
                rec()
            assign.pop(slot, None)

        rec()
        return results

    def _solve_image(self, forms, t, n_slots, n):
        """Image value v from the image-side equations; None if inconsistent."""
        pi = self.images
        v = None
        for f in forms:
            a = sum(f.coeffs[i] for i in n_slots)
            b = f.constant
            for i, x in enumerate(t):
                if i not in n_slots:
                    b += f.coeffs[i] * pi[x]
            if a == 0:
                if b != 0:
                    return None
                continue
            if b % a:
                return None
            cand = -b // a
            if v is None:
                v = cand
            elif v != cand:
                return None
        return v

    def _branch_numpy(self, forms, n, out):
        """Fast path: single form, arity 3, single n-slot."""
        f = forms[0]
        pi = self._np_images
        if pi is None:
            pi = self._np_images = np.array(self.images, dtype=np.int64)
        c = f.coeffs
        const = f.constant
        for j in range(3):
            others = [i for i in range(3) if i != j]
            p, q = others
            if c[q] == 0:
                p, q = q, p
            if c[q] == 0:
                continue
            tp = np.arange(n, dtype=np.int64)
            num = -(const + c[j] * n + c[p] * tp)
            mask = num % c[q] == 0
            tq = np.where(mask, num // c[q], -1)
            mask &= (tq >= 0) & (tq < n)
            if not mask.any():
                continue
            tp, tq = tp[mask], tq[mask]
            slots = {j: np.int64(n), p: tp, q: tq}
            t0, t1, t2 = slots[0], slots[1], slots[2]
            ok = ~_np_trivial(c, const, t0, t1, t2)
            # image side
            up, uq = pi[tp], pi[tq]
            a = c[j]
            b = const + c[p] * up + c[q] * uq
            ok &= b % a == 0
            v = np.where(ok, -b // a, 0)
            ok &= v >= 1
            if self.mode is AvoidanceMode.MAX_AC:
                ok &= (up < v) & (uq < v)
            elif self.mode is AvoidanceMode.ORDER_PRESERVING:
                iu = {j: v, p: up, q: uq}
                ok &= (t0 <= t1) & (t1 <= t2)
                ok &= (iu[0] <= iu[1]) & (iu[1] <= iu[2])
            iu = {j: v, p: up, q: uq}
            ok &= ~_np_trivial(c, const, iu[0], iu[1], iu[2])
            out.update(np.unique(v[ok]).tolist())

    def forbidden(self, n, cap):
        out: set[int] = set()
        for forms in self.branches:
            k = forms[0].arity
            if len(forms) == 1 and k == 3 and n > 32:
                self._branch_numpy(forms, n, out)
                continue
            # the new input occupies exactly one slot of the tuple
            for n_slots in _slot_subsets(k):
                for t in self._assignments(forms, k, n_slots, n):
                    v = self._solve_image(forms, t, n_slots, n)
                    if v is None or v < 1:
                        continue
                    u = tuple(
                        v if i in n_slots else self.images[x]
                        for i, x in enumerate(t)
                    )
                    if any(_trivial_on(f, u) or f.value(u) != 0 for f in forms):
                        continue
                    if self.mode is AvoidanceMode.MAX_AC:
                        if any(u[i] >= v for i in range(k) if i not in n_slots):
                            continue
                    elif self.mode is AvoidanceMode.ORDER_PRESERVING:
                        if any(t[i] > t[i + 1] for i in range(k - 1)):
                            continue
                        if any(u[i] > u[i + 1] for i in range(k - 1)):
                            continue
                    out.add(v)
        return out


def _np_trivial(c, const, t0, t1, t2):
    """Vectorised maximal-group triviality for an arity-3 form."""
    if const != 0:
        return np.zeros(np.broadcast(t0, t1, t2).shape, dtype=bool)
    e01, e02, e12 = t0 == t1, t0 == t2, t1 == t2
    all_eq = e01 & e02
    res = all_eq & (sum(c) == 0)
    res |= (e01 & ~e02) & (c[0] + c[1] == 0 and c[2] == 0)
    res |= (e02 & ~e01) & (c[0] + c[2] == 0 and c[1] == 0)
    res |= (e12 & ~e01) & (c[1] + c[2] == 0 and c[0] == 0)
    return res


def _slot_subsets(k: int):
    return [frozenset({i}) for i in range(k)]


class BruteOracle(Oracle):
    """Last-resort oracle: full arrangement enumeration per candidate."""

    LIMIT = 400_000

    def __init__(self, cond: ConditionExpr, mode: AvoidanceMode):
        self.cond = cond
        self.mode = mode
        self.images: list[int] = []

    def record(self, n, v):
        self.images.append(v)

    def forbidden(self, n, cap):
        k = self.cond.arity
        if (n + 1) ** k > self.LIMIT:
            raise CandidateSearchExhausted(n, cap)
        pi = self.images
        cond = self.cond
        mode = self.mode

        def hit(v: int) -> bool:
            for xs in itertools.product(range(n + 1), repeat=k):
                if xs.count(n) != 1:
                    continue
                ys = tuple(v if x == n else pi[x] for x in xs)
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

        return hit


class UnionOracle(Oracle):
    def __init__(self, parts: list[Oracle]):
        self.parts = parts

    def record(self, n, v):
        for p in self.parts:
            p.record(n, v)

    def forbidden(self, n, cap):
        sets: set[int] = set()
        preds = []
        for p in self.parts:
            fb = p.forbidden(n, cap)
            if isinstance(fb, set):
                sets |= fb
            else:
                preds.append(fb)
        if not preds:
            return sets
        return lambda v: v in sets or any(pred(v) for pred in preds)


def _dnf(cond: ConditionExpr) -> list[list[Atom]]:
    if isinstance(cond, Atom):
        return [[cond]]
    if isinstance(cond, Or):
        out = []
        for c in cond.children:
            out.extend(_dnf(c))
        return out
    if isinstance(cond, And):
        prod: list[list[Atom]] = [[]]
        for c in cond.children:
            prod = [a + b for a in prod for b in _dnf(c)]
        return prod
    raise TypeError(f"not a condition node: {cond!r}")


def _is_two_sum(form: LinearForm) -> bool:
    return (
        form.arity == 4
        and form.constant == 0
        and sorted(form.coeffs) == [-1, -1, 1, 1]
    )


def oracle_for(cond: ConditionExpr, mode: AvoidanceMode) -> Oracle:
    """Pick the cheapest correct oracle for the condition."""
    parts: list[Oracle] = []
    system_branches: list[list[LinearForm]] = []
    for branch in _dnf(cond):
        families = [atom.family for atom in branch]
        if len(families) == 1 and isinstance(families[0], EmptyFamily):
            parts.append(EmptyOracle())
            continue
        if len(families) == 1 and isinstance(families[0], DiagonalFamily):
            parts.append(DiagonalOracle(mode))
            continue
        if len(families) == 1 and isinstance(families[0], LineFamily):
            parts.append(LineOracle(mode))
            continue
        if len(families) == 1 and isinstance(families[0], ParallelFamily):
            parts.append(ParallelOracle(mode))
            continue
        if all(isinstance(f, ExplicitFamily) for f in families):
            # distribute multi-member atoms into concrete form systems
            for combo in itertools.product(*[f.forms for f in families]):
                forms = list(combo)
                if len(forms) == 1 and _is_two_sum(forms[0]):
                    parts.append(TwoSumOracle(mode, forms[0]))
                else:
                    system_branches.append(forms)
            continue
        return BruteOracle(cond, mode)
    if system_branches:
        parts.append(SystemOracle(system_branches, mode))
    if len(parts) == 1:
        return parts[0]
    return UnionOracle(parts)
