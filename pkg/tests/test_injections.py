import random
from fractions import Fraction

import pytest

from complygames.conditions import (
    AvoidanceMode as M,
    CandidateSearchExhausted,
    builtin,
)
from complygames.injections import (
    greedy_injection,
    is_involution,
    named,
    permutation_coverage,
    ratio_bounds,
    unverifiable_points,
)
from complygames.verify import brute_forbidden

AP3 = builtin("ap", (3,))


class TestKnownPrefixes:
    def test_nim_identity(self):
        inj = named("nim", M.MAX_AC, 5)
        assert inj.images == (0, 1, 2, 3, 4, 5)

    def test_classical_wythoff(self):
        inj = named("wythoff", M.MAX_AC, 6)
        assert inj.images == (0, 2, 1, 5, 7, 3, 10)

    def test_three_term_modes_diverge_at_12(self):
        # shared prefix through n=11; the involution pins max-ac to 10 and
        # the strict variant (decreasing image progressions banned) to 13
        shared = (0, 1, 3, 2, 4, 5, 7, 6, 9, 8, 12, 11)
        mx = greedy_injection(AP3, M.MAX_AC, 12)
        un = greedy_injection(AP3, M.UNRESTRICTED, 12)
        assert mx.images[:12] == shared
        assert un.images[:12] == shared
        assert mx.images[12] == 10
        assert un.images[12] == 13

    def test_order_preserving_matches_maxac_for_ap3(self):
        a = greedy_injection(AP3, M.MAX_AC, 200)
        b = greedy_injection(AP3, M.ORDER_PRESERVING, 200)
        assert a.images == b.images

    def test_sidon_all_three_modes(self):
        sd = builtin("sidon", (2,))
        shared = (0, 1, 3, 2)
        for mode, tail in [
            (M.UNRESTRICTED, (5, 9, 14)),
            (M.MAX_AC, (5, 4, 9)),
            (M.ORDER_PRESERVING, (4, 7, 6)),
        ]:
            inj = greedy_injection(sd, mode, 6)
            assert inj.images[:4] == shared, mode
            assert inj.images[4:] == tail, mode

    def test_line_prefix_and_divergence(self):
        ln = builtin("line")
        shared = (0, 1, 3, 2, 5, 4, 8, 11, 6, 13, 12, 7)
        un = greedy_injection(ln, M.UNRESTRICTED, 12)
        mx = greedy_injection(ln, M.MAX_AC, 12)
        assert un.images[:12] == shared
        assert mx.images[:12] == shared
        assert un.images[12] == 22
        assert mx.images[12] == 10

    def test_line_order_preserving_coincides(self):
        ln = builtin("line")
        a = greedy_injection(ln, M.MAX_AC, 200)
        b = greedy_injection(ln, M.ORDER_PRESERVING, 200)
        assert a.images == b.images


class TestInjectionStructure:
    def test_starts_at_zero_and_injective(self):
        inj = greedy_injection(AP3, M.MAX_AC, 50)
        assert inj.pairs[0] == (0, 0)
        assert all(v >= 1 for n, v in inj.pairs if n >= 1)
        assert len(set(inj.images)) == len(inj.images)

    def test_greedy_minimality_independent_scan(self):
        # every unused v < pi(n) is banned, re-checked straight from holds
        for cond, top in ((AP3, 18), (builtin("sidon", (2,)), 12), (builtin("line"), 18)):
            for mode in M:
                inj = greedy_injection(cond, mode, top)
                for n in range(1, top + 1):
                    chosen = inj.image(n)
                    history = inj.pairs[:n]
                    used = {v for _, v in history}
                    banned = brute_forbidden(cond, mode, history, n, chosen)
                    for v in range(1, chosen):
                        assert v in used or v in banned, (cond.describe(), mode, n, v)
                    assert chosen not in banned, (cond.describe(), mode, n)

    def test_mode_hierarchy_on_sampled_histories(self):
        # OP-forbidden <= MaxAc-forbidden <= Unrestricted-forbidden
        rng = random.Random(42)
        for cond in (AP3, builtin("sidon", (2,)), builtin("line")):
            base = greedy_injection(cond, M.MAX_AC, 14)
            for _ in range(6):
                n = rng.randint(4, 14)
                history = base.pairs[:n]
                cap = 3 * n + 8
                op = brute_forbidden(cond, M.ORDER_PRESERVING, history, n, cap)
                mx = brute_forbidden(cond, M.MAX_AC, history, n, cap)
                un = brute_forbidden(cond, M.UNRESTRICTED, history, n, cap)
                assert op <= mx <= un

    def test_single_variable_condition_rejected(self):
        from complygames.conditions import Atom, ExplicitFamily, LinearForm

        cond = Atom(ExplicitFamily((LinearForm((1,), -3),)))
        with pytest.raises(ValueError):
            greedy_injection(cond, M.MAX_AC, 5)

    def test_cap_exhaustion_raises(self):
        # parallel-greedy images outgrow a unit cap within a few steps
        with pytest.raises(CandidateSearchExhausted) as ei:
            greedy_injection(builtin("parallel"), M.MAX_AC, 30, cap_factor=1)
        assert ei.value.n >= 1 and ei.value.cap == ei.value.n + 4


class TestInvolution:
    @pytest.mark.parametrize("name,params", [("ap", (3,)), ("sidon", (2,)), ("mean", (3,))])
    def test_maxac_and_order_preserving(self, name, params):
        cond = builtin(name, params)
        for mode in (M.MAX_AC, M.ORDER_PRESERVING):
            assert is_involution(greedy_injection(cond, mode, 120)) is True

    def test_witness_reported(self):
        # a decreasing-progression instance breaks self-inverseness for the
        # strict 3-term variant: pi(10) = 12 but pi(12) = 13
        inj = greedy_injection(AP3, M.UNRESTRICTED, 12)
        assert is_involution(inj) == 10

    def test_nim_is_involution(self):
        assert is_involution(named("nim", M.MAX_AC, 10)) is True

    def test_out_of_prefix_images_unverifiable(self):
        inj = greedy_injection(builtin("parallel"), M.MAX_AC, 30, cap_factor=512)
        pts = unverifiable_points(inj)
        assert all(inj.image(n) > 30 for n in pts)
        assert is_involution(inj) is True


class TestRatiosAndCoverage:
    def test_nim_ratios(self):
        lo, hi = ratio_bounds(named("nim", M.MAX_AC, 10))
        assert lo == hi == 1

    def test_ap3_ratio_window(self):
        inj = greedy_injection(AP3, M.UNRESTRICTED, 400)
        lo, hi = ratio_bounds(inj)
        assert lo >= Fraction(3, 8)
        # the strict upper bound is met from n=3 on; n=2 attains 3/2 exactly
        assert hi == Fraction(3, 2)
        assert max(Fraction(v, n) for n, v in inj.pairs if n >= 3) < Fraction(3, 2)

    def test_wythoff_ratios_exceed_three_halves(self):
        # the [3/8, 3/2) window is specific to the 3-term permutation;
        # the pairs game here reaches 2 at (1, 2)
        inj = named("wythoff", M.MAX_AC, 6)
        lo, hi = ratio_bounds(inj)
        assert hi == Fraction(2, 1)
        assert lo == Fraction(1, 2)

    def test_coverage_examples(self):
        assert permutation_coverage(named("nim", M.MAX_AC, 5)) == 6
        # max-ac 3-term at N=11 has not placed 10 yet
        assert permutation_coverage(greedy_injection(AP3, M.MAX_AC, 11)) == 10
        # once n=12 maps to 10, coverage moves on
        assert permutation_coverage(greedy_injection(AP3, M.MAX_AC, 12)) == 13
        assert permutation_coverage(named("wythoff", M.MAX_AC, 6)) == 4

    def test_unknown_named(self):
        with pytest.raises(ValueError):
            named("chess", M.MAX_AC, 5)
