"""Tests for deciders and witness constructions.

Oracles here are deliberately independent of the library's certification
path: orbits of sets, partitions, and tuples are walked with direct image
arithmetic on external values, never through action index tables.
"""

import math
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regcycle.actions import (
    DiagonalGroupData,
    KSetsAction,
    NaturalAction,
    PartitionsAction,
    ProductAction,
    VectorsAction,
    WreathElement,
    orbit_lengths,
)
from regcycle.gfalgebra import AffineMap, Matrix, field_ops
from regcycle.groups import (
    AmbientAutomorphisms,
    all_permutations,
    alternating_group,
    closure,
    symmetric_group,
)
from regcycle.permcore import (
    CycleType,
    Permutation,
    cycle_types,
    nk_threshold,
    parse_cycles,
)
from regcycle.regular import (
    CASE_CONSECUTIVE_RUNS,
    CASE_IMPOSSIBLE,
    CASE_PADDED_NEAR_FULL,
    DomainCapError,
    PartitionCaseError,
    Verdict,
    affine_witness,
    cycle_ratio_stats,
    decide,
    decide_bruteforce,
    decide_fix_union,
    diagonal_fpr_audit,
    fpr_sum_sufficient,
    fraction_str,
    gl_regular_vector_set,
    kset_decide,
    kset_verdict,
    kset_witness,
    ksets_theorem_scan,
    lift_witness,
    min_cover,
    partition_witness,
    product_witness,
    render_element,
    wreath_fpr_max,
)


def perm_strategy(degree: int):
    return st.permutations(range(degree)).map(lambda t: Permutation(tuple(t)))


def canonical_of_type(parts) -> Permutation:
    """Permutation with the given cycle lengths on consecutive points."""
    cycles = []
    at = 1
    for p in sorted(parts, reverse=True):
        cycles.append(tuple(range(at, at + p)))
        at += p
    return parse_cycles(
        "".join("(" + " ".join(str(v) for v in c) + ")" for c in cycles if len(c) > 1),
        sum(parts),
    )


def kset_orbit_length(g: Permutation, s: tuple[int, ...]) -> int:
    """Independent oracle: walk the set orbit by direct image arithmetic."""
    imgs = g.images

    def step(t):
        return tuple(sorted(imgs[v - 1] + 1 for v in t))

    cur = step(s)
    n = 1
    while cur != s:
        cur = step(cur)
        n += 1
        assert n <= 10**6
    return n


def partition_orbit_length(g: Permutation, blocks) -> int:
    """Independent oracle for block-system orbits, external labels."""
    imgs = g.images

    def step(bs):
        return frozenset(frozenset(imgs[v - 1] + 1 for v in blk) for blk in bs)

    start = frozenset(frozenset(blk) for blk in blocks)
    cur = step(start)
    n = 1
    while cur != start:
        cur = step(cur)
        n += 1
        assert n <= 10**6
    return n


def tuple_orbit_length(g: WreathElement, w: tuple[int, ...]) -> int:
    """Independent oracle for the product action, external 1-based tuples."""
    tinv = g.top.inverse().images

    def step(t):
        return tuple(
            g.components[tinv[j]].images[t[tinv[j]] - 1] + 1 for j in range(len(t))
        )

    cur = step(w)
    n = 1
    while cur != w:
        cur = step(cur)
        n += 1
        assert n <= 10**6
    return n


# ---------------------------------------------------------------------------
# Verdict plumbing


class TestVerdict:
    def test_json_shape_and_order(self):
        v = decide_bruteforce(NaturalAction(4), parse_cycles("(1 2 3 4)", 4))
        js = v.to_json()
        assert list(js) == [
            "schema",
            "element",
            "order",
            "induced_order",
            "action",
            "verdict",
            "witness",
            "method",
            "certified",
            "flags",
        ]
        assert js["schema"] == 1
        assert js["verdict"] is True
        assert js["witness"] == 1
        assert js["action"] == "natural:4"

    def test_rejects_unknown_method(self):
        with pytest.raises(ValueError):
            Verdict(2, 2, True, None, "magic", True)

    def test_rejects_induced_above_order(self):
        with pytest.raises(ValueError):
            Verdict(2, 4, True, None, "bruteforce", True)

    def test_fraction_str(self):
        assert fraction_str(Fraction(1, 3)) == "1/3"
        assert fraction_str(Fraction(2)) == "2/1"
        assert fraction_str(Fraction(0)) == "0/1"


class TestRenderElement:
    def test_permutation(self):
        assert render_element(parse_cycles("(1 2)", 4)) == "(1 2)"
        assert render_element(Permutation.identity(3)) == "()"

    def test_wreath(self):
        g = WreathElement(
            (parse_cycles("(1 2)", 3), Permutation.identity(3)),
            parse_cycles("(1 2)", 2),
        )
        assert render_element(g) == "(1 2)|()@(1 2)"

    def test_matrix(self):
        f = field_ops(3)
        m = Matrix.from_rows(f, [[1, 1], [0, 1]])
        assert render_element(m) == "1,1,0,1"

    def test_affine(self):
        f = field_ops(3)
        a = AffineMap(Matrix.from_rows(f, [[1]]), (2,))
        assert render_element(a) == "1+2"


# ---------------------------------------------------------------------------
# Brute force and fixed-set-union deciders


class TestDecideBruteforce:
    def test_type_532_on_2sets(self):
        # 30 divides no orbit length: the lcm needs all three cycles but a
        # 2-set can only meet two of them nontrivially.
        g = parse_cycles("(1 2 3 4 5)(6 7 8)(9 10)", 10)
        act = KSetsAction(10, 2)
        v = decide_bruteforce(act, g)
        assert v.group_order_of_g == 30
        assert v.induced_order == 30
        assert not v.has_regular_cycle
        assert v.witness is None
        assert v.certified
        assert sorted(orbit_lengths(act.induced_images(g))) == [1, 3, 5, 5, 6, 10, 15]

    def test_witness_is_first_in_point_order(self):
        g = parse_cycles("(1 2 3)", 5)
        v = decide_bruteforce(NaturalAction(5), g)
        assert v.has_regular_cycle
        assert v.witness == 1

    def test_unfaithful_flag(self):
        act = PartitionsAction(2, 2)
        g = parse_cycles("(1 2)(3 4)", 4)
        v = decide_bruteforce(act, g)
        assert v.induced_order == 1 < v.group_order_of_g
        assert "unfaithful" in v.flags
        assert not v.has_regular_cycle

    def test_four_cycle_on_2x2_partitions(self):
        act = PartitionsAction(2, 2)
        g = parse_cycles("(1 2 3 4)", 4)
        v = decide_bruteforce(act, g)
        assert v.group_order_of_g == 4
        assert not v.has_regular_cycle
        assert max(orbit_lengths(act.induced_images(g))) == 2

    def test_identity(self):
        v = decide_bruteforce(NaturalAction(3), Permutation.identity(3))
        assert v.has_regular_cycle and v.witness == 1 and v.group_order_of_g == 1


class TestDecideFixUnion:
    def test_six_cycle_natural(self):
        g = parse_cycles("(1 2 3 4 5 6)", 6)
        v = decide_fix_union(NaturalAction(6), g)
        assert v.has_regular_cycle and v.witness == 1 and v.certified

    def test_witness_is_first_uncovered(self):
        # g^2 fixes 1 and 2, so the first point clear of every fixed set is 3.
        g = parse_cycles("(1 2)(3 4 5 6)", 6)
        v = decide_fix_union(NaturalAction(6), g)
        assert v.has_regular_cycle
        assert v.witness == 3
        g2 = parse_cycles("(1 2)(3 4 5 6)", 7)
        v2 = decide_fix_union(KSetsAction(7, 2), g2)
        b2 = decide_bruteforce(KSetsAction(7, 2), g2)
        assert v2.has_regular_cycle == b2.has_regular_cycle

    def test_identity_trivially_regular(self):
        v = decide_fix_union(NaturalAction(4), Permutation.identity(4))
        assert v.has_regular_cycle
        assert "identity" in v.flags

    def test_unfaithful_means_no_regular_cycle(self):
        act = PartitionsAction(2, 2)
        g = parse_cycles("(1 2 3 4)", 4)
        v = decide_fix_union(act, g)
        assert not v.has_regular_cycle
        assert v.induced_order == 2

    @settings(max_examples=150, deadline=None)
    @given(perm_strategy(7))
    def test_agrees_with_bruteforce_natural(self, g):
        a = NaturalAction(7)
        assert (
            decide_fix_union(a, g).has_regular_cycle
            == decide_bruteforce(a, g).has_regular_cycle
        )

    @settings(max_examples=80, deadline=None)
    @given(perm_strategy(7), st.integers(min_value=1, max_value=3))
    def test_agrees_with_bruteforce_ksets(self, g, k):
        a = KSetsAction(7, k)
        vf = decide_fix_union(a, g)
        vb = decide_bruteforce(a, g)
        assert vf.has_regular_cycle == vb.has_regular_cycle
        assert vf.induced_order == vb.induced_order

    @settings(max_examples=60, deadline=None)
    @given(perm_strategy(6))
    def test_agrees_with_bruteforce_partitions(self, g):
        a = PartitionsAction(2, 3)
        assert (
            decide_fix_union(a, g).has_regular_cycle
            == decide_bruteforce(a, g).has_regular_cycle
        )

    @settings(max_examples=100, deadline=None)
    @given(perm_strategy(8), perm_strategy(8))
    def test_conjugation_invariance(self, g, c):
        a = NaturalAction(8)
        assert (
            decide_fix_union(a, g).has_regular_cycle
            == decide_fix_union(a, g.conj(c)).has_regular_cycle
        )


class TestFprSumSufficient:
    def test_six_cycle_sum_zero(self):
        g = parse_cycles("(1 2 3 4 5 6)", 6)
        res = fpr_sum_sufficient(NaturalAction(6), g)
        assert res.total == 0
        assert res.verdict is not None
        assert res.verdict.has_regular_cycle
        assert res.verdict.method == "fpr_sum_sufficient"

    def test_inconclusive_when_sum_at_least_one(self):
        g = parse_cycles("(1 2)(3 4 5)", 6)
        res = fpr_sum_sufficient(NaturalAction(6), g)
        assert res.total == Fraction(4, 6) + Fraction(3, 6)
        assert res.verdict is None

    def test_terms_are_per_prime(self):
        g = parse_cycles("(1 2 3 4 5 6)", 8)
        res = fpr_sum_sufficient(NaturalAction(8), g)
        terms = dict(res.per_prime)
        assert set(terms) == {2, 3}
        # g^3 is a product of three 2-cycles: fixes 2 points of 8.
        assert terms[2] == Fraction(2, 8)
        # g^2 is two 3-cycles: fixes 2 points.
        assert terms[3] == Fraction(2, 8)

    @settings(max_examples=120, deadline=None)
    @given(perm_strategy(7))
    def test_soundness(self, g):
        a = NaturalAction(7)
        res = fpr_sum_sufficient(a, g)
        if res.verdict is not None:
            assert decide_bruteforce(a, g).has_regular_cycle

    def test_identity(self):
        res = fpr_sum_sufficient(NaturalAction(3), Permutation.identity(3))
        assert res.total == 0 and res.verdict.has_regular_cycle


class TestLiftWitness:
    def test_four_cycle(self):
        g = parse_cycles("(1 2 3 4)", 4)
        assert lift_witness(NaturalAction(4), g, 2, 1) == 1

    def test_nine_cycle(self):
        g = parse_cycles("(1 2 3 4 5 6 7 8 9)", 9)
        assert lift_witness(NaturalAction(9), g, 3, 5) == 5

    def test_rejects_p_without_square(self):
        g = parse_cycles("(1 2 3 4 5 6)", 6)
        with pytest.raises(ValueError):
            lift_witness(NaturalAction(6), g, 2, 1)

    def test_rejects_nonregular_base_point(self):
        g = parse_cycles("(1 2 3 4)(5 6)", 6)
        # 5 is fixed by g^2, so its g^2-orbit has length 1, not |g|/2 = 2.
        with pytest.raises(ValueError):
            lift_witness(NaturalAction(6), g, 2, 5)

    @settings(max_examples=60, deadline=None)
    @given(perm_strategy(9))
    def test_lift_property(self, g):
        order = g.order()
        for p in (2, 3):
            if order % (p * p) != 0:
                continue
            a = NaturalAction(9)
            gp = g**p
            target = order // p
            for start in range(1, 10):
                cur = start
                steps = 0
                while True:
                    cur = gp.images[cur - 1] + 1
                    steps += 1
                    if cur == start or steps > target:
                        break
                if steps == target:
                    w = lift_witness(a, g, p, start)
                    assert kset_orbit_length(g, (w,)) == order
                    break


class TestCycleRatioStats:
    def test_counts(self):
        g = parse_cycles("(1 2 3 4 5)(6 7 8)(9 10)", 10)
        act = KSetsAction(10, 2)
        regular, total, ratio = cycle_ratio_stats(act, g)
        assert regular == 0 and total == 7 and ratio == 0

    def test_natural(self):
        g = parse_cycles("(1 2)(3 4)", 5)
        regular, total, ratio = cycle_ratio_stats(NaturalAction(5), g)
        assert (regular, total) == (2, 3)
        assert ratio == Fraction(2, 3)


# ---------------------------------------------------------------------------
# k-sets: cover, decision, witness, threshold scan


class TestMinCover:
    def test_examples(self):
        assert min_cover((5, 3, 2)) == (3, (2, 3, 5))
        assert min_cover((6, 4)) == (2, (4, 6))
        assert min_cover((6, 3, 2)) == (1, (6,))
        assert min_cover((1, 1, 1)) == (0, ())
        assert min_cover((4,)) == (1, (4,))

    def test_tie_break_prefers_small_lengths(self):
        # lcm = 30; {6, 10}, {6, 15}, {10, 15} all work; lex smallest wins.
        assert min_cover((15, 10, 6)) == (2, (6, 10))

    def test_maximal_prime_power_matters(self):
        # lcm(12, 2) = 12 needs v2 = 2: the 2-cycle contributes nothing.
        assert min_cover((12, 2)) == (1, (12,))
        # lcm(6, 4) = 12: 6 gives the 3, 4 gives the 4.
        assert min_cover((6, 4, 2)) == (2, (4, 6))

    @settings(max_examples=200, deadline=None)
    @given(
        st.lists(st.integers(min_value=1, max_value=12), min_size=1, max_size=5)
    )
    def test_exhaustive_minimality(self, parts):
        parts = tuple(sorted(parts, reverse=True))
        s, chosen = min_cover(parts)
        target = math.lcm(*parts)
        assert math.lcm(*chosen) == target if chosen else target == 1
        distinct = sorted(set(parts))
        for size in range(s):
            for combo in combinations(distinct, size):
                got = math.lcm(*combo) if combo else 1
                assert got != target, (parts, combo)


class TestKSetDecide:
    def test_examples(self):
        d = kset_decide(CycleType.of((5, 3, 2)), 2)
        assert d.min_cover_s == 3 and not d.has_regular_cycle
        assert d.case_tag == CASE_IMPOSSIBLE
        d2 = kset_decide(CycleType.of((6, 4)), 2)
        assert d2.min_cover_s == 2 and d2.has_regular_cycle
        assert d2.case_tag == CASE_CONSECUTIVE_RUNS
        d3 = kset_decide(CycleType.of((3, 2, 1)), 3)
        assert d3.has_regular_cycle

    def test_padded_case_tag(self):
        # chosen = (2, 3), ell - s = 3 < k = 4 on 10 points.
        d = kset_decide(CycleType.of((3, 2, 1, 1, 1, 1, 1)), 4)
        assert d.has_regular_cycle
        assert d.case_tag == CASE_PADDED_NEAR_FULL

    def test_range_validation(self):
        with pytest.raises(ValueError):
            kset_decide(CycleType.of((3, 2)), 3)
        with pytest.raises(ValueError):
            kset_decide(CycleType.of((3, 2)), 0)

    def test_chosen_cycles_index_parts(self):
        ct = CycleType.of((6, 4, 2))
        d = kset_decide(ct, 2)
        assert d.chosen_lengths == (4, 6)
        assert tuple(ct.parts[i] for i in d.chosen_cycles) == d.chosen_lengths

    def test_matches_bruteforce_small_degrees(self):
        for m in range(2, 10):
            for ct in cycle_types(m):
                g = canonical_of_type(ct.parts)
                for k in range(1, m // 2 + 1):
                    expected = decide_bruteforce(
                        KSetsAction(m, k), g
                    ).has_regular_cycle
                    assert kset_decide(ct, k).has_regular_cycle == expected, (
                        ct.parts,
                        k,
                    )

    def test_verdict_wrapper(self):
        v = kset_verdict(CycleType.of((5, 3, 2)), 2)
        assert not v.has_regular_cycle
        assert v.method == "kset_combinatorial"
        assert "cycle_type_decision" in v.flags
        assert v.group_order_of_g == 30


class TestKSetWitness:
    def test_spec_example(self):
        g = parse_cycles("(1 2 3)(4 5)", 6)
        w = kset_witness(g, 2)
        assert kset_orbit_length(g, w) == 6

    def test_raises_when_impossible(self):
        g = parse_cycles("(1 2 3 4 5)(6 7 8)(9 10)", 10)
        with pytest.raises(ValueError):
            kset_witness(g, 2)

    def test_identity_any_k(self):
        g = Permutation.identity(6)
        assert kset_witness(g, 3) == (1, 2, 3)

    def test_padded_case(self):
        g = parse_cycles("(1 2 3)(4 5)", 10)
        w = kset_witness(g, 4)
        assert kset_orbit_length(g, w) == 6
        assert len(w) == 4

    def test_all_types_all_k_up_to_9(self):
        for m in range(2, 10):
            for ct in cycle_types(m):
                g = canonical_of_type(ct.parts)
                order = ct.order
                for k in range(1, m // 2 + 1):
                    if not kset_decide(ct, k).has_regular_cycle:
                        continue
                    w = kset_witness(g, k)
                    assert len(w) == k and len(set(w)) == k
                    assert kset_orbit_length(g, w) == order, (ct.parts, k)

    @settings(max_examples=80, deadline=None)
    @given(perm_strategy(11), st.integers(min_value=1, max_value=5))
    def test_random_permutations(self, g, k):
        ct = g.cycle_type()
        if not kset_decide(ct, k).has_regular_cycle:
            return
        w = kset_witness(g, k)
        assert kset_orbit_length(g, w) == g.order()


class TestKSetsTheoremScan:
    def test_threshold_values(self):
        assert nk_threshold(1) == 5
        assert nk_threshold(2) == 10
        assert nk_threshold(3) == 17

    def test_k1_sweep(self):
        for m in range(2, 8):
            rep = ksets_theorem_scan(m, 1)
            assert rep.all_regular == (m < 5)

    def test_k2_sweep(self):
        for m in range(4, 12):
            rep = ksets_theorem_scan(m, 2)
            assert rep.all_regular == (m < 10)

    def test_first_failure_is_prime_cycles(self):
        rep = ksets_theorem_scan(5, 1)
        assert any(ct.parts == (3, 2) for ct in rep.failing_types)
        rep2 = ksets_theorem_scan(10, 2)
        assert any(ct.parts == (5, 3, 2) for ct in rep2.failing_types)

    def test_requires_m_at_least_2k(self):
        with pytest.raises(ValueError):
            ksets_theorem_scan(3, 2)

    def test_types_scanned_is_partition_count(self):
        rep = ksets_theorem_scan(10, 2)
        assert rep.types_scanned == 42


# ---------------------------------------------------------------------------
# Uniform partitions


class TestPartitionWitness:
    def test_spec_example_six_cycle(self):
        g = parse_cycles("(1 2 3 4 5 6)", 6)
        assert partition_witness(g, 2, 3) == ((1, 3), (2, 4), (5, 6))

    def test_2x2_refused(self):
        with pytest.raises(PartitionCaseError):
            partition_witness(parse_cycles("(1 2 3 4)", 4), 2, 2)

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            partition_witness(parse_cycles("(1 2)", 6), 2, 2)
        with pytest.raises(ValueError):
            partition_witness(parse_cycles("(1 2)", 6), 1, 6)

    def test_identity(self):
        g = Permutation.identity(6)
        w = partition_witness(g, 3, 2)
        assert w == ((1, 2, 3), (4, 5, 6))

    def test_block_shape(self):
        g = parse_cycles("(1 2 3 4 5)(6 7 8)", 9)
        w = partition_witness(g, 3, 3)
        assert len(w) == 3 and all(len(b) == 3 for b in w)
        assert sorted(v for b in w for v in b) == list(range(1, 10))
        assert partition_orbit_length(g, w) == 15

    def test_exhaustive_sym6(self):
        for g in all_permutations(6):
            for a, b in ((2, 3), (3, 2)):
                w = partition_witness(g, a, b)
                assert partition_orbit_length(g, w) == g.order(), (g, a, b)

    def test_exhaustive_sym8_types(self):
        for ct in cycle_types(8):
            g = canonical_of_type(ct.parts)
            for a, b in ((2, 4), (4, 2)):
                w = partition_witness(g, a, b)
                assert partition_orbit_length(g, w) == g.order(), (ct.parts, a, b)

    def test_exhaustive_sym12_types(self):
        for ct in cycle_types(12):
            g = canonical_of_type(ct.parts)
            for a, b in ((2, 6), (6, 2), (3, 4), (4, 3)):
                w = partition_witness(g, a, b)
                assert partition_orbit_length(g, w) == g.order(), (ct.parts, a, b)

    @settings(max_examples=100, deadline=None)
    @given(perm_strategy(10), st.sampled_from([(2, 5), (5, 2)]))
    def test_random_sym10(self, g, shape):
        a, b = shape
        w = partition_witness(g, a, b)
        assert partition_orbit_length(g, w) == g.order()

    @settings(max_examples=60, deadline=None)
    @given(perm_strategy(9), perm_strategy(9))
    def test_conjugation_transport(self, g, c):
        w = partition_witness(g, 3, 3)
        h = g.conj(c)
        wh = partition_witness(h, 3, 3)
        assert partition_orbit_length(h, wh) == h.order()


# ---------------------------------------------------------------------------
# Product action witnesses


class TestProductWitness:
    def test_basic(self):
        h1 = parse_cycles("(1 2 3)", 3)
        h2 = parse_cycles("(1 2)", 3)
        top = parse_cycles("(1 2)", 2)
        w = product_witness([(h1, None), (h2, None)], top)
        g = WreathElement((h1, h2), top)
        assert tuple_orbit_length(g, w) == g.order()

    def test_identity_cycle_product(self):
        u = parse_cycles("(1 2 3)", 3)
        top = parse_cycles("(1 2)", 2)
        w = product_witness([(u, None), (u.inverse(), None)], top)
        g = WreathElement((u, u.inverse()), top)
        assert g.order() == 2
        assert tuple_orbit_length(g, w) == 2

    def test_provided_hint_is_verified(self):
        h1 = parse_cycles("(1 2)", 3)
        top = Permutation.identity(1)
        # point 3 is fixed by (1 2): not a regular point for it.
        with pytest.raises(ValueError):
            product_witness([(h1, 3)], top)
        w = product_witness([(h1, 1)], top)
        g = WreathElement((h1,), top)
        assert tuple_orbit_length(g, w) == 2

    def test_hint_out_of_range(self):
        h1 = parse_cycles("(1 2)", 3)
        with pytest.raises(ValueError):
            product_witness([(h1, 9)], Permutation.identity(1))

    def test_no_regular_inner_point(self):
        # (1 2)(3 4 5) has order 6 but no point of orbit length 6.
        h = parse_cycles("(1 2)(3 4 5)", 5)
        with pytest.raises(ValueError):
            product_witness([(h, None)], Permutation.identity(1))

    def test_base_domain_too_small(self):
        h = Permutation.identity(1)
        with pytest.raises(ValueError):
            product_witness([(h, None)], Permutation.identity(1))

    def test_all_wreath_elements_s3_wr_s2(self):
        s3 = symmetric_group(3)
        s2 = symmetric_group(2)
        for top in s2:
            for combo in product(s3.elements, repeat=2):
                g = WreathElement(combo, top)
                w = product_witness([(h, None) for h in combo], top)
                assert tuple_orbit_length(g, w) == g.order(), (combo, top)

    def test_all_wreath_elements_s3_wr_c3(self):
        s3 = symmetric_group(3)
        c3 = closure([parse_cycles("(1 2 3)", 3)])
        for top in c3:
            for combo in product(s3.elements, repeat=3):
                g = WreathElement(combo, top)
                w = product_witness([(h, None) for h in combo], top)
                assert tuple_orbit_length(g, w) == g.order(), (combo, top)


# ---------------------------------------------------------------------------
# Linear and affine witnesses


class TestGlRegularVectors:
    def test_transvection_gl23(self):
        f = field_ops(3)
        m = Matrix.from_rows(f, [[1, 1], [0, 1]])
        ss = gl_regular_vector_set(m)
        # Order 3; vectors off the fixed line (second coord nonzero).
        assert len(ss.regular_vectors) == 6
        assert ss.spans

    def test_identity_spans(self):
        f = field_ops(2)
        m = Matrix.identity(f, 2)
        ss = gl_regular_vector_set(m)
        assert ss.spans and len(ss.regular_vectors) == 4

    def test_every_element_spans_small_gl(self):
        from regcycle.groups import gl_elements

        for d, q in ((1, 5), (1, 7), (2, 2), (2, 3), (3, 2)):
            for m in gl_elements(d, q):
                ss = gl_regular_vector_set(m)
                assert ss.spans, (d, q, m.entries)

    def test_orbit_lengths_are_regular(self):
        f = field_ops(4)
        m = Matrix.from_rows(f, [[2, 0], [0, 1]])
        ss = gl_regular_vector_set(m)
        act = VectorsAction(2, 4)
        order = m.order()
        for v in ss.regular_vectors:
            idx = act.index(v)
            cur = act.apply(m, idx)
            steps = 1
            while cur != idx:
                cur = act.apply(m, cur)
                steps += 1
            assert steps == order


class TestAffineWitness:
    def test_translation(self):
        f = field_ops(3)
        a = AffineMap(Matrix.from_rows(f, [[1]]), (1,))
        w = affine_witness(a)
        assert len(w) == 1

    def test_every_agl13_element(self):
        f = field_ops(3)
        for lin in ((1,), (2,)):
            for tra in range(3):
                a = AffineMap(Matrix.from_rows(f, [list(lin)]), (tra,))
                w = affine_witness(a)
                # independent walk
                cur = a.apply(w)
                steps = 1
                while cur != w:
                    cur = a.apply(cur)
                    steps += 1
                assert steps == a.order()

    def test_every_agl22_element(self):
        from regcycle.groups import gl_elements

        f = field_ops(2)
        for m in gl_elements(2, 2):
            for t0 in range(2):
                for t1 in range(2):
                    a = AffineMap(m, (t0, t1))
                    w = affine_witness(a)
                    cur = a.apply(w)
                    steps = 1
                    while cur != w:
                        cur = a.apply(cur)
                        steps += 1
                    assert steps == a.order()


# ---------------------------------------------------------------------------
# Fixed-point ratio surveys


class TestWreathFprMax:
    def test_s3_wr_s2(self):
        assert wreath_fpr_max(symmetric_group(3), symmetric_group(2)) == Fraction(
            1, 3
        )

    def test_s4_wr_s2(self):
        assert wreath_fpr_max(symmetric_group(4), symmetric_group(2)) == Fraction(
            1, 2
        )

    def test_regular_inner_rejected(self):
        c3 = closure([parse_cycles("(1 2 3)", 3)])
        with pytest.raises(ValueError):
            wreath_fpr_max(c3, symmetric_group(2))


@pytest.fixture(scope="module")
def alt5_diagonal():
    a5 = alternating_group(5)
    s5 = symmetric_group(5)
    return DiagonalGroupData.build(a5, AmbientAutomorphisms.build(a5, s5), "alt5")


class TestDiagonalAudit:
    def test_alt5_single_copy(self, alt5_diagonal):
        rep = diagonal_fpr_audit(alt5_diagonal, 1, 5)
        assert rep.exhaustive
        assert rep.all_ok
        shapes = {(line.shape, line.prime): line for line in rep.lines}
        inv = shapes[("slot_moving_anchor", 2)]
        assert inv.max_fpr == Fraction(4, 15)
        assert inv.max_fpr == Fraction(16, 60)

    def test_sampled_two_copies(self, alt5_diagonal):
        rep = diagonal_fpr_audit(alt5_diagonal, 2, 5, samples=150, seed=7)
        assert not rep.exhaustive
        assert rep.all_ok

    def test_sampling_is_seed_deterministic(self, alt5_diagonal):
        r1 = diagonal_fpr_audit(alt5_diagonal, 2, 5, samples=60, seed=3)
        r2 = diagonal_fpr_audit(alt5_diagonal, 2, 5, samples=60, seed=3)
        assert r1 == r2


# ---------------------------------------------------------------------------
# Automatic method selection


class TestDecideAuto:
    def test_small_uses_bruteforce(self):
        v = decide(NaturalAction(6), parse_cycles("(1 2 3)", 6))
        assert v.method == "bruteforce"

    def test_medium_uses_fix_union(self):
        g = parse_cycles("(1 2 3 4 5 6 7)", 12)
        v = decide(KSetsAction(12, 5), g, domain_cap=500)
        assert v.method == "fix_union"
        assert v.has_regular_cycle == decide_bruteforce(KSetsAction(12, 5), g).has_regular_cycle

    def test_large_ksets_uses_combinatorics(self):
        g = parse_cycles("(1 2 3 4 5)(6 7 8)(9 10)", 40)
        v = decide(KSetsAction(40, 20), g, domain_cap=10**4)
        assert v.method == "kset_combinatorial"
        assert v.has_regular_cycle
        assert len(v.witness) == 20
        assert kset_orbit_length(g, tuple(v.witness)) == 30

    def test_large_ksets_complement(self):
        g = parse_cycles("(1 2 3 4 5)(6 7 8)(9 10)", 40)
        v = decide(KSetsAction(40, 33), g, domain_cap=10**4)
        assert v.method == "kset_combinatorial"
        assert "complement_dual" in v.flags
        assert len(v.witness) == 33
        assert kset_orbit_length(g, tuple(v.witness)) == 30

    def test_cap_error(self):
        g = parse_cycles("(1 2)", 30)
        with pytest.raises(DomainCapError):
            decide(PartitionsAction(3, 10), g, domain_cap=10**3)
