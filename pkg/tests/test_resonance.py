import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from koszulres.koszul import TwoFormSubspace, w_dims_scan
from koszulres.resonance import (
    DIMENSION_COUNT,
    NON_VANISHES,
    UNKNOWN,
    VANISHES,
    WITNESS,
    Covector,
    VanishingDecision,
    check_witness,
    decomposable_factors,
    in_resonance,
    mu_matrix,
    n4_closed_form,
    plucker_quadric,
    resonance_partner,
    vanishing_decision,
    wedge_pairing,
    witness_search,
)
from koszulres.scan import random_subspace

EX_N4 = [[(0, 1, 1)], [(1, 2, 1)], [(2, 3, 1)], [(0, 3, 1)], [(0, 2, 1), (1, 3, 1)]]
E12 = [1, 0, 0, 0, 0, 0]
E12_MINUS_E34 = [1, 0, 0, 0, 0, -1]


class TestPairing:
    def test_basis_pairing(self):
        assert wedge_pairing(E12, [1, 0, 0, 0], [0, 1, 0, 0]) == 1

    def test_swapped_order(self):
        assert wedge_pairing(E12, [0, 1, 0, 0], [1, 0, 0, 0]) == -1

    def test_unrelated_basis_vector(self):
        assert wedge_pairing(E12, [0, 0, 1, 0], [0, 0, 0, 1]) == 0

    def test_decomposable_against_e12_minus_e34(self):
        assert wedge_pairing(E12_MINUS_E34, [1, 0, 1, 0], [0, 1, 0, 1]) == 0

    def test_length_checks(self):
        with pytest.raises(ValueError):
            wedge_pairing(E12, [1, 0, 0], [0, 1, 0, 0])
        with pytest.raises(ValueError):
            wedge_pairing([1, 0], [1, 0, 0, 0], [0, 1, 0, 0])


class TestMembership:
    def test_empty_K_everything_resonant(self):
        assert in_resonance(TwoFormSubspace(4, []), [1, 2, 3, 4])

    def test_e12_in_span_e12(self):
        K = TwoFormSubspace.from_pairs(2, [[(0, 1, 1)]])
        assert not in_resonance(K, [1, 0])

    def test_single_form_n4(self):
        K = TwoFormSubspace(4, [E12_MINUS_E34])
        assert in_resonance(K, [1, 0, 0, 0])

    def test_zero_covector_rejected(self):
        with pytest.raises(ValueError):
            in_resonance(TwoFormSubspace(3, []), [0, 0, 0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            in_resonance(TwoFormSubspace(3, []), [1, 0])

    def test_mu_shape(self):
        K = TwoFormSubspace.from_pairs(4, EX_N4)
        assert mu_matrix(K, [1, 2, 3, 4]).shape == (5, 4)

    def test_partner_is_a_witness(self):
        K = TwoFormSubspace(4, [E12_MINUS_E34])
        b = resonance_partner(K, [1, 0, 0, 0])
        assert b is not None
        assert check_witness(K, [1, 0, 0, 0], b)

    def test_no_partner_outside_resonance(self):
        K = TwoFormSubspace.from_pairs(4, EX_N4)
        for a in ([1, 0, 0, 0], [1, 1, 0, 0], [1, -2, 3, 1]):
            assert resonance_partner(K, a) is None


@st.composite
def subspace_and_covector(draw):
    n = draw(st.integers(2, 5))
    size = math.comb(n, 2)
    vecs = draw(st.lists(st.lists(st.integers(-2, 2), min_size=size, max_size=size), max_size=size))
    K = TwoFormSubspace.spanned_by(n, vecs)
    a = draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n).filter(any))
    c = draw(st.sampled_from([Fraction(-2), Fraction(1, 3), Fraction(5)]))
    return K, a, c


@settings(max_examples=80, deadline=None)
@given(subspace_and_covector())
def test_resonance_is_conical_and_partner_consistent(data):
    K, a, c = data
    member = in_resonance(K, a)
    assert member == in_resonance(K, [c * x for x in a])
    b = resonance_partner(K, a)
    assert (b is not None) == member
    if b is not None:
        assert check_witness(K, a, b)


class TestDecomposable:
    def test_factor_roundtrip(self):
        rng = random.Random(2)
        for _ in range(20):
            n = rng.randint(2, 6)
            a = [rng.randint(-4, 4) for _ in range(n)]
            b = [rng.randint(-4, 4) for _ in range(n)]
            omega = [a[i] * b[j] - a[j] * b[i] for i in range(n) for j in range(i + 1, n)]
            if not any(omega):
                continue
            x, y = decomposable_factors(omega)
            assert [x.coords[i] * y.coords[j] - x.coords[j] * y.coords[i]
                    for i in range(n) for j in range(i + 1, n)] == omega

    def test_rejects_symplectic_form(self):
        assert plucker_quadric(E12_MINUS_E34) == -1
        with pytest.raises(ValueError):
            decomposable_factors(E12_MINUS_E34)


class TestN4ClosedForm:
    def test_ex_n4(self):
        K = TwoFormSubspace.from_pairs(4, EX_N4)
        assert n4_closed_form(K) == VanishingDecision.vanishes(1)

    def test_decomposable_perp_gives_witness(self):
        # K = e12^⊥ leaves only a decomposable form in the annihilator
        K = TwoFormSubspace(4, [[0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0],
                                [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
        d = n4_closed_form(K)
        assert d.verdict == NON_VANISHES and d.reason == WITNESS
        assert check_witness(K, *d.witness)

    def test_only_for_n4(self):
        with pytest.raises(ValueError):
            n4_closed_form(TwoFormSubspace(5, []))

    def test_agrees_with_degree_scan_on_random_m5(self):
        for index in range(100):
            K = random_subspace(4, 5, np.random.default_rng([99, index]))
            closed = n4_closed_form(K)
            scan = w_dims_scan(K, 4)
            if closed.verdict == VANISHES:
                assert scan.vanished_at == closed.degree == 1
            else:
                assert scan.vanished_at is None
                assert check_witness(K, *closed.witness)


class TestDecision:
    def test_dimension_count(self):
        K = random_subspace(5, 6, np.random.default_rng(1))
        d = vanishing_decision(K)
        assert d.verdict == NON_VANISHES and d.reason == DIMENSION_COUNT

    def test_full_K(self):
        assert vanishing_decision(TwoFormSubspace.full(5)) == VanishingDecision.vanishes(0)

    def test_ex_n4(self):
        K = TwoFormSubspace.from_pairs(4, EX_N4)
        assert vanishing_decision(K) == VanishingDecision.vanishes(1)

    def test_witness_found_for_monomial_K(self):
        # e12..e15, e23, e24, e34 give 7 = 2n - 3 forms; e35 is missing, so e3 ∧ e5 is a witness
        gens = [[(0, 1, 1)], [(0, 2, 1)], [(0, 3, 1)], [(0, 4, 1)], [(1, 2, 1)], [(1, 3, 1)], [(2, 3, 1)]]
        K = TwoFormSubspace.from_pairs(5, gens)
        d = vanishing_decision(K, q_max=2)
        assert d.verdict == NON_VANISHES and d.reason == WITNESS
        assert check_witness(K, *d.witness)

    def test_low_height_search_and_unknown_json(self):
        gens = [[(0, 1, 1)], [(0, 2, 1)], [(0, 3, 1)], [(0, 4, 1)], [(1, 2, 1)], [(1, 3, 1)], [(2, 3, 1)]]
        K = TwoFormSubspace.from_pairs(5, gens)
        assert witness_search(K, height=1, samples=0) is not None
        d = VanishingDecision.unknown(3)
        assert d.verdict == UNKNOWN and d.cap == 3
        assert d.to_json() == {"verdict": "unknown", "cap": 3}

    def test_random_n5_m9_vanishes(self):
        K = random_subspace(5, 9, np.random.default_rng([0, 0]))
        d = vanishing_decision(K)
        assert d.verdict == VANISHES
        assert w_dims_scan(K, d.degree).dims[-1] == 0


def test_covector_json_roundtrip():
    a = Covector([1, Fraction(-1, 2), 0])
    assert Covector.from_json(a.to_json()) == a
    assert a.to_json() == {"n": 3, "coords": ["1", "-1/2", "0"]}


@settings(max_examples=60, deadline=None)
@given(subspace_and_covector())
def test_modular_screen_never_exceeds_exact_rank(data):
    from koszulres.exactlin import rank
    from koszulres.resonance import _integer_generators, _mu_rank_mod_p

    K, a, _ = data
    if not K.dim:
        return
    screened = _mu_rank_mod_p(_integer_generators(K), K.n, a)
    assert screened <= rank(mu_matrix(K, a)) <= K.n - 1
    assert screened == rank(mu_matrix(K, a))
