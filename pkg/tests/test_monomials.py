import pytest
from hypothesis import given, settings, strategies as st

from liaison.monomials import (
    IrreducibleComponent,
    Monomial,
    MonomialIdeal,
    NotBorelFixedError,
    borel_closure,
    enumerate_borel_ideals,
    height,
    irreducible_decomposition,
    is_artinian,
    is_borel_fixed,
    is_cm_borel,
    is_equidimensional,
    is_lex_segment,
    lex_segment_violation,
    minimal_primes,
    monomials_of_degree,
    saturate,
    standard_monomials,
    unit_monomial,
    variable,
)


def mono(*exps):
    return Monomial(tuple(exps))


def ideal(n, *gens):
    return MonomialIdeal.from_gens(n, [mono(*g) for g in gens])


small_monomials = st.builds(
    Monomial,
    st.lists(st.integers(0, 4), min_size=2, max_size=4).map(tuple),
)


@st.composite
def small_ideals(draw, n=3, max_gens=5, max_exp=4):
    count = draw(st.integers(1, max_gens))
    gens = [
        Monomial(tuple(draw(st.integers(0, max_exp)) for _ in range(n)))
        for _ in range(count)
    ]
    gens = [g for g in gens if not g.is_unit] or [variable(n, 0)]
    return MonomialIdeal.from_gens(n, gens)


class TestMonomial:
    def test_degree_and_divides(self):
        m = mono(2, 1, 0)
        assert m.degree == 3
        assert mono(1, 1, 0).divides(m)
        assert not mono(0, 2, 0).divides(m)

    def test_mul_div_roundtrip(self):
        a, b = mono(2, 0, 1), mono(1, 3, 0)
        assert (a * b) / b == a

    def test_div_requires_divisibility(self):
        with pytest.raises(ValueError):
            mono(1, 0) / mono(2, 0)

    def test_gcd_lcm(self):
        a, b = mono(2, 1, 0), mono(1, 3, 0)
        assert a.gcd(b) == mono(1, 1, 0)
        assert a.lcm(b) == mono(2, 3, 0)

    def test_monomials_of_degree_order_and_count(self):
        ms = monomials_of_degree(3, 2)
        assert len(ms) == 6
        # descending degree-lex: x1^2 first, x3^2 last
        assert ms[0] == mono(2, 0, 0)
        assert ms[-1] == mono(0, 0, 2)


class TestMonomialIdeal:
    def test_minimalization(self):
        J = ideal(2, (2, 0), (3, 0), (2, 1))
        assert J.gens == (mono(2, 0),)

    def test_contains(self):
        J = ideal(2, (2, 0), (0, 3))
        assert J.contains(mono(2, 5))
        assert not J.contains(mono(1, 2))

    def test_colon(self):
        J = ideal(2, (3, 0), (1, 2))
        assert J.colon(mono(1, 0)) == ideal(2, (2, 0), (0, 2))

    def test_colon_composes(self):
        J = ideal(3, (3, 0, 0), (1, 2, 0), (0, 0, 2))
        a, b = mono(1, 0, 0), mono(0, 1, 0)
        assert J.colon(a).colon(b) == J.colon(a * b)

    def test_intersect_plus(self):
        A = ideal(2, (2, 0))
        B = ideal(2, (0, 2))
        assert A.intersect(B) == ideal(2, (2, 2))
        assert A.plus(B) == ideal(2, (2, 0), (0, 2))

    def test_restrict_extend(self):
        J = ideal(3, (0, 2, 0), (0, 1, 1))
        R = J.restrict((1, 2))
        assert R == ideal(2, (2, 0), (1, 1))
        assert R.extend_front(1) == J

    def test_json_roundtrip(self):
        J = ideal(3, (1, 2, 0), (0, 0, 3))
        assert MonomialIdeal.from_json(J.to_json()) == J

    def test_standard_monomials(self):
        J = ideal(2, (2, 0), (0, 2))
        assert set(standard_monomials(J, 2)) == {mono(1, 1)}

    @given(small_ideals(), small_monomials)
    @settings(max_examples=60, deadline=None)
    def test_colon_contains_original(self, J, m):
        m = Monomial(m.exps[: J.n] + (0,) * (J.n - len(m.exps[: J.n])))
        C = J.colon(m)
        assert C.contains_ideal(J)

    @given(small_ideals())
    @settings(max_examples=60, deadline=None)
    def test_membership_matches_generator_divisibility(self, J):
        for m in monomials_of_degree(J.n, 3):
            assert J.contains(m) == any(g.divides(m) for g in J.gens)


class TestBorelAndLex:
    def test_fixture_borel_not_lex(self):
        J = ideal(3, (3, 0, 0), (2, 1, 0), (1, 2, 0))
        assert is_borel_fixed(J)
        assert not is_lex_segment(J)
        assert lex_segment_violation(J) == mono(2, 0, 1)

    def test_lex_implies_borel(self):
        J = ideal(3, (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 3, 0))
        if is_lex_segment(J):
            assert is_borel_fixed(J)

    def test_power_of_maximal_ideal(self):
        J = MonomialIdeal.from_gens(3, monomials_of_degree(3, 2))
        assert is_borel_fixed(J)
        assert is_lex_segment(J)

    def test_borel_closure_contains_input(self):
        monos = [mono(0, 1, 1)]
        closure = borel_closure(3, monos)
        assert mono(0, 1, 1) in closure
        assert mono(2, 0, 0) in closure  # x2*x3 -> x1*x3 -> x1*x2 -> x1^2

    def test_enumerate_borel_small(self):
        ideals = list(enumerate_borel_ideals(2, 2))
        for J in ideals:
            assert J.is_zero or is_borel_fixed(J)
        # distinct ideals only
        assert len({J.gens for J in ideals}) == len(ideals)


class TestDecompositionAndPrimes:
    def test_irreducible_decomposition_fixture(self):
        J = ideal(2, (2, 0), (1, 1))
        comps = irreducible_decomposition(J)
        got = {c.powers for c in comps}
        assert got == {((0, 1),), ((0, 2), (1, 1))}

    def test_minimal_primes_and_height(self):
        J = ideal(3, (1, 1, 0), (0, 1, 1), (1, 0, 1))
        primes = {frozenset(p) for p in minimal_primes(J)}
        assert primes == {frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})}
        assert height(J) == 2

    def test_equidimensional_fixture(self):
        J = ideal(3, (3, 0, 0), (2, 1, 0), (1, 2, 0))
        assert not is_equidimensional(J)

    def test_equidimensional_artinian(self):
        J = ideal(2, (2, 0), (1, 1), (0, 3))
        assert is_equidimensional(J)

    def test_saturate(self):
        J = ideal(2, (2, 0), (1, 1))
        assert saturate(J, mono(0, 1)) == ideal(2, (1, 0))

    @given(small_ideals())
    @settings(max_examples=40, deadline=None)
    def test_decomposition_is_intersection(self, J):
        comps = irreducible_decomposition(J)
        for m in monomials_of_degree(J.n, 4):
            assert J.contains(m) == all(c.contains(m) for c in comps)

    @given(small_ideals())
    @settings(max_examples=40, deadline=None)
    def test_minimal_primes_match_decomposition(self, J):
        from_comps = {c.support for c in irreducible_decomposition(J)}
        minimal = {
            s for s in from_comps
            if not any(t < s for t in from_comps)
        }
        assert {frozenset(p) for p in minimal_primes(J)} == minimal


class TestCmBorel:
    def test_requires_borel(self):
        J = ideal(2, (0, 2),)
        with pytest.raises(NotBorelFixedError):
            is_cm_borel(J)

    def test_fixture_not_cm(self):
        J = ideal(3, (3, 0, 0), (2, 1, 0), (1, 2, 0))
        ok, cone = is_cm_borel(J)
        assert not ok and cone is None

    def test_artinian_is_cm(self):
        J = MonomialIdeal.from_gens(3, monomials_of_degree(3, 2))
        ok, cone = is_cm_borel(J)
        assert ok
        assert cone.c == 3
        assert is_artinian(cone.artinian_part)

    def test_cone_presentation(self):
        # cone over the Artinian ideal (x1^2, x1x2, x2^2) in 3 variables
        J = ideal(3, (2, 0, 0), (1, 1, 0), (0, 2, 0))
        ok, cone = is_cm_borel(J)
        assert ok and cone.c == 2
        assert cone.artinian_part == ideal(2, (2, 0), (1, 1), (0, 2))
