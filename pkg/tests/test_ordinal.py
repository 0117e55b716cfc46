import pytest
from hypothesis import given
from hypothesis import strategies as st

from wfesets.digraph import Digraph
from wfesets.errors import NotLinearOrder, ParseError
from wfesets.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    CnfOrdinal,
    cnf_arith,
    cnf_cmp,
    collapse_wellorder,
    format_ordinal,
    parse_ordinal,
    power_order,
    product_order,
    sum_order,
)

W = OMEGA
n = CnfOrdinal.of


def ordinals(max_terms: int = 3, max_coef: int = 5, depth: int = 2):
    """CNF ordinals with at most max_terms terms, coefficients <= max_coef and
    exponents drawn recursively (naturals at the bottom)."""
    base = st.integers(0, 6).map(n)
    if depth == 0:
        return base

    def build(parts):
        out = ZERO
        for e, c in sorted(parts, key=lambda p: p[0], reverse=True):
            out = out + CnfOrdinal(((e, c),))
        return out

    exps = ordinals(2, 3, depth - 1)
    terms = st.lists(st.tuples(exps, st.integers(1, max_coef)), min_size=0, max_size=max_terms)
    return terms.map(build)


class TestArithmetic:
    def test_examples(self):
        assert n(1) + W == W
        assert W * 2 == W + W
        assert n(2) * W == W
        assert W * 2 != n(2) * W
        assert (W + 1) * (W + 1) == parse_ordinal("w^2 + w + 1")

    def test_powers(self):
        assert n(2) ** W == W
        assert n(2) ** (W + 3) == W * 8
        assert (W + 1) ** W == W ** W
        assert W ** n(0) == ONE
        assert ZERO ** W == ZERO
        assert ONE ** (W ** W) == ONE
        assert n(3) ** (W * 2) == W ** 2
        assert n(2) ** (W ** 2) == W ** W
        assert n(2) ** (W ** W) == W ** (W ** W)

    def test_unknown_operation(self):
        with pytest.raises(ValueError):
            cnf_arith("sub", W, W)

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            CnfOrdinal(((ZERO, 1), (ONE, 1)))
        with pytest.raises(ValueError):
            CnfOrdinal(((ONE, 0),))

    @given(st.integers(0, 30), st.integers(0, 30))
    def test_naturals(self, a, b):
        assert (n(a) + n(b)).to_int() == a + b
        assert (n(a) * n(b)).to_int() == a * b
        if b <= 6:
            assert (n(a) ** n(b)).to_int() == a ** b
        assert cnf_cmp(n(a), n(b)) == (a > b) - (a < b)

    @given(ordinals(), ordinals(), ordinals())
    def test_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a ** (b + c) == a ** b * a ** c

    @given(ordinals(), ordinals())
    def test_monotonicity(self, a, b):
        if not b.terms:
            return
        assert a < a + b
        assert b <= a + b


class TestCompare:
    def test_examples(self):
        assert cnf_cmp(W, W + 1) == -1
        assert cnf_cmp(W + 1, W + 1) == 0
        assert cnf_cmp(W ** 2, W * 5) == 1

    @given(ordinals(), ordinals(), ordinals())
    def test_total_order(self, a, b, c):
        assert cnf_cmp(a, b) == -cnf_cmp(b, a)
        if cnf_cmp(a, b) <= 0 and cnf_cmp(b, c) <= 0:
            assert cnf_cmp(a, c) <= 0


class TestSyntax:
    def test_round_trip(self):
        for text in ["0", "7", "w", "w*3 + 1", "w^2 + w*3 + 1", "w^{w + 1}*2 + w^3"]:
            assert format_ordinal(parse_ordinal(text)) == text

    def test_normalizes(self):
        assert format_ordinal(parse_ordinal("1 + w")) == "w"
        assert format_ordinal(parse_ordinal("(w + 1)^2")) == "w^2 + w + 1"
        assert format_ordinal(parse_ordinal("ω^ω")) == "w^{w}"

    @pytest.mark.parametrize("bad", ["", "w +", "w^", "x", "(w", "w w"])
    def test_errors(self, bad):
        with pytest.raises(ParseError):
            parse_ordinal(bad)

    @given(ordinals())
    def test_print_parse(self, a):
        assert parse_ordinal(format_ordinal(a)) == a


def chain(k: int) -> Digraph:
    return Digraph((i, j) for i in range(k) for j in range(i + 1, k))


class TestWellOrders:
    def test_examples(self):
        assert collapse_wellorder(chain(3)) == (3, {0: 0, 1: 1, 2: 2})
        assert collapse_wellorder(Digraph()) == (0, {})
        with pytest.raises(NotLinearOrder):
            collapse_wellorder(Digraph([(0, 1), (1, 0)]))

    def test_failures_carry_witnesses(self):
        with pytest.raises(NotLinearOrder) as e:
            collapse_wellorder(Digraph([(0, 1), (2, 3)]))
        assert e.value.witness is not None
        with pytest.raises(NotLinearOrder):
            collapse_wellorder(Digraph([(0, 1), (1, 2)]))
        with pytest.raises(NotLinearOrder):
            collapse_wellorder(Digraph([(0, 0)]))

    def test_single_element_needs_a_carrier(self):
        assert collapse_wellorder(Digraph(), carrier={5}) == (1, {5: 0})
        with pytest.raises(NotLinearOrder):
            collapse_wellorder(Digraph([(0, 1)]), carrier={7})
        assert collapse_wellorder(power_order(4, 0)) == (1, {0: 0})

    def test_iso_preserves_order(self):
        A = Digraph([(9, 4), (9, 7), (4, 7)])
        size, iso = collapse_wellorder(A)
        assert size == 3 and iso == {9: 0, 4: 1, 7: 2}

    @pytest.mark.parametrize("a", range(7))
    def test_finite_fidelity(self, a):
        for b in range(7):
            assert collapse_wellorder(sum_order(a, b))[0] == (n(a) + n(b)).to_int()
            assert collapse_wellorder(product_order(a, b))[0] == (n(a) * n(b)).to_int()
            if a ** b <= 300:
                assert collapse_wellorder(power_order(a, b))[0] == (n(a) ** n(b)).to_int()
