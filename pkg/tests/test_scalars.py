from fractions import Fraction

from hypothesis import given, strategies as st

from diagdom.scalars import DEFAULT_PRIME, Infinitesimal, Poly, PrimeField, is_probable_prime


def poly_strategy():
    coeffs = st.integers(-4, 4)
    names = st.sampled_from(["x", "y", "z"])
    monos = st.lists(st.tuples(names, st.integers(1, 3)), max_size=2).map(
        lambda ps: tuple(sorted({n: e for n, e in ps}.items())))
    return st.dictionaries(monos, coeffs, max_size=4).map(
        lambda d: Poly({m: Fraction(c) for m, c in d.items() if c}))


@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_poly_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Poly() == a
    assert a * Poly.const(1) == a
    assert a - a == Poly()


@given(poly_strategy(), poly_strategy())
def test_poly_evaluation_is_ring_hom(a, b):
    point = {"x": Fraction(2), "y": Fraction(-3), "z": Fraction(1, 2)}
    assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
    assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)


def test_poly_vars_and_degree():
    p = Poly.var("x") * Poly.var("x") + 3 * Poly.var("y")
    assert p.total_degree() == 2
    assert p.variables() == {"x", "y"}


def test_prime_field_validates():
    PrimeField(DEFAULT_PRIME)
    assert is_probable_prime(DEFAULT_PRIME)
    assert not is_probable_prime(DEFAULT_PRIME - 1)
    import pytest
    with pytest.raises(ValueError):
        PrimeField(10)


inf_strategy = st.builds(Infinitesimal, st.integers(-5, 5), st.integers(-5, 5))


@given(inf_strategy, inf_strategy, inf_strategy)
def test_infinitesimal_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    # eps^2 = 0: products keep only the linear term
    eps = Infinitesimal(0, 1)
    assert eps * eps == Infinitesimal(0, 0)


@given(inf_strategy, inf_strategy)
def test_infinitesimal_lex_order(a, b):
    if a.a != b.a:
        assert (a < b) == (a.a < b.a)
    else:
        assert (a < b) == (a.b < b.b)


def test_infinitesimal_standard_part_dominates():
    assert Infinitesimal(1, -10**9) > Infinitesimal(0, 10**9)
    assert Infinitesimal(0, 1) > 0
