"""Exact arithmetic of polynomials, forms and affine maps.

The algebraic laws are property tests over small random inputs; everything
else is spot checks with hand-computed values.  All equalities are exact.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbspark.polyform import (
    AffineElement,
    PolyForm,
    PolyMap,
    Polynomial,
    group_average,
    is_invariant,
    rat,
    rat_str,
)

NV = 2

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)
exponents = st.tuples(st.integers(0, 3), st.integers(0, 3))


@st.composite
def polynomials(draw, nvars=NV):
    coeffs = draw(st.dictionaries(exponents, rationals, max_size=4))
    return Polynomial(nvars, coeffs)


@st.composite
def forms(draw, nvars=NV, q=None):
    if q is None:
        q = draw(st.integers(0, nvars))
    keys = st.lists(st.integers(0, nvars - 1), min_size=q, max_size=q, unique=True)
    terms = {}
    for _ in range(draw(st.integers(0, 2))):
        key = tuple(sorted(draw(keys)))
        terms[key] = draw(polynomials(nvars))
    return PolyForm(nvars, {k: p for k, p in terms.items() if not p.is_zero()})


# ------------------------------------------------------------ rationals


def test_rat_parses_strings_and_ints():
    assert rat("3/4") == Fraction(3, 4)
    assert rat("-2") == Fraction(-2)
    assert rat(5) == Fraction(5)
    assert rat(Fraction(1, 3)) == Fraction(1, 3)


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)


@given(rationals)
def test_rat_str_round_trip(x):
    assert rat(rat_str(x)) == x
    assert "." not in rat_str(x)


# ---------------------------------------------------------- polynomials


@given(polynomials(), polynomials(), polynomials())
def test_polynomial_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero(NV)


@given(polynomials(), polynomials(), st.integers(0, NV - 1))
def test_partial_derivative_is_a_derivation(a, b, i):
    assert (a * b).partial(i) == a.partial(i) * b + a * b.partial(i)


@given(polynomials())
def test_identity_substitution(p):
    xs = [Polynomial.variable(NV, i) for i in range(NV)]
    assert p.subs(xs) == p


@given(polynomials(), st.tuples(rationals, rationals))
def test_evaluate_agrees_with_constant_substitution(p, point):
    consts = [Polynomial.const(NV, x) for x in point]
    assert p.subs(consts).constant_value() == p.evaluate(point)


def test_polynomial_rejects_negative_exponents():
    with pytest.raises(ValueError):
        Polynomial(2, {(-1, 0): 1})


def test_polynomial_is_immutable():
    p = Polynomial.const(2, 1)
    with pytest.raises(AttributeError):
        p.coeffs = {}


# ---------------------------------------------------------------- forms


@given(forms(), forms())
def test_wedge_graded_commutativity(a, b):
    for j in a.degrees():
        for k in b.degrees():
            aj = a.homogeneous_part(j)
            bk = b.homogeneous_part(k)
            assert aj.wedge(bk) == bk.wedge(aj).scale((-1) ** (j * k))


@given(forms())
def test_exterior_derivative_squares_to_zero(a):
    assert a.d().d() == PolyForm.zero(NV)


@given(forms(), forms())
def test_exterior_derivative_leibniz(a, b):
    for j in a.degrees():
        aj = a.homogeneous_part(j)
        lhs = aj.wedge(b).d()
        rhs = aj.d().wedge(b) + aj.wedge(b.d()).scale((-1) ** j)
        assert lhs == rhs


def test_one_form_wedge_itself_vanishes():
    dx = PolyForm.d_coord(2, 0)
    assert dx.wedge(dx) == PolyForm.zero(2)
    dy = PolyForm.d_coord(2, 1)
    assert dx.wedge(dy) == -(dy.wedge(dx))


def test_form_rejects_unsorted_indices():
    with pytest.raises(ValueError):
        PolyForm(2, {(1, 0): Polynomial.const(2, 1)})


# subject maps reused by the pullback tests: a quadratic shear and an
# invertible affine map
SHEAR = PolyMap(2, 2, [Polynomial.variable(2, 0)
                       + Polynomial.variable(2, 1) * Polynomial.variable(2, 1),
                       Polynomial.variable(2, 1)])
AFF = AffineElement([[2, 1], [0, 1]], [Fraction(1, 2), 0]).to_polymap()


@given(forms())
def test_pullback_commutes_with_d(a):
    for pm in (SHEAR, AFF):
        assert a.pullback(pm).d() == a.d().pullback(pm)


@given(forms(), forms())
def test_pullback_distributes_over_wedge(a, b):
    for pm in (SHEAR, AFF):
        assert a.wedge(b).pullback(pm) == a.pullback(pm).wedge(b.pullback(pm))


@given(forms())
def test_pullback_of_composite_is_composite_of_pullbacks(a):
    comp = SHEAR.compose(AFF)
    assert a.pullback(comp) == a.pullback(SHEAR).pullback(AFF)


@given(forms())
def test_pullback_along_identity(a):
    assert a.pullback(PolyMap.identity(NV)) == a


# ---------------------------------------------------------- affine maps


def test_affine_compose_and_inverse():
    g = AffineElement([[0, -1], [1, 0]], [1, 2])
    assert g.compose(g.inverse()).is_identity()
    assert g.inverse().compose(g).is_identity()
    # compose means "after": apply inner first
    h = AffineElement([[1, 0], [0, 1]], [5, 0])
    assert g.compose(h).apply((0, 0)) == g.apply(h.apply((0, 0)))


def test_rotation_order():
    rot = AffineElement([[0, -1], [1, 0]], [0, 0])
    assert rot.order() == 4
    assert AffineElement.identity(2).order() == 1
    shear = AffineElement([[1, 1], [0, 1]], [0, 0])
    assert shear.order(bound=16) is None


def test_singular_affine_rejected():
    g = AffineElement([[1, 1], [1, 1]], [0, 0])
    with pytest.raises(ValueError):
        g.inverse()


def test_affine_parts_round_trip():
    g = AffineElement([[2, 1], [0, 3]], [Fraction(1, 2), -1])
    parts = g.to_polymap().affine_parts()
    assert parts == (g.mat, g.vec)
    assert SHEAR.affine_parts() is None


# ------------------------------------------------------------ averaging

ROT = AffineElement([[0, -1], [1, 0]], [0, 0])
Z4 = (AffineElement.identity(2), ROT, ROT.compose(ROT), ROT.compose(ROT).compose(ROT))


@settings(max_examples=30)
@given(forms())
def test_group_average_is_invariant_and_idempotent(a):
    avg = group_average(Z4, a)
    assert is_invariant(Z4, avg)
    assert group_average(Z4, avg) == avg


@settings(max_examples=30)
@given(forms())
def test_group_average_commutes_with_d(a):
    assert group_average(Z4, a.d()) == group_average(Z4, a).d()


def test_known_invariants_of_the_rotation_group():
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    r2 = PolyForm.function(x * x + y * y)
    assert is_invariant(Z4, r2)
    dx = PolyForm.d_coord(2, 0)
    dy = PolyForm.d_coord(2, 1)
    ang = PolyForm.function(x).wedge(dy) - PolyForm.function(y).wedge(dx)
    assert is_invariant(Z4, ang)
    assert not is_invariant(Z4, PolyForm.function(x))
    assert group_average(Z4, PolyForm.function(x)).is_zero()
