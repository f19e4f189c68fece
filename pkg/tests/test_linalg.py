"""Rational linear algebra and bounded form spaces.

The solvers are checked against their own defining equations (a solution
solves, kernel vectors annihilate, rank-nullity adds up), so no external
oracle is needed at this layer.
"""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from orbspark import linalg
from orbspark.polyform import AffineElement, PolyForm, group_average

entries = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_dim=4):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(entries, min_size=n, max_size=n),
                         min_size=m, max_size=m))
    return rows


@given(matrices())
def test_rref_is_idempotent(A):
    R, pivots = linalg.rref(A)
    R2, pivots2 = linalg.rref(R)
    assert R2 == R and pivots2 == pivots


@given(matrices(), st.data())
def test_solve_satisfies_the_system(A, data):
    n = len(A[0])
    b = data.draw(st.lists(entries, min_size=len(A), max_size=len(A)))
    x = linalg.solve(A, b)
    if x is None:
        # inconsistency witnessed by a rank jump of the augmented matrix
        aug = [row + [bv] for row, bv in zip(A, b)]
        assert linalg.rank(aug) == linalg.rank(A) + 1
    else:
        assert linalg.mat_vec(A, x) == [Fraction(x) for x in b]


@given(matrices())
def test_nullspace_and_rank_nullity(A):
    n = len(A[0])
    basis = linalg.nullspace(A, ncols=n)
    for v in basis:
        assert all(x == 0 for x in linalg.mat_vec(A, v))
    assert linalg.rank(A) + len(basis) == n


@given(matrices())
def test_column_space_basis_spans_the_columns(A):
    basis = linalg.column_space_basis(A)
    assert len(basis) == linalg.rank(A)
    cols = linalg.transpose(A, ncols=len(A[0]))
    if basis:
        B = linalg.transpose(basis, ncols=len(basis[0]))
        for col in cols:
            assert linalg.solve(B, col) is not None


def test_empty_and_trivial_shapes():
    assert linalg.solve([], []) == []
    assert linalg.solve([[Fraction(0)]], [Fraction(1)]) is None
    assert len(linalg.nullspace([], ncols=3)) == 3
    assert linalg.mat_mul([], [[Fraction(1)]]) == []


# ------------------------------------------------------------ form spaces


def test_form_space_round_trip():
    sp = linalg.FormSpace(2, 1, 2)
    for i in range(sp.dim()):
        f = sp.basis_form(i)
        assert sp.from_vector(sp.to_vector(f)) == f


def test_form_space_dimensions():
    # q-covectors times monomials of degree <= 2 in two variables
    assert linalg.FormSpace(2, 0, 2).dim() == 6
    assert linalg.FormSpace(2, 1, 2).dim() == 12
    assert linalg.FormSpace(2, 2, 2).dim() == 6


def test_operator_matrix_matches_direct_application():
    sp = linalg.FormSpace(2, 1, 2)
    g = AffineElement([[0, -1], [1, 0]], [0, 0]).to_polymap()
    M = sp.operator_matrix(lambda f: f.pullback(g))
    for i in range(sp.dim()):
        f = sp.basis_form(i)
        direct = sp.to_vector(f.pullback(g))
        col = [M[r][i] for r in range(sp.dim())]
        assert col == direct


def test_invariant_form_basis_under_rotation(cone):
    chart = cone.atlases["cone"].chart(cone.atlases["cone"].vset.singleton("1"))
    space, basis = linalg.invariant_form_basis(chart, 1, 1)
    assert basis, "the rotation group admits invariant one-forms"
    for f in basis:
        for g in chart.group:
            assert f.pullback(g.to_polymap()) == f
    # average of a basis form is itself, so the basis is in the image of
    # the averaging operator and independent by construction
    vectors = [space.to_vector(f) for f in basis]
    cols = linalg.transpose(vectors, ncols=space.dim())
    assert linalg.rank(cols) == len(basis)


def test_invariant_basis_trivial_group_is_everything(s1):
    atlas = s1.atlases["circle"]
    chart = atlas.chart(atlas.vset.singleton("1"))
    space, basis = linalg.invariant_form_basis(chart, 0, 3)
    assert len(basis) == space.dim() == 4
