"""Smith normal form and integer cohomology of the string complexes.

sympy serves as an independent oracle for normal forms and ranks; the
production code never imports it.
"""

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from orbspark.functorial import choice_map
from orbspark.homology import (
    CohomologyGroup,
    GlobalFormSystem,
    compare_global_forms,
    compare_integer_cohomology,
    complex_dimensions,
    delta_matrix,
    integer_cohomology,
    phi_matrix,
    smith_normal_form,
    string_basis,
)


@st.composite
def int_matrices(draw, max_dim=4, bound=6):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    return [[draw(st.integers(-bound, bound)) for _ in range(n)] for _ in range(m)]


def _mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_smith_normal_form_properties(A):
    m, n = len(A), len(A[0])
    s = smith_normal_form(A)
    # D = U A V with the tracked inverses actually inverse
    assert _mul(_mul(s.U, A), s.V) == s.D
    assert _mul(s.U, s.Uinv) == _eye(m)
    assert _mul(s.V, s.Vinv) == _eye(n)
    # diagonal, nonnegative, divisibility chain
    for i in range(m):
        for j in range(n):
            if i != j:
                assert s.D[i][j] == 0
    diag = [s.D[i][i] for i in range(min(m, n))]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        if a and b:
            assert b % a == 0
        if a == 0:
            assert b == 0


@settings(max_examples=40, deadline=None)
@given(int_matrices())
def test_smith_invariants_match_sympy(A):
    s = smith_normal_form(A)
    oracle = sympy_snf(sympy.Matrix(A))
    k = min(len(A), len(A[0]))
    odiag = [abs(oracle[i, i]) for i in range(k)]
    assert sorted(abs(d) for d in s.invariants) == sorted(d for d in odiag if d)


def test_cohomology_group_formatting():
    assert str(CohomologyGroup(0, ())) == "0"
    assert str(CohomologyGroup(1, ())) == "Z"
    assert str(CohomologyGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
    assert CohomologyGroup(0, ()).is_trivial()
    assert not CohomologyGroup(0, (3,)).is_trivial()


def test_string_complex_dimensions(s1):
    atlas = s1.atlases["circle"]
    assert complex_dimensions(atlas) == [6, 9, 3]
    assert complex_dimensions(atlas, small=True) == [3, 3]


def test_delta_matrices_compose_to_zero(scenarios):
    for name, ws in scenarios.items():
        for aname, atlas in ws.atlases.items():
            for small in (False, True):
                dims = complex_dimensions(atlas, small)
                for k in range(1, len(dims)):
                    d_prev = delta_matrix(atlas, k - 1, small)
                    d_next = delta_matrix(atlas, k, small)
                    if not d_prev or not d_next:
                        continue
                    prod = _mul(d_next, d_prev)
                    assert all(all(x == 0 for x in row) for row in prod), \
                        (name, aname, small, k)


def test_delta_matrix_rows_are_signed_faces(s1):
    atlas = s1.atlases["circle"]
    src = string_basis(atlas, 0)
    dst = string_basis(atlas, 1)
    M = delta_matrix(atlas, 0)
    idx = {s: i for i, s in enumerate(src)}
    for r, (I, J) in enumerate(dst):
        expected = [0] * len(src)
        expected[idx[(J,)]] += 1
        expected[idx[(I,)]] -= 1
        assert M[r] == expected


def test_betti_numbers_match_sympy_ranks(scenarios):
    for name, ws in scenarios.items():
        for aname, atlas in ws.atlases.items():
            dims = complex_dimensions(atlas)
            groups = integer_cohomology(atlas)
            for k, g in enumerate(groups):
                n_k = dims[k] if k < len(dims) else 0
                dk = sympy.Matrix(delta_matrix(atlas, k)) if n_k else sympy.zeros(0, 0)
                rk = dk.rank() if n_k else 0
                rkm1 = 0
                if k >= 1 and dims[k - 1]:
                    rkm1 = sympy.Matrix(delta_matrix(atlas, k - 1)).rank()
                assert g.rank == n_k - rk - rkm1, (name, aname, k)


def test_ground_truth_cohomology(s1, mirror, cone):
    circle = integer_cohomology(s1.atlases["circle"])
    assert [str(g) for g in circle] == ["Z", "Z", "0"]
    interval = integer_cohomology(mirror.atlases["mirror"])
    assert str(interval[0]) == "Z"
    assert all(g.is_trivial() for g in interval[1:])
    plane = integer_cohomology(cone.atlases["cone"])
    assert str(plane[0]) == "Z"
    assert all(g.is_trivial() for g in plane[1:])


def test_small_complex_gives_the_same_groups(scenarios):
    for name, ws in scenarios.items():
        for aname, atlas in ws.atlases.items():
            big = integer_cohomology(atlas)
            small = integer_cohomology(atlas, small=True)
            for k in range(max(len(big), len(small))):
                gb = big[k] if k < len(big) else CohomologyGroup(0, ())
                gs = small[k] if k < len(small) else CohomologyGroup(0, ())
                assert gb == gs, (name, aname, k)


def test_max_degree_truncation(s1):
    atlas = s1.atlases["circle"]
    assert len(integer_cohomology(atlas, max_degree=0)) == 1
    assert len(integer_cohomology(atlas, max_degree=5)) == 6
    assert integer_cohomology(atlas, max_degree=5)[5].is_trivial()


@pytest.mark.parametrize("how", ["min", "max"])
def test_choice_map_comparison_on_the_circle(s1, how):
    atlas = s1.atlases["circle"]
    rows = compare_integer_cohomology(atlas, choice_map(atlas, how))
    assert rows, "comparison produced no degrees"
    for row in rows:
        assert row.injective and row.cochain_map and row.groups_equal
        assert row.isomorphism, f"degree {row.degree}"
    assert str(rows[0].group_big) == "Z"
    assert str(rows[1].group_big) == "Z"


def test_phi_matrix_is_a_cochain_map_against_sympy(s1):
    atlas = s1.atlases["circle"]
    phi = choice_map(atlas, "min")
    X0 = sympy.Matrix(phi_matrix(atlas, phi, 0))
    X1 = sympy.Matrix(phi_matrix(atlas, phi, 1))
    ds0 = sympy.Matrix(delta_matrix(atlas, 0, small=True))
    db0 = sympy.Matrix(delta_matrix(atlas, 0, small=False))
    assert X1 * ds0 == db0 * X0
    assert X0.rank() == X0.shape[1] and X1.rank() == X1.shape[1]
    # the small complex stops at degree one, so the big differential must
    # kill the image of X1 for the map to extend by zero
    db1 = sympy.Matrix(delta_matrix(atlas, 1, small=False))
    assert db1 * X1 == sympy.zeros(db1.shape[0], X1.shape[1])


def test_global_form_system_kernel_members_are_global(s1):
    atlas = s1.atlases["circle"]
    sys = GlobalFormSystem(atlas, 1, 2)
    assert sys.kernel, "the circle carries global one-forms"
    from orbspark.cochain import is_global

    for vec in sys.kernel:
        assert sys.satisfied_by(vec)
        assert is_global(sys.cochain_from_vector(vec))


def test_global_forms_biject_between_the_complexes(s1):
    atlas = s1.atlases["circle"]
    phi = choice_map(atlas, "min")
    for q in (0, 1):
        cmp_q = compare_global_forms(atlas, phi, q, max_deg=3)
        assert cmp_q.bijective, f"q={q}: {cmp_q}"
