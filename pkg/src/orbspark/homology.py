"""Integer cochain complexes of an atlas and their cohomology.

The full complex is based on strings of distinct chart indices in the
canonical order whose union chart is nonempty; the small complex keeps
only strings of single vertices.  Cohomology is computed from Smith
normal forms with unimodular transforms tracked on both sides, which
also yields integral kernel bases and kernel coordinates.  Those
coordinates drive the comparison of the two complexes through a choice
map: equality of the abstract groups plus surjectivity of the induced
map, which suffices for an isomorphism between isomorphic finitely
generated abelian groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .atlas import Atlas
from .indexcomb import sort_with_sign, union_of
from . import linalg


@dataclass(frozen=True)
class CohomologyGroup:
    rank: int
    torsion: tuple

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append("Z^%d" % self.rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def is_trivial(self):
        return self.rank == 0 and not self.torsion


@dataclass
class SNFResult:
    U: list
    Uinv: list
    D: list
    V: list
    Vinv: list
    rank: int
    invariants: list


def _ident(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(A, m=None, n=None) -> SNFResult:
    """Diagonalize an integer matrix: D = U A V with U, V unimodular.

    Uinv and Vinv are maintained alongside by applying the inverse of
    every elementary operation on the opposite side.
    """
    if m is None:
        m = len(A)
    if n is None:
        n = len(A[0]) if A else 0
    D = [[int(x) for x in row] for row in A]
    U, Uinv = _ident(m), _ident(m)
    V, Vinv = _ident(n), _ident(n)

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in range(m):
            Uinv[r][i], Uinv[r][j] = Uinv[r][j], Uinv[r][i]

    def col_swap(i, j):
        for r in range(m):
            D[r][i], D[r][j] = D[r][j], D[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_add(i, j, c):
        # row i += c * row j
        D[i] = [a + c * b for a, b in zip(D[i], D[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for r in range(m):
            Uinv[r][j] -= c * Uinv[r][i]

    def col_add(i, j, c):
        # col i += c * col j
        for r in range(m):
            D[r][i] += c * D[r][j]
        for r in range(n):
            V[r][i] += c * V[r][j]
        Vinv[j] = [a - c * b for a, b in zip(Vinv[j], Vinv[i])]

    def row_negate(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for r in range(m):
            Uinv[r][i] = -Uinv[r][i]

    t = 0
    while t < min(m, n):
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < best):
                    best = abs(D[i][j])
                    piv = (i, j)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        while True:
            dirty = False
            for i in range(m):
                if i != t and D[i][t]:
                    q = D[i][t] // D[t][t]
                    row_add(i, t, -q)
                    if D[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(n):
                if j != t and D[t][j]:
                    q = D[t][j] // D[t][t]
                    col_add(j, t, -q)
                    if D[t][j]:
                        col_swap(t, j)
                        dirty = True
            if dirty:
                continue
            stray = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % D[t][t]:
                        stray = i
                        break
                if stray is not None:
                    break
            if stray is None:
                break
            row_add(t, stray, 1)
        if D[t][t] < 0:
            row_negate(t)
        t += 1
    invariants = [D[i][i] for i in range(min(m, n)) if D[i][i]]
    return SNFResult(U, Uinv, D, V, Vinv, len(invariants), invariants)


# ------------------------------------------------------ chain complexes


def string_basis(atlas: Atlas, k: int, small: bool = False):
    """Ordered basis strings for cochain degree k."""
    if small:
        from .functorial import small_strings

        return small_strings(atlas, k + 1)
    return atlas.canonical_strings(k + 1)


def delta_matrix(atlas: Atlas, k: int, small: bool = False):
    """Integer matrix of the string differential from degree k to k+1."""
    src = string_basis(atlas, k, small)
    dst = string_basis(atlas, k + 1, small)
    src_index = {s: i for i, s in enumerate(src)}
    M = [[0] * len(src) for _ in range(len(dst))]
    for r, string in enumerate(dst):
        for pos in range(len(string)):
            face = string[:pos] + string[pos + 1 :]
            c = src_index.get(face)
            if c is not None:
                M[r][c] += (-1) ** pos
    return M


def complex_dimensions(atlas: Atlas, small: bool = False):
    dims = []
    k = 0
    while True:
        n = len(string_basis(atlas, k, small))
        if n == 0:
            break
        dims.append(n)
        k += 1
    return dims


@dataclass
class DegreeData:
    """Cohomology at one degree with the coordinates used to compute it."""

    group: CohomologyGroup
    kernel_columns: list
    kernel_coords: list
    presentation: list


def _degree_data(dk, dkm1, n_k, n_km1) -> DegreeData:
    s = smith_normal_form(dk, m=len(dk), n=n_k)
    r = s.rank
    kernel_idx = list(range(r, n_k))
    K = [[s.V[i][j] for j in kernel_idx] for i in range(n_k)]
    coords = [s.Vinv[j] for j in kernel_idx]
    if n_km1:
        P = [[sum(coords[a][i] * dkm1[i][b] for i in range(n_k))
              for b in range(n_km1)] for a in range(len(kernel_idx))]
    else:
        P = [[] for _ in kernel_idx]
    sp = smith_normal_form(P, m=len(kernel_idx), n=n_km1)
    torsion = tuple(d for d in sp.invariants if abs(d) != 1)
    group = CohomologyGroup(rank=len(kernel_idx) - sp.rank, torsion=torsion)
    return DegreeData(group, K, coords, P)


def integer_cohomology(atlas: Atlas, small: bool = False, max_degree=None):
    """Cohomology groups of the integer string complex, degree by degree."""
    dims = complex_dimensions(atlas, small)
    if max_degree is None:
        max_degree = len(dims) - 1
    out = []
    for k in range(max_degree + 1):
        n_k = dims[k] if k < len(dims) else 0
        n_km1 = dims[k - 1] if 0 <= k - 1 < len(dims) else 0
        if n_k == 0:
            out.append(CohomologyGroup(0, ()))
            continue
        dk = delta_matrix(atlas, k, small)
        dkm1 = delta_matrix(atlas, k - 1, small) if n_km1 else [[] for _ in range(n_k)]
        out.append(_degree_data(dk, dkm1, n_k, n_km1).group)
    return out


# ------------------------------------------------ comparison of the two


def phi_matrix(atlas: Atlas, phi: dict, k: int):
    """Integer matrix of the choice-map extension in degree k."""
    src = string_basis(atlas, k, small=True)
    dst = string_basis(atlas, k, small=False)
    src_index = {s: i for i, s in enumerate(src)}
    M = [[0] * len(src) for _ in range(len(dst))]
    for r, string in enumerate(dst):
        chosen = tuple(phi[e] for e in string)
        sign, ordered = sort_with_sign(chosen)
        if sign == 0:
            continue
        c = src_index.get(ordered)
        if c is not None:
            M[r][c] += sign
    return M


@dataclass
class ComparisonDegree:
    degree: int
    group_small: CohomologyGroup
    group_big: CohomologyGroup
    injective: bool
    cochain_map: bool
    groups_equal: bool
    surjective: bool

    @property
    def isomorphism(self):
        return self.groups_equal and self.surjective and self.cochain_map


def compare_integer_cohomology(atlas: Atlas, phi: dict, max_degree=None):
    """Degreewise comparison of the small and full integer complexes.

    Checks that the extension is injective and a cochain map, that the two
    cohomology groups agree abstractly, and that the induced map is
    surjective; finitely generated abelian groups are Hopfian, so for
    abstractly isomorphic groups surjectivity upgrades to isomorphism.
    """
    dims_small = complex_dimensions(atlas, small=True)
    dims_big = complex_dimensions(atlas, small=False)
    if max_degree is None:
        max_degree = max(len(dims_small), len(dims_big)) - 1
    out = []
    for k in range(max_degree + 1):
        ns_k = dims_small[k] if k < len(dims_small) else 0
        nb_k = dims_big[k] if k < len(dims_big) else 0
        ns_km1 = dims_small[k - 1] if 0 <= k - 1 < len(dims_small) else 0
        nb_km1 = dims_big[k - 1] if 0 <= k - 1 < len(dims_big) else 0

        X = phi_matrix(atlas, phi, k)
        Xn = phi_matrix(atlas, phi, k + 1)

        ds_k = delta_matrix(atlas, k, small=True) if ns_k else []
        db_k = delta_matrix(atlas, k, small=False) if nb_k else []
        ds_km1 = delta_matrix(atlas, k - 1, small=True) if ns_km1 else [[] for _ in range(ns_k)]
        db_km1 = delta_matrix(atlas, k - 1, small=False) if nb_km1 else [[] for _ in range(nb_k)]

        if ns_k:
            inj = linalg.rank([[Fraction(x) for x in row] for row in X]) == ns_k
        else:
            inj = True

        nb_kp1 = len(string_basis(atlas, k + 1, small=False))
        lhs = _int_mul(Xn, ds_k, nb_kp1, ns_k)
        rhs = _int_mul(db_k, X, nb_kp1, ns_k)
        cmap = lhs == rhs

        small_data = _degree_data(ds_k, ds_km1, ns_k, ns_km1) if ns_k else None
        big_data = _degree_data(db_k, db_km1, nb_k, nb_km1) if nb_k else None
        gs = small_data.group if small_data else CohomologyGroup(0, ())
        gb = big_data.group if big_data else CohomologyGroup(0, ())
        equal = gs == gb

        surj = _surjective_on_cokernel(X, small_data, big_data, nb_k)
        out.append(ComparisonDegree(k, gs, gb, inj, cmap, equal, surj))
    return out


def _int_mul(A, B, m, n):
    """Product of integer matrices with the result shape given explicitly."""
    out = [[0] * n for _ in range(m)]
    for i in range(min(m, len(A))):
        row = A[i]
        for t, a in enumerate(row):
            if a and t < len(B):
                bt = B[t]
                for j in range(min(n, len(bt))):
                    out[i][j] += a * bt[j]
    return out


class GlobalFormSystem:
    """Degree-bounded global q-forms as the kernel of a rational system.

    Variables are monomial coefficients of one form per chart (singleton
    charts only in the small version).  Equations say each form is group
    invariant and any two components agree after restriction to the chart
    of a two-entry string.  Affine substitution never raises coefficient
    degree, so all the operators stay inside the bounded form spaces.
    """

    def __init__(self, atlas: Atlas, q: int, max_deg: int, small: bool = False):
        self.atlas = atlas
        self.q = q
        self.max_deg = max_deg
        self.small = small
        self.subsets = [s for s in atlas.nonempty_subsets()
                        if not small or len(s) == 1]
        self.spaces = {}
        self.offsets = {}
        total = 0
        for I in self.subsets:
            sp = linalg.FormSpace(atlas.chart(I).dim, q, max_deg)
            self.spaces[I] = sp
            self.offsets[I] = total
            total += sp.dim()
        self.total = total
        self.rows = []
        for I in self.subsets:
            chart = atlas.chart(I)
            if len(chart.group) == 1:
                continue
            sp = self.spaces[I]
            share = Fraction(1, len(chart.group))
            maps = [g.to_polymap() for g in chart.group]

            def avg(form, maps=maps, share=share, dim=chart.dim):
                acc = None
                for pm in maps:
                    term = form.pullback(pm)
                    acc = term if acc is None else acc + term
                return acc.scale(share)

            R = sp.operator_matrix(avg)
            off = self.offsets[I]
            for r in range(sp.dim()):
                row = [Fraction(0)] * total
                for j in range(sp.dim()):
                    row[off + j] = R[r][j] - (1 if r == j else 0)
                self.rows.append(row)
        for string in string_basis(atlas, 1, small):
            I, J = string
            u = union_of(string)
            con = linalg.FormSpace(atlas.chart(u).dim, q, max_deg)
            AJ = con.operator_matrix(
                lambda f: f.pullback(atlas.arrow(u, J)), domain=self.spaces[J])
            AI = con.operator_matrix(
                lambda f: f.pullback(atlas.arrow(u, I)), domain=self.spaces[I])
            offI, offJ = self.offsets[I], self.offsets[J]
            for r in range(con.dim()):
                row = [Fraction(0)] * total
                for j in range(self.spaces[J].dim()):
                    row[offJ + j] += AJ[r][j]
                for i in range(self.spaces[I].dim()):
                    row[offI + i] -= AI[r][i]
                if any(row):
                    self.rows.append(row)
        self.kernel = linalg.nullspace(self.rows, ncols=total)

    def cochain_from_vector(self, vec):
        from .cochain import Cochain

        data = {}
        for I in self.subsets:
            sp = self.spaces[I]
            off = self.offsets[I]
            form = sp.from_vector(vec[off : off + sp.dim()])
            if not form.is_zero():
                data[(I,)] = form
        return Cochain(self.atlas, data)

    def satisfied_by(self, vec):
        return all(not sum((a * x for a, x in zip(row, vec) if a and x), Fraction(0))
                   for row in self.rows)


@dataclass
class GlobalFormComparison:
    q: int
    dim_small: int
    dim_big: int
    maps_into: bool
    injective: bool

    @property
    def bijective(self):
        return self.maps_into and self.injective and self.dim_small == self.dim_big


def compare_global_forms(atlas: Atlas, phi: dict, q: int, max_deg: int):
    """Check the choice-map extension is a bijection on bounded global forms."""
    small_sys = GlobalFormSystem(atlas, q, max_deg, small=True)
    big_sys = GlobalFormSystem(atlas, q, max_deg, small=False)
    images = []
    for kv in small_sys.kernel:
        img = [Fraction(0)] * big_sys.total
        for I in big_sys.subsets:
            chosen = phi[I]
            sp_small = small_sys.spaces[chosen]
            off_small = small_sys.offsets[chosen]
            piece = sp_small.from_vector(kv[off_small : off_small + sp_small.dim()])
            if piece.is_zero():
                continue
            restricted = piece.pullback(atlas.arrow(I, chosen))
            sp_big = big_sys.spaces[I]
            off_big = big_sys.offsets[I]
            for idx, val in enumerate(sp_big.to_vector(restricted)):
                img[off_big + idx] += val
        images.append(img)
    maps_into = all(big_sys.satisfied_by(img) for img in images)
    if images:
        inj = linalg.rank([list(col) for col in zip(*images)]) == len(images)
    else:
        inj = True
    return GlobalFormComparison(q, len(small_sys.kernel), len(big_sys.kernel),
                                maps_into, inj)


def _surjective_on_cokernel(X, small_data, big_data, nb_k):
    """Mapped small kernel columns plus big image columns must generate."""
    if big_data is None:
        return True
    d_big = len(big_data.kernel_coords)
    if d_big == 0:
        return True
    cols_Y = [[] for _ in range(d_big)]
    if small_data is not None and small_data.kernel_columns:
        d_small = len(small_data.kernel_columns[0])
        XK = _int_mul(X, small_data.kernel_columns, nb_k, d_small)
        cols_Y = [[sum(big_data.kernel_coords[a][i] * XK[i][b] for i in range(nb_k))
                   for b in range(d_small)] for a in range(d_big)]
    P = big_data.presentation
    joined = [cols_Y[a] + (P[a] if P else []) for a in range(d_big)]
    width = len(joined[0])
    if width == 0:
        return False
    s = smith_normal_form(joined, m=d_big, n=width)
    return s.rank == d_big and all(abs(d) == 1 for d in s.invariants)
