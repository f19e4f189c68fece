"""Exact linear algebra over the rationals, plus finite form spaces.

Matrices are lists of rows of Fractions.  Shapes are passed explicitly
where a matrix can be empty.  ``FormSpace`` fixes a monomial basis for
forms with bounded coefficient degree so that linear operators on forms
(pullback, restriction, averaging) become matrices.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .polyform import Polynomial, PolyForm


def mat_identity(n):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A or not B:
        return []
    n = len(B[0])
    out = []
    for row in A:
        acc = [Fraction(0)] * n
        for k, a in enumerate(row):
            if a:
                brow = B[k]
                for j in range(n):
                    if brow[j]:
                        acc[j] += a * brow[j]
        out.append(acc)
    return out


def mat_vec(A, v):
    return [sum((a * x for a, x in zip(row, v) if a and x), Fraction(0)) for row in A]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols)] if ncols else []
    return [list(col) for col in zip(*A)]


def rref(A):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    R = [[Fraction(x) for x in row] for row in A]
    if not R:
        return R, []
    m, n = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if R[i][c]:
                piv = i
                break
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = Fraction(1) / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(A):
    return len(rref(A)[1])


def solve(A, b):
    """One rational solution of A x = b, or None.  Free variables are 0."""
    if not A:
        return [] if all(not x for x in b) else None
    n = len(A[0])
    aug = [row + [bv] for row, bv in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = R[r][n]
    return x


def nullspace(A, ncols=None):
    """Basis of the rational kernel, as a list of column vectors."""
    if not A:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(1) if i == j else Fraction(0) for i in range(ncols)]
                for j in range(ncols)]
    n = len(A[0])
    R, pivots = rref(A)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -R[r][free]
        basis.append(v)
    return basis


def column_space_basis(A):
    """Canonical basis (echelon rows of the transpose) of the column span."""
    R, pivots = rref(transpose(A))
    return [row for row in R[: len(pivots)]]


# ---------------------------------------------------------- form spaces


def exponent_tuples(nvars, max_deg):
    out = []
    def rec(prefix, remaining):
        if len(prefix) == nvars:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)
    rec([], max_deg)
    return sorted(out)


class FormSpace:
    """Monomial q-forms with coefficient degree at most max_deg."""

    def __init__(self, nvars, q, max_deg):
        self.nvars = nvars
        self.q = q
        self.max_deg = max_deg
        self.keys = [
            (expts, covs)
            for covs in combinations(range(nvars), q)
            for expts in exponent_tuples(nvars, max_deg)
        ]
        self.index = {k: i for i, k in enumerate(self.keys)}

    def dim(self):
        return len(self.keys)

    def basis_form(self, i):
        expts, covs = self.keys[i]
        return PolyForm(self.nvars, {covs: Polynomial(self.nvars, {expts: Fraction(1)})})

    def to_vector(self, form: PolyForm):
        v = [Fraction(0)] * len(self.keys)
        for covs, poly in form.terms.items():
            if len(covs) != self.q:
                raise ValueError("form degree does not match the space")
            for expts, coeff in poly.coeffs.items():
                idx = self.index.get((expts, covs))
                if idx is None:
                    raise ValueError("coefficient degree exceeds the space bound")
                v[idx] = coeff
        return v

    def from_vector(self, vec) -> PolyForm:
        data = {}
        for coeff, (expts, covs) in zip(vec, self.keys):
            if coeff:
                poly = data.setdefault(covs, {})
                poly[expts] = poly.get(expts, Fraction(0)) + coeff
        return PolyForm(
            self.nvars,
            {covs: Polynomial(self.nvars, poly) for covs, poly in data.items()},
        )

    def operator_matrix(self, fn, domain: "FormSpace | None" = None):
        """Columns are images of the domain basis, expressed in this space."""
        dom = domain if domain is not None else self
        cols = [self.to_vector(fn(dom.basis_form(j))) for j in range(dom.dim())]
        return [[cols[j][i] for j in range(dom.dim())] for i in range(self.dim())]


def invariant_form_basis(chart, q, max_deg):
    """Basis of group-invariant q-forms with bounded coefficient degree.

    Affine substitution preserves the degree bound, so averaging over the
    chart group is an endomorphism of the form space; its column span is
    the invariant subspace and the echelon basis of that span is returned.
    """
    space = FormSpace(chart.dim, q, max_deg)
    if len(chart.group) == 1:
        return space, [space.basis_form(i) for i in range(space.dim())]
    share = Fraction(1, len(chart.group))
    maps = [g.to_polymap() for g in chart.group]

    def average(form):
        acc = PolyForm.zero(chart.dim)
        for pm in maps:
            acc = acc + form.pullback(pm)
        return acc.scale(share)

    R = space.operator_matrix(average)
    rows = column_space_basis(R)
    return space, [space.from_vector(r) for r in rows]
