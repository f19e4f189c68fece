"""Spark presentations: decomposition, equivalence, and the ring structure.

A spark of degree k is a total-degree-k cochain a whose differential
splits as D a = e - r with e a global form family of pure form degree and
r an integer constant family of pure string degree.  ``spark_decompose``
checks the splitting; ``spark_equivalent`` searches for a witness pair
(b, m) with a - a' = D b + m, rational b of bounded coefficient degree
and integer m.  The search is semi-decidable by design: it either
produces a verified witness or reports unknown, never inequivalence.

Products of equivalence classes use the cup product against either side
of the decomposition; the two standard representatives differ by an
explicit boundary, which is also produced here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cochain import (Cochain, IntCochain, cup, cech_delta, exterior_d, total_D,
                      inject_int, extract_int, int_cech_delta)
from .functorial import homotopy_alpha, pullback_system, pullback_system_int
from .indexcomb import union_of
from . import linalg


class SparkError(ValueError):
    pass


def total_degree(c: Cochain):
    """Common string-plus-form degree of all components, if homogeneous."""
    degs = set()
    for s, f in c.data.items():
        for q in f.degrees():
            degs.add(len(s) - 1 + q)
    if not degs:
        return None
    if len(degs) > 1:
        raise SparkError("cochain mixes total degrees %s" % sorted(degs))
    return degs.pop()


def max_coefficient_degree(c: Cochain) -> int:
    out = 0
    for f in c.data.values():
        for poly in f.terms.values():
            out = max(out, poly.degree())
    return out


@dataclass
class SparkDecomposition:
    degree: int
    e: Cochain
    r: IntCochain
    mixed: Cochain
    e_closed: bool
    r_integer: bool

    @property
    def is_spark(self):
        return self.mixed.is_zero() and self.e_closed and self.r_integer


def spark_decompose(a: Cochain) -> SparkDecomposition:
    """Split D a into a global form part e and an integer part - r.

    The components of D a of mixed bidegree must vanish, the single-string
    part must be a global family, and the long-string part must consist of
    integer constants; each condition is reported separately.
    """
    k = total_degree(a)
    if k is None:
        k = 0
    da = total_D(a)
    e_data, r_candidate, mixed = {}, {}, {}
    for s, f in da.data.items():
        p = len(s) - 1
        for q in f.degrees():
            part = f.homogeneous_part(q)
            if p == 0 and q == k + 1:
                e_data[s] = part
            elif q == 0 and p == k + 1:
                r_candidate[s] = part
            else:
                prev = mixed.get(s)
                mixed[s] = part if prev is None else prev + part
    e = Cochain(a.atlas, e_data)
    neg_r_coch = Cochain(a.atlas, r_candidate)
    r_int_data = {}
    r_integer = True
    for s, f in neg_r_coch.data.items():
        v = f.constant_value()
        if v is None or v.denominator != 1:
            r_integer = False
            continue
        if v:
            r_int_data[s] = -int(v)
    r = IntCochain(a.atlas, r_int_data)
    e_closed = cech_delta(e).is_zero()
    return SparkDecomposition(k, e, r, Cochain(a.atlas, mixed), e_closed, r_integer)


# ----------------------------------------------------------- equivalence


@dataclass
class EquivalenceResult:
    status: str  # "equivalent" or "unknown"
    b: "Cochain | None"
    m: "IntCochain | None"
    detail: str

    @property
    def equivalent(self):
        return self.status == "equivalent"


def _unknown(detail):
    return EquivalenceResult("unknown", None, None, detail)


def spark_equivalent(a1: Cochain, a2: Cochain, bound: int = 3) -> EquivalenceResult:
    """Search for b and integer m with a1 - a2 = D b + m, then verify.

    b ranges over cochains of total degree one less whose components are
    invariant forms with coefficient degree at most ``bound``.  The
    rational part is solved in two stages: coordinates without integer
    freedom first, then an integer point in the affine solution family of
    the constant coordinates, found through a Smith normal form.
    """
    atlas = a1.atlas
    if a2.atlas is not atlas:
        raise SparkError("cochains live on different atlases")
    gamma = a1 - a2
    if gamma.is_zero():
        return EquivalenceResult("equivalent", Cochain(atlas, {}),
                                 IntCochain(atlas, {}), "identical")
    k1 = total_degree(a1)
    k2 = total_degree(a2)
    k = k1 if k1 is not None else k2
    if k is None or (k1 is not None and k2 is not None and k1 != k2):
        raise SparkError("cochains are not homogeneous of one total degree")

    variables = []
    for p in range(k):
        q = k - 1 - p
        for string in atlas.canonical_strings(p + 1):
            chart = atlas.chart(union_of(string))
            if q > chart.dim:
                continue
            _, basis = linalg.invariant_form_basis(chart, q, bound)
            for form in basis:
                variables.append((string, form))

    eq_deg = max(bound, max_coefficient_degree(gamma))
    row_index = {}
    rows_a = []

    def coords_of(c: Cochain):
        out = {}
        for s, f in c.data.items():
            for covs, poly in f.terms.items():
                for expts, coeff in poly.coeffs.items():
                    if sum(expts) > eq_deg:
                        raise SparkError("coefficient degree exceeded the bound")
                    out[(s, expts, covs)] = out.get((s, expts, covs), Fraction(0)) + coeff
        return out

    columns = []
    for string, form in variables:
        columns.append(coords_of(total_D(Cochain(atlas, {string: form}))))
    gcoords = coords_of(gamma)

    keys = set(gcoords)
    for col in columns:
        keys.update(col)
    mstring_keys = []
    plain_keys = []
    for key in sorted(keys, key=_key_sort):
        s, expts, covs = key
        if len(s) == k + 1 and not covs and not any(expts):
            mstring_keys.append(key)
        else:
            plain_keys.append(key)

    A1 = [[col.get(key, Fraction(0)) for col in columns] for key in plain_keys]
    g1 = [gcoords.get(key, Fraction(0)) for key in plain_keys]
    A2 = [[col.get(key, Fraction(0)) for col in columns] for key in mstring_keys]
    g2 = [gcoords.get(key, Fraction(0)) for key in mstring_keys]

    x0 = linalg.solve(A1, g1) if A1 else ([Fraction(0)] * len(variables))
    if x0 is None:
        return _unknown("no rational solution at coefficient degree %d" % bound)
    N = linalg.nullspace(A1, ncols=len(variables)) if A1 else [
        [Fraction(1) if i == j else Fraction(0) for i in range(len(variables))]
        for j in range(len(variables))]

    d = len(mstring_keys)
    gamma0 = [g - sum((a * x for a, x in zip(row, x0) if a and x), Fraction(0))
              for g, row in zip(g2, A2)]
    C = [[sum((a * y for a, y in zip(row, nvec) if a and y), Fraction(0))
          for nvec in N] for row in A2]

    z = _integer_point(C, gamma0, d)
    if z is None:
        return _unknown("no integer residue found at coefficient degree %d" % bound)
    y = linalg.solve(C, [g - zz for g, zz in zip(gamma0, z)]) if d else (
        [Fraction(0)] * len(N))
    if y is None:
        return _unknown("integer residue not reachable")

    x = list(x0)
    for coeff, nvec in zip(y, N):
        if coeff:
            x = [a + coeff * b for a, b in zip(x, nvec)]

    b_data = {}
    for coeff, (string, form) in zip(x, variables):
        if coeff:
            cur = b_data.get(string)
            scaled = form.scale(coeff)
            b_data[string] = scaled if cur is None else cur + scaled
    b = Cochain(atlas, {s: f for s, f in b_data.items() if not f.is_zero()})

    m_data = {}
    for key, zz in zip(mstring_keys, z):
        if zz:
            m_data[key[0]] = int(zz)
    m = IntCochain(atlas, m_data)

    residue = gamma - total_D(b)
    if residue == inject_int(m):
        return EquivalenceResult("equivalent", b, m, "verified witness")
    return _unknown("candidate witness failed exact verification")


def _key_sort(key):
    s, expts, covs = key
    return (len(s), [e.key for e in s], expts, covs)


def _integer_point(C, gamma0, d):
    """Integer vector z with gamma0 - z in the column span of C, or None."""
    if d == 0:
        return []
    width = len(C[0]) if C else 0
    if width:
        left_null = linalg.nullspace(linalg.transpose(C, ncols=width), ncols=d)
    else:
        left_null = [[Fraction(1) if i == j else Fraction(0) for i in range(d)]
                     for j in range(d)]
    if not left_null:
        # full row rank: every residue is reachable, take the nearest integers
        return [Fraction((2 * g.numerator + g.denominator) //
                         (2 * g.denominator)) for g in gamma0]
    P = []
    w = []
    for pvec in left_null:
        denom = 1
        for val in pvec:
            denom = denom * val.denominator // gcd(denom, val.denominator)
        row = [int(val * denom) for val in pvec]
        rhs = sum(Fraction(a) * g for a, g in zip(row, gamma0))
        scale = rhs.denominator
        P.append([a * scale for a in row])
        w.append(rhs.numerator)
    from .homology import smith_normal_form

    s = smith_normal_form(P, m=len(P), n=d)
    uw = [sum(ua * wb for ua, wb in zip(urow, w)) for urow in s.U]
    svec = [0] * d
    for i in range(len(P)):
        di = s.D[i][i] if i < min(len(P), d) else 0
        if di:
            if uw[i] % di:
                return None
            svec[i] = uw[i] // di
        elif uw[i]:
            return None
    z = [sum(s.V[i][j] * svec[j] for j in range(d)) for i in range(d)]
    return [Fraction(v) for v in z]


# ------------------------------------------------------------- products


@dataclass
class CharacterProduct:
    rep: Cochain
    alt: Cochain
    witness: Cochain

    def boundary_identity_holds(self):
        return (self.rep - self.alt) == total_D(self.witness)


def character_product(a1: Cochain, a2: Cochain) -> CharacterProduct:
    """The two standard product representatives and the boundary between.

    With D a1 = e1 - r1 and degree k = deg a1, the representatives are
    a1 cup e2 + (-1)^(k+1) r1 cup a2 and a1 cup r2 + (-1)^(k+1) e1 cup a2;
    their difference is exactly the boundary of (-1)^k a1 cup a2.
    """
    k = total_degree(a1) or 0
    d1 = spark_decompose(a1)
    d2 = spark_decompose(a2)
    if not (d1.is_spark and d2.is_spark):
        raise SparkError("product inputs must decompose")
    sign = (-1) ** (k + 1)
    rep = cup(a1, d2.e) + cup(inject_int(d1.r), a2).scale(sign)
    alt = cup(a1, inject_int(d2.r)) + cup(d1.e, a2).scale(sign)
    witness = cup(a1, a2).scale((-1) ** k)
    return CharacterProduct(rep, alt, witness)


# -------------------------------------------------- functorial witnesses


def homotopy_alpha_int(nt, ic: IntCochain) -> IntCochain:
    """Integer cochains pass through the homotopy with integer output."""
    out = homotopy_alpha(nt, inject_int(ic))
    res = extract_int(out)
    if res is None:
        raise SparkError("homotopy output left the integer lattice")
    return res


@dataclass
class PullbackWitness:
    pulled1: Cochain
    pulled2: Cochain
    b: Cochain
    m: IntCochain

    def identity_holds(self):
        return (self.pulled2 - self.pulled1) == (total_D(self.b) + inject_int(self.m))


def character_pullback_witness(nt, a: Cochain) -> PullbackWitness:
    """Exact witness that the two system pullbacks of a spark are equivalent.

    The homotopy applied to the spark itself serves as b; applied to the
    integer part of the decomposition it serves as minus m, because the
    homotopy kills single-string families one degree up.
    """
    dec = spark_decompose(a)
    if not dec.is_spark:
        raise SparkError("input must decompose")
    b = homotopy_alpha(nt, a)
    m = homotopy_alpha_int(nt, dec.r).scale(-1)
    return PullbackWitness(pullback_system(nt.sys1, a), pullback_system(nt.sys2, a), b, m)


# --------------------------------------- composition of spark homotopies


@dataclass
class HomotopyComposite:
    rep: Cochain
    alt: Cochain
    boundary: Cochain

    def identity_holds(self):
        return (self.rep - self.alt) == self.boundary


def compose_homotopies_vertical(beta, alpha, c: Cochain) -> Cochain:
    """Homotopy for a two-step ladder is the sum of the step homotopies."""
    if beta.sys1 is not alpha.sys2:
        raise SparkError("not vertically composable")
    return homotopy_alpha(alpha, c) + homotopy_alpha(beta, c)


def compose_homotopies_horizontal(beta, alpha, c: Cochain) -> HomotopyComposite:
    """Two homotopies for a composite square and the boundary between them.

    Writing F1, F2 for the pullbacks of the inner systems, G1, G2 for the
    outer ones, A and B for the step homotopies, the candidates are
    A G1 + F2 B and F1 B + A G2; their difference on c is
    D(A(B c)) - A(B(D c)) on the nose.
    """
    if alpha.sys1.target is not beta.sys1.source:
        raise SparkError("not horizontally composable")
    f1, f2 = alpha.sys1, alpha.sys2
    g1, g2 = beta.sys1, beta.sys2
    rep = homotopy_alpha(alpha, pullback_system(g1, c)) + \
        pullback_system(f2, homotopy_alpha(beta, c))
    alt = pullback_system(f1, homotopy_alpha(beta, c)) + \
        homotopy_alpha(alpha, pullback_system(g2, c))
    boundary = total_D(homotopy_alpha(alpha, homotopy_alpha(beta, c))) - \
        homotopy_alpha(alpha, homotopy_alpha(beta, total_D(c)))
    return HomotopyComposite(rep, alt, boundary)
