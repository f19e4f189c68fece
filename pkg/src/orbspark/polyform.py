"""Exact polynomial differential forms and the maps acting on them.

Everything here is done over the rationals with fractions.Fraction, so all
comparisons downstream are exact equalities, never tolerance checks.  A
Polynomial is a sparse map from exponent vectors to coefficients, a PolyForm
is a sparse map from strictly increasing covector index tuples to
polynomial coefficients, and a PolyMap is a tuple of component polynomials.
Finite groups acting on charts are given by AffineElement (rational matrix
plus translation).
"""

from __future__ import annotations

from fractions import Fraction


def rat(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def rat_str(x: Fraction) -> str:
    """Serialize a rational as "p" or "p/q" (never a float)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Polynomial:
    """Sparse polynomial in ``nvars`` variables with Fraction coefficients.

    Keys of ``coeffs`` are exponent tuples of length ``nvars``; zero
    coefficients are never stored.  Instances are immutable by convention.
    """

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs=None):
        clean = {}
        if coeffs:
            for exps, c in coeffs.items():
                c = rat(c)
                if c == 0:
                    continue
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if clean[exps] == 0:
                    del clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):
        raise AttributeError("Polynomial is immutable")

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars)

    @staticmethod
    def const(nvars: int, c) -> "Polynomial":
        return Polynomial(nvars, {(0,) * nvars: rat(c)})

    @staticmethod
    def variable(nvars: int, i: int) -> "Polynomial":
        exps = [0] * nvars
        exps[i] = 1
        return Polynomial(nvars, {tuple(exps): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def constant_value(self):
        """The value if this polynomial is constant, else None."""
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) == 1:
            ((exps, c),) = self.coeffs.items()
            if all(e == 0 for e in exps):
                return c
        return None

    def degree(self) -> int:
        """Total degree; zero polynomial gets -1."""
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        assert self.nvars == other.nvars
        out = dict(self.coeffs)
        for exps, c in other.coeffs.items():
            s = out.get(exps, Fraction(0)) + c
            if s == 0:
                out.pop(exps, None)
            else:
                out[exps] = s
        return Polynomial(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        assert self.nvars == other.nvars
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.nvars, out)

    def scale(self, c) -> "Polynomial":
        c = rat(c)
        if c == 0:
            return Polynomial.zero(self.nvars)
        return Polynomial(self.nvars, {e: c * v for e, v in self.coeffs.items()})

    def pow(self, k: int) -> "Polynomial":
        assert k >= 0
        out = Polynomial.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def partial(self, i: int) -> "Polynomial":
        """Partial derivative with respect to variable i."""
        out = {}
        for exps, c in self.coeffs.items():
            if exps[i] == 0:
                continue
            e = list(exps)
            k = e[i]
            e[i] = k - 1
            out[tuple(e)] = c * k
        return Polynomial(self.nvars, out)

    def subs(self, comps: "list[Polynomial]") -> "Polynomial":
        """Substitute comps[i] for variable i; comps live in a common ring."""
        assert len(comps) == self.nvars
        if not self.coeffs:
            m = comps[0].nvars if comps else 0
            return Polynomial.zero(m)
        m = comps[0].nvars if comps else 0
        # memoize powers of each component
        powers: list[dict[int, Polynomial]] = [dict() for _ in comps]

        def power(i, k):
            if k not in powers[i]:
                powers[i][k] = comps[i].pow(k)
            return powers[i][k]

        total = Polynomial.zero(m)
        for exps, c in self.coeffs.items():
            term = Polynomial.const(m, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def evaluate(self, point) -> Fraction:
        pt = [rat(p) for p in point]
        assert len(pt) == self.nvars
        total = Fraction(0)
        for exps, c in self.coeffs.items():
            v = c
            for x, e in zip(pt, exps):
                v *= x**e
            total += v
        return total

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for exps in sorted(self.coeffs, key=lambda e: (sum(e), e), reverse=True):
            c = self.coeffs[exps]
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e
            )
            if mono:
                bits.append(f"{rat_str(c)}*{mono}" if c != 1 else mono)
            else:
                bits.append(rat_str(c))
        return " + ".join(bits)


def _merge_sign(key1: tuple, key2: tuple):
    """Sort the concatenation of two strictly increasing tuples.

    Returns (sorted_tuple, sign) with the permutation parity, or
    (None, 0) when the tuples share an element.
    """
    if set(key1) & set(key2):
        return None, 0
    merged = list(key1) + list(key2)
    # count inversions between the two halves (each half already sorted)
    inv = 0
    for a in key1:
        for b in key2:
            if a > b:
                inv += 1
    merged.sort()
    return tuple(merged), (-1) ** inv


def _insert_sign(i: int, key: tuple):
    """Sign of dx_i wedge dx_key, together with the sorted key."""
    if i in key:
        return None, 0
    before = sum(1 for k in key if k < i)
    out = tuple(sorted((i,) + key))
    return out, (-1) ** before


class PolyForm:
    """Differential form with polynomial coefficients, possibly mixed degree.

    ``terms`` maps a strictly increasing tuple of covector indices (empty
    tuple for the function part) to a nonzero Polynomial in ``nvars``
    variables.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        clean = {}
        if terms:
            for key, p in terms.items():
                key = tuple(int(k) for k in key)
                if list(key) != sorted(set(key)):
                    raise ValueError(f"covector indices {key} not strictly increasing")
                if any(k < 0 or k >= nvars for k in key):
                    raise ValueError(f"covector index out of range in {key}")
                if not isinstance(p, Polynomial):
                    raise TypeError("form coefficients must be Polynomial")
                if p.nvars != nvars:
                    raise ValueError("coefficient variable count mismatch")
                if p.is_zero():
                    continue
                if key in clean:
                    p = clean[key] + p
                    if p.is_zero():
                        del clean[key]
                        continue
                clean[key] = p
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("PolyForm is immutable")

    @staticmethod
    def zero(nvars: int) -> "PolyForm":
        return PolyForm(nvars)

    @staticmethod
    def function(p: Polynomial) -> "PolyForm":
        return PolyForm(p.nvars, {(): p})

    @staticmethod
    def const_function(nvars: int, c) -> "PolyForm":
        return PolyForm.function(Polynomial.const(nvars, c))

    @staticmethod
    def d_coord(nvars: int, i: int) -> "PolyForm":
        """The coordinate covector dx_i."""
        return PolyForm(nvars, {(i,): Polynomial.const(nvars, 1)})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> "list[int]":
        return sorted({len(k) for k in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, q: int) -> "PolyForm":
        return PolyForm(self.nvars, {k: p for k, p in self.terms.items() if len(k) == q})

    def constant_value(self):
        """Rational c when the form is the constant function c, else None."""
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {()}:
            return self.terms[()].constant_value()
        return None

    def __add__(self, other: "PolyForm") -> "PolyForm":
        assert self.nvars == other.nvars
        out = dict(self.terms)
        for k, p in other.terms.items():
            s = out.get(k)
            s = p if s is None else s + p
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return PolyForm(self.nvars, out)

    def __neg__(self) -> "PolyForm":
        return PolyForm(self.nvars, {k: -p for k, p in self.terms.items()})

    def __sub__(self, other: "PolyForm") -> "PolyForm":
        return self + (-other)

    def scale(self, c) -> "PolyForm":
        c = rat(c)
        if c == 0:
            return PolyForm.zero(self.nvars)
        return PolyForm(self.nvars, {k: p.scale(c) for k, p in self.terms.items()})

    def wedge(self, other: "PolyForm") -> "PolyForm":
        assert self.nvars == other.nvars
        out = {}
        for k1, p1 in self.terms.items():
            for k2, p2 in other.terms.items():
                key, sign = _merge_sign(k1, k2)
                if sign == 0:
                    continue
                p = (p1 * p2).scale(sign)
                if key in out:
                    p = out[key] + p
                    if p.is_zero():
                        del out[key]
                        continue
                out[key] = p
        return PolyForm(self.nvars, out)

    def d(self) -> "PolyForm":
        """Exterior derivative."""
        out = PolyForm.zero(self.nvars)
        for key, p in self.terms.items():
            for i in range(self.nvars):
                dp = p.partial(i)
                if dp.is_zero():
                    continue
                newkey, sign = _insert_sign(i, key)
                if sign == 0:
                    continue
                out = out + PolyForm(self.nvars, {newkey: dp.scale(sign)})
        return out

    def pullback(self, pmap: "PolyMap") -> "PolyForm":
        """Pull back along pmap; the form must live on the target space."""
        assert pmap.dst_dim == self.nvars
        m = pmap.src_dim
        # d of each target coordinate component, as a 1-form on the source
        dcomp = []
        for f in pmap.comps:
            df = PolyForm.zero(m)
            for i in range(m):
                pf = f.partial(i)
                if not pf.is_zero():
                    df = df + PolyForm(m, {(i,): pf})
            dcomp.append(df)
        out = PolyForm.zero(m)
        for key, p in self.terms.items():
            piece = PolyForm.function(p.subs(list(pmap.comps)))
            for k in key:
                piece = piece.wedge(dcomp[k])
                if piece.is_zero():
                    break
            out = out + piece
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyForm)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms, key=lambda k: (len(k), k)):
            p = self.terms[key]
            base = "^".join(f"dx{i}" for i in key)
            if base:
                bits.append(f"({p!r}) {base}")
            else:
                bits.append(f"({p!r})")
        return " + ".join(bits)


class PolyMap:
    """Polynomial map between coordinate spaces, given by its components."""

    __slots__ = ("src_dim", "dst_dim", "comps")

    def __init__(self, src_dim: int, dst_dim: int, comps):
        comps = tuple(comps)
        assert len(comps) == dst_dim
        for f in comps:
            if not isinstance(f, Polynomial) or f.nvars != src_dim:
                raise ValueError("bad component polynomial")
        object.__setattr__(self, "src_dim", src_dim)
        object.__setattr__(self, "dst_dim", dst_dim)
        object.__setattr__(self, "comps", comps)

    def __setattr__(self, *a):
        raise AttributeError("PolyMap is immutable")

    @staticmethod
    def identity(n: int) -> "PolyMap":
        return PolyMap(n, n, [Polynomial.variable(n, i) for i in range(n)])

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """self after inner."""
        assert inner.dst_dim == self.src_dim
        comps = [f.subs(list(inner.comps)) for f in self.comps]
        return PolyMap(inner.src_dim, self.dst_dim, comps)

    def apply(self, point):
        return tuple(f.evaluate(point) for f in self.comps)

    def degree(self) -> int:
        return max((f.degree() for f in self.comps), default=-1)

    def is_affine(self) -> bool:
        return self.degree() <= 1

    def affine_parts(self):
        """Matrix and translation when the map is affine, else None."""
        if not self.is_affine():
            return None
        n, m = self.dst_dim, self.src_dim
        mat = [[Fraction(0)] * m for _ in range(n)]
        vec = [Fraction(0)] * n
        for r, f in enumerate(self.comps):
            for exps, c in f.coeffs.items():
                if sum(exps) == 0:
                    vec[r] = c
                else:
                    j = exps.index(1)
                    mat[r][j] = c
        return tuple(tuple(row) for row in mat), tuple(vec)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMap)
            and self.src_dim == other.src_dim
            and self.dst_dim == other.dst_dim
            and self.comps == other.comps
        )

    def __hash__(self):
        return hash((self.src_dim, self.dst_dim, self.comps))

    def __repr__(self):
        return f"PolyMap({self.src_dim}->{self.dst_dim}: {list(self.comps)!r})"


def _mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def _mat_vec(a, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def _mat_inv(a):
    """Exact inverse of a square Fraction matrix; None when singular."""
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        row += 1
    return tuple(tuple(r[n:]) for r in aug)


class AffineElement:
    """Invertible affine transformation x -> A x + b with rational entries."""

    __slots__ = ("mat", "vec")

    def __init__(self, mat, vec):
        mat = tuple(tuple(rat(x) for x in row) for row in mat)
        vec = tuple(rat(x) for x in vec)
        n = len(vec)
        if len(mat) != n or any(len(row) != n for row in mat):
            raise ValueError("matrix/translation size mismatch")
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "vec", vec)

    def __setattr__(self, *a):
        raise AttributeError("AffineElement is immutable")

    @property
    def dim(self) -> int:
        return len(self.vec)

    @staticmethod
    def identity(n: int) -> "AffineElement":
        return AffineElement(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)],
            [Fraction(0)] * n,
        )

    def is_identity(self) -> bool:
        return self == AffineElement.identity(self.dim)

    def compose(self, inner: "AffineElement") -> "AffineElement":
        """self after inner: x -> A_self (A_inner x + b_inner) + b_self."""
        mat = _mat_mul(self.mat, inner.mat)
        vec = tuple(x + y for x, y in zip(_mat_vec(self.mat, inner.vec), self.vec))
        return AffineElement(mat, vec)

    def inverse(self) -> "AffineElement":
        inv = _mat_inv(self.mat)
        if inv is None:
            raise ValueError("affine element is singular")
        vec = tuple(-x for x in _mat_vec(inv, self.vec))
        return AffineElement(inv, vec)

    def order(self, bound: int = 64):
        """Smallest k >= 1 with self^k = id, or None past the bound."""
        g = self
        for k in range(1, bound + 1):
            if g.is_identity():
                return k
            g = g.compose(self)
        return None

    def to_polymap(self) -> PolyMap:
        n = self.dim
        comps = []
        for i in range(n):
            coeffs = {(0,) * n: self.vec[i]}
            for j in range(n):
                if self.mat[i][j] != 0:
                    e = [0] * n
                    e[j] = 1
                    coeffs[tuple(e)] = self.mat[i][j]
            comps.append(Polynomial(n, coeffs))
        return PolyMap(n, n, comps)

    def apply(self, point):
        pt = tuple(rat(x) for x in point)
        return tuple(x + y for x, y in zip(_mat_vec(self.mat, pt), self.vec))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffineElement)
            and self.mat == other.mat
            and self.vec == other.vec
        )

    def __hash__(self):
        return hash((self.mat, self.vec))

    def __repr__(self):
        return f"AffineElement({self.mat!r}, {self.vec!r})"


def group_average(group, form: PolyForm) -> PolyForm:
    """Reynolds average (1/|G|) sum of pullbacks of the form over the group."""
    group = list(group)
    assert group, "group must contain at least the identity"
    total = PolyForm.zero(form.nvars)
    for g in group:
        total = total + form.pullback(g.to_polymap())
    return total.scale(Fraction(1, len(group)))


def is_invariant(group, form: PolyForm) -> bool:
    return all(form.pullback(g.to_polymap()) == form for g in group)
