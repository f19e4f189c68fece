"""Cochains of invariant forms over chart strings, and their operations.

A Cochain assigns to finitely many strictly increasing strings of index
subsets a polynomial form on the chart of the string's union; evaluation at
an arbitrary string goes through ``sort_with_sign``, which realizes the
antisymmetry convention (repeated entries give zero).  The string length
minus one is the Cech degree p, the form degree is q, and the total
differential acts as D = delta + (-1)^p d on the (p, q) layer.

Integer cochains (IntCochain) carry locally constant integer values on the
same strings; they inject into form cochains as constant functions.
"""

from __future__ import annotations

from fractions import Fraction

from .indexcomb import Subset, insert_at, remove_at, sort_with_sign, union_of
from .polyform import PolyForm, Polynomial


class Cochain:
    """Finitely supported family of forms over canonical strings."""

    __slots__ = ("atlas", "data")

    def __init__(self, atlas, data=None, canonical: bool = True):
        clean: dict[tuple[Subset, ...], PolyForm] = {}
        if data:
            for string, form in data.items():
                if form.is_zero():
                    continue
                if form.nvars != atlas.dim:
                    raise ValueError("form dimension does not match the atlas")
                string = tuple(string)
                if not canonical:
                    sign, string = sort_with_sign(string)
                    if sign == 0:
                        continue
                    if sign < 0:
                        form = -form
                else:
                    s, c = sort_with_sign(string)
                    if s != 1 or c != string:
                        raise ValueError(f"string {string} is not canonical")
                if atlas.is_empty(union_of(string)):
                    continue
                if string in clean:
                    merged = clean[string] + form
                    if merged.is_zero():
                        del clean[string]
                    else:
                        clean[string] = merged
                else:
                    clean[string] = form
        self.atlas = atlas
        self.data = clean

    def value(self, string) -> PolyForm:
        """Antisymmetric evaluation at an arbitrary string."""
        sign, canon = sort_with_sign(tuple(string))
        if sign == 0:
            return PolyForm.zero(self.atlas.dim)
        form = self.data.get(canon)
        if form is None:
            return PolyForm.zero(self.atlas.dim)
        return form if sign > 0 else -form

    def is_zero(self) -> bool:
        return not self.data

    def support(self):
        return list(self.data)

    def string_lengths(self) -> list[int]:
        return sorted({len(s) for s in self.data})

    def bidegrees(self) -> list[tuple[int, int]]:
        out = set()
        for s, form in self.data.items():
            for q in form.degrees():
                out.add((len(s) - 1, q))
        return sorted(out)

    def decompose_bidegree(self) -> dict:
        """Split into homogeneous (p, q) pieces; the pieces sum back exactly."""
        parts: dict[tuple[int, int], dict] = {}
        for s, form in self.data.items():
            for q in form.degrees():
                parts.setdefault((len(s) - 1, q), {})[s] = form.homogeneous_part(q)
        return {pq: Cochain(self.atlas, d) for pq, d in sorted(parts.items())}

    def length_layer(self, length: int) -> "Cochain":
        return Cochain(self.atlas, {s: f for s, f in self.data.items() if len(s) == length})

    def __add__(self, other: "Cochain") -> "Cochain":
        assert self.atlas is other.atlas
        out = dict(self.data)
        for s, f in other.data.items():
            g = out.get(s)
            g = f if g is None else g + f
            if g.is_zero():
                out.pop(s, None)
            else:
                out[s] = g
        return Cochain(self.atlas, out)

    def __neg__(self) -> "Cochain":
        return Cochain(self.atlas, {s: -f for s, f in self.data.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c) -> "Cochain":
        return Cochain(self.atlas, {s: f.scale(c) for s, f in self.data.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and self.atlas is other.atlas and self.data == other.data

    def __hash__(self):
        return hash(frozenset((s, f) for s, f in self.data.items()))

    def __repr__(self):
        if not self.data:
            return "Cochain(0)"
        bits = [f"{list(s)}: {f!r}" for s, f in sorted(self.data.items(), key=lambda kv: tuple(e.key for e in kv[0]))]
        return "Cochain{" + "; ".join(bits) + "}"


class IntCochain:
    """Integer-valued locally constant cochain on canonical strings."""

    __slots__ = ("atlas", "data")

    def __init__(self, atlas, data=None, canonical: bool = True):
        clean: dict[tuple[Subset, ...], int] = {}
        if data:
            for string, v in data.items():
                v = int(v)
                if v == 0:
                    continue
                string = tuple(string)
                if not canonical:
                    sign, string = sort_with_sign(string)
                    if sign == 0:
                        continue
                    v *= sign
                else:
                    s, c = sort_with_sign(string)
                    if s != 1 or c != string:
                        raise ValueError(f"string {string} is not canonical")
                if atlas.is_empty(union_of(string)):
                    continue
                nv = clean.get(string, 0) + v
                if nv:
                    clean[string] = nv
                else:
                    clean.pop(string, None)
        self.atlas = atlas
        self.data = clean

    def value(self, string) -> int:
        sign, canon = sort_with_sign(tuple(string))
        if sign == 0:
            return 0
        return sign * self.data.get(canon, 0)

    def is_zero(self) -> bool:
        return not self.data

    def __add__(self, other):
        assert self.atlas is other.atlas
        out = dict(self.data)
        for s, v in other.data.items():
            nv = out.get(s, 0) + v
            if nv:
                out[s] = nv
            else:
                out.pop(s, None)
        return IntCochain(self.atlas, out)

    def __neg__(self):
        return IntCochain(self.atlas, {s: -v for s, v in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "IntCochain":
        if not c:
            return IntCochain(self.atlas, {})
        return IntCochain(self.atlas, {s: c * v for s, v in self.data.items()})

    def __eq__(self, other):
        return isinstance(other, IntCochain) and self.atlas is other.atlas and self.data == other.data

    def __hash__(self):
        return hash(frozenset(self.data.items()))

    def __repr__(self):
        bits = [f"{list(s)}: {v}" for s, v in self.data.items()]
        return "IntCochain{" + "; ".join(bits) + "}"


def inject_int(c: IntCochain) -> Cochain:
    """View an integer cochain as a cochain of constant functions."""
    return Cochain(
        c.atlas,
        {s: PolyForm.const_function(c.atlas.dim, v) for s, v in c.data.items()},
    )


def extract_int(c: Cochain):
    """Recover an IntCochain when every component is an integer constant."""
    data = {}
    for s, form in c.data.items():
        v = form.constant_value()
        if v is None or v.denominator != 1:
            return None
        data[s] = v.numerator
    return IntCochain(c.atlas, data)


def _delta_candidates(c) -> set:
    """Canonical strings that can support the Cech differential."""
    atlas = c.atlas
    subsets = atlas.nonempty_subsets()
    out = set()
    for string in c.data:
        for entry in subsets:
            for k in range(len(string) + 1):
                cand = insert_at(string, k, entry)
                sign, canon = sort_with_sign(cand)
                if sign == 0:
                    continue
                if atlas.is_empty(union_of(canon)):
                    continue
                out.add(canon)
    return out


def cech_delta(c: Cochain) -> Cochain:
    """Alternating sum of restrictions of the one-shorter substrings."""
    atlas = c.atlas
    out = {}
    for string in _delta_candidates(c):
        u = union_of(string)
        total = PolyForm.zero(atlas.dim)
        for k in range(len(string)):
            sub = remove_at(string, k)
            val = c.value(sub)
            if val.is_zero():
                continue
            piece = atlas.restrict(val, union_of(sub), u)
            if k % 2:
                piece = -piece
            total = total + piece
        if not total.is_zero():
            out[string] = total
    return Cochain(atlas, out)


def int_cech_delta(c: IntCochain) -> IntCochain:
    atlas = c.atlas
    # reuse the candidate enumeration through a shim cochain support
    out = {}
    shim = Cochain(atlas)
    shim.data = {s: PolyForm.const_function(atlas.dim, 1) for s in c.data}
    for string in _delta_candidates(shim):
        total = 0
        for k in range(len(string)):
            v = c.value(remove_at(string, k))
            total += -v if k % 2 else v
        if total:
            out[string] = total
    return IntCochain(atlas, out)


def exterior_d(c: Cochain) -> Cochain:
    return Cochain(c.atlas, {s: f.d() for s, f in c.data.items()})


def total_D(c: Cochain) -> Cochain:
    """Total differential: delta plus (-1)^p times the exterior derivative."""
    delta = cech_delta(c)
    signed = {}
    for s, f in c.data.items():
        df = f.d()
        if df.is_zero():
            continue
        p = len(s) - 1
        signed[s] = df if p % 2 == 0 else -df
    return delta + Cochain(c.atlas, signed)


def is_global(c: Cochain) -> bool:
    """Membership in the kernel of delta among string-length-one cochains."""
    if any(len(s) != 1 for s in c.data):
        return False
    return cech_delta(c).is_zero()


def cup(a: Cochain, b: Cochain) -> Cochain:
    """Cup product.

    On homogeneous pieces of bidegree (m, j) and (n, k) the value on a
    string of length m + n + 1 is (-1)^(j n) times the wedge of the leading
    substring value of the first factor with the trailing substring value of
    the second, both restricted to the chart of the full string.
    """
    assert a.atlas is b.atlas
    atlas = a.atlas
    out = Cochain(atlas)
    for (m, j), ca in a.decompose_bidegree().items():
        for (n, k), cb in b.decompose_bidegree().items():
            if j + k > atlas.dim:
                continue
            sign = (-1) ** (j * n)
            # candidate strings: a support string of ca glued to one of cb
            # over one shared entry
            cands = set()
            for sa in ca.data:
                for sb in cb.data:
                    shared = set(sa) & set(sb)
                    for c0 in shared:
                        entries = list(sa) + list(sb)
                        entries.remove(c0)
                        sgn, canon = sort_with_sign(tuple(entries))
                        if sgn == 0 or canon is None:
                            continue
                        if atlas.is_empty(union_of(canon)):
                            continue
                        cands.add(canon)
            data = {}
            for string in cands:
                u = union_of(string)
                head = ca.value(string[: m + 1])
                if head.is_zero():
                    continue
                tail = cb.value(string[m:])
                if tail.is_zero():
                    continue
                head = atlas.restrict(head, union_of(string[: m + 1]), u)
                tail = atlas.restrict(tail, union_of(string[m:]), u)
                w = head.wedge(tail)
                if not w.is_zero():
                    data[string] = w.scale(sign)
            out = out + Cochain(atlas, data)
    return out


def int_cup(a: IntCochain, b: IntCochain) -> IntCochain:
    """Cup product of integer cochains (form degree zero, so no signs)."""
    res = cup(inject_int(a), inject_int(b))
    out = extract_int(res)
    assert out is not None
    return out
