"""Cochain operators induced by systems and transformations.

``pullback_system`` is the contravariant action of a compatible system on
cochains.  The homotopy operators are all instances of one interleaving
scheme: given systems s1, ..., sq with successive transformations, the
value on an output string I_0 ... I_{M-1} is the signed sum over weakly
increasing split points of the input evaluated on the string that follows
s1 up to the first split, s2 up to the second, and so on, with the entry at
each split taken twice (once per neighboring system).  The form is
restricted to the chart of the s1-image of the output union and pulled
back through the s1 lifting.

With two systems this lowers string length by one and is the chain
homotopy comparing the two pullbacks; with three systems it lowers length
by two and compares a composite transformation to its two factors, in the
vertical as well as the horizontal arrangement.
"""

from __future__ import annotations

from .atlas import Atlas
from .cochain import Cochain, IntCochain
from .indexcomb import Subset, union_of
from .morphisms import CompatibleSystem, NaturalTransformation, compose_systems
from .polyform import PolyForm


def pullback_system(sys: CompatibleSystem, c: Cochain) -> Cochain:
    """Pull a cochain on the target atlas back to the source atlas."""
    src = sys.source
    out = {}
    for L in c.string_lengths():
        for string in src.canonical_strings(L):
            val = c.value(sys.map_string(string))
            if val.is_zero():
                continue
            pulled = val.pullback(sys.lift(union_of(string)))
            if not pulled.is_zero():
                out[string] = out.get(string, PolyForm.zero(src.dim)) + pulled
    return Cochain(src, {s: f for s, f in out.items() if not f.is_zero()})


def pullback_system_int(sys: CompatibleSystem, c: IntCochain) -> IntCochain:
    src = sys.source
    out = {}
    for L in sorted({len(s) for s in c.data}):
        for string in src.canonical_strings(L):
            v = c.value(sys.map_string(string))
            if v:
                out[string] = v
    return IntCochain(src, out)


def _interleave(systems: "list[CompatibleSystem]", c: Cochain) -> Cochain:
    """Shared scheme behind the homotopy operators; see the module docstring."""
    q = len(systems)
    head = systems[0]
    src, dst = head.source, head.target
    out = {}
    for L in c.string_lengths():
        M = L - (q - 1)
        if M < 1:
            continue
        for string in src.canonical_strings(M):
            u = union_of(string)
            target_chart = head.map_subset(u)
            lift = head.lift(u)
            total = PolyForm.zero(src.dim)
            for splits in _weak_splits(q - 1, M):
                aux = []
                prev = 0
                for sysno, cut in enumerate(splits + (M - 1,)):
                    seg = string[prev : cut + 1]
                    aux.extend(systems[sysno].map_subset(e) for e in seg)
                    prev = cut
                val = c.value(tuple(aux))
                if val.is_zero():
                    continue
                restricted = dst.restrict(val, union_of(tuple(aux)), target_chart)
                if restricted.is_zero():
                    continue
                sign = (-1) ** sum(splits)
                total = total + restricted.scale(sign)
            if not total.is_zero():
                pulled = total.pullback(lift)
                if not pulled.is_zero():
                    out[string] = out.get(string, PolyForm.zero(src.dim)) + pulled
    return Cochain(src, {s: f for s, f in out.items() if not f.is_zero()})


def _weak_splits(k: int, M: int):
    """Weakly increasing k-tuples with entries in range(M)."""
    if k == 0:
        yield ()
        return
    def rec(prefix, start):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for v in range(start, M):
            yield from rec(prefix + [v], v)
    yield from rec([], 0)


def homotopy_alpha(nt: NaturalTransformation, c: Cochain) -> Cochain:
    """String-degree-lowering homotopy between the two system pullbacks."""
    return _interleave([nt.sys1, nt.sys2], c)


def homotopy_gamma(beta: NaturalTransformation, alpha: NaturalTransformation,
                   c: Cochain) -> Cochain:
    """Second-order homotopy for a vertically composable pair."""
    if beta.sys1 is not alpha.sys2:
        raise ValueError("transformations are not vertically composable")
    return _interleave([alpha.sys1, alpha.sys2, beta.sys2], c)


def homotopy_xi(beta: NaturalTransformation, alpha: NaturalTransformation,
                c: Cochain, composites=None) -> Cochain:
    """Second-order homotopy for a horizontally composable pair.

    alpha runs between systems into an intermediate atlas, beta between
    systems out of it; c lives on the far target.  The three interleaved
    systems are the composites 11, 21 and 22 (outer index first).
    """
    if alpha.sys1.target is not beta.sys1.source:
        raise ValueError("transformations are not horizontally composable")
    if composites is None:
        composites = xi_composites(beta, alpha)
    return _interleave(list(composites), c)


def xi_composites(beta: NaturalTransformation, alpha: NaturalTransformation):
    c11 = compose_systems(beta.sys1, alpha.sys1)
    c21 = compose_systems(beta.sys1, alpha.sys2)
    c22 = compose_systems(beta.sys2, alpha.sys2)
    return c11, c21, c22


# ------------------------------------------------------- small complex


def choice_map(atlas: Atlas, how: str = "min") -> dict:
    """Pick one vertex out of every nonempty index subset."""
    if how not in ("min", "max"):
        raise ValueError("choice map must be 'min' or 'max'")
    out = {}
    for I in atlas.nonempty_subsets():
        member = I.members[0] if how == "min" else I.members[-1]
        out[I] = atlas.vset.singleton(member)
    return out


def is_small(c) -> bool:
    """Support entirely on strings of singleton subsets."""
    return all(all(len(e) == 1 for e in s) for s in c.data)


def small_strings(atlas: Atlas, length: int):
    singles = [s for s in atlas.nonempty_subsets() if len(s) == 1]
    from itertools import combinations

    out = []
    for combo in combinations(singles, length):
        if not atlas.is_empty(union_of(combo)):
            out.append(combo)
    return out


def phi_extend(atlas: Atlas, phi: dict, small: Cochain) -> Cochain:
    """Extend a small-complex cochain to all chart strings.

    The value on a string is the value of the small cochain on the string
    of chosen vertices, restricted to the chart of the string's union; the
    chosen vertex of each entry belongs to that entry, so the required
    containment always holds.
    """
    out = {}
    for L in small.string_lengths():
        for string in atlas.canonical_strings(L):
            vs = tuple(phi[e] for e in string)
            val = small.value(vs)
            if val.is_zero():
                continue
            restricted = atlas.restrict(val, union_of(vs), union_of(string))
            if not restricted.is_zero():
                out[string] = restricted
    return Cochain(atlas, out)


def phi_extend_int(atlas: Atlas, phi: dict, small: IntCochain) -> IntCochain:
    out = {}
    for L in sorted({len(s) for s in small.data}):
        for string in atlas.canonical_strings(L):
            v = small.value(tuple(phi[e] for e in string))
            if v:
                out[string] = v
    return IntCochain(atlas, out)


def restrict_to_small(c: Cochain) -> Cochain:
    """Keep only the components on strings of singleton subsets."""
    return Cochain(c.atlas, {s: f for s, f in c.data.items() if all(len(e) == 1 for e in s)})


def order_compatible_system(sys: CompatibleSystem) -> bool:
    """Whether the index map is monotone on co-occurring source subsets.

    The cup product on canonically ordered strings is computed from the
    front and back faces of sorted strings, so a pullback preserves it on
    the nose exactly when mapped strings stay weakly sorted.  That reduces
    to monotonicity on the pairs that occur together in some string.
    """
    for S, T in sys.source.canonical_strings(2):
        if not sys.map_subset(S) <= sys.map_subset(T):
            return False
    return True


def order_compatible_choice(atlas: Atlas, phi: dict) -> bool:
    """Monotonicity of a vertex choice, in the sense of the system check."""
    for S, T in atlas.canonical_strings(2):
        if not phi[S] <= phi[T]:
            return False
    return True
