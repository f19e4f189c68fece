"""Maps between atlases: compatible systems and their transformations.

A compatible system carries a union-preserving map of index subsets, one
lifting map per source chart into the corresponding target chart, and the
functorial images of the stored source embeddings.  Arrow images default to
the stored target embedding for the image pair and can be overridden per
arrow in the input document.  The key coherence law ties liftings to arrow
images: lifting(J) o arrow(I,J) = image_arrow(I,J) o lifting(I).

A natural transformation between two systems with the same source and
target assigns to every source index an embedding between the two image
charts, compatible with liftings and with the functor actions.
"""

from __future__ import annotations

from .atlas import Atlas, MissingContainmentError, resolve_group_element
from .indexcomb import Subset, map_string
from .polyform import AffineElement, PolyMap
from .report import FAIL, PASS, CheckRecord


class CompatibleSystem:
    def __init__(self, name: str, source: Atlas, target: Atlas, index_map,
                 liftings, arrow_overrides=None):
        self.name = name
        self.source = source
        self.target = target
        self.index_map: dict[Subset, Subset] = dict(index_map)
        self.liftings: dict[Subset, PolyMap] = dict(liftings)
        self.arrow_overrides: dict[tuple[Subset, Subset], PolyMap] = dict(arrow_overrides or {})

    def map_subset(self, I: Subset) -> Subset:
        return self.index_map[I]

    def map_string(self, string):
        return map_string(self.index_map, string)

    def lift(self, I: Subset) -> PolyMap:
        return self.liftings[I]

    def image_arrow(self, I: Subset, J: Subset) -> PolyMap:
        """Functor image of the stored source arrow chart(I) -> chart(J)."""
        key = (I, J)
        if key in self.arrow_overrides:
            return self.arrow_overrides[key]
        return self.target.arrow(self.index_map[I], self.index_map[J])

    def transport_group(self, I: Subset, g: AffineElement):
        """Image of a chart group element under the system.

        Returns (h, count) with lifting(I) o g = h o lifting(I); a sound
        system has exactly one match.
        """
        lift = self.liftings[I]
        lam = lift.compose(g.to_polymap())
        found, count = None, 0
        for h in self.target.group(self.index_map[I]):
            if h.to_polymap().compose(lift) == lam:
                found, count = h, count + 1
        return found, count

    def image_embedding(self, I: Subset, J: Subset, emb: PolyMap) -> PolyMap:
        """Functor image of an arbitrary source embedding chart(I) -> chart(J).

        The embedding is factored as h o stored_arrow with h unique in the
        group of chart J, and the image is transport(h) o image_arrow(I, J).
        """
        stored = self.source.arrow(I, J)
        h, count = resolve_group_element(self.source.group(J), emb, stored)
        if count != 1:
            raise ValueError(
                f"embedding chart{I} -> chart{J} does not factor uniquely "
                f"through the stored arrow (matches: {count})"
            )
        ht, tcount = self.transport_group(J, h)
        if tcount != 1:
            raise ValueError(
                f"group element of chart {J} has no unique transport under "
                f"system {self.name} (matches: {tcount})"
            )
        return ht.to_polymap().compose(self.image_arrow(I, J))

    def __repr__(self):
        return f"CompatibleSystem({self.name!r}: {self.source.name} -> {self.target.name})"


def identity_system(atlas: Atlas) -> CompatibleSystem:
    subs = atlas.nonempty_subsets()
    ident = PolyMap.identity(atlas.dim)
    return CompatibleSystem(
        "id", atlas, atlas,
        {s: s for s in subs},
        {s: ident for s in subs},
    )


def compose_systems(outer: CompatibleSystem, inner: CompatibleSystem) -> CompatibleSystem:
    """The composite system, outer after inner."""
    if inner.target is not outer.source:
        raise ValueError("systems are not composable")
    index_map = {I: outer.index_map[J] for I, J in inner.index_map.items()}
    liftings = {
        I: outer.lift(inner.map_subset(I)).compose(inner.lift(I))
        for I in inner.liftings
    }
    overrides = {}
    for (I, J) in _source_arrow_pairs(inner.source):
        img = outer.image_embedding(
            inner.map_subset(I), inner.map_subset(J), inner.image_arrow(I, J)
        )
        overrides[(I, J)] = img
    return CompatibleSystem(
        f"{outer.name}.{inner.name}", inner.source, outer.target,
        index_map, liftings, overrides,
    )


def _source_arrow_pairs(atlas: Atlas):
    return list(atlas.arrows.keys())


class NaturalTransformation:
    """Transformation between two systems with common source and target."""

    def __init__(self, name: str, sys1: CompatibleSystem, sys2: CompatibleSystem,
                 components):
        if sys1.source is not sys2.source or sys1.target is not sys2.target:
            raise ValueError("transformation endpoints do not match")
        self.name = name
        self.sys1 = sys1
        self.sys2 = sys2
        self.components: dict[Subset, PolyMap] = dict(components)

    def component(self, I: Subset) -> PolyMap:
        return self.components[I]

    def __repr__(self):
        return f"NaturalTransformation({self.name!r}: {self.sys1.name} => {self.sys2.name})"


def vertical_compose(beta: NaturalTransformation, alpha: NaturalTransformation) -> NaturalTransformation:
    """Componentwise composite alpha followed by beta."""
    if beta.sys1 is not alpha.sys2:
        raise ValueError("transformations are not vertically composable")
    comps = {
        I: beta.component(I).compose(alpha.component(I))
        for I in alpha.components
    }
    return NaturalTransformation(f"{beta.name}*{alpha.name}", alpha.sys1, beta.sys2, comps)


def horizontal_compose(beta: NaturalTransformation, alpha: NaturalTransformation) -> NaturalTransformation:
    """Whiskered composite for alpha between systems into the source of beta.

    The component at I is (image of alpha_I under the second outer system)
    composed with the beta component at the first inner image of I.
    """
    f1, f2 = alpha.sys1, alpha.sys2
    g1, g2 = beta.sys1, beta.sys2
    if f1.target is not g1.source:
        raise ValueError("transformations are not horizontally composable")
    comps = {}
    for I in alpha.components:
        a_img = g2.image_embedding(f1.map_subset(I), f2.map_subset(I), alpha.component(I))
        comps[I] = a_img.compose(beta.component(f1.map_subset(I)))
    return NaturalTransformation(
        f"{beta.name}o{alpha.name}",
        compose_systems(g1, f1),
        compose_systems(g2, f2),
        comps,
    )


def _check(records, name, law, ok, detail=""):
    records.append(CheckRecord(name, law, PASS if ok else FAIL, detail))


def validate_system(sys: CompatibleSystem) -> list[CheckRecord]:
    records: list[CheckRecord] = []
    src_subs = sys.source.nonempty_subsets()

    missing = [I for I in src_subs if I not in sys.index_map]
    missing_lift = [I for I in src_subs if I not in sys.liftings]
    _check(
        records,
        f"system-{sys.name}-total",
        "the index map and liftings cover every nonempty source index",
        not missing and not missing_lift,
        f"index={missing[:4]} lift={missing_lift[:4]}" if missing or missing_lift else "",
    )
    if missing or missing_lift:
        return records

    bad_union = []
    for I in src_subs:
        for J in src_subs:
            u = I.union(J)
            if u not in sys.index_map:
                continue
            if sys.index_map[u] != sys.index_map[I].union(sys.index_map[J]):
                bad_union.append((I, J))
    _check(
        records,
        f"system-{sys.name}-unions",
        "the index map preserves unions of index subsets",
        not bad_union,
        f"pairs={bad_union[:4]}" if bad_union else "",
    )

    bad_empty = []
    for I in src_subs:
        if sys.target.is_empty(sys.index_map[I]):
            bad_empty.append(I)
    _check(
        records,
        f"system-{sys.name}-nonempty",
        "images of nonempty charts are nonempty charts",
        not bad_empty,
        f"indices={bad_empty[:4]}" if bad_empty else "",
    )

    bad_dim = [
        I for I in src_subs
        if sys.lift(I).src_dim != sys.source.dim or sys.lift(I).dst_dim != sys.target.dim
    ]
    _check(
        records,
        f"system-{sys.name}-lift-dims",
        "liftings map source chart coordinates to target chart coordinates",
        not bad_dim,
        f"indices={bad_dim[:4]}" if bad_dim else "",
    )

    # arrow images are genuine embeddings between the image charts
    bad_img = []
    for (I, J) in sys.source.arrows:
        fI, fJ = sys.index_map[I], sys.index_map[J]
        try:
            img = sys.image_arrow(I, J)
        except MissingContainmentError as e:
            bad_img.append(((I, J), f"missing target containment {e.source}->{e.target}"))
            continue
        if fI == fJ:
            stored = PolyMap.identity(sys.target.dim)
        else:
            try:
                stored = sys.target.arrow(fI, fJ)
            except MissingContainmentError as e:
                bad_img.append(((I, J), f"missing target containment {e.source}->{e.target}"))
                continue
        h, count = resolve_group_element(sys.target.group(fJ), img, stored)
        if count != 1:
            bad_img.append(((I, J), f"factorization count {count}"))
    _check(
        records,
        f"system-{sys.name}-arrow-images",
        "each arrow image factors uniquely through the stored target embedding",
        not bad_img,
        f"failures={bad_img[:3]}" if bad_img else "",
    )

    # lifting coherence over every stored source arrow
    bad_coh = []
    for (I, J) in sys.source.arrows:
        lam = sys.source.arrow(I, J)
        lhs = sys.lift(J).compose(lam)
        try:
            rhs = sys.image_arrow(I, J).compose(sys.lift(I))
        except MissingContainmentError:
            continue  # already reported above
        if lhs != rhs:
            bad_coh.append((I, J))
    _check(
        records,
        f"system-{sys.name}-lift-coherence",
        "lifting(J) o arrow(I,J) = image_arrow(I,J) o lifting(I) for every "
        "stored source arrow",
        not bad_coh,
        f"pairs={bad_coh[:4]}" if bad_coh else "",
    )

    # group elements transport uniquely through liftings
    bad_tr = []
    for I in src_subs:
        for g in sys.source.group(I):
            _, count = sys.transport_group(I, g)
            if count != 1:
                bad_tr.append((I, count))
                break
    _check(
        records,
        f"system-{sys.name}-group-transport",
        "every chart group element transports to exactly one target group "
        "element through the lifting",
        not bad_tr,
        f"failures={bad_tr[:4]}" if bad_tr else "",
    )

    return records


def validate_transformation(nt: NaturalTransformation) -> list[CheckRecord]:
    records: list[CheckRecord] = []
    f1, f2 = nt.sys1, nt.sys2
    src_subs = f1.source.nonempty_subsets()

    missing = [I for I in src_subs if I not in nt.components]
    _check(
        records,
        f"nt-{nt.name}-total",
        "a component is given for every nonempty source index",
        not missing,
        f"indices={missing[:4]}" if missing else "",
    )
    if missing:
        return records

    # each component is an embedding between the image charts
    bad_comp = []
    for I in src_subs:
        a, b = f1.map_subset(I), f2.map_subset(I)
        comp = nt.component(I)
        if a == b:
            stored = PolyMap.identity(f1.target.dim)
        else:
            try:
                stored = f1.target.arrow(a, b)
            except MissingContainmentError as e:
                bad_comp.append((I, f"missing containment {e.source}->{e.target}"))
                continue
        h, count = resolve_group_element(f1.target.group(b), comp, stored)
        if count != 1:
            bad_comp.append((I, f"factorization count {count}"))
    _check(
        records,
        f"nt-{nt.name}-components",
        "each component factors uniquely through the stored embedding between "
        "the image charts",
        not bad_comp,
        f"failures={bad_comp[:3]}" if bad_comp else "",
    )

    bad_lift = [
        I for I in src_subs
        if nt.component(I).compose(f1.lift(I)) != f2.lift(I)
    ]
    _check(
        records,
        f"nt-{nt.name}-liftings",
        "component(I) o lifting1(I) = lifting2(I) on every source index",
        not bad_lift,
        f"indices={bad_lift[:4]}" if bad_lift else "",
    )

    bad_nat = []
    for (I, J) in f1.source.arrows:
        try:
            lhs = nt.component(J).compose(f1.image_arrow(I, J))
            rhs = f2.image_arrow(I, J).compose(nt.component(I))
        except MissingContainmentError:
            bad_nat.append((I, J))
            continue
        if lhs != rhs:
            bad_nat.append((I, J))
    _check(
        records,
        f"nt-{nt.name}-natural",
        "component(J) o image1(arrow) = image2(arrow) o component(I) for every "
        "stored source arrow",
        not bad_nat,
        f"pairs={bad_nat[:4]}" if bad_nat else "",
    )

    return records
