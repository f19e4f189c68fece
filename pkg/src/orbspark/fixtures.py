"""Bundled example documents.

Four scenarios ship with the package:

* ``s1-arcs``: three arcs covering a circle, trivial groups, one wrapping
  embedding.  Degree-one cohomology is nontrivial.
* ``mirror-interval``: an interval glued to a mirror quotient chart with a
  two-element group, plus a self-system pair whose transformation flips the
  mirrored chart.
* ``cone-z4``: a single plane chart with a four-element rotation group.
* ``chain``: three atlases with nested charts, three systems from the first
  into the second carrying two composable transformations, and two systems
  from the second into the third carrying one more.  Liftings of the first
  stage are genuinely nonlinear, so functoriality is exercised on
  polynomial maps, not just affine ones.

Charts are given coordinates through per-chart affine frames into a common
plane, and every stored arrow is the frame-compatible one; this makes all
coherence laws hold exactly while keeping the individual maps varied.
"""

from __future__ import annotations

from fractions import Fraction

from .atlas import Atlas, Chart, Embedding
from .document import (
    AtlasDoc,
    ChartDoc,
    CochainComponentDoc,
    CochainDoc,
    Document,
    EmbeddingDoc,
    MapDoc,
    SystemDoc,
    TransformationDoc,
    _affine_to_doc,
    _atlas_to_doc,
    _map_to_doc,
)
from .indexcomb import Subset, VertexSet
from .polyform import AffineElement, PolyMap, Polynomial


def _aff(mat, vec) -> AffineElement:
    return AffineElement(mat, vec)


def _shift1(c) -> PolyMap:
    """1-d affine map x -> x + c as a PolyMap."""
    return _aff([[1]], [c]).to_polymap()


def _sys_doc(source: str, target: str, index_map: dict, liftings: dict,
             arrows: dict | None = None) -> SystemDoc:
    return SystemDoc(
        source=source,
        target=target,
        index_map=[(list(i.members), list(j.members)) for i, j in sorted(index_map.items())],
        liftings=[(list(i.members), _map_to_doc(m)) for i, m in sorted(liftings.items())],
        arrows=[
            EmbeddingDoc(source=list(s.members), target=list(t.members), map=_map_to_doc(m))
            for (s, t), m in sorted((arrows or {}).items())
        ],
    )


def _nt_doc(frm: str, to: str, components: dict) -> TransformationDoc:
    return TransformationDoc.model_validate(
        {
            "from": frm,
            "to": to,
            "components": [(list(i.members), _map_to_doc(m).model_dump()) for i, m in sorted(components.items())],
        }
    )


# ------------------------------------------------------------- s1-arcs


def build_s1_arcs() -> Document:
    V = VertexSet(["1", "2", "3"])
    s = {lbl: V.singleton(lbl) for lbl in "123"}
    d = {pair: V.subset(list(pair)) for pair in ("12", "23", "13")}
    triple = V.subset(["1", "2", "3"])
    ident = AffineElement.identity(1)

    charts = {}
    for idx in list(s.values()) + list(d.values()):
        charts[idx] = Chart(idx, 1, (ident,))
    charts[triple] = Chart(triple, 1, (ident,), empty=True)

    # arc i sits around circle position i (circumference 3); each chart uses
    # coordinates centered at its midpoint, so inclusions become shifts.
    half = Fraction(1, 2)
    arrows = [
        Embedding(d["12"], s["1"], _shift1(half)),
        Embedding(d["12"], s["2"], _shift1(-half)),
        Embedding(d["23"], s["2"], _shift1(half)),
        Embedding(d["23"], s["3"], _shift1(-half)),
        Embedding(d["13"], s["3"], _shift1(half)),
        # the wrap: positions near 3.5 re-enter arc 1 near 0.5
        Embedding(d["13"], s["1"], _shift1(-half)),
    ]
    atlas = Atlas("circle", V, 1, charts, arrows)

    steps = CochainDoc(
        atlas="circle",
        kind="int",
        components=[
            CochainComponentDoc(string=[["2"]], value=1),
            CochainComponentDoc(string=[["3"]], value=2),
            CochainComponentDoc(string=[["1", "2"]], value=1),
            CochainComponentDoc(string=[["2", "3"]], value=2),
            CochainComponentDoc(string=[["1", "3"]], value=2),
        ],
    )
    angular = CochainDoc(
        atlas="circle",
        kind="form",
        components=[
            CochainComponentDoc(string=[[v]], form=[[[0], [["1", [0]]]]])
            for v in ["1", "2", "3"]
        ]
        + [
            CochainComponentDoc(string=[list(pair)], form=[[[0], [["1", [0]]]]])
            for pair in (["1", "2"], ["2", "3"], ["1", "3"])
        ],
    )
    # local branches of the angle function: x on each arc, shifted on the
    # overlap charts so that all mismatches are integers; its differential
    # is the angular family minus the winding steps
    fn = lambda *terms: [[[], list(terms)]]
    angle = CochainDoc(
        atlas="circle",
        kind="form",
        components=[
            CochainComponentDoc(string=[["1"]], form=fn(["1", [1]])),
            CochainComponentDoc(string=[["2"]], form=fn(["1", [1]])),
            CochainComponentDoc(string=[["3"]], form=fn(["1", [1]])),
            CochainComponentDoc(string=[["1", "2"]], form=fn(["1/2", [0]], ["1", [1]])),
            CochainComponentDoc(string=[["2", "3"]], form=fn(["1/2", [0]], ["1", [1]])),
            CochainComponentDoc(string=[["1", "3"]], form=fn(["-1/2", [0]], ["1", [1]])),
        ],
    )
    return Document(
        atlases={"circle": _atlas_to_doc(atlas)},
        cochains={"steps": steps, "angular": angular, "angle": angle},
        default_atlas="circle",
    )


# ----------------------------------------------------- mirror-interval


def build_mirror_interval() -> Document:
    V = VertexSet(["1", "2"])
    s1, s2 = V.singleton("1"), V.singleton("2")
    s12 = V.subset(["1", "2"])
    ident = AffineElement.identity(1)
    neg = _aff([[-1]], [0])
    inc = PolyMap.identity(1)
    negmap = neg.to_polymap()

    charts = {
        s1: Chart(s1, 1, (ident, neg)),
        s2: Chart(s2, 1, (ident,)),
        s12: Chart(s12, 1, (ident,)),
    }
    arrows = [
        Embedding(s12, s1, inc),
        Embedding(s12, s2, inc),
        # the underlying set of chart 2 equals that of chart {1,2} and lies
        # inside chart 1; declare both extra containments
        Embedding(s2, s1, inc),
        Embedding(s2, s12, inc),
    ]
    atlas = Atlas("mirror", V, 1, charts, arrows)
    subs = [s1, s12, s2]

    one = _sys_doc(
        "mirror", "mirror",
        {i: i for i in subs},
        {i: inc for i in subs},
    )
    flip = _sys_doc(
        "mirror", "mirror",
        {i: i for i in subs},
        {s1: negmap, s2: inc, s12: inc},
        arrows={(s12, s1): negmap, (s2, s1): negmap},
    )
    mirror_nt = _nt_doc("one", "flip", {s1: negmap, s2: inc, s12: inc})

    xsq = CochainDoc(
        atlas="mirror",
        kind="form",
        components=[
            CochainComponentDoc(string=[[v] if len(v) == 1 else list(v)], form=[[[], [["1", [2]]]]])
            for v in ["1", "2", "12"]
        ],
    )
    # locally constant with a unit jump onto chart 2; differential is purely
    # integral, so this generates torsion-free products cheaply
    step = CochainDoc(
        atlas="mirror",
        kind="form",
        components=[CochainComponentDoc(string=[["2"]], form=[[[], [["1", [0]]]]])],
    )
    return Document(
        atlases={"mirror": _atlas_to_doc(atlas)},
        systems={"one": one, "flip": flip},
        transformations={"mirror": mirror_nt},
        cochains={"xsq": xsq, "step": step},
        default_atlas="mirror",
    )


# ------------------------------------------------------------ cone-z4


def build_cone_z4() -> Document:
    V = VertexSet(["1"])
    s1 = V.singleton("1")
    rot = _aff([[0, -1], [1, 0]], [0, 0])
    group = (AffineElement.identity(2), rot, rot.compose(rot), rot.compose(rot).compose(rot))
    atlas = Atlas("cone", V, 2, {s1: Chart(s1, 2, group)}, [])

    radius = CochainDoc(
        atlas="cone",
        kind="form",
        components=[
            CochainComponentDoc(string=[["1"]], form=[[[], [["1", [2, 0]], ["1", [0, 2]]]]]),
        ],
    )
    angular2 = CochainDoc(
        atlas="cone",
        kind="form",
        # x dy - y dx, invariant under the rotation group
        components=[
            CochainComponentDoc(
                string=[["1"]],
                form=[[[0], [["-1", [0, 1]]]], [[1], [["1", [1, 0]]]]],
            ),
        ],
    )
    return Document(
        atlases={"cone": _atlas_to_doc(atlas)},
        cochains={"radius": radius, "angular": angular2},
        default_atlas="cone",
    )


# -------------------------------------------------------------- chain


_PALETTE = [
    ([[1, 0], [0, 1]], [0, 0]),
    ([[1, 1], [0, 1]], [Fraction(1, 2), 0]),
    ([[Fraction(1, 2), 0], [0, 1]], [0, Fraction(1, 3)]),
    ([[1, 0], [1, 1]], [Fraction(-1, 2), Fraction(1, 4)]),
    ([[2, 0], [0, Fraction(1, 2)]], [Fraction(1, 5), -1]),
    ([[1, -1], [0, 1]], [0, Fraction(2, 3)]),
    ([[Fraction(1, 3), 0], [0, 3]], [1, Fraction(1, 7)]),
]


def _frames(vset: VertexSet, offset: int) -> dict:
    frames = {}
    for i, sub in enumerate(vset.all_subsets()):
        mat, vec = _PALETTE[(i + offset) % len(_PALETTE)]
        frames[sub] = _aff(mat, vec)
    return frames


def _frame_arrow(frames, src: Subset, dst: Subset) -> PolyMap:
    return frames[dst].inverse().compose(frames[src]).to_polymap()


def _nested_atlas(name: str, labels, frames) -> Atlas:
    """Charts indexed by subsets of a chain of nested sets.

    labels are ordered from the largest underlying set to the smallest, so
    the underlying set of an index subset is that of its highest label and
    containment between charts is governed by that rank.
    """
    vset = VertexSet(labels)
    subs = vset.all_subsets()
    top = {S: max(vset.rank(m) for m in S.members) for S in subs}
    ident = AffineElement.identity(2)
    charts = {S: Chart(S, 2, (ident,)) for S in subs}
    arrows = []
    for S in subs:
        for T in subs:
            if S != T and top[S] >= top[T]:
                arrows.append(Embedding(S, T, _frame_arrow(frames, S, T)))
    return Atlas(name, vset, 2, charts, arrows)


def _lift_map(frames_src, frames_dst, chi: PolyMap, I: Subset, fI: Subset) -> PolyMap:
    inner = chi.compose(frames_src[I].to_polymap())
    return frames_dst[fI].inverse().to_polymap().compose(inner)


def _singleton_system(name, src: Atlas, dst: Atlas, frames_src, frames_dst,
                      vmap: dict, chi: PolyMap) -> tuple[dict, dict]:
    """Index map generated by vertex images, liftings through a common map chi."""
    index_map = {}
    liftings = {}
    for I in src.nonempty_subsets():
        img = None
        for v in I.members:
            J = dst.vset.subset(vmap[v])
            img = J if img is None else img.union(J)
        index_map[I] = img
        liftings[I] = _lift_map(frames_src, frames_dst, chi, I, img)
    return index_map, liftings


def build_chain() -> Document:
    # source atlas: two overlapping plane charts
    VU = VertexSet(["u1", "u2"])
    u1, u2 = VU.singleton("u1"), VU.singleton("u2")
    u12 = VU.subset(["u1", "u2"])
    ident2 = AffineElement.identity(2)
    frames_u = {
        u1: _aff(*_PALETTE[0]),
        u12: _aff(*_PALETTE[1]),
        u2: _aff(*_PALETTE[4]),
    }
    charts_u = {S: Chart(S, 2, (ident2,)) for S in [u1, u2, u12]}
    arrows_u = [
        Embedding(u12, u1, _frame_arrow(frames_u, u12, u1)),
        Embedding(u12, u2, _frame_arrow(frames_u, u12, u2)),
    ]
    U = Atlas("U", VU, 2, charts_u, arrows_u)

    frames_v = _frames(VertexSet(["v1", "v2", "v3"]), 1)
    Vat = _nested_atlas("V", ["v1", "v2", "v3"], frames_v)
    frames_w = _frames(VertexSet(["w1", "w2", "w3"]), 4)
    Wat = _nested_atlas("W", ["w1", "w2", "w3"], frames_w)

    # all three systems U -> V lift the same underlying map; its plane
    # expression is a polynomial shear, so liftings are quadratic
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    third = Polynomial.const(2, Fraction(1, 3))
    chi_uv = PolyMap(2, 2, [x + third * y * y, y])
    chi_vw = _aff([[Fraction(1, 2), 0], [0, Fraction(1, 2)]], [Fraction(1, 4), 0]).to_polymap()

    f_specs = {
        "f1": {"u1": ["v2"], "u2": ["v3"]},
        "f2": {"u1": ["v1"], "u2": ["v2"]},
        "f3": {"u1": ["v1"], "u2": ["v1"]},
    }
    g_specs = {
        "g1": {"v1": ["w1"], "v2": ["w2"], "v3": ["w3"]},
        "g2": {"v1": ["w1"], "v2": ["w2"], "v3": ["w2"]},
    }

    systems = {}
    f_maps = {}
    for name, vmap in f_specs.items():
        imap, lifts = _singleton_system(name, U, Vat, frames_u, frames_v, vmap, chi_uv)
        f_maps[name] = imap
        systems[name] = _sys_doc("U", "V", imap, lifts)
    g_maps = {}
    for name, vmap in g_specs.items():
        imap, lifts = _singleton_system(name, Vat, Wat, frames_v, frames_w, vmap, chi_vw)
        g_maps[name] = imap
        systems[name] = _sys_doc("V", "W", imap, lifts)

    # transformation components are the frame-compatible arrows between the
    # two image charts
    def nt_components(m1: dict, m2: dict, frames) -> dict:
        return {I: _frame_arrow(frames, m1[I], m2[I]) for I in m1}

    transformations = {
        "alpha": _nt_doc("f1", "f2", nt_components(f_maps["f1"], f_maps["f2"], frames_v)),
        "beta": _nt_doc("f2", "f3", nt_components(f_maps["f2"], f_maps["f3"], frames_v)),
        "eta": _nt_doc("g1", "g2", nt_components(g_maps["g1"], g_maps["g2"], frames_w)),
    }

    return Document(
        atlases={"U": _atlas_to_doc(U), "V": _atlas_to_doc(Vat), "W": _atlas_to_doc(Wat)},
        systems=systems,
        transformations=transformations,
        default_atlas="W",
    )


BUILDERS = {
    "s1-arcs": build_s1_arcs,
    "mirror-interval": build_mirror_interval,
    "cone-z4": build_cone_z4,
    "chain": build_chain,
}

# bundled cochains that satisfy the spark equation, per scenario
SPARKS = {
    "s1-arcs": ["angle"],
    "mirror-interval": ["xsq", "step"],
    "cone-z4": ["radius", "angular"],
}

# ordered product pairs whose equivalence witness stays within coefficient
# degree 3, so the bounded search is expected to certify them; pairs of two
# quadratic sparks need a quartic witness and are deliberately left out
PRODUCT_PAIRS = {
    "s1-arcs": [("angle", "angle")],
    "mirror-interval": [("step", "xsq"), ("xsq", "step"), ("step", "step")],
    "cone-z4": [("radius", "angular"), ("angular", "radius"), ("angular", "angular")],
}


def bundled_documents() -> dict:
    return {name: fn() for name, fn in BUILDERS.items()}


def write_fixtures(directory: str) -> list[str]:
    import os

    from .document import document_to_json

    os.makedirs(directory, exist_ok=True)
    written = []
    for name, fn in BUILDERS.items():
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(document_to_json(fn()))
        written.append(path)
    return written


if __name__ == "__main__":
    import sys

    target = sys.argv[1] if len(sys.argv) > 1 else "fixtures"
    for p in write_fixtures(target):
        print(p)
