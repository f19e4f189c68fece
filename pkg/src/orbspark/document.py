"""JSON document format for atlases, morphisms and cochain literals.

A single document can carry several atlases plus the systems and
transformations between them, so that one file describes a whole
verification scenario.  All rationals are strings "p" or "p/q"; floats are
rejected.  The pydantic models double as the published schema (see
``document_schema``) and as the request payload types of the service.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .atlas import Atlas, Chart, Embedding
from .cochain import Cochain, IntCochain
from .indexcomb import VertexSet
from .morphisms import CompatibleSystem, NaturalTransformation
from .polyform import AffineElement, PolyForm, PolyMap, Polynomial, rat, rat_str


class DocumentError(ValueError):
    """Raised for structurally invalid documents."""


# ---------------------------------------------------------------- pydantic

PolyDoc = list  # [[coeff, [exponents...]], ...]
FormDoc = list  # [[[covector indices...], PolyDoc], ...]


class MapDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    src: int
    dst: int
    comps: list[PolyDoc]


class AffineDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    matrix: list[list[str]]
    shift: list[str]


class ChartDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    index: list[str]
    group: list[AffineDoc] = Field(default_factory=list)
    empty: bool = False
    contractible: bool = True


class EmbeddingDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    source: list[str]
    target: list[str]
    map: MapDoc


class AtlasDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    vertices: list[str]
    dimension: int
    charts: list[ChartDoc]
    embeddings: list[EmbeddingDoc] = Field(default_factory=list)


class SystemDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    source: str
    target: str
    index_map: list[tuple[list[str], list[str]]]
    liftings: list[tuple[list[str], MapDoc]]
    arrows: list[EmbeddingDoc] = Field(default_factory=list)


class TransformationDoc(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)
    from_system: str = Field(alias="from")
    to_system: str = Field(alias="to")
    components: list[tuple[list[str], MapDoc]]


class CochainComponentDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    string: list[list[str]]
    form: FormDoc | None = None
    value: int | None = None


class CochainDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    atlas: str
    kind: str = "form"  # "form" or "int"
    components: list[CochainComponentDoc] = Field(default_factory=list)


class Document(BaseModel):
    model_config = ConfigDict(extra="forbid")
    format: str = "orbspark"
    version: int = 1
    atlases: dict[str, AtlasDoc]
    systems: dict[str, SystemDoc] = Field(default_factory=dict)
    transformations: dict[str, TransformationDoc] = Field(default_factory=dict)
    cochains: dict[str, CochainDoc] = Field(default_factory=dict)
    default_atlas: str | None = None


def document_schema() -> dict:
    return Document.model_json_schema()


# ---------------------------------------------------------------- loading


def _poly_from_doc(doc: PolyDoc, nvars: int) -> Polynomial:
    coeffs = {}
    for entry in doc:
        if len(entry) != 2:
            raise DocumentError(f"polynomial term {entry!r} must be [coeff, exponents]")
        c, exps = entry
        if isinstance(c, float):
            raise DocumentError("float coefficients are not allowed; use \"p/q\" strings")
        exps = tuple(int(e) for e in exps)
        if len(exps) != nvars:
            raise DocumentError(f"exponent vector {exps} has wrong length for {nvars} variables")
        coeffs[exps] = coeffs.get(exps, 0) + rat(c)
    return Polynomial(nvars, coeffs)


def _poly_to_doc(p: Polynomial) -> PolyDoc:
    return [
        [rat_str(c), list(e)]
        for e, c in sorted(p.coeffs.items())
    ]


def _form_from_doc(doc: FormDoc, nvars: int) -> PolyForm:
    terms = {}
    for entry in doc:
        if len(entry) != 2:
            raise DocumentError(f"form term {entry!r} must be [indices, polynomial]")
        key, poly = entry
        key = tuple(int(k) for k in key)
        p = _poly_from_doc(poly, nvars)
        if key in terms:
            p = terms[key] + p
        terms[key] = p
    return PolyForm(nvars, {k: p for k, p in terms.items() if not p.is_zero()})


def _form_to_doc(f: PolyForm) -> FormDoc:
    return [
        [list(k), _poly_to_doc(p)]
        for k, p in sorted(f.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
    ]


def _map_from_doc(doc: MapDoc) -> PolyMap:
    comps = [_poly_from_doc(c, doc.src) for c in doc.comps]
    if len(comps) != doc.dst:
        raise DocumentError("polynomial map component count does not match dst")
    return PolyMap(doc.src, doc.dst, comps)


def _map_to_doc(m: PolyMap) -> MapDoc:
    return MapDoc(src=m.src_dim, dst=m.dst_dim, comps=[_poly_to_doc(f) for f in m.comps])


def _affine_from_doc(doc: AffineDoc) -> AffineElement:
    return AffineElement([[rat(x) for x in row] for row in doc.matrix],
                         [rat(x) for x in doc.shift])


def _affine_to_doc(a: AffineElement) -> AffineDoc:
    return AffineDoc(
        matrix=[[rat_str(x) for x in row] for row in a.mat],
        shift=[rat_str(x) for x in a.vec],
    )


def _atlas_from_doc(name: str, doc: AtlasDoc) -> Atlas:
    vset = VertexSet(doc.vertices)
    charts = {}
    for cd in doc.charts:
        idx = vset.subset(cd.index)
        if idx in charts:
            raise DocumentError(f"atlas {name}: duplicate chart for {idx}")
        group = tuple(_affine_from_doc(a) for a in cd.group)
        if not group:
            group = (AffineElement.identity(doc.dimension),)
        charts[idx] = Chart(idx, doc.dimension, group, cd.empty, cd.contractible)
    arrows = []
    for ed in doc.embeddings:
        arrows.append(
            Embedding(vset.subset(ed.source), vset.subset(ed.target), _map_from_doc(ed.map))
        )
    return Atlas(name, vset, doc.dimension, charts, arrows)


def _atlas_to_doc(atlas: Atlas) -> AtlasDoc:
    charts = []
    for idx in sorted(atlas.charts):
        c = atlas.charts[idx]
        charts.append(
            ChartDoc(
                index=list(idx.members),
                group=[_affine_to_doc(g) for g in c.group],
                empty=c.empty,
                contractible=c.contractible,
            )
        )
    embeddings = [
        EmbeddingDoc(source=list(s.members), target=list(t.members), map=_map_to_doc(arr.pmap))
        for (s, t), arr in sorted(atlas.arrows.items())
    ]
    return AtlasDoc(
        vertices=list(atlas.vset.labels),
        dimension=atlas.dim,
        charts=charts,
        embeddings=embeddings,
    )


@dataclass
class Workspace:
    """Loaded document: domain objects keyed by their document names."""

    document: Document
    atlases: dict = field(default_factory=dict)
    systems: dict = field(default_factory=dict)
    transformations: dict = field(default_factory=dict)
    cochains: dict = field(default_factory=dict)
    default_atlas: str | None = None

    def atlas(self, name: str | None = None) -> Atlas:
        if name is None:
            name = self.default_atlas
        if name is None:
            if len(self.atlases) == 1:
                return next(iter(self.atlases.values()))
            raise DocumentError("document has several atlases; name one explicitly")
        try:
            return self.atlases[name]
        except KeyError:
            raise DocumentError(f"no atlas named {name!r} in document") from None


def load_document(doc: Document) -> Workspace:
    ws = Workspace(document=doc)
    for name, ad in doc.atlases.items():
        ws.atlases[name] = _atlas_from_doc(name, ad)

    for name, sd in doc.systems.items():
        try:
            src = ws.atlases[sd.source]
            dst = ws.atlases[sd.target]
        except KeyError as e:
            raise DocumentError(f"system {name}: unknown atlas {e}") from None
        index_map = {}
        for pair in sd.index_map:
            index_map[src.vset.subset(pair[0])] = dst.vset.subset(pair[1])
        liftings = {src.vset.subset(p[0]): _map_from_doc(p[1]) for p in sd.liftings}
        overrides = {}
        for ed in sd.arrows:
            key = (src.vset.subset(ed.source), src.vset.subset(ed.target))
            overrides[key] = _map_from_doc(ed.map)
        ws.systems[name] = CompatibleSystem(name, src, dst, index_map, liftings, overrides)

    for name, td in doc.transformations.items():
        try:
            s1 = ws.systems[td.from_system]
            s2 = ws.systems[td.to_system]
        except KeyError as e:
            raise DocumentError(f"transformation {name}: unknown system {e}") from None
        comps = {s1.source.vset.subset(p[0]): _map_from_doc(p[1]) for p in td.components}
        ws.transformations[name] = NaturalTransformation(name, s1, s2, comps)

    for name, cd in doc.cochains.items():
        try:
            atlas = ws.atlases[cd.atlas]
        except KeyError:
            raise DocumentError(f"cochain {name}: unknown atlas {cd.atlas!r}") from None
        if cd.kind == "int":
            data = {}
            for comp in cd.components:
                if comp.value is None:
                    raise DocumentError(f"cochain {name}: integer component needs a value")
                string = tuple(atlas.vset.subset(s) for s in comp.string)
                data[string] = data.get(string, 0) + comp.value
            ws.cochains[name] = IntCochain(atlas, data, canonical=False)
        elif cd.kind == "form":
            data = {}
            for comp in cd.components:
                if comp.form is None:
                    raise DocumentError(f"cochain {name}: form component needs a form")
                string = tuple(atlas.vset.subset(s) for s in comp.string)
                form = _form_from_doc(comp.form, atlas.dim)
                if string in data:
                    form = data[string] + form
                data[string] = form
            ws.cochains[name] = Cochain(atlas, data, canonical=False)
        else:
            raise DocumentError(f"cochain {name}: unknown kind {cd.kind!r}")

    ws.default_atlas = doc.default_atlas
    if ws.default_atlas is None and len(ws.atlases) == 1:
        ws.default_atlas = next(iter(ws.atlases))
    return ws


def parse_document(text: str) -> Document:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not valid JSON: {e}") from None
    try:
        return Document.model_validate(payload)
    except ValidationError as e:
        raise DocumentError(f"document does not match the schema: {e}") from None


def read_document(path: str) -> Workspace:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return load_document(parse_document(text))


def cochain_to_doc(c: Cochain, atlas_name: str) -> CochainDoc:
    comps = [
        CochainComponentDoc(string=[list(e.members) for e in s], form=_form_to_doc(f))
        for s, f in sorted(c.data.items(), key=lambda kv: tuple(e.key for e in kv[0]))
    ]
    return CochainDoc(atlas=atlas_name, kind="form", components=comps)


def int_cochain_to_doc(c: IntCochain, atlas_name: str) -> CochainDoc:
    comps = [
        CochainComponentDoc(string=[list(e.members) for e in s], value=v)
        for s, v in sorted(c.data.items(), key=lambda kv: tuple(e.key for e in kv[0]))
    ]
    return CochainDoc(atlas=atlas_name, kind="int", components=comps)


def document_to_json(doc: Document) -> str:
    return json.dumps(doc.model_dump(by_alias=True, exclude_none=True), indent=1) + "\n"
