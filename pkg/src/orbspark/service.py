"""HTTP face of the toolkit.

Four endpoints mirror the command surface: document validation, integer
cohomology, the randomized law suites, and spark operations on cochains
named in the document.  Requests carry the document inline, responses carry
the same report payload the CLI prints, so an in-process run and a remote
run of the same request produce identical bytes.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict

from . import __version__
from .atlas import validate_atlas
from .cochain import Cochain
from .document import (Document, DocumentError, cochain_to_doc,
                       document_schema, int_cochain_to_doc, load_document)
from .functorial import choice_map
from .homology import (compare_integer_cohomology, complex_dimensions,
                       integer_cohomology)
from .morphisms import validate_system, validate_transformation
from .report import FAIL, PASS, UNKNOWN, CheckRecord, build_report
from .spark import (SparkError, character_product, spark_decompose,
                    spark_equivalent)
from .verify import SUITES, run_suite

app = FastAPI(title="orbspark", version=__version__)


class ValidateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    document: Document
    seed: str = "0"
    probes: int = 8


class CohomologyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    document: Document
    atlas: str | None = None
    complex: str = "big"
    degree: int | None = None  # None means every supported degree
    phi: str | None = None  # "min" or "max" adds the comparison section


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    document: Document
    suite: str = "all"
    seed: str = "0"
    probes: int | None = None  # None keeps each suite's own default
    max_deg: int | None = None
    bound: int = 3
    product_pairs: list[tuple[str, str]] | None = None


class SparkRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    document: Document
    op: str  # "decompose", "mul" or "equiv"
    cochains: list[str]
    bound: int = 3


def _load(doc: Document):
    try:
        return load_document(doc)
    except DocumentError as e:
        raise HTTPException(status_code=422, detail=str(e)) from None


@app.get("/health")
def health() -> dict:
    return {"tool": "orbspark", "version": __version__}


@app.get("/schema")
def schema() -> dict:
    return document_schema()


@app.post("/validate")
def validate(req: ValidateRequest) -> dict:
    ws = _load(req.document)
    checks = []
    for aname, atlas in ws.atlases.items():
        for r in validate_atlas(atlas, seed=req.seed, probes=req.probes):
            checks.append(CheckRecord(f"atlas-{aname}-{r.name}", r.law,
                                      r.status, r.detail, r.data))
    for sys in ws.systems.values():
        checks.extend(validate_system(sys))
    for nt in ws.transformations.values():
        checks.extend(validate_transformation(nt))
    return build_report("validate", {"seed": req.seed, "probes": req.probes}, checks)


@app.post("/cohomology")
def cohomology(req: CohomologyRequest) -> dict:
    if req.complex not in ("big", "small"):
        raise HTTPException(422, f"complex must be 'big' or 'small', not {req.complex!r}")
    if req.phi is not None and req.phi not in ("min", "max"):
        raise HTTPException(422, f"phi must be 'min' or 'max', not {req.phi!r}")
    ws = _load(req.document)
    try:
        atlas = ws.atlas(req.atlas)
    except DocumentError as e:
        raise HTTPException(422, str(e)) from None
    small = req.complex == "small"
    groups = integer_cohomology(atlas, small=small, max_degree=req.degree)
    if req.degree is not None:
        shown = {str(req.degree): str(groups[req.degree])}
    else:
        shown = {str(k): str(g) for k, g in enumerate(groups)}
    result = {
        "atlas": atlas.name,
        "complex": req.complex,
        "groups": shown,
        "dimensions": complex_dimensions(atlas, small),
    }
    checks = []
    if req.phi is not None:
        phi = choice_map(atlas, req.phi)
        for row in compare_integer_cohomology(atlas, phi, max_degree=req.degree):
            checks.append(CheckRecord(
                f"quasi-iso-H{row.degree}",
                "the choice-map extension induces an isomorphism on integer cohomology",
                PASS if row.isomorphism else FAIL,
                f"small {row.group_small}, big {row.group_big}"))
    params = {"atlas": atlas.name, "complex": req.complex,
              "degree": req.degree, "phi": req.phi}
    return build_report("cohomology", params, checks, result=result)


@app.post("/verify")
def verify(req: VerifyRequest) -> dict:
    if req.suite not in SUITES + ("all",):
        raise HTTPException(422, f"unknown suite {req.suite!r}; choose from "
                                 f"{', '.join(SUITES + ('all',))}")
    ws = _load(req.document)
    kwargs = {"seed": req.seed, "bound": req.bound,
              "product_pairs": req.product_pairs}
    if req.probes is not None:
        kwargs["probes"] = req.probes
    if req.max_deg is not None:
        kwargs["max_deg"] = req.max_deg
    checks = run_suite(ws, req.suite, **kwargs)
    params = {"suite": req.suite, "seed": req.seed, "probes": req.probes,
              "max_deg": req.max_deg, "bound": req.bound,
              "product_pairs": req.product_pairs}
    return build_report("verify", params, checks)


@app.post("/spark")
def spark(req: SparkRequest) -> dict:
    arity = {"decompose": 1, "mul": 2, "equiv": 2}
    if req.op not in arity:
        raise HTTPException(422, f"unknown operation {req.op!r}; choose from "
                                 f"{', '.join(sorted(arity))}")
    if len(req.cochains) != arity[req.op]:
        raise HTTPException(422, f"{req.op} takes {arity[req.op]} cochain name(s), "
                                 f"got {len(req.cochains)}")
    ws = _load(req.document)

    def named(name):
        if name not in ws.cochains:
            raise HTTPException(422, f"no cochain named {name!r}; document has "
                                     f"{sorted(ws.cochains) or 'none'}")
        c = ws.cochains[name]
        if not isinstance(c, Cochain):
            raise HTTPException(422, f"cochain {name!r} is an integer family; "
                                     "spark operations need form cochains")
        return c

    def form_doc(c):
        return cochain_to_doc(c, c.atlas.name).model_dump(exclude_none=True)

    def int_doc(c):
        return int_cochain_to_doc(c, c.atlas.name).model_dump(exclude_none=True)

    params = {"op": req.op, "cochains": req.cochains, "bound": req.bound}
    try:
        if req.op == "decompose":
            c = named(req.cochains[0])
            dec = spark_decompose(c)
            checks = [CheckRecord(
                f"decompose[{req.cochains[0]}]",
                "differential splits into a closed global part and an integer part",
                PASS if dec.is_spark else FAIL,
                f"degree {dec.degree}")]
            result = {"degree": dec.degree, "is_spark": dec.is_spark,
                      "e": form_doc(dec.e), "r": int_doc(dec.r)}
            if not dec.mixed.is_zero():
                result["mixed"] = form_doc(dec.mixed)
        elif req.op == "mul":
            c1, c2 = named(req.cochains[0]), named(req.cochains[1])
            prod = character_product(c1, c2)
            checks = [CheckRecord(
                f"product-boundary[{req.cochains[0]}*{req.cochains[1]}]",
                "the two product representatives differ by the stated exact boundary",
                PASS if prod.boundary_identity_holds() else FAIL)]
            result = {"rep": form_doc(prod.rep), "alt": form_doc(prod.alt),
                      "witness": form_doc(prod.witness)}
        else:
            c1, c2 = named(req.cochains[0]), named(req.cochains[1])
            res = spark_equivalent(c1, c2, bound=req.bound)
            checks = [CheckRecord(
                f"equivalent[{req.cochains[0]}~{req.cochains[1]}]",
                "the difference is an exact boundary plus an integer family",
                PASS if res.equivalent else UNKNOWN,
                res.detail)]
            result = {"status": res.status}
            if res.equivalent:
                result["b"] = form_doc(res.b)
                result["m"] = int_doc(res.m)
    except SparkError as e:
        raise HTTPException(422, str(e)) from None
    return build_report("spark", params, checks, result=result)
