"""Exact verification of differential-combinatorial identities on orbifold
chart systems.

The package models atlases of finite-group chart quotients, the double
complex of invariant polynomial forms on chart strings, the maps induced by
compatible systems and their homotopies, and the spark decomposition with
its bounded equivalence search.  Everything is exact: rationals for form
coefficients, integers for the lattice part.
"""

__version__ = "0.1.0"

from .atlas import Atlas, Chart, Embedding, validate_atlas
from .cochain import Cochain, IntCochain, cech_delta, cup, exterior_d, total_D
from .document import (Document, DocumentError, Workspace, document_schema,
                       load_document, parse_document, read_document)
from .homology import CohomologyGroup, integer_cohomology, smith_normal_form
from .morphisms import (CompatibleSystem, NaturalTransformation,
                        compose_systems, horizontal_compose, identity_system,
                        validate_system, validate_transformation,
                        vertical_compose)
from .report import build_report, exit_code, report_to_json, report_to_text
from .spark import (EquivalenceResult, SparkDecomposition, character_product,
                    spark_decompose, spark_equivalent)
from .verify import SUITES, run_all, run_suite

__all__ = [
    "Atlas", "Chart", "Embedding", "validate_atlas",
    "Cochain", "IntCochain", "cech_delta", "cup", "exterior_d", "total_D",
    "Document", "DocumentError", "Workspace", "document_schema",
    "load_document", "parse_document", "read_document",
    "CohomologyGroup", "integer_cohomology", "smith_normal_form",
    "CompatibleSystem", "NaturalTransformation", "compose_systems",
    "horizontal_compose", "identity_system", "validate_system",
    "validate_transformation", "vertical_compose",
    "build_report", "exit_code", "report_to_json", "report_to_text",
    "EquivalenceResult", "SparkDecomposition", "character_product",
    "spark_decompose", "spark_equivalent",
    "SUITES", "run_all", "run_suite",
    "__version__",
]
