"""Finite generalized polygons, their epimorphisms onto thin polygons, and related tools."""

from .classification import (
    CanonicalEpiDescriptor,
    Unclassified,
    canonical_epimorphism,
    canonical_gq_epimorphism,
    canonical_hexagon_epimorphism,
    canonical_plane_epimorphism,
    classify_epimorphism,
    digon_epimorphism,
    double_epimorphism,
    generate_canonical_epimorphisms,
    make_descriptor,
    thin_polygon_theorem_check,
    undouble_epimorphism,
    verify_classification_theorem,
)
from .constructors import (
    conic,
    digon,
    double,
    dual_grid,
    grid,
    ordinary_polygon,
    plane_from_thin_hexagon,
    projective_plane,
    q4,
    segre_oval,
    split_cayley_hexagon,
    subfield_embedding,
    symplectic_quadrangle,
    t2_of_oval,
    thin_hexagon_from_plane,
    undouble,
    w2,
)
from .errors import (
    ConstructionError,
    ContractViolation,
    DescriptorError,
    DomainError,
    EmptyGeometry,
    Exhausted,
    InternalError,
    NotPolygon,
    ParseError,
    PolylabError,
    Truncated,
)
from .fields import GF, FiniteField
from .free import FreeStage, check_free_invariants, free_step, run_free, seed_from_target
from .hyperplanes import (
    HyperplaneVerdict,
    classify_hyperplane,
    enumerate_hyperplanes,
    is_geometric_hyperplane,
    thin_typeC_corollary_check,
)
from .incidence import Element, Flag, IncidenceGeometry, distance, dual, line, point
from .io import parse_geometry, read_morphism, write_geometry, write_morphism
from .morphisms import (
    GeometryMorphism,
    compose,
    fibers,
    is_epimorphism,
    is_isomorphism,
    line_saturation,
    verify_morphism,
)
from .polygon import PolygonClass, classify_polygon
from .report import Check, Report
from .search import are_isomorphic, enumerate_automorphisms, enumerate_epimorphisms, find_isomorphism

__version__ = "0.1.0"
