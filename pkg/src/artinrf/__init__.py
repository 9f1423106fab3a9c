"""Residual-finiteness certificates for Artin groups given by Coxeter graphs."""

from .certificate import (
    Amalgam,
    Base,
    Certificate,
    CertificateError,
    CertifyResult,
    FoldTo,
    FreeProduct,
    Kill,
    build_even_tf,
    build_forest,
    build_vertex_amalgam,
    certify,
    certify_with_info,
    check_retraction,
)
from .certio import (
    CertificateFormatError,
    load_certificate,
    parse_certificate,
    save_certificate,
    serialize_certificate,
)
from .graph import (
    CoxeterGraph,
    GraphError,
    Presentation,
    artin_presentation,
    connected_components,
    full_subgraph,
    is_even,
    is_forest,
    is_triangle_free,
    label_isomorphism,
    pi_word,
)
from .graphio import (
    ParseError,
    emit_graph,
    format_partition,
    parse_graph,
    parse_partition,
    quotient_to_dot,
    to_dot,
)
from .partition import (
    DEFAULT_BUDGET,
    Partition,
    PartitionError,
    SearchOutcome,
    enumerate_admissible,
    find_certifying_partition,
    is_admissible,
    quotient,
    singleton_partition,
)
from .recognizers import (
    BaseKind,
    BaseTag,
    base_rf,
    gram_matrix,
    gram_positive_definite,
    is_even_fc,
    is_right_angled,
    is_spherical,
    maximal_cliques,
    spherical_components,
)
from .verify import TraceEntry, VerifyReport, verify

__version__ = "0.1.0"
