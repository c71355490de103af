"""Kuramoto energy landscapes on threshold graphs."""

from .graphs import (
    BlockStructure,
    Graph,
    ThresholdCode,
    TwinPartition,
    WeightRep,
    block_decomposition,
    build_threshold,
    closed_twin_classes,
    complete,
    connected_codes,
    creation_order,
    cycle,
    edge_count_from_code,
    forbidden_subgraphs,
    is_forbidden_free,
    nested_neighborhoods,
    parse_code,
    path,
    recognize_threshold,
    star,
    weight_representation,
    windmill,
)
from .landscape import (
    Classification,
    LandscapeReport,
    Tolerances,
    block_descent_value,
    circular_diameter,
    classify,
    energy,
    gradient,
    hessian,
    is_synchronous,
    local_order,
    mu_all,
    twin_case,
    wrap,
)
from .eigen import jacobi_eigh, min_symmetric_eigenvalue
from .dynamics import IntegrationParams, Termination, ensemble, integrate, random_config, rk4_step
from .equilibria import canonicalize, multistart_search, refine_newton, splay_config
from .certifier import audit_config, certify, check_step, verify_certificate

__version__ = "0.1.0"
