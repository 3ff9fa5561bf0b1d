"""Binomial partial Steiner triple systems: constructions, canonical forms,
and the complete classification of the 15-point systems with at least three
free K5 graphs."""

__version__ = "0.1.0"

from .constructions import (
    ALL_TRIANGLE_PERMS,
    GraphOnSet,
    ID,
    RHO,
    RHO_INV,
    SIGMA_A,
    SIGMA_B,
    SIGMA_C,
    TrianglePerm,
    XiMatrix,
    grassmannian,
    multiveblen,
    mvc_to_stp,
    remark_212_mvc,
    stp,
    stp_pair,
    stp_to_mvc,
    stp_triple,
    veronesian,
)
from .core import (
    Configuration,
    collinear,
    find_free_complete_graphs,
    parse_cfg,
    validate_psts,
    write_cfg,
)
from .isomorphism import (
    are_isomorphic,
    automorphism_group,
    beta_times_alpha,
    canonical_form,
)
from .recovery import des_census, l_diagram, recover_skeleton

__all__ = [
    "ALL_TRIANGLE_PERMS",
    "Configuration",
    "GraphOnSet",
    "ID",
    "RHO",
    "RHO_INV",
    "SIGMA_A",
    "SIGMA_B",
    "SIGMA_C",
    "TrianglePerm",
    "XiMatrix",
    "__version__",
    "are_isomorphic",
    "automorphism_group",
    "beta_times_alpha",
    "canonical_form",
    "collinear",
    "des_census",
    "find_free_complete_graphs",
    "grassmannian",
    "l_diagram",
    "multiveblen",
    "mvc_to_stp",
    "parse_cfg",
    "recover_skeleton",
    "remark_212_mvc",
    "stp",
    "stp_pair",
    "stp_to_mvc",
    "stp_triple",
    "validate_psts",
    "veronesian",
    "write_cfg",
]
