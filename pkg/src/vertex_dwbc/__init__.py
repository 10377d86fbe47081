"""Six- and nineteen-vertex models with domain-wall boundary conditions."""

from .determinant import corr6_closed, corr6_recursive, z6_det, z6_recursion_sides
from .efp import EfpHomSpec, OperatorEntry, efp_homogeneous, efp_inhom_det, homogeneous_params, operator_det_apply
from .errors import (
    ConfigError,
    DivisionByZero,
    DivisionByZeroJet,
    NoSolution,
    ParseError,
    PrecisionLoss,
    SamplingFailed,
    ShapeError,
    SingularWeight,
    SizeLimit,
    VertexError,
)
from .fusion import doubled_params, fusion_coeffs, projector_p, r1, r6
from .jets import Jet
from .lattice import CorrSpec, CorrSpec19, corr19_oracle, corr6_oracle, l6, l19, monodromy_b6, z19_oracle, z6_config_sum, z6_oracle
from .linalg import det_complex
from .reduction import corr19_reduced, z19_reduced
from .weights import ModelParams6, ModelParams19, sample_generic_params, sample_generic_params19

__all__ = [
    "ConfigError",
    "CorrSpec",
    "CorrSpec19",
    "DivisionByZero",
    "DivisionByZeroJet",
    "EfpHomSpec",
    "Jet",
    "ModelParams19",
    "ModelParams6",
    "NoSolution",
    "OperatorEntry",
    "ParseError",
    "PrecisionLoss",
    "SamplingFailed",
    "ShapeError",
    "SingularWeight",
    "SizeLimit",
    "VertexError",
    "corr19_oracle",
    "corr19_reduced",
    "corr6_closed",
    "corr6_oracle",
    "corr6_recursive",
    "det_complex",
    "doubled_params",
    "efp_homogeneous",
    "efp_inhom_det",
    "fusion_coeffs",
    "homogeneous_params",
    "l19",
    "l6",
    "monodromy_b6",
    "operator_det_apply",
    "projector_p",
    "r1",
    "r6",
    "sample_generic_params",
    "sample_generic_params19",
    "z19_oracle",
    "z19_reduced",
    "z6_config_sum",
    "z6_det",
    "z6_oracle",
    "z6_recursion_sides",
]
