"""Numerical Mellin calculus on the multiplicative half-line.

The package computes Mellin transforms on their fundamental strips
under a family of normalizations, manipulates transforms through the
standard rule table and convolution algebra, continues strip-limited
integrals along a Hankel contour, converts between asymptotic series
and singular expansions, and extends the whole calculus to Hermitian
positive-definite operators (complex powers, spectral zeta and eta,
regularized determinants, the multiplicative anomaly).
"""

from .applications import (
    HeatKernelProblem,
    bose_function,
    eta_value,
    fermi_function,
    gamma_p_extension,
    gamma_reflection,
    greens_function,
    subtracted_exponential_transform,
    zeta_value,
)
from .asymptotics import (
    AsymptoticSeries,
    SingularExpansion,
    asymptotic_from_singular,
    residue_asymptotics,
    singular_from_asymptotic,
)
from .errors import (
    AnalyticityFailure,
    CoincidentPoints,
    ContourDependence,
    ConvergenceDomain,
    DivergentRoute,
    DivergentStage,
    EmptyResultStrip,
    EmptyStripIntersection,
    InconsistentDeclaration,
    InsufficientDecay,
    MelliniumError,
    NormalizationPole,
    NotPositiveDefinite,
    PoleAtOne,
    QuadratureDivergence,
    ResidueInstability,
    SideConditionViolation,
    SlowContourDecay,
    SpectrumCollision,
    StripViolation,
    ZeroDeterminant,
)
from .mellin_core import (
    DEFAULT_CONFIG,
    FundamentalStrip,
    HankelContourSpec,
    MellinFunction,
    Normalization,
    QuadratureConfig,
    TransformValue,
    forward_mellin,
    hankel_mellin,
    infer_strip,
    inverse_mellin,
)
from .operator_calculus import (
    OperatorSpec,
    PhaseConvention,
    Regulator,
    anomaly_phase,
    complex_power,
    functional_determinant,
    functional_log,
    key_identity_check,
    resolvent,
    spectral_eta,
    spectral_zeta,
)
from .strip_algebra import (
    Derivative,
    EulerDerivative,
    LogMultiply,
    PowerShift,
    PowerSubstitute,
    Primitive,
    Scale,
    TransformedPair,
    apply_rule,
    convolution_exp,
    involution,
    mult_convolve,
    parseval_pair,
    star_convolve,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticityFailure",
    "AsymptoticSeries",
    "CoincidentPoints",
    "ContourDependence",
    "ConvergenceDomain",
    "DEFAULT_CONFIG",
    "Derivative",
    "DivergentRoute",
    "DivergentStage",
    "EmptyResultStrip",
    "EmptyStripIntersection",
    "EulerDerivative",
    "FundamentalStrip",
    "HankelContourSpec",
    "HeatKernelProblem",
    "InconsistentDeclaration",
    "InsufficientDecay",
    "LogMultiply",
    "MellinFunction",
    "MelliniumError",
    "Normalization",
    "NormalizationPole",
    "NotPositiveDefinite",
    "OperatorSpec",
    "PhaseConvention",
    "PoleAtOne",
    "PowerShift",
    "PowerSubstitute",
    "Primitive",
    "QuadratureConfig",
    "QuadratureDivergence",
    "Regulator",
    "ResidueInstability",
    "Scale",
    "SideConditionViolation",
    "SingularExpansion",
    "SlowContourDecay",
    "SpectrumCollision",
    "StripViolation",
    "TransformValue",
    "TransformedPair",
    "ZeroDeterminant",
    "anomaly_phase",
    "apply_rule",
    "asymptotic_from_singular",
    "bose_function",
    "complex_power",
    "convolution_exp",
    "eta_value",
    "fermi_function",
    "forward_mellin",
    "functional_determinant",
    "functional_log",
    "gamma_p_extension",
    "gamma_reflection",
    "greens_function",
    "hankel_mellin",
    "infer_strip",
    "inverse_mellin",
    "involution",
    "key_identity_check",
    "mult_convolve",
    "parseval_pair",
    "residue_asymptotics",
    "resolvent",
    "singular_from_asymptotic",
    "spectral_eta",
    "spectral_zeta",
    "star_convolve",
    "subtracted_exponential_transform",
    "zeta_value",
]
