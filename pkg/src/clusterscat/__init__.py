"""Exact engine for rank-2 cluster scattering diagrams and finite-type Cambrian scattering diagrams."""

from .series import TruncatedSeries, invert, pow_rational, sqrt, restrict_exponent_ray

__all__ = ["TruncatedSeries", "invert", "pow_rational", "sqrt", "restrict_exponent_ray"]
__version__ = "0.1.0"
