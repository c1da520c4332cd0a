"""Exact hyperplane-arrangement computations for unfolding-model ranking patterns."""

from .arrangement import Arrangement, Hyperplane, ObjectConfig
from .errors import RankArrangeError
from .exactmath import IntPolynomial

__all__ = ["Arrangement", "Hyperplane", "IntPolynomial", "ObjectConfig", "RankArrangeError"]
__version__ = "0.1.0"
