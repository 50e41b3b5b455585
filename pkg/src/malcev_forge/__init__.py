"""Exact verification of Malcev-law behaviour in semidirect products built
from monomial quotients of polynomial rings."""

__version__ = "0.1.0"
