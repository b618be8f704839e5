"""Puncture codes, Hermitian forms and Hermitian self-orthogonal truncations."""
from .gf import GF, Element, FieldError

__all__ = ["GF", "Element", "FieldError"]
