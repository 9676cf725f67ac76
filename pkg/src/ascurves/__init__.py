"""Artin-Schreier curves y^q - y = x S(x) over finite fields of odd characteristic."""

from .gf import Element, FieldCtx, field_create

__all__ = ["Element", "FieldCtx", "field_create"]
__version__ = "0.1.0"
