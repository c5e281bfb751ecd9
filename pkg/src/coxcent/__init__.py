"""Exact computations with Coxeter groups: roots, reflection subgroups and centralizers of parabolic subgroups."""

from __future__ import annotations

from .core import CoxeterSystem, Element
from .errors import (
    CoxeterError,
    GraphFormatError,
    InvalidRoot,
    InvariantViolation,
    MoveUnavailable,
    NonTerminating,
    NotFiniteType,
    PreconditionError,
    UnsupportedLabel,
    UnsupportedOrder,
)
from .field import FieldElem, cos_pi_over, parse_field, render, sign
from .graph import CoxeterGraph, FiniteType, classify, graph_from_type, parse_graph

__version__ = "0.1.0"

__all__ = [
    "CoxeterError",
    "CoxeterGraph",
    "CoxeterSystem",
    "Element",
    "FieldElem",
    "FiniteType",
    "GraphFormatError",
    "InvalidRoot",
    "InvariantViolation",
    "MoveUnavailable",
    "NonTerminating",
    "NotFiniteType",
    "PreconditionError",
    "UnsupportedLabel",
    "UnsupportedOrder",
    "classify",
    "cos_pi_over",
    "graph_from_type",
    "parse_field",
    "parse_graph",
    "render",
    "sign",
]
