"""Contour JSON export: the canonical LayerStack serialization."""

from __future__ import annotations

from ..stack import (
    LayerStack,
    emit_contour_gz,
    emit_contour_json,
    parse_contour_gz,
    parse_contour_json,
)

__all__ = ["to_contour_json", "from_contour_json",
           "to_contour_gz", "from_contour_gz"]


def to_contour_json(stack: LayerStack) -> str:
    return emit_contour_json(stack)


def from_contour_json(text: str | bytes) -> LayerStack:
    return parse_contour_json(text)


def to_contour_gz(stack: LayerStack) -> bytes:
    return emit_contour_gz(stack)


def from_contour_gz(data: bytes) -> LayerStack:
    return parse_contour_gz(data)
