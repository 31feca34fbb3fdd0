"""Exact rational helpers.

Densities are plain :class:`fractions.Fraction` values, which already keep
themselves reduced with a positive denominator. The only thing added here is
the fixed ``p/q`` text form used in every report, so that ``0`` prints as
``0/1`` and ``1`` as ``1/1``.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Fraction", "format_rational", "parse_rational"]


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" not in text:
        raise ValueError(f"expected a rational of the form p/q, got {text!r}")
    return Fraction(text)
