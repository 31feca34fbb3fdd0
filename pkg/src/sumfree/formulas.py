"""Closed-form maximum densities of (k, l)-sum-free sets, and interval witnesses.

Everything is integer arithmetic feeding :class:`~fractions.Fraction`; there
is no floating point anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .groups import FiniteAbelianGroup, GroupSubset, _check_kl, cyclic, divisors
from .rational import format_rational

__all__ = [
    "FormulaResult",
    "FormulaTerm",
    "interval_witness",
    "lambda_connected",
    "lambda_cyclic",
    "lambda_product",
    "lambda_sumfree_abelian",
]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class FormulaTerm:
    d: int
    value: Fraction
    delta: int | None = None
    remainder: int | None = None


@dataclass(frozen=True)
class FormulaResult:
    value: Fraction
    argmax_divisor: int
    terms: tuple[FormulaTerm, ...] = field(repr=False)

    @classmethod
    def from_terms(cls, terms: list[FormulaTerm]) -> FormulaResult:
        best = terms[0]
        for t in terms[1:]:
            if t.value > best.value:  # strict: smallest d wins ties
                best = t
        return cls(best.value, best.d, tuple(terms))

    def to_record(self, k: int, l: int, *, n: int | None = None, group: FiniteAbelianGroup | None = None) -> dict:
        rec: dict = {"k": k, "l": l}
        if n is not None:
            rec["n"] = n
        if group is not None:
            rec["group"] = str(group)
        rec["value"] = format_rational(self.value)
        rec["argmax_d"] = self.argmax_divisor
        rec["terms"] = []
        for t in self.terms:
            term = {"d": t.d, "value": format_rational(t.value)}
            if t.delta is not None:
                term["delta"] = t.delta
                term["r"] = t.remainder
            rec["terms"].append(term)
        return rec


def lambda_cyclic(k: int, l: int, n: int) -> FormulaResult:
    """Maximum density of a (k, l)-sum-free subset of ``Z_n``.

    The maximum runs over divisors ``d`` of ``n`` of
    ``ceil((d - delta + r) / (k + l)) / d`` with ``delta = gcd(d, l - k)`` and
    ``r = k * ceil((d - delta) / (k + l)) mod delta``.
    """
    _check_kl(k, l)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s = k + l
    terms = []
    for d in divisors(n):
        delta = math.gcd(d, l - k)
        r = (k * _ceil_div(d - delta, s)) % delta
        terms.append(FormulaTerm(d, Fraction(_ceil_div(d - delta + r, s), d), delta, r))
    return FormulaResult.from_terms(terms)


def lambda_sumfree_abelian(G: FiniteAbelianGroup) -> FormulaResult:
    """Maximum density of a sum-free (k=1, l=2) subset of any finite abelian group."""
    terms = [FormulaTerm(d, Fraction(_ceil_div(d - 1, 3), d)) for d in divisors(G.exponent)]
    return FormulaResult.from_terms(terms)


def lambda_connected(k: int, l: int) -> Fraction:
    """Value for a nontrivial connected compact group (e.g. a torus): ``1/(k+l)``."""
    _check_kl(k, l)
    return Fraction(1, k + l)


def lambda_product(k: int, l: int, lambda_M: Fraction, connected_nontrivial: bool) -> Fraction:
    """Combine the totally disconnected part with the identity component.

    ``lambda_M`` is supplied by the caller (typically from an exact search),
    since there is no general finite formula for arbitrary (k, l).
    """
    lambda_M = Fraction(lambda_M)
    if not 0 <= lambda_M <= 1:
        raise ValueError(f"lambda_M must lie in [0, 1], got {lambda_M}")
    if not connected_nontrivial:
        return lambda_M
    return max(lambda_M, lambda_connected(k, l))


def interval_witness(k: int, l: int, n: int) -> GroupSubset:
    """Grid-cell image in ``Z_n`` of the open arc ``(k/L, l/L)``, ``L = l^2 - k^2``.

    The result ``{kn/L, ..., ln/L - 1}`` has density ``1/(k+l)`` and is
    sum-free for the ``{0,1}``-shifted sumset. Requires ``L | n``.
    """
    _check_kl(k, l)
    L = l * l - k * k
    if n < 1 or n % L:
        raise ValueError(f"interval witness needs {L} = l^2 - k^2 to divide n, got n={n}")
    G = cyclic(n)
    A = GroupSubset.from_elements(G, range(k * n // L, l * n // L))
    # imported here to keep formula evaluation independent of the search module
    from .search import is_shifted_sum_free

    C = GroupSubset.from_elements(G, {0, 1 % n})
    if not is_shifted_sum_free(A, C, k, l):
        raise AssertionError(f"interval witness for k={k}, l={l}, n={n} is not shifted-sum-free")
    return A
