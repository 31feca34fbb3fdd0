"""Finite abelian groups, subsets as bit-vectors, and Minkowski sumsets.

A group ``Z_{n1} x ... x Z_{nd}`` is described by its factor list. Elements
are addressed by a single integer index in ``[0, order)`` using mixed radix
with the rightmost factor varying fastest, so in ``Z_2 x Z_3`` the element
``(1, 2)`` has index ``1*3 + 2 = 5``.

Subsets store membership in a Python ``int`` used as a bit-vector (bit ``i``
set iff element ``i`` is present). Translating a subset by a group element is
a handful of masked shifts, one per factor, so sumsets are word-parallel.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "MAX_SUMSET_ORDER",
    "FiniteAbelianGroup",
    "GroupSubset",
    "ProjectionSpec",
    "cyclic",
    "divisors",
    "element_add",
    "is_sum_free",
    "iterated_sumset",
    "parse_group",
    "parse_subset",
    "pullback",
    "stabilizer",
    "sumset",
]

# Cap on group order for sumset work; raise it deliberately if you need more.
MAX_SUMSET_ORDER = 1 << 20


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in ascending order."""
    if n < 1:
        raise ValueError(f"divisors() needs n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.factors)
        if not factors:
            raise ValueError("a group needs at least one cyclic factor (use (1,) for the trivial group)")
        if any(n < 1 for n in factors):
            raise ValueError(f"cyclic factors must be >= 1, got {factors}")
        object.__setattr__(self, "factors", factors)

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.factors, 1)

    @property
    def is_cyclic_literal(self) -> bool:
        """True when the group is given as a single factor ``Z_n``."""
        return len(self.factors) == 1

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        s = 1
        for n in reversed(self.factors):
            strides.append(s)
            s *= n
        return tuple(reversed(strides))

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def _rotation_masks(self) -> dict:
        return {}

    def check_index(self, i: int) -> int:
        if not 0 <= i < self.order:
            raise ValueError(f"element index {i} out of range for {self} (order {self.order})")
        return i

    def decode(self, i: int) -> tuple[int, ...]:
        self.check_index(i)
        coords = []
        for n in reversed(self.factors):
            i, r = divmod(i, n)
            coords.append(r)
        return tuple(reversed(coords))

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        i = 0
        for c, n in zip(coords, self.factors):
            i = i * n + (c % n)
        return i

    def add(self, i: int, j: int) -> int:
        a, b = self.decode(i), self.decode(j)
        return self.encode([x + y for x, y in zip(a, b)])

    def neg(self, i: int) -> int:
        return self.encode([-x for x in self.decode(i)])

    def translate_bits(self, bits: int, t: int) -> int:
        """Bit-vector of ``{t} + X`` where ``bits`` encodes ``X``."""
        if t == 0 or bits == 0:
            return bits
        for j, tj in enumerate(self.decode(t)):
            if tj:
                bits = self._rotate(bits, j, tj)
        return bits

    def _rotate(self, bits: int, j: int, tj: int) -> int:
        # Within each block of size n_j * stride_j, shift by tj * stride_j cyclically.
        key = (j, tj)
        masks = self._rotation_masks.get(key)
        if masks is None:
            stride = self._strides[j]
            block = self.factors[j] * stride
            r = tj * stride
            repeat = self.full_mask // ((1 << block) - 1)
            low = repeat * ((1 << (block - r)) - 1)
            masks = (low, self.full_mask ^ low, r, block - r)
            self._rotation_masks[key] = masks
        low, high, up, down = masks
        return ((bits & low) << up) | ((bits & high) >> down)

    def __str__(self) -> str:
        return " x ".join(f"Z_{n}" for n in self.factors)


def cyclic(n: int) -> FiniteAbelianGroup:
    return FiniteAbelianGroup((n,))


_GROUP_TOKEN = re.compile(r"^\s*Z_?\{?(\d+)\}?\s*$")


def parse_group(text: str) -> FiniteAbelianGroup:
    """Parse ``"Z_2 x Z_3"`` (``×`` and ``*`` are accepted as separators)."""
    parts = re.split(r"[x×*]", text)
    factors = []
    for part in parts:
        m = _GROUP_TOKEN.match(part)
        if m is None:
            raise ValueError(f"malformed group literal {text!r}")
        factors.append(int(m.group(1)))
    return FiniteAbelianGroup(tuple(factors))


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class GroupSubset:
    group: FiniteAbelianGroup
    bits: int
    cardinality: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.group.order:
            raise ValueError(f"bit-vector does not fit a group of order {self.group.order}")
        object.__setattr__(self, "cardinality", self.bits.bit_count())

    @classmethod
    def from_elements(cls, group: FiniteAbelianGroup, elements: Iterable[int]) -> GroupSubset:
        bits = 0
        for e in elements:
            bits |= 1 << group.check_index(int(e))
        return cls(group, bits)

    @classmethod
    def empty(cls, group: FiniteAbelianGroup) -> GroupSubset:
        return cls(group, 0)

    @classmethod
    def full(cls, group: FiniteAbelianGroup) -> GroupSubset:
        return cls(group, group.full_mask)

    @classmethod
    def zero(cls, group: FiniteAbelianGroup) -> GroupSubset:
        return cls(group, 1)

    def elements(self) -> list[int]:
        return list(_iter_bits(self.bits))

    def __iter__(self) -> Iterator[int]:
        return _iter_bits(self.bits)

    def __len__(self) -> int:
        return self.cardinality

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.group.order and bool(self.bits >> i & 1)

    def density(self) -> Fraction:
        return Fraction(self.cardinality, self.group.order)

    def translate(self, t: int) -> GroupSubset:
        return GroupSubset(self.group, self.group.translate_bits(self.bits, self.group.check_index(t)))

    def _same_group(self, other: GroupSubset) -> None:
        if self.group != other.group:
            raise ValueError(f"subsets live in different groups: {self.group} vs {other.group}")

    def __or__(self, other: GroupSubset) -> GroupSubset:
        self._same_group(other)
        return GroupSubset(self.group, self.bits | other.bits)

    def __and__(self, other: GroupSubset) -> GroupSubset:
        self._same_group(other)
        return GroupSubset(self.group, self.bits & other.bits)

    def isdisjoint(self, other: GroupSubset) -> bool:
        self._same_group(other)
        return not self.bits & other.bits

    def issubset(self, other: GroupSubset) -> bool:
        self._same_group(other)
        return not self.bits & ~other.bits

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


def parse_subset(text: str, group: FiniteAbelianGroup, reduce_mod: bool = False) -> GroupSubset:
    """Parse ``"{i1,i2,...}"``. With ``reduce_mod`` indices are taken modulo the order."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"subset literal must look like {{0,1,...}}, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        return GroupSubset.empty(group)
    try:
        items = [int(tok) for tok in body.split(",")]
    except ValueError:
        raise ValueError(f"malformed subset literal {text!r}") from None
    if reduce_mod:
        items = [i % group.order for i in items]
    return GroupSubset.from_elements(group, items)


def element_add(group: FiniteAbelianGroup, i: int, j: int) -> int:
    return group.add(i, j)


def sumset(A: GroupSubset, B: GroupSubset) -> GroupSubset:
    A._same_group(B)
    G = A.group
    if G.order > MAX_SUMSET_ORDER:
        raise ValueError(f"group order {G.order} exceeds the sumset cap {MAX_SUMSET_ORDER}")
    if A.cardinality > B.cardinality:
        A, B = B, A
    acc = 0
    for a in A:
        acc |= G.translate_bits(B.bits, a)
        if acc == G.full_mask:
            break
    return GroupSubset(G, acc)


def iterated_sumset(A: GroupSubset, k: int) -> GroupSubset:
    """The k-fold sumset ``A + ... + A`` (not the dilation ``{k*a}``)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    out = A
    for _ in range(k - 1):
        out = sumset(out, A)
    return out


def _check_kl(k: int, l: int) -> None:
    if not 1 <= k < l:
        raise ValueError(f"need 1 <= k < l, got k={k}, l={l}")


def is_sum_free(A: GroupSubset, k: int, l: int) -> bool:
    _check_kl(k, l)
    if A.cardinality == 0:
        return True
    return iterated_sumset(A, k).isdisjoint(iterated_sumset(A, l))


def stabilizer(A: GroupSubset) -> GroupSubset:
    """``{h : h + A = A}``; the empty set is stabilized by the whole group."""
    G = A.group
    if A.cardinality == 0:
        return GroupSubset.full(G)
    # any h in the stabilizer maps min(A) into A, so h is in A - a0
    a0 = next(iter(A))
    shift = G.neg(a0)
    H = 0
    for a in A:
        h = G.add(a, shift)
        if G.translate_bits(A.bits, h) == A.bits:
            H |= 1 << h
    return GroupSubset(G, H)


@dataclass(frozen=True)
class ProjectionSpec:
    """A canonical surjection out of a group.

    ``kind="mod"`` reduces factor ``factor`` modulo ``modulus`` (which must
    divide that factor). ``kind="drop"`` deletes the factors listed in
    ``dropped``.
    """

    kind: str
    factor: int = 0
    modulus: int = 1
    dropped: tuple[int, ...] = ()

    @classmethod
    def mod(cls, modulus: int, factor: int = 0) -> ProjectionSpec:
        return cls("mod", factor=factor, modulus=modulus)

    @classmethod
    def drop(cls, *factors: int) -> ProjectionSpec:
        return cls("drop", dropped=tuple(sorted(set(factors))))

    def target(self, G: FiniteAbelianGroup) -> FiniteAbelianGroup:
        if self.kind == "mod":
            if not 0 <= self.factor < len(G.factors):
                raise ValueError(f"no factor {self.factor} in {G}")
            if self.modulus < 1 or G.factors[self.factor] % self.modulus:
                raise ValueError(f"{self.modulus} does not divide factor Z_{G.factors[self.factor]} of {G}")
            factors = list(G.factors)
            factors[self.factor] = self.modulus
            return FiniteAbelianGroup(tuple(factors))
        if self.kind == "drop":
            if any(not 0 <= j < len(G.factors) for j in self.dropped):
                raise ValueError(f"cannot drop factors {self.dropped} from {G}")
            kept = tuple(n for j, n in enumerate(G.factors) if j not in self.dropped)
            return FiniteAbelianGroup(kept or (1,))
        raise ValueError(f"unknown projection kind {self.kind!r}")

    def image_indices(self, G: FiniteAbelianGroup) -> np.ndarray:
        """Index in the quotient of every element of ``G``, as an int array."""
        Q = self.target(G)
        coords = list(np.unravel_index(np.arange(G.order), G.factors))
        if self.kind == "mod":
            coords[self.factor] = coords[self.factor] % self.modulus
        else:
            coords = [c for j, c in enumerate(coords) if j not in self.dropped] or [np.zeros(G.order, dtype=np.intp)]
        return np.ravel_multi_index(coords, Q.factors)


def _bits_from_mask(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def _mask_from_bits(bits: int, size: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((size + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def pullback(G: FiniteAbelianGroup, projection: ProjectionSpec, S: GroupSubset) -> GroupSubset:
    """Preimage of ``S`` under the projection of ``G`` onto ``S.group``."""
    Q = projection.target(G)
    if Q != S.group:
        raise ValueError(f"projection maps {G} onto {Q}, but S lives in {S.group}")
    in_S = _mask_from_bits(S.bits, Q.order)
    return GroupSubset(G, _bits_from_mask(in_S[projection.image_indices(G)]))
