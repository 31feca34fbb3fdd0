"""Exact maximum (k, l)-sum-free and shifted-sum-free subsets by pruned search.

The search is a depth first enumeration of candidate sets, one included
element per level. Being sum-free is hereditary, so every node keeps only the
candidates that are individually compatible with the current partial set, and
a branch is cut as soon as the partial size plus the surviving candidates
cannot beat the incumbent.

Each node carries the iterated sumsets ``jA`` for ``j = 1..l``; adding ``a``
updates them with one translation per level, using
``j(A + a) = jA | (a + (j-1)(A + a))``.

The returned witness is the maximum set whose bit-vector, read as an integer,
is smallest (compare largest elements first). The witness pass therefore picks
the largest element first, trying small values before large ones, and then
fills in smaller elements the same way; the first maximum set met in that
order is the answer.

Runs are deterministic. A greedy lower bound is fixed up front, the tree is
cut into independent prefix tasks at a fixed depth, and the tasks are merged
by (largest cardinality, smallest witness). Serial and parallel runs execute
the same tasks and give identical outcomes, node counts included.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .groups import (
    FiniteAbelianGroup,
    GroupSubset,
    _check_kl,
    divisors,
    iterated_sumset,
    sumset,
)
from .rational import format_rational

__all__ = [
    "SearchBudgetExceeded",
    "SearchConfig",
    "SearchOutcome",
    "dilation_symmetries",
    "is_shifted_sum_free",
    "max_shifted_sum_free",
    "max_sum_free",
    "shifted_iterated_sumset",
]


def shifted_iterated_sumset(A: GroupSubset, C: GroupSubset, k: int) -> GroupSubset:
    """``k *_C A = kA + (k-1)C``, with ``0C = {0}``."""
    A._same_group(C)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    kA = iterated_sumset(A, k)
    if k == 1:
        return kA
    return sumset(kA, iterated_sumset(C, k - 1))


def is_shifted_sum_free(A: GroupSubset, C: GroupSubset, k: int, l: int) -> bool:
    _check_kl(k, l)
    A._same_group(C)
    if A.cardinality == 0:
        return True
    return shifted_iterated_sumset(A, C, k).isdisjoint(shifted_iterated_sumset(A, C, l))


def dilation_symmetries(n: int) -> list[int]:
    """Units of ``Z_n``: the multipliers ``u`` with ``gcd(u, n) = 1``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return [1]
    return [u for u in range(1, n) if math.gcd(u, n) == 1]


@dataclass(frozen=True)
class SearchConfig:
    max_group_order: int = 1 << 18
    symmetry_reduction: bool = True
    parallel_branches: int = 0
    node_budget: int | None = None
    cut_depth: int = 3

    def __post_init__(self):
        if self.max_group_order < 1:
            raise ValueError("max_group_order must be positive")
        if self.parallel_branches < 0:
            raise ValueError("parallel_branches must be >= 0")
        if self.node_budget is not None and self.node_budget < 1:
            raise ValueError("node_budget must be positive when given")
        if self.cut_depth < 0:
            raise ValueError("cut_depth must be >= 0")


LEX = "lex"
COLEX = "colex"


class SearchBudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class SearchOutcome:
    group: FiniteAbelianGroup
    k: int
    l: int
    C: GroupSubset | None
    max_cardinality: int
    witness: GroupSubset
    nodes_visited: int
    complete: bool
    density: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "density", Fraction(self.max_cardinality, self.group.order))

    def to_record(self) -> dict:
        return {
            "group": str(self.group),
            "k": self.k,
            "l": self.l,
            "C": str(self.C) if self.C is not None else "{0}",
            "max_cardinality": self.max_cardinality,
            "density": format_rational(self.density),
            "witness": str(self.witness),
            "nodes": self.nodes_visited,
            "complete": self.complete,
        }


class _Engine:
    """Incremental sumset bookkeeping for one (group, k, l, C) problem."""

    def __init__(self, factors: tuple[int, ...], k: int, l: int, c_bits: int):
        self.group = G = FiniteAbelianGroup(factors)
        self.k, self.l = k, l
        self.n = G.order
        self.full = G.full_mask
        self.cyclic = len(factors) == 1
        if c_bits == 1:
            self.shift_k = self.shift_l = None
        else:
            C = GroupSubset(G, c_bits)
            self.shift_k = iterated_sumset(C, k - 1).elements() if k > 1 else [0]
            self.shift_l = iterated_sumset(C, l - 1).elements()
        self.nodes = 0
        self.budget: int | None = None

    def translate(self, bits: int, a: int) -> int:
        if not self.cyclic:
            return self.group.translate_bits(bits, a)
        if a == 0:
            return bits
        n = self.n
        return ((bits << a) & self.full) | (bits >> (n - a))

    def extend(self, sums: tuple[int, ...], a: int) -> tuple[int, ...]:
        out = []
        prev = 1
        for s in sums:
            prev = s | self.translate(prev, a)
            out.append(prev)
        return tuple(out)

    def _shifted(self, bits: int, shifts: list[int]) -> int:
        acc = 0
        for c in shifts:
            acc |= self.translate(bits, c)
        return acc

    def feasible(self, sums: tuple[int, ...]) -> bool:
        kA, lA = sums[self.k - 1], sums[self.l - 1]
        if self.shift_k is None:
            return not kA & lA
        return not self._shifted(kA, self.shift_k) & self._shifted(lA, self.shift_l)

    def root(self) -> tuple[int, ...]:
        return (0,) * self.l

    def compatible(self, sums: tuple[int, ...], cands) -> list[int]:
        return [x for x in cands if self.feasible(self.extend(sums, x))]

    def children(self, cands: list[int], idx: int, mode: str) -> list[int]:
        return cands[idx + 1:] if mode == LEX else cands[:idx]

    def replay(self, prefix: tuple[int, ...], mode: str) -> tuple[tuple[int, ...], list[int]]:
        sums = self.root()
        cands = self.compatible(sums, range(self.n))
        for a in prefix:
            sums = self.extend(sums, a)
            cands = self.compatible(sums, self.children(cands, cands.index(a), mode))
        return sums, cands

    def greedy(self, cands: list[int]) -> list[int]:
        sums = self.root()
        chosen = []
        for x in cands:
            nxt = self.extend(sums, x)
            if self.feasible(nxt):
                sums = nxt
                chosen.append(x)
        return chosen

    def tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise SearchBudgetExceeded

    def dfs(self, chosen: list[int], sums, cands: list[int], floor: int, best: list, mode: str) -> None:
        """Depth-first search below ``chosen``.

        ``best`` is ``[size, tuple]``; only sets larger than ``max(size, floor)``
        replace it, so the first maximum met in visiting order is kept.
        """
        self.tick()
        size = len(chosen)
        if size > max(best[0], floor):
            best[0], best[1] = size, tuple(chosen)
        for idx, a in enumerate(cands):
            reach = size + len(cands) - idx if mode == LEX else size + 1 + idx
            if reach <= max(best[0], floor):
                if mode == LEX:
                    return
                continue
            nsums = self.extend(sums, a)
            chosen.append(a)
            self.dfs(chosen, nsums, self.compatible(nsums, self.children(cands, idx, mode)), floor, best, mode)
            chosen.pop()


def _order_key(witness: tuple[int, ...], mode: str):
    if mode == LEX:
        return witness
    return sum(1 << x for x in witness)


def _run_task(args) -> tuple[int, tuple[int, ...] | None, int, bool]:
    factors, k, l, c_bits, mode, prefix, floor, budget = args
    eng = _Engine(factors, k, l, c_bits)
    eng.budget = budget
    sums, cands = eng.replay(prefix, mode)
    best = [-1, None]
    complete = True
    try:
        eng.dfs(list(prefix), sums, cands, floor, best, mode)
    except SearchBudgetExceeded:
        complete = False
    return best[0], best[1], eng.nodes, complete


def _run_pass(eng: _Engine, c_bits: int, mode: str, root_cands: list[int], first_choices: list[int],
              floor: int, config: SearchConfig) -> tuple[int, tuple[int, ...], int, bool]:
    """One full search in the given visiting order, split into prefix tasks.

    Tasks are independent of each other and of the schedule, so the merged
    result (and the node count) does not depend on ``parallel_branches``.
    """
    best_size, best_tuple = -1, None
    tasks: list[tuple[int, ...]] = []
    expand_nodes = 0

    def consider(prefix: tuple[int, ...]) -> None:
        nonlocal best_size, best_tuple
        if len(prefix) > max(best_size, floor):
            best_size, best_tuple = len(prefix), prefix

    def expand(prefix: tuple[int, ...], sums, cands: list[int]) -> None:
        nonlocal expand_nodes
        if len(prefix) == config.cut_depth:
            tasks.append(prefix)
            return
        expand_nodes += 1
        consider(prefix)
        for idx, a in enumerate(cands):
            reach = len(prefix) + len(cands) - idx if mode == LEX else len(prefix) + 1 + idx
            if reach <= floor:
                if mode == LEX:
                    return
                continue
            nsums = eng.extend(sums, a)
            expand(prefix + (a,), nsums, eng.compatible(nsums, eng.children(cands, idx, mode)))

    if config.cut_depth == 0:
        tasks.append(())
    else:
        expand_nodes += 1
        consider(())
        for a in first_choices:
            idx = root_cands.index(a)
            rest = eng.children(root_cands, idx, mode)
            if 1 + len(rest) <= floor:
                if mode == LEX:
                    break
                continue
            nsums = eng.extend(eng.root(), a)
            expand((a,), nsums, eng.compatible(nsums, rest))

    budget = None
    if config.node_budget is not None:
        budget = max(1, config.node_budget // max(1, len(tasks)))
    jobs = [(eng.group.factors, eng.k, eng.l, c_bits, mode, p, floor, budget) for p in tasks]
    if config.parallel_branches > 0 and len(jobs) > 1:
        chunk = max(1, len(jobs) // (4 * config.parallel_branches))
        with ProcessPoolExecutor(max_workers=config.parallel_branches) as pool:
            results = list(pool.map(_run_task, jobs, chunksize=chunk))
    else:
        results = [_run_task(job) for job in jobs]

    nodes = expand_nodes
    complete = True
    for size, witness, task_nodes, task_complete in results:
        nodes += task_nodes
        complete &= task_complete
        if witness is None:
            continue
        if size > best_size or (size == best_size and _order_key(witness, mode) < _order_key(best_tuple, mode)):
            best_size, best_tuple = size, witness
    if best_tuple is None:
        best_tuple = ()
    return len(best_tuple), best_tuple, nodes, complete


def _search(G: FiniteAbelianGroup, k: int, l: int, C: GroupSubset | None, config: SearchConfig) -> SearchOutcome:
    _check_kl(k, l)
    if G.order > config.max_group_order:
        raise ValueError(f"group order {G.order} exceeds max_group_order {config.max_group_order}")
    c_bits = 1 if C is None else C.bits
    eng = _Engine(G.factors, k, l, c_bits)
    root_cands = eng.compatible(eng.root(), range(G.order))
    floor = len(eng.greedy(root_cands)) - 1
    nodes = 0
    complete = True

    if config.symmetry_reduction and C is None and G.is_cyclic_literal and G.order > 1:
        # Some maximum set is least in its dilation orbit as an ascending tuple;
        # its least element x is then minimal among the multiples u*x, so x
        # equals gcd(x, n) and divides n. Searching only those pins down the
        # optimum, which then serves as an exact floor for the witness pass.
        divs = set(divisors(G.order))
        first = [x for x in root_cands if x in divs]
        size, _, n1, done = _run_pass(eng, c_bits, LEX, root_cands, first, floor, config)
        nodes += n1
        complete &= done
        if done:
            floor = max(floor, size - 1)

    size, witness, n2, done = _run_pass(eng, c_bits, COLEX, root_cands, root_cands, floor, config)
    nodes += n2
    complete &= done
    return SearchOutcome(G, k, l, C, size, GroupSubset.from_elements(G, witness), nodes, complete)


def max_sum_free(G: FiniteAbelianGroup, k: int, l: int, config: SearchConfig | None = None) -> SearchOutcome:
    """Largest A in G with kA and lA disjoint, certified by exhaustion."""
    return _search(G, k, l, None, config or SearchConfig())


def max_shifted_sum_free(
    G: FiniteAbelianGroup, k: int, l: int, C: GroupSubset, config: SearchConfig | None = None
) -> SearchOutcome:
    """Largest A in G with ``kA + (k-1)C`` and ``lA + (l-1)C`` disjoint.

    No dilation symmetry is used here since a fixed ``C`` is generally not
    invariant under automorphisms.
    """
    if C.group != G:
        raise ValueError(f"shift set lives in {C.group}, not {G}")
    if C.cardinality == 0:
        raise ValueError("shift set C must be nonempty")
    return _search(G, k, l, C, config or SearchConfig())
