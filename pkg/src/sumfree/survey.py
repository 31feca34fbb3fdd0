"""Range sweeps: formula vs. search oracle, and the {0,1}-shifted density survey.

Reports come out as CSV (``n,k,l,formula,oracle,shifted,bound_eq,witness``)
or JSON lines. Search results can be cached in append-only JSON-lines files,
one file per ``(k, l, C)``, so interrupted sweeps resume where they stopped.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .formulas import lambda_cyclic
from .groups import GroupSubset, cyclic, parse_subset
from .rational import format_rational, parse_rational
from .search import SearchConfig, SearchOutcome, max_shifted_sum_free, max_sum_free

__all__ = [
    "CSV_HEADER",
    "SearchCache",
    "SurveyRecord",
    "VerificationError",
    "check_sumfree_bounds",
    "read_csv",
    "read_jsonl",
    "shifted_argmin",
    "survey_shifted",
    "verify_range",
    "write_csv",
    "write_jsonl",
]

log = logging.getLogger(__name__)

CSV_HEADER = ["n", "k", "l", "formula", "oracle", "shifted", "bound_eq", "witness"]

SHIFT_01 = (0, 1)


class VerificationError(AssertionError):
    def __init__(self, n: int, record: SurveyRecord, records: list[SurveyRecord]):
        super().__init__(
            f"formula and oracle disagree at n={n}: formula {format_rational(record.formula_value)}, "
            f"oracle {format_rational(record.oracle_value)}"
        )
        self.n = n
        self.record = record
        self.records = records


@dataclass(frozen=True)
class SurveyRecord:
    n: int
    k: int
    l: int
    formula_value: Fraction
    oracle_value: Fraction | None = None
    shifted_value: Fraction | None = None
    shifted_equals_bound: bool | None = None
    witness: GroupSubset | None = None
    # why a value is missing ("order-cap", "incomplete"); JSON only
    flag: str | None = None

    def to_csv_row(self) -> list[str]:
        opt = lambda x: "" if x is None else format_rational(x)  # noqa: E731
        eq = "" if self.shifted_equals_bound is None else str(self.shifted_equals_bound).lower()
        return [
            str(self.n),
            str(self.k),
            str(self.l),
            format_rational(self.formula_value),
            opt(self.oracle_value),
            opt(self.shifted_value),
            eq,
            "" if self.witness is None else str(self.witness),
        ]

    @classmethod
    def from_csv_row(cls, row: dict[str, str]) -> SurveyRecord:
        n = int(row["n"])
        opt = lambda s: parse_rational(s) if s else None  # noqa: E731
        eq = {"": None, "true": True, "false": False}[row["bound_eq"]]
        witness = parse_subset(row["witness"], cyclic(n)) if row["witness"] else None
        return cls(n, int(row["k"]), int(row["l"]), parse_rational(row["formula"]),
                   opt(row["oracle"]), opt(row["shifted"]), eq, witness)

    def to_json(self) -> dict:
        opt = lambda x: None if x is None else format_rational(x)  # noqa: E731
        return {
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "formula_value": format_rational(self.formula_value),
            "oracle_value": opt(self.oracle_value),
            "shifted_value": opt(self.shifted_value),
            "shifted_equals_bound": self.shifted_equals_bound,
            "witness": None if self.witness is None else str(self.witness),
            "flag": self.flag,
        }

    @classmethod
    def from_json(cls, obj: dict) -> SurveyRecord:
        n = obj["n"]
        opt = lambda s: None if s is None else parse_rational(s)  # noqa: E731
        witness = None if obj.get("witness") is None else parse_subset(obj["witness"], cyclic(n))
        return cls(n, obj["k"], obj["l"], parse_rational(obj["formula_value"]), opt(obj.get("oracle_value")),
                   opt(obj.get("shifted_value")), obj.get("shifted_equals_bound"), witness, obj.get("flag"))


def write_csv(records: Iterable[SurveyRecord], stream=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.to_csv_row())
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def read_csv(text: str) -> list[SurveyRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [SurveyRecord.from_csv_row(row) for row in reader]


def write_jsonl(records: Iterable[SurveyRecord], stream=None) -> str:
    text = "".join(json.dumps(r.to_json()) + "\n" for r in records)
    if stream is not None:
        stream.write(text)
    return text


def read_jsonl(text: str) -> list[SurveyRecord]:
    return [SurveyRecord.from_json(json.loads(line)) for line in text.splitlines() if line.strip()]


class SearchCache:
    """Append-only store of completed searches keyed by ``(k, l, n, C)``.

    ``C`` is the shift set as written before reduction modulo ``n``, e.g.
    ``(0, 1)``; the plain sum-free search uses ``(0,)``.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self._loaded: dict[Path, dict[int, dict]] = {}

    def path(self, k: int, l: int, C: Sequence[int]) -> Path:
        return self.directory / f"k{k}_l{l}_C{'-'.join(map(str, C))}.jsonl"

    def _entries(self, path: Path) -> dict[int, dict]:
        if path not in self._loaded:
            entries = {}
            if path.exists():
                for line in path.read_text().splitlines():
                    if line.strip():
                        obj = json.loads(line)
                        entries[obj["n"]] = obj
            self._loaded[path] = entries
        return self._loaded[path]

    def get(self, k: int, l: int, C: Sequence[int], n: int) -> dict | None:
        return self._entries(self.path(k, l, C)).get(n)

    def put(self, k: int, l: int, C: Sequence[int], n: int, outcome: SearchOutcome) -> None:
        if not outcome.complete:
            return
        path = self.path(k, l, C)
        entries = self._entries(path)
        if n in entries:
            return
        entry = {"n": n, "max_cardinality": outcome.max_cardinality, "witness": str(outcome.witness),
                 "nodes": outcome.nodes_visited}
        self.directory.mkdir(parents=True, exist_ok=True)
        with path.open("a") as fh:
            fh.write(json.dumps(entry) + "\n")
        entries[n] = entry


def _cached_search(k, l, n, C: tuple[int, ...], config: SearchConfig, cache: SearchCache | None):
    """Returns ``(max_cardinality, witness, complete)`` for Z_n."""
    G = cyclic(n)
    if cache is not None:
        hit = cache.get(k, l, C, n)
        if hit is not None:
            return hit["max_cardinality"], parse_subset(hit["witness"], G), True
    if C == (0,):
        outcome = max_sum_free(G, k, l, config)
    else:
        shift = GroupSubset.from_elements(G, {c % n for c in C})
        outcome = max_shifted_sum_free(G, k, l, shift, config)
    if cache is not None:
        cache.put(k, l, C, n, outcome)
    return outcome.max_cardinality, outcome.witness, outcome.complete


def _check_range(n_lo: int, n_hi: int) -> None:
    if not 1 <= n_lo <= n_hi:
        raise ValueError(f"need 1 <= n_lo <= n_hi, got {n_lo}..{n_hi}")


def verify_range(k: int, l: int, n_lo: int, n_hi: int, config: SearchConfig | None = None,
                 cache: SearchCache | None = None) -> list[SurveyRecord]:
    """Compare the cyclic formula against exhaustive search for each n in range.

    Raises :class:`VerificationError` at the first n where the two differ.
    """
    config = config or SearchConfig()
    _check_range(n_lo, n_hi)
    records = []
    for n in range(n_lo, n_hi + 1):
        formula = lambda_cyclic(k, l, n).value
        if n > config.max_group_order:
            records.append(SurveyRecord(n, k, l, formula, flag="order-cap"))
            continue
        size, witness, complete = _cached_search(k, l, n, (0,), config, cache)
        if not complete:
            records.append(SurveyRecord(n, k, l, formula, witness=witness, flag="incomplete"))
            continue
        rec = SurveyRecord(n, k, l, formula, oracle_value=Fraction(size, n), witness=witness)
        records.append(rec)
        log.debug("verify k=%d l=%d n=%d: %s", k, l, n, format_rational(rec.oracle_value))
        if rec.oracle_value != formula:
            raise VerificationError(n, rec, records)
    return records


def survey_shifted(k: int, l: int, n_lo: int, n_hi: int, config: SearchConfig | None = None,
                   cache: SearchCache | None = None, step: int = 1) -> list[SurveyRecord]:
    """Exact ``{0,1}``-shifted maximum density of Z_n for each n in range."""
    config = config or SearchConfig()
    _check_range(n_lo, n_hi)
    bound = Fraction(1, k + l)
    records = []
    for n in range(n_lo, n_hi + 1, step):
        formula = lambda_cyclic(k, l, n).value
        if n > config.max_group_order:
            records.append(SurveyRecord(n, k, l, formula, flag="order-cap"))
            continue
        size, witness, complete = _cached_search(k, l, n, SHIFT_01, config, cache)
        if not complete:
            records.append(SurveyRecord(n, k, l, formula, witness=witness, flag="incomplete"))
            continue
        value = Fraction(size, n)
        records.append(SurveyRecord(n, k, l, formula, shifted_value=value,
                                    shifted_equals_bound=value == bound, witness=witness))
    return records


def shifted_argmin(records: Iterable[SurveyRecord], skip_zero: bool = True) -> tuple[int, Fraction] | None:
    """Smallest shifted density in the records (ties go to the smallest n).

    Zero values come only from degenerate tiny groups, so they are skipped by
    default.
    """
    best = None
    for r in records:
        v = r.shifted_value
        if v is None or (skip_zero and v == 0):
            continue
        if best is None or v < best[1]:
            best = (r.n, v)
    return best


def check_sumfree_bounds(records: Iterable[SurveyRecord], exclude_trivial: bool = True) -> bool:
    """True iff every (k, l) = (1, 2) value lies in [2/7, 1/2].

    The trivial group Z_1 (value 0) is skipped unless ``exclude_trivial`` is off.
    """
    lo, hi = Fraction(2, 7), Fraction(1, 2)
    for r in records:
        if (r.k, r.l) != (1, 2):
            raise ValueError(f"bound check applies to (1, 2) records, got ({r.k}, {r.l})")
        if exclude_trivial and r.n == 1:
            continue
        for v in (r.formula_value, r.oracle_value):
            if v is not None and not lo <= v <= hi:
                return False
    return True
