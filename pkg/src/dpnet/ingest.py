"""Dispensing records to co-medication edge lists.

Pipeline: parse raw fills, merge per-(patient, drug) fills into treatment
episodes, snapshot the drugs active at an index date, and count co-used
drug pairs over patients.
"""

from __future__ import annotations

import csv
import io
import math
import os
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from datetime import date, timedelta
from itertools import combinations
from typing import Iterable, Mapping

from .errors import DataError
from .graph import is_atc

DISPENSING_COLUMNS = ("patient_id", "atc", "name", "date", "ddd")


@dataclass(frozen=True)
class DispensingRecord:
    """One dispensed prescription row.

    ``attributes`` holds any extra input columns (sex, birth year, ...) so
    cohorts can be stratified downstream without touching the pipeline.
    """

    patient_id: str
    atc_code: str
    drug_name: str | None
    dispense_date: date
    ddd_quantity: float
    attributes: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class TreatmentEpisode:
    """A continuous coverage interval for one (patient, drug) pair."""

    patient_id: str
    atc_code: str
    start_date: date
    end_date: date


@dataclass(frozen=True)
class ExclusionList:
    """ATC codes dropped before network construction."""

    atc_codes: frozenset[str]

    @classmethod
    def empty(cls) -> "ExclusionList":
        return cls(frozenset())

    @classmethod
    def from_codes(cls, codes: Iterable[str]) -> "ExclusionList":
        out = set()
        for code in codes:
            code = code.strip()
            if not code or code.startswith("#"):
                continue
            if not is_atc(code):
                raise DataError(f"exclusion list entry is not an ATC code: {code!r}")
            out.add(code)
        return cls(frozenset(out))

    @classmethod
    def from_file(cls, path) -> "ExclusionList":
        with open(path, encoding="utf-8") as fh:
            return cls.from_codes(fh)

    def __contains__(self, code: str) -> bool:
        return code in self.atc_codes


@dataclass(frozen=True)
class EdgeListEntry:
    """One aggregated co-medication pair: canonical order, patient-count weight."""

    drug_a: str
    drug_b: str
    weight: int

    def __post_init__(self):
        if not self.drug_a < self.drug_b:
            raise DataError(
                f"edge list entry not canonical: ({self.drug_a!r}, {self.drug_b!r})"
            )
        if self.weight < 1:
            raise DataError(
                f"edge list entry ({self.drug_a!r}, {self.drug_b!r}) "
                f"has non-positive weight {self.weight}"
            )


@dataclass
class ParseIssue:
    line: int
    message: str


@dataclass
class ParseResult:
    records: list[DispensingRecord]
    skipped: list[ParseIssue]

    @property
    def skip_count(self) -> int:
        return len(self.skipped)


def _as_lines(source):
    if isinstance(source, (str, os.PathLike)):
        return open(source, encoding="utf-8", newline=""), True
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(source.decode("utf-8")), False
    if hasattr(source, "read") and isinstance(source.read(0), bytes):
        return io.TextIOWrapper(source, encoding="utf-8", newline=""), False
    return source, False


def parse_dispensing(source, *, delimiter: str = ",", strict: bool = True) -> ParseResult:
    """Parse a delimited dispensing file into records.

    ``source`` may be a path, a text or byte stream, or an iterable of
    lines. The header row must name patient_id, atc, name, date and ddd;
    any extra columns become per-record attributes. Dates are ISO-8601.
    In strict mode the first bad row aborts with its line number; in
    lenient mode bad rows are skipped and reported on the result.
    """
    lines, owns = _as_lines(source)
    try:
        reader = csv.reader(lines, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError("dispensing input is empty: missing header row") from None
        header = [h.strip() for h in header]
        missing = [c for c in DISPENSING_COLUMNS if c not in header]
        if missing:
            raise DataError(f"dispensing header is missing columns: {', '.join(missing)}")
        col = {name: header.index(name) for name in header}
        extras = [h for h in header if h not in DISPENSING_COLUMNS]

        records: list[DispensingRecord] = []
        skipped: list[ParseIssue] = []

        def bad(line: int, message: str):
            if strict:
                raise DataError(f"line {line}: {message}")
            skipped.append(ParseIssue(line, message))

        for row in reader:
            line = reader.line_num
            if len(row) != len(header):
                bad(line, f"expected {len(header)} fields, got {len(row)}")
                continue
            patient = row[col["patient_id"]].strip()
            atc = row[col["atc"]].strip()
            name = row[col["name"]].strip() or None
            raw_date = row[col["date"]].strip()
            raw_ddd = row[col["ddd"]].strip()
            if not patient:
                bad(line, "empty patient_id")
                continue
            if not is_atc(atc):
                bad(line, f"bad ATC code {atc!r}")
                continue
            try:
                day = date.fromisoformat(raw_date)
            except ValueError:
                bad(line, f"malformed date {raw_date!r}")
                continue
            try:
                ddd = float(raw_ddd)
            except ValueError:
                bad(line, f"malformed DDD quantity {raw_ddd!r}")
                continue
            if not ddd > 0:
                bad(line, f"non-positive DDD quantity {raw_ddd}")
                continue
            attrs = {k: row[col[k]].strip() for k in extras}
            records.append(DispensingRecord(patient, atc, name, day, ddd, attrs))
        return ParseResult(records, skipped)
    finally:
        if owns:
            lines.close()


def fill_duration_days(ddd_quantity: float, adherence_factor: float) -> int:
    """Covered days for one fill: one DDD per day, stretched by the factor.

    The inner round() keeps binary-float noise from pushing an exact product
    (e.g. 35 * 1.2 == 42) past the next integer before the ceiling.
    """
    return math.ceil(round(ddd_quantity * adherence_factor, 9))


def build_episodes(
    records: Iterable[DispensingRecord],
    adherence_factor: float = 1.2,
    gap_days: int = 14,
) -> list[TreatmentEpisode]:
    """Merge each (patient, drug)'s fills into treatment episodes.

    A fill covers ``ceil(ddd * factor)`` days starting on its dispense date.
    Consecutive fills merge into one episode while the medication-free gap
    (full uncovered days strictly between them) is at most ``gap_days``;
    an early refill extends coverage only to the latest covered day, never
    banking leftover supply.
    """
    if adherence_factor < 1:
        raise DataError(f"adherence_factor must be >= 1, got {adherence_factor}")
    if gap_days < 0:
        raise DataError(f"gap_days must be >= 0, got {gap_days}")
    spans: dict[tuple[str, str], list[tuple[date, date]]] = defaultdict(list)
    for rec in records:
        if rec.ddd_quantity <= 0:
            raise DataError(
                f"record ({rec.patient_id}, {rec.atc_code}, {rec.dispense_date}) "
                f"has non-positive DDD quantity"
            )
        days = fill_duration_days(rec.ddd_quantity, adherence_factor)
        start = rec.dispense_date
        spans[(rec.patient_id, rec.atc_code)].append((start, start + timedelta(days=days - 1)))

    episodes: list[TreatmentEpisode] = []
    for (patient, atc), fills in spans.items():
        fills.sort()
        start, end = fills[0]
        for s, e in fills[1:]:
            gap = (s - end).days - 1
            if gap > gap_days:
                episodes.append(TreatmentEpisode(patient, atc, start, end))
                start, end = s, e
            elif e > end:
                end = e
        episodes.append(TreatmentEpisode(patient, atc, start, end))
    episodes.sort(key=lambda ep: (ep.patient_id, ep.atc_code, ep.start_date))
    return episodes


def active_at(episodes: Iterable[TreatmentEpisode], index_date: date) -> dict[str, set[str]]:
    """Drugs whose episode covers the index date, per patient.

    Patients with no active drug are absent from the result.
    """
    active: dict[str, set[str]] = defaultdict(set)
    for ep in episodes:
        if ep.start_date <= index_date <= ep.end_date:
            active[ep.patient_id].add(ep.atc_code)
    return dict(active)


def build_edge_list(
    active: Mapping[str, set[str]],
    exclusions: ExclusionList | None = None,
) -> list[EdgeListEntry]:
    """Count each unordered co-used drug pair over patients.

    Excluded drugs are dropped first; patients left with fewer than two
    drugs contribute nothing. Output is canonical and sorted.
    """
    excluded = exclusions.atc_codes if exclusions is not None else frozenset()
    counts: Counter[tuple[str, str]] = Counter()
    for drugs in active.values():
        kept = sorted(d for d in drugs if d not in excluded)
        for a, b in combinations(kept, 2):
            counts[(a, b)] += 1
    return [EdgeListEntry(a, b, w) for (a, b), w in sorted(counts.items())]
