"""Bessenrodt-Ono pair checks, region scans, thresholds and induction certificates."""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import __version__
from .core import BoundError, CountTable, PartitionError, PartSet, count_table
from .families import (
    CERTIFIED_FAIL,
    CERTIFIED_PASS,
    PROPOSITION,
    THEOREM,
    FamilySpec,
    gap_validator,
    mary_lemma_region,
    mary_region_is_strict,
    mary_scan_bound,
    UNCOVERED,
    LEMMA_MID_Z,
)
from .injections import VARIANT_F, VARIANT_G, HypothesisError, gap_violation

GREATER = "greater"
EQUAL = "equal"
LESS = "less"

JOBS_ENV = "APARTITIONS_JOBS"
SPOT_CHECK_SPAN = 200


class InconclusiveError(PartitionError):
    pass


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class BOOutcome:
    w: int
    z: int
    lhs: int
    rhs: int

    @property
    def relation(self) -> str:
        if self.lhs > self.rhs:
            return GREATER
        return EQUAL if self.lhs == self.rhs else LESS

    @property
    def strict(self) -> bool:
        return self.lhs > self.rhs

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"w": self.w, "z": self.z, "lhs": str(self.lhs), "rhs": str(self.rhs), "relation": self.relation}


@dataclass(frozen=True)
class ExceptionRecord(BOOutcome):
    """A pair where the strict inequality fails; ``equality`` marks lhs == rhs."""

    def __post_init__(self) -> None:
        if self.lhs > self.rhs:
            raise ValueError(f"({self.w},{self.z}) is strict, not an exception")

    @classmethod
    def from_outcome(cls, o: BOOutcome) -> "ExceptionRecord":
        return cls(o.w, o.z, o.lhs, o.rhs)


def bo_check_pair(table: CountTable, w: int, z: int) -> BOOutcome:
    if w + z > table.bound:
        raise BoundError(f"w + z = {w + z} beyond table bound {table.bound}")
    c = table.counts
    return BOOutcome(w, z, c[w] * c[z], c[w + z])


def _pairs(w_range: range, z_range: range, w_le_z: bool, sum_max: Optional[int]):
    for w in w_range:
        for z in z_range:
            if w_le_z and z < w:
                continue
            if sum_max is not None and w + z > sum_max:
                break
            yield w, z


def _scan_chunk(args) -> list[BOOutcome]:
    table, ws, z_range, w_le_z, sum_max = args
    return [bo_check_pair(table, w, z) for w, z in _pairs(ws, z_range, w_le_z, sum_max)]


def scan_outcomes(
    table: CountTable,
    w_range: range,
    z_range: range,
    w_le_z: bool = True,
    sum_max: Optional[int] = None,
    jobs: Optional[int] = None,
) -> list[BOOutcome]:
    """Every outcome in the region, sorted by (w, z)."""
    top = max(w_range, default=0) + max(z_range, default=0)
    if sum_max is not None:
        top = min(top, sum_max)
    if top > table.bound:
        raise BoundError(f"region reaches sum {top}, beyond table bound {table.bound}")
    jobs = default_jobs() if jobs is None else jobs
    ws = list(w_range)
    if jobs <= 1 or len(ws) < 2 * jobs:
        out = _scan_chunk((table, ws, z_range, w_le_z, sum_max))
    else:
        chunks = [ws[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_scan_chunk, [(table, c, z_range, w_le_z, sum_max) for c in chunks])
            out = [o for part in parts for o in part]
    out.sort(key=lambda o: (o.w, o.z))
    return out


def scan_region(
    table: CountTable,
    w_range: range,
    z_range: range,
    w_le_z: bool = True,
    sum_max: Optional[int] = None,
    jobs: Optional[int] = None,
) -> list[ExceptionRecord]:
    """Non-strict pairs in the region, sorted by (w, z)."""
    return [
        ExceptionRecord.from_outcome(o)
        for o in scan_outcomes(table, w_range, z_range, w_le_z, sum_max, jobs)
        if not o.strict
    ]


def scan_sum_window(
    table: CountTable, part_min: int, sum_lo: int, sum_hi: int, jobs: Optional[int] = None
) -> list[BOOutcome]:
    """Outcomes for part_min <= w <= z with sum_lo <= w + z <= sum_hi."""
    return [
        o
        for o in scan_outcomes(table, range(part_min, sum_hi + 1), range(part_min, sum_hi + 1), True, sum_hi, jobs)
        if o.w + o.z >= sum_lo
    ]


def splitting_identity_holds(partset: PartSet, bound: int) -> bool:
    """p_A(n) = p_A(n - a_2) + p_A(n | no a_2's) for a_2 <= n <= bound."""
    a2 = partset.unrestricted().element(2)
    full = count_table(partset.unrestricted(), bound)
    restricted = count_table(partset.unrestricted().without(a2), bound)
    return all(full[n] == full[n - a2] + restricted[n] for n in range(a2, bound + 1))


# ---------------------------------------------------------------------------
# Hypotheses
# ---------------------------------------------------------------------------

SCOPE_CLOSED_FORM = "closed-form"
SCOPE_COMPLETE = "complete"
SCOPE_SCAN = "scan"


@dataclass
class HypothesisItem:
    name: str
    passed: bool
    scope: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "scope": self.scope, "detail": self.detail}


@dataclass
class HypothesisReport:
    set: str
    mode: str
    bound: int
    items: list[HypothesisItem] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(it.passed for it in self.items)

    @property
    def failed(self) -> list[str]:
        return [it.name for it in self.items if not it.passed]

    @property
    def unconditional(self) -> bool:
        return self.passed and all(it.scope != SCOPE_SCAN for it in self.items)

    def to_dict(self) -> dict:
        return {
            "set": self.set,
            "mode": self.mode,
            "bound": self.bound,
            "passed": self.passed,
            "items": [it.to_dict() for it in self.items],
        }


GAP_THEOREM = "gap condition a_k - a_l >= a_3 (k > l >= 3)"
GAP_PROPOSITION = "gap condition a_k - a_l >= a_3 (k > l >= 4)"
DOUBLE_A2 = "2a_2 <= a_3"


def check_hypotheses(partset: PartSet, bound: int, mode: str = THEOREM) -> HypothesisReport:
    """Gap condition (and 2a_2 <= a_3 in theorem mode) over elements <= bound.

    Built-in families also consult their closed-form validator; finite explicit
    sets are checked completely.
    """
    if mode not in (THEOREM, PROPOSITION):
        raise ValueError(f"mode must be {THEOREM!r} or {PROPOSITION!r}")
    base = partset.unrestricted()
    elems = list(base.param) if base.is_finite else base.elements_up_to(bound)
    if len(elems) < 3:
        raise HypothesisError("set size", f"{partset} has fewer than 3 elements <= {bound}")
    report = HypothesisReport(partset.spec, mode, bound)
    scan_scope = SCOPE_COMPLETE if base.is_finite else SCOPE_SCAN
    report.items.append(HypothesisItem("a_1 = 1", elems[0] == 1, SCOPE_COMPLETE, f"a_1 = {elems[0]}"))
    a2, a3 = elems[1], elems[2]

    first = 3 if mode == THEOREM else 4
    gap_name = GAP_THEOREM if mode == THEOREM else GAP_PROPOSITION
    bad = gap_violation(elems, first, a3)
    scan_ok = bad is None
    upto = "all elements" if base.is_finite else f"elements <= {bound}"
    detail = f"scanned {upto}" if scan_ok else f"{bad[0]} - {bad[1]} = {bad[0] - bad[1]} < {a3}"
    item = HypothesisItem(gap_name, scan_ok, scan_scope, detail)
    if not base.is_finite:
        verdict = gap_validator(FamilySpec.of(base), mode)
        closed_ok = verdict.verdict == CERTIFIED_PASS
        if verdict.verdict == CERTIFIED_FAIL and scan_ok:
            # violation lies beyond the scanned range
            item = HypothesisItem(gap_name, False, SCOPE_CLOSED_FORM, verdict.inequality)
        elif closed_ok and not scan_ok:
            item = HypothesisItem(gap_name, False, SCOPE_SCAN, f"closed form contradicted by scan: {detail}")
        elif closed_ok:
            item = HypothesisItem(gap_name, True, SCOPE_CLOSED_FORM, f"{verdict.inequality}; {detail}")
        else:
            item = HypothesisItem(gap_name, scan_ok, scan_scope if scan_ok else SCOPE_CLOSED_FORM, verdict.inequality)
    report.items.append(item)

    if mode == THEOREM:
        report.items.append(HypothesisItem(DOUBLE_A2, 2 * a2 <= a3, SCOPE_COMPLETE, f"2*{a2} = {2 * a2} vs a_3 = {a3}"))
    return report


# ---------------------------------------------------------------------------
# Induction schemes and certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InductionScheme:
    """Base bound L, subtracted part p = a_2, and the injection's size preconditions."""

    L: int
    p: int
    w_inj: int
    z_inj: int
    variant: str = VARIANT_F

    @property
    def window(self) -> tuple[int, int]:
        return (2 * self.L, 2 * (self.L + self.p) - 1)

    @property
    def mode(self) -> str:
        return THEOREM if self.variant == VARIANT_F else PROPOSITION

    def problems(self) -> list[str]:
        out = []
        if self.L < self.z_inj:
            out.append(f"L = {self.L} < z_inj = {self.z_inj}")
        if self.L + self.p < self.w_inj:
            out.append(f"L + p = {self.L + self.p} < w_inj = {self.w_inj}")
        return out

    def to_dict(self) -> dict:
        return {
            "L": self.L,
            "p": self.p,
            "window": list(self.window),
            "w_inj": self.w_inj,
            "z_inj": self.z_inj,
            "variant": self.variant,
        }


def scheme_for(partset: PartSet, L: Optional[int] = None, variant: str = VARIANT_F) -> InductionScheme:
    """Scheme derived from the set: p = a_2, w_inj = a_3 + 1, z_inj = 2a_2 (f) or 3a_2 (g).

    ``L`` defaults to a_3.
    """
    base = partset.unrestricted()
    a2, a3 = base.element(2), base.element(3)
    z_inj = 2 * a2 if variant == VARIANT_F else 3 * a2
    return InductionScheme(a3 if L is None else L, a2, a3 + 1, z_inj, variant)


def default_scheme(partset: PartSet) -> InductionScheme:
    if partset.kind == "power" and partset.param == 2:
        return scheme_for(partset, 12, VARIANT_G)
    if partset.kind == "fib":
        return scheme_for(partset, 6, VARIANT_G)
    return scheme_for(partset)


@dataclass
class WindowReport:
    scheme: InductionScheme
    outcomes: list[BOOutcome]

    @property
    def passed(self) -> bool:
        return all(o.strict for o in self.outcomes)

    @property
    def failures(self) -> list[BOOutcome]:
        return [o for o in self.outcomes if not o.strict]


def verify_base_window(table: CountTable, scheme: InductionScheme, jobs: Optional[int] = None) -> WindowReport:
    lo, hi = scheme.window
    if hi > table.bound:
        raise BoundError(f"window top {hi} beyond table bound {table.bound}")
    return WindowReport(scheme, scan_sum_window(table, scheme.L, lo, hi, jobs))


@dataclass
class BOCertificate:
    set: str
    scheme: InductionScheme
    hypotheses: Optional[HypothesisReport]
    window_outcomes: list[BOOutcome]
    spot_check_range: tuple[int, int]
    spot_check_failures: list[BOOutcome]
    splitting_identity: bool
    failures: list[str]
    caveats: list[str]

    @property
    def valid(self) -> bool:
        return not self.failures

    @property
    def unconditional(self) -> bool:
        return self.valid and self.hypotheses is not None and self.hypotheses.unconditional

    @property
    def conclusion(self) -> str:
        if self.valid:
            return f"BO strict for all w,z >= {self.scheme.L}"
        return "no conclusion"

    def to_dict(self) -> dict:
        return {
            "tool_version": __version__,
            "set": self.set,
            "valid": self.valid,
            "unconditional": self.unconditional,
            "conclusion": self.conclusion,
            "scheme": self.scheme.to_dict(),
            "hypotheses": None if self.hypotheses is None else self.hypotheses.to_dict(),
            "window_outcomes": [o.to_dict() for o in self.window_outcomes],
            "spot_check_range": list(self.spot_check_range),
            "spot_check_failures": [o.to_dict() for o in self.spot_check_failures],
            "splitting_identity": self.splitting_identity,
            "failures": self.failures,
            "caveats": self.caveats,
        }


def certify_bo(
    partset: PartSet,
    scheme: Optional[InductionScheme] = None,
    table: Optional[CountTable] = None,
    jobs: Optional[int] = None,
) -> BOCertificate:
    """Check a scheme's hypotheses and base window; a valid certificate covers all w,z >= L."""
    partset = partset.unrestricted()
    scheme = default_scheme(partset) if scheme is None else scheme
    lo, hi = scheme.window
    if table is None:
        table = count_table(partset, hi + SPOT_CHECK_SPAN)
    failures: list[str] = []
    caveats: list[str] = []

    derived = scheme_for(partset, scheme.L, scheme.variant)
    if (scheme.p, scheme.w_inj, scheme.z_inj) != (derived.p, derived.w_inj, derived.z_inj):
        failures.append(
            f"scheme parameters (p={scheme.p}, w_inj={scheme.w_inj}, z_inj={scheme.z_inj}) do not match the set "
            f"(p={derived.p}, w_inj={derived.w_inj}, z_inj={derived.z_inj})"
        )
    failures.extend(f"scheme: {msg}" for msg in scheme.problems())

    hyp = check_hypotheses(partset, table.bound, scheme.mode)
    failures.extend(f"hypothesis failed: {name}" for name in hyp.failed)
    for it in hyp.items:
        if it.scope == SCOPE_SCAN and it.passed:
            caveats.append(f"{it.name} verified only for elements <= {table.bound}")

    window = verify_base_window(table, scheme, jobs)
    failures.extend(f"window pair ({o.w},{o.z}) is {o.relation}" for o in window.failures)

    spot_hi = min(table.bound, hi + SPOT_CHECK_SPAN)
    spot = scan_sum_window(table, scheme.L, hi + 1, spot_hi, jobs) if spot_hi > hi else []
    spot_fail = [o for o in spot if not o.strict]
    if spot_fail and not failures:
        failures.append(f"spot check contradicts the induction at {len(spot_fail)} pairs")

    split_ok = splitting_identity_holds(partset, table.bound)
    if not split_ok:
        failures.append("splitting identity failed")
    if scheme.variant == VARIANT_G:
        caveats.append("induction step uses the variant injection g")

    return BOCertificate(
        partset.spec, scheme, hyp, window.outcomes, (hi + 1, spot_hi), spot_fail, split_ok, failures, caveats
    )


# ---------------------------------------------------------------------------
# Thresholds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdResult:
    set: str
    part_min: int
    scan_bound: int
    threshold: int
    witness: Optional[ExceptionRecord]
    exception_count: int

    def to_dict(self) -> dict:
        return {
            "set": self.set,
            "part_min": self.part_min,
            "scan_bound": self.scan_bound,
            "threshold": self.threshold,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "exception_count": self.exception_count,
        }


def find_threshold(
    partset: PartSet,
    part_min: int,
    scan_bound: int,
    table: Optional[CountTable] = None,
    jobs: Optional[int] = None,
) -> ThresholdResult:
    """Smallest N with no exception w, z >= part_min, w + z >= N inside the scan.

    The caller vouches that ``scan_bound`` is past every possible exception;
    the result is rejected as inconclusive when the last exception sits on the
    scan's top sum, or the scan is empty.
    """
    if scan_bound < 2 * part_min:
        raise InconclusiveError(f"scan bound {scan_bound} < 2*part_min = {2 * part_min}")
    if table is None:
        table = count_table(partset, scan_bound)
    span = range(part_min, scan_bound - part_min + 1)
    exc = scan_region(table, span, span, True, scan_bound, jobs)
    if not exc:
        return ThresholdResult(partset.spec, part_min, scan_bound, 2 * part_min, None, 0)
    top = max(e.w + e.z for e in exc)
    witness = next(e for e in exc if e.w + e.z == top)
    if top >= scan_bound:
        raise InconclusiveError(f"exception ({witness.w},{witness.z}) at the scan's top sum {scan_bound}")
    return ThresholdResult(partset.spec, part_min, scan_bound, top + 1, witness, len(exc))


# ---------------------------------------------------------------------------
# m-ary exception tables
# ---------------------------------------------------------------------------


@dataclass
class MaryExceptionReport:
    m: int
    sum_max: int
    exceptions: list[ExceptionRecord]
    covered_exceptions: list[tuple[ExceptionRecord, str]]
    lemma_contradictions: list[str]
    equality_audit: list[str]


def mary_exception_table(m: int, sum_max: Optional[int] = None, jobs: Optional[int] = None) -> MaryExceptionReport:
    """Exceptions with m <= w <= z not settled by the m-ary lemmas.

    Also audits each covered pair against its lemma and compares, for
    z // m == 1, where equality occurs with w + z >= 3m in both directions.
    """
    sum_max = mary_scan_bound(m) if sum_max is None else sum_max
    table = count_table(PartSet.mary(m), sum_max)
    span = range(m, sum_max - m + 1)
    outcomes = scan_outcomes(table, span, span, True, sum_max, jobs)
    exceptions, covered, contradictions, audit = [], [], [], []
    for o in outcomes:
        tag = mary_lemma_region(m, o.w, o.z)
        strict_claim = mary_region_is_strict(m, o.w, o.z)
        if tag == UNCOVERED:
            if not o.strict:
                exceptions.append(ExceptionRecord.from_outcome(o))
            continue
        if not o.strict:
            covered.append((ExceptionRecord.from_outcome(o), tag))
        if strict_claim and not o.strict:
            contradictions.append(f"({o.w},{o.z}) in {tag} is {o.relation}")
        if strict_claim is False:
            if o.relation == LESS:
                contradictions.append(f"({o.w},{o.z}) in {tag} is less")
            big = o.w + o.z >= 3 * m
            if big and not o.equality:
                audit.append(f"({o.w},{o.z}): w+z >= 3m but strict")
            if o.equality and not big:
                audit.append(f"({o.w},{o.z}): equality with w+z < 3m")
    return MaryExceptionReport(m, sum_max, exceptions, covered, contradictions, audit)


# ---------------------------------------------------------------------------
# Empirical scan for general sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjectureRow:
    set: str
    bound: int
    largest_exception_sum: Optional[int]
    min_part_threshold: int
    exceptions: int

    def to_dict(self) -> dict:
        return {
            "set": self.set,
            "bound": self.bound,
            "largest_exception_sum": self.largest_exception_sum,
            "min_part_threshold": self.min_part_threshold,
            "exceptions": self.exceptions,
        }


def random_gcd1_sets(count: int, max_element: int, sizes: Iterable[int], seed: int = 0) -> list[PartSet]:
    rng = random.Random(seed)
    sizes = list(sizes)
    out: list[PartSet] = []
    while len(out) < count:
        k = rng.choice(sizes)
        elems = sorted(rng.sample(range(1, max_element + 1), k))
        if math.gcd(*elems) == 1:
            out.append(PartSet.explicit(elems))
    return out


def conjecture_scan(
    sets: Iterable[PartSet], bound: int, part_min: int = 1, jobs: Optional[int] = None
) -> list[ConjectureRow]:
    """For each set: the largest exceptional w + z with w, z >= part_min, and the
    least c such that no exception has c <= w <= z within the bound.  A report only."""
    rows = []
    for ps in sets:
        table = count_table(ps, bound)
        span = range(part_min, bound + 1)
        exc = scan_region(table, span, span, True, bound, jobs)
        largest = max((e.w + e.z for e in exc), default=None)
        c = max((e.w for e in exc), default=part_min - 1) + 1
        rows.append(ConjectureRow(ps.spec, bound, largest, c, len(exc)))
    return rows
