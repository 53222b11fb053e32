"""Family-specific facts: m-ary recursion, lemma regions, gap proofs, max formulas."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .core import MaxResult, Partition, PartSet

CERTIFIED_PASS = "certified-pass"
CERTIFIED_FAIL = "certified-fail"
NOT_APPLICABLE = "not-applicable"

THEOREM = "theorem"
PROPOSITION = "proposition"


@dataclass(frozen=True)
class FamilySpec:
    family: str
    param: Optional[int] = None

    def __post_init__(self) -> None:
        if self.family == "mary" and (self.param is None or self.param < 2):
            raise ValueError("mary requires m >= 2")
        if self.family == "power" and (self.param is None or self.param < 2):
            raise ValueError("power requires d >= 2")
        if self.family not in ("mary", "power", "fib", "factorial", "all", "explicit"):
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def of(cls, partset: PartSet) -> "FamilySpec":
        if partset.kind in ("mary", "power"):
            return cls(partset.kind, partset.param)
        return cls(partset.kind)

    def partset(self) -> PartSet:
        if self.family == "explicit":
            raise ValueError("explicit sets carry their own elements; build a PartSet directly")
        return PartSet(self.family, self.param)


def _family(obj) -> FamilySpec:
    return obj if isinstance(obj, FamilySpec) else FamilySpec.of(obj)


# ---------------------------------------------------------------------------
# m-ary partitions
# ---------------------------------------------------------------------------


def mary_counts(m: int, n: int) -> list[int]:
    """b_m(0..n) from b_m(xm + y) = b_m(xm) and b_m(xm) = b_m((x-1)m) + b_m(x)."""
    if m < 2:
        raise ValueError("m must be >= 2")
    top = n // m
    at_multiple = [1] * (top + 1)  # at_multiple[x] = b_m(xm)
    for x in range(1, top + 1):
        at_multiple[x] = at_multiple[x - 1] + at_multiple[x // m]
    return [at_multiple[k // m] for k in range(n + 1)]


def mary_count(m: int, n: int) -> int:
    if n < 0:
        return 0
    return mary_counts(m, n)[n]


SMALL_W = "small-w"
LEMMA_LARGE_Z = "L1"
LEMMA_MID_Z = "L2"
LEMMA_BOTH_LARGE = "L3"
UNCOVERED = "uncovered"


def mary_lemma_region(m: int, w: int, z: int) -> str:
    """Which of the m-ary lemmas settles the pair (w, z), w <= z.

    L1: m <= w < 2m and z // m >= 5m (strict).
    L2: m <= w < 2m, 1 <= z // m <= 5m - 1 and either z // m == 1 with m >= 4
        (non-strict, equality allowed) or z // m >= 2 with m >= 6 (strict).
    L3: m >= 4, w, z >= 2m and w + z <= 2m^2 (strict).
    """
    if w > z:
        raise ValueError("mary_lemma_region expects w <= z")
    if w < m:
        return SMALL_W
    k = z // m
    if w <= 2 * m - 1:
        if k >= 5 * m:
            return LEMMA_LARGE_Z
        if m >= 4 and k == 1:
            return LEMMA_MID_Z
        if m >= 6 and 2 <= k <= 5 * m - 1:
            return LEMMA_MID_Z
        return UNCOVERED
    if m >= 4 and w + z <= 2 * m * m:
        return LEMMA_BOTH_LARGE
    return UNCOVERED


def mary_region_is_strict(m: int, w: int, z: int) -> Optional[bool]:
    """True when the covering lemma promises strict inequality, False when only >=."""
    tag = mary_lemma_region(m, w, z)
    if tag in (UNCOVERED, SMALL_W):
        return None
    if tag == LEMMA_MID_Z and z // m == 1:
        return False
    return True


def mary_scan_bound(m: int) -> int:
    """Sum bound past which the lemmas and induction leave no m-ary exception."""
    return 5 * m * m + 4 * m


def mary_threshold(m: int) -> int:
    return {2: 13, 3: 17, 4: 23}.get(m, 4 * m - 1)


# ---------------------------------------------------------------------------
# Gap condition validators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GapVerdict:
    family: str
    mode: str
    verdict: str
    inequality: str
    checked_indices: int = 0
    caveat: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == CERTIFIED_PASS

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "mode": self.mode,
            "verdict": self.verdict,
            "inequality": self.inequality,
            "checked_indices": self.checked_indices,
            "caveat": self.caveat,
        }


def _first_index(mode: str) -> int:
    if mode == THEOREM:
        return 3
    if mode == PROPOSITION:
        return 4
    raise ValueError(f"mode must be {THEOREM!r} or {PROPOSITION!r}")


def _brute_gap(elem: Callable[[int], int], first: int, last: int) -> Optional[tuple[int, int]]:
    """First (k, l) with a_k - a_l < a_3 and last >= k > l >= first, else None.

    Only consecutive differences matter: a_k - a_l >= a_{l+1} - a_l for k > l.
    """
    a3 = elem(3)
    for l in range(first, last):
        if elem(l + 1) - elem(l) < a3:
            return (l + 1, l)
    return None


def gap_validator(family, mode: str = THEOREM, check_indices: int = 40) -> GapVerdict:
    """Closed-form verdict on a_k - a_l >= a_3 for all k > l >= 3 (or >= 4).

    Each built-in family reduces the gap condition to a monotone consecutive
    difference; the verdict is backed by evaluating that difference over the
    first ``check_indices`` indices.
    """
    fam = _family(family)
    first = _first_index(mode)
    name = fam.family
    if name == "explicit":
        return GapVerdict(name, mode, NOT_APPLICABLE, "explicit sets are checked by scan only")

    if name == "mary":
        m = fam.param
        elem = lambda k: m ** (k - 1)
        ineq = f"{m}^k - {m}^l >= {m}^l*({m}-1) >= {m}^2*({m}-1) >= {m}^2 = a_3"
        holds = True
        caveat = "consecutive gap m^l(m-1) increases with l"
    elif name == "power":
        d = fam.param
        elem = lambda k: k**d
        if mode == THEOREM and d == 2:
            return GapVerdict(name, mode, CERTIFIED_FAIL, "4^2 - 3^2 = 7 < 9 = 3^2", 4)
        if d >= 3:
            ineq = f"k^{d} - l^{d} > (k-l)*{d}*l^{d - 1} >= {d}*3^{d - 1} >= 3^{d} = a_3"
        else:
            ineq = "k^2 - l^2 >= 2l + 1 >= 9 = a_3 for k > l >= 4"
        holds = True
        caveat = "consecutive gap (l+1)^d - l^d increases with l"
    elif name == "fib":
        fibs = [0, 1]
        while len(fibs) < check_indices + 4:
            fibs.append(fibs[-1] + fibs[-2])
        elem = lambda k: fibs[k + 1]  # a_k = F_{k+1}
        if mode == THEOREM:
            return GapVerdict(name, mode, CERTIFIED_FAIL, "a_4 - a_3 = 5 - 3 = 2 < 3 = a_3", 4)
        ineq = "F_k - F_l >= F_{l+1} - F_l = F_{l-1} >= 3 = a_3 for k > l >= 4 (elements a_l = F_{l+1})"
        holds = True
        caveat = "consecutive gap is the previous Fibonacci number, increasing"
    elif name == "factorial":
        elem = lambda k: _fact(k)
        ineq = "k! - l! >= (l+1)! - l! = l*l! >= 3*3! = 18 >= 6 = a_3"
        holds = True
        caveat = "consecutive gap l*l! increases with l"
    elif name == "all":
        return GapVerdict(name, mode, CERTIFIED_FAIL, f"a_{first + 1} - a_{first} = 1 < 3 = a_3", first + 1)
    else:
        raise ValueError(f"no closed-form validator for {name!r}")

    bad = _brute_gap(elem, first, check_indices)
    if bad is not None:
        # the closed form above would be wrong; report what the scan found
        k, l = bad
        return GapVerdict(name, mode, CERTIFIED_FAIL, f"a_{k} - a_{l} = {elem(k) - elem(l)} < {elem(3)}", check_indices)
    verdict = CERTIFIED_PASS if holds else CERTIFIED_FAIL
    return GapVerdict(name, mode, verdict, ineq, check_indices, caveat)


def _fact(k: int) -> int:
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


# ---------------------------------------------------------------------------
# Maximum formulas
# ---------------------------------------------------------------------------

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive-witnesses"
REPORT_ONLY = "report-only"
OUT_OF_DOMAIN = "not-applicable"


def _shape(*runs: tuple[int, int]) -> Optional[Partition]:
    """Partition from (part, exponent) runs; None when some exponent is negative."""
    if any(k < 0 for _, k in runs):
        return None
    return Partition.from_multiplicities(runs)


@dataclass(frozen=True)
class MaxFormula:
    """Predicted max value and witness shapes for a family.

    ``value(n)`` returns None where the closed form is not an integer.
    ``exact`` marks families whose theorem lists the complete witness set.
    """

    family: str
    value: Callable[[int], Optional[int]]
    shapes: Callable[[int], list[Partition]]
    exact: bool = True


def _mary_formula(m: int) -> MaxFormula:
    def value(n: int) -> int:
        return 2 ** (n // m)

    def shapes(n: int) -> list[Partition]:
        if m >= 3:
            return [_shape((m, n // m), (1, n - m * (n // m)))]
        half = n // 2
        return [_shape((4, i), (2, half - 2 * i), (1, n - 2 * half)) for i in range(n // 4 + 1)]

    return MaxFormula("mary", value, shapes)


def _power_formula(d: int) -> MaxFormula:
    q = 2**d

    def value(n: int) -> int:
        return 2 ** (n // q)

    def shapes(n: int) -> list[Partition]:
        if d >= 3:
            return [_shape((q, n // q), (1, n - q * (n // q)))]
        r = n % 4
        out = [_shape((4, n // 4), (1, n - 4 * (n // 4)))]
        for nines, residues in ((1, (1, 2, 3)), (2, (2, 3)), (3, (3,))):
            base = 9 * nines
            if r in residues and n >= base:
                fours = (n - base) // 4
                out.append(_shape((9, nines), (4, fours), (1, n - 4 * fours - base)))
        return [s for s in out if s is not None]

    return MaxFormula("power", value, shapes)


def _fib_value(n: int) -> Optional[int]:
    q, r = divmod(n, 3)
    if r == 0:
        return 3**q
    if r == 1:
        v = Fraction(4) * Fraction(3) ** (q - 1)
        return int(v) if v.denominator == 1 else None
    return 2 * 3**q


def _fib_shapes(n: int) -> list[Partition]:
    q, r = divmod(n, 3)
    if r == 0:
        cands = [_shape((3, q))]
    elif r == 1:
        cands = [_shape((3, q - 1), (2, 2))]
        if n >= 7:
            cands.append(_shape((5, 1), (3, q - 2), (2, 1)))
        if n >= 10:
            cands.append(_shape((5, 2), (3, q - 3)))
    else:
        cands = [_shape((3, q), (2, 1))]
        if n >= 5:
            cands.append(_shape((5, 1), (3, q - 1)))
    return [c for c in cands if c is not None]


def _factorial_formula() -> MaxFormula:
    return MaxFormula(
        "factorial",
        lambda n: 2 ** (n // 2),
        lambda n: [_shape((2, n // 2), (1, n % 2))],
    )


_P_SMALL = (1, 1, 2, 3, 5, 7, 11)


def _all_formula() -> MaxFormula:
    # 4s/5s/6s pattern for n >= 8; the n = 3 (mod 4) value is taken as 11*7*5^((n-11)/4)
    def value(n: int) -> Optional[int]:
        if n < 8:
            return None
        r = n % 4
        base = {0: 0, 1: 5, 2: 6, 3: 11}[r]
        lead = {0: 1, 1: 7, 2: 11, 3: 77}[r]
        return lead * 5 ** ((n - base) // 4)

    def shapes(n: int) -> list[Partition]:
        if n < 4 or n == 7:
            return []
        head = {0: (), 1: (5,), 2: (6,), 3: (6, 5)}[n % 4]
        rest = n - sum(head)
        return [Partition.of(*head, *([4] * (rest // 4)))]

    return MaxFormula("all", value, shapes, exact=False)


def max_formula(family) -> MaxFormula:
    fam = _family(family)
    if fam.family == "mary":
        return _mary_formula(fam.param)
    if fam.family == "power":
        return _power_formula(fam.param)
    if fam.family == "fib":
        return MaxFormula("fib", _fib_value, _fib_shapes)
    if fam.family == "factorial":
        return _factorial_formula()
    if fam.family == "all":
        return _all_formula()
    raise ValueError(f"no max formula for {fam.family!r}")


@dataclass(frozen=True)
class MaxVerdict:
    family: str
    n: int
    status: str
    predicted: Optional[int]
    observed: int
    expected_shapes: tuple[Partition, ...]
    missing: tuple[Partition, ...] = ()
    extra: tuple[Partition, ...] = ()
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "status": self.status,
            "predicted": None if self.predicted is None else str(self.predicted),
            "observed": str(self.observed),
            "expected_shapes": [str(p) for p in self.expected_shapes],
            "missing": [str(p) for p in self.missing],
            "extra": [str(p) for p in self.extra],
            "note": self.note,
        }


def max_formula_check(family, n: int, result: MaxResult) -> MaxVerdict:
    """Compare a DP maximum against the family's closed form and witness shapes."""
    fam = _family(family)
    if result.n != n:
        raise ValueError(f"max result is for n={result.n}, not {n}")
    formula = max_formula(fam)
    predicted = formula.value(n)
    shapes = tuple(formula.shapes(n))
    found = set(result.witnesses)
    missing = tuple(s for s in shapes if s not in found)
    extra = tuple(w for w in result.witnesses if w not in set(shapes)) if formula.exact else ()

    if not formula.exact:
        note = "value matches" if predicted == result.value else "value differs"
        if predicted is None:
            note = "no closed form for this n"
        return MaxVerdict(fam.family, n, REPORT_ONLY, predicted, result.value, shapes, missing, (), note)
    if predicted is None:
        return MaxVerdict(
            fam.family, n, OUT_OF_DOMAIN, None, result.value, shapes,
            note="closed form is not an integer and no listed shape exists at this n",
        )
    if predicted != result.value:
        return MaxVerdict(fam.family, n, FAIL, predicted, result.value, shapes, missing, extra, "value mismatch")
    if result.witness_cap_hit:
        return MaxVerdict(
            fam.family, n, INCONCLUSIVE, predicted, result.value, shapes, missing, (),
            "witness cap hit; value checked only",
        )
    status = PASS if not missing and not extra else FAIL
    return MaxVerdict(fam.family, n, status, predicted, result.value, shapes, missing, extra)
