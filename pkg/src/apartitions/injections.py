"""The seven-case injection f and its variant g.

Both map a partition of w + z with no a_2 parts to a pair
(partition of w with no a_2 parts; partition of z).  Positions are 1-based over
the full parts list, trailing 1's included.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .core import (
    DomainError,
    PartitionError,
    Partition,
    PartSet,
    count_table,
    iter_partitions,
    DEFAULT_ENUM_CAP,
    EnumerationOverflow,
)

VARIANT_F = "f"
VARIANT_G = "g"
CASE_G = "G"


class HypothesisError(PartitionError, ValueError):
    """A precondition of the injection is not met; ``hypothesis`` names it."""

    def __init__(self, hypothesis: str, detail: str):
        super().__init__(f"{hypothesis}: {detail}")
        self.hypothesis = hypothesis


class ScalingError(PartitionError, ValueError):
    """The smallest element exceeds 1 but does not divide every element."""


@dataclass(frozen=True)
class SplitData:
    i: int
    x: int
    y: int
    t: int
    s: int


@dataclass(frozen=True)
class PairImage:
    left: Partition
    right: Partition
    case_id: object

    def key(self) -> tuple:
        return (self.left.parts, self.right.parts)

    def __str__(self) -> str:
        return f"({str(self.left)[1:-1]}; {str(self.right)[1:-1]})"


@dataclass(frozen=True)
class SetData:
    """The first elements of a set with a_1 = 1, read from the parts <= bound."""

    a2: int
    a3: int
    a4: Optional[int]
    elements: tuple[int, ...]


def set_data(partset: PartSet, bound: int) -> SetData:
    elems = partset.unrestricted().elements_up_to(bound)
    if len(elems) < 3:
        raise HypothesisError("set size", f"{partset} has fewer than 3 elements <= {bound}")
    if elems[0] != 1:
        raise HypothesisError("a_1 = 1", f"{partset} has smallest element {elems[0]}")
    a4 = elems[3] if len(elems) > 3 else None
    return SetData(elems[1], elems[2], a4, tuple(elems))


def gap_violation(elements, first: int, a3: int) -> Optional[tuple[int, int]]:
    """A pair (a_k, a_l), k > l >= first, with a_k - a_l < a_3, else None."""
    tail = elements[first - 1:]
    for lo, hi in zip(tail, tail[1:]):
        if hi - lo < a3:
            return (hi, lo)
    return None


def split_data(lam: Partition, w: int, z: int, partset: Optional[PartSet] = None) -> SplitData:
    if lam.n != w + z:
        raise DomainError(f"{lam} has weight {lam.n}, expected {w + z}")
    if w < 1 or z < 1:
        raise DomainError("w and z must be positive")
    if partset is not None:
        a2 = partset.unrestricted().element(2)
        if a2 in lam.parts:
            raise DomainError(f"{lam} contains a_2 = {a2}")
    parts = lam.parts
    s = parts.count(1)
    t = len(parts) - s
    suffix = 0
    i = len(parts)
    # i = max{j : lam_j + ... + lam_{t+s} >= z}
    while i >= 1:
        suffix += parts[i - 1]
        if suffix >= z:
            break
        i -= 1
    x = z - (suffix - parts[i - 1])
    y = parts[i - 1] - x
    return SplitData(i, x, y, t, s)


# case predicates, kept separate so tests can check they partition the input space
def _lam(lam: Partition, j: int) -> Optional[int]:
    return lam.parts[j - 1] if 1 <= j <= len(lam.parts) else None


def case_predicates(lam: Partition, sp: SplitData, a3: int, z: int) -> dict[int, bool]:
    li = _lam(lam, sp.i)
    prev = _lam(lam, sp.i - 1)
    return {
        1: sp.y == 0 and 0 <= sp.s <= z,
        2: sp.y == 0 and z < sp.s <= a3 + z,
        3: sp.y == 0 and sp.s > a3 + z,
        4: sp.y >= 1 and prev == li == a3,
        5: sp.y >= 1 and li == a3 and prev is not None and prev > li,
        6: sp.y >= 1 and li > a3 and sp.y % a3 != 0,
        7: sp.y >= 1 and li > a3 and sp.y % a3 == 0,
    }


def split_z(lam: Partition, sp: SplitData) -> int:
    return sp.x + sum(lam.parts[sp.i:])


def classify_case(lam: Partition, sp: SplitData, partset: PartSet) -> int:
    """Which of the seven cases applies; exactly one predicate holds."""
    a3 = partset.unrestricted().element(3)
    return _classify(lam, sp, a3, split_z(lam, sp))


def _classify(lam: Partition, sp: SplitData, a3: int, z: int) -> int:
    hits = [c for c, ok in case_predicates(lam, sp, a3, z).items() if ok]
    if len(hits) != 1:
        raise AssertionError(f"{lam} with {sp} matches cases {hits}")
    return hits[0]


def _runs(*runs: tuple[int, int]) -> list[int]:
    out: list[int] = []
    for part, k in runs:
        if k < 0:
            raise AssertionError(f"negative exponent {k} for part {part}")
        out.extend([part] * k)
    return out


def _f_image(lam: Partition, sp: SplitData, sd: SetData, w: int, z: int) -> PairImage:
    a2, a3 = sd.a2, sd.a3
    big = list(lam.parts[: sp.t])  # lam_1 .. lam_t
    i, x, y, s, t = sp.i, sp.x, sp.y, sp.s, sp.t
    head = list(lam.parts[: i - 1])  # lam_1 .. lam_{i-1}
    after = big[i:]  # lam_{i+1} .. lam_t
    case = _classify(lam, sp, a3, z)
    if case == 1:
        left, right = head, list(lam.parts[i - 1:])
    elif case == 2:
        left = big[: t - 1] + _runs((1, s - z + big[t - 1]))
        right = _runs((1, z))
    elif case == 3:
        left = big + _runs((1, s - z))
        right = _runs((a2, 1), (1, z - a2))
    elif case == 4:
        q = (x + s) // a2
        left = list(lam.parts[: i - 2]) + _runs((1, y + a3))
        right = after + _runs((a2, q), (1, x + s - a2 * q))
    else:
        q = s // a2
        right = after + _runs((a2, q), (1, x + s - a2 * q))
        if case == 5:
            left = head + _runs((1, y))
        elif case == 6:
            left = head + _runs((a3, y // a3), (1, y - a3 * (y // a3)))
        else:
            left = head + _runs((a3, y // a3 - 1), (1, a3))
    return PairImage(Partition(tuple(left)), Partition(tuple(right)), case)


def _g_special(lam: Partition, sp: SplitData, sd: SetData, z: int) -> bool:
    if sp.y != 0 or not (z < sp.s <= z + sd.a3) or sp.t == 0:
        return False
    return sd.a4 is not None and lam.parts[sp.t - 1] >= sd.a4


def _check_image(img: PairImage, partset: PartSet, sd: SetData, w: int, z: int) -> list[str]:
    problems = []
    if img.left.n != w:
        problems.append(f"left weight {img.left.n} != {w}")
    if img.right.n != z:
        problems.append(f"right weight {img.right.n} != {z}")
    if sd.a2 in img.left.parts:
        problems.append("left contains a_2")
    base = partset.unrestricted()
    for p in set(img.left.parts) | set(img.right.parts):
        if p not in base:
            problems.append(f"part {p} not allowed")
    return problems


# ---------------------------------------------------------------------------
# Hypotheses and scaling
# ---------------------------------------------------------------------------


def _scale(partset: PartSet, bound: int) -> int:
    """Common factor a_1 to divide out, 1 when the set already contains 1."""
    if partset.kind == "explicit":
        elems = list(partset.param)
    else:
        elems = partset.unrestricted().elements_up_to(bound)
    if not elems or elems[0] == 1:
        return 1
    a1 = elems[0]
    if any(e % a1 for e in elems):
        raise ScalingError(f"{partset}: a_1 = {a1} does not divide every element")
    return a1


def scaled_set(partset: PartSet, factor: int) -> PartSet:
    if factor == 1:
        return partset.unrestricted()
    if partset.kind != "explicit":
        raise ScalingError(f"cannot rescale family {partset.kind}")
    return PartSet.explicit([e // factor for e in partset.param])


def _gate(partset: PartSet, w: int, z: int, variant: str) -> tuple[PartSet, int, SetData]:
    bound = w + z
    factor = _scale(partset, bound)
    if factor > 1:
        if w % factor or z % factor:
            raise HypothesisError("divisibility", f"a_1 = {factor} must divide w = {w} and z = {z}")
        partset, w, z = scaled_set(partset, factor), w // factor, z // factor
        bound = w + z
    sd = set_data(partset, bound)
    if w < sd.a3 + 1:
        raise HypothesisError("w >= a_3 + 1", f"w = {w}, a_3 = {sd.a3}")
    z_min = 2 * sd.a2 if variant == VARIANT_F else 3 * sd.a2
    if z < z_min:
        label = "z >= 2a_2" if variant == VARIANT_F else "z >= 3a_2"
        raise HypothesisError(label, f"z = {z}, a_2 = {sd.a2}")
    first = 3 if variant == VARIANT_F else 4
    bad = gap_violation(sd.elements, first, sd.a3)
    if bad is not None:
        raise HypothesisError(
            f"gap condition (k > l >= {first})",
            f"{bad[0]} - {bad[1]} = {bad[0] - bad[1]} < a_3 = {sd.a3} (checked parts <= {bound})",
        )
    return partset, factor, sd


def _scale_image(img: PairImage, factor: int) -> PairImage:
    if factor == 1:
        return img
    return PairImage(
        Partition(tuple(p * factor for p in img.left.parts)),
        Partition(tuple(p * factor for p in img.right.parts)),
        img.case_id,
    )


def _apply(partset: PartSet, lam: Partition, w: int, z: int, variant: str) -> PairImage:
    base, factor, sd = _gate(partset, w, z, variant)
    if factor > 1:
        if any(p % factor for p in lam.parts):
            raise DomainError(f"{lam} is not a partition into {partset}")
        lam = Partition(tuple(p // factor for p in lam.parts))
        w, z = w // factor, z // factor
    for p in set(lam.parts):
        if p not in base:
            raise DomainError(f"part {p} of {lam} is not in {base}")
    sp = split_data(lam, w, z, base)
    if variant == VARIANT_G and _g_special(lam, sp, sd, z):
        big = list(lam.parts[: sp.t])
        left = big[:-1] + _runs((1, sp.s - z + big[-1]))
        right = _runs((sd.a2, 2), (1, z - 2 * sd.a2))
        img = PairImage(Partition(tuple(left)), Partition(tuple(right)), CASE_G)
    else:
        img = _f_image(lam, sp, sd, w, z)
    problems = _check_image(img, base, sd, w, z)
    if problems:
        raise AssertionError(f"ill-defined image {img} of {lam}: {problems}")
    return _scale_image(img, factor)


def f_apply(partset: PartSet, lam: Partition, w: int, z: int) -> PairImage:
    return _apply(partset, lam, w, z, VARIANT_F)


def g_apply(partset: PartSet, lam: Partition, w: int, z: int) -> PairImage:
    return _apply(partset, lam, w, z, VARIANT_G)


# ---------------------------------------------------------------------------
# Exhaustive verification
# ---------------------------------------------------------------------------


@dataclass
class InjectionReport:
    set: str
    w: int
    z: int
    variant: str
    domain_size: int = 0
    image_size: int = 0
    case_histogram: dict = field(default_factory=dict)
    collisions: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    checked_range: int = 0
    codomain_size: int = 0

    @property
    def passed(self) -> bool:
        return (
            not self.collisions
            and not self.violations
            and self.image_size == self.domain_size
        )

    def to_dict(self) -> dict:
        return {
            "set": self.set,
            "w": self.w,
            "z": self.z,
            "variant": self.variant,
            "domain_size": self.domain_size,
            "image_size": self.image_size,
            "codomain_size": self.codomain_size,
            "case_histogram": {str(k): v for k, v in sorted(self.case_histogram.items(), key=lambda kv: str(kv[0]))},
            "collisions": self.collisions,
            "violations": self.violations,
            "flags": self.flags,
            "checked_range": self.checked_range,
            "pass": self.passed,
        }


def verify_injection(
    partset: PartSet,
    w: int,
    z: int,
    variant: str = VARIANT_F,
    cap: int = DEFAULT_ENUM_CAP,
) -> InjectionReport:
    """Apply the map to every partition of w + z without a_2 and check it is injective."""
    if variant not in (VARIANT_F, VARIANT_G):
        raise ValueError(f"unknown variant {variant!r}")
    base, factor, sd = _gate(partset, w, z, variant)  # raises HypothesisError early
    report = InjectionReport(partset.spec, w, z, variant, checked_range=w + z)
    apply = f_apply if variant == VARIANT_F else g_apply
    restricted = partset.unrestricted().without(sd.a2 * factor)
    seen: dict[tuple, Partition] = {}
    hist: Counter = Counter()
    for lam in iter_partitions(restricted, w + z):
        report.domain_size += 1
        if report.domain_size > cap:
            raise EnumerationOverflow(f"more than {cap} partitions of {w + z}")
        try:
            img = apply(partset, lam, w, z)
        except AssertionError as exc:
            report.violations.append({"partition": str(lam), "error": str(exc)})
            continue
        hist[img.case_id] += 1
        if img.case_id in (6, 7) and sd.a4 is None:
            report.flags.append(f"case {img.case_id} reached with no a_4 materialized: {lam}")
        key = img.key()
        if key in seen:
            report.collisions.append({"image": str(img), "preimages": [str(seen[key]), str(lam)]})
        else:
            seen[key] = lam
    report.image_size = len(seen)
    report.case_histogram = dict(hist)
    t_left = count_table(restricted, w)
    t_right = count_table(partset.unrestricted(), z)
    report.codomain_size = t_left[w] * t_right[z]
    return report


def legal_pairs(partset: PartSet, max_sum: int, variant: str = VARIANT_F) -> list[tuple[int, int]]:
    """All (w, z) with w + z <= max_sum meeting the variant's size preconditions."""
    sd = set_data(partset, max(max_sum, 1))
    z_min = 2 * sd.a2 if variant == VARIANT_F else 3 * sd.a2
    return [
        (w, z)
        for w in range(sd.a3 + 1, max_sum + 1)
        for z in range(z_min, max_sum - w + 1)
    ]
