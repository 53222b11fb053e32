"""Part sets, exact A-partition counts, enumeration and the extended-value maximum.

Everything here works on exact Python integers; an infinite family of parts is
only ever materialized up to an explicit bound.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Sequence

FAMILY_KINDS = ("mary", "power", "fib", "factorial", "all", "explicit")

DEFAULT_ENUM_CAP = 10**6
DEFAULT_WITNESS_CAP = 64


class PartitionError(Exception):
    """Base class for errors raised by this package."""


class SetSpecError(PartitionError, ValueError):
    pass


class DomainError(PartitionError, ValueError):
    pass


class BoundError(PartitionError, ValueError):
    """A query reaches past the bound of a count table."""


class EnumerationOverflow(PartitionError):
    pass


# ---------------------------------------------------------------------------
# Part sets
# ---------------------------------------------------------------------------


def _family_parts(kind: str, param: Optional[int], bound: int) -> list[int]:
    if bound < 1:
        return []
    if kind == "all":
        return list(range(1, bound + 1))
    if kind == "mary":
        out, a = [], 1
        while a <= bound:
            out.append(a)
            a *= param
        return out
    if kind == "power":
        out, k = [], 1
        while k**param <= bound:
            out.append(k**param)
            k += 1
        return out
    if kind == "fib":
        # F_2, F_3, ... = 1, 2, 3, 5, ...
        out, a, b = [], 1, 2
        while a <= bound:
            out.append(a)
            a, b = b, a + b
        return out
    if kind == "factorial":
        out, f, k = [], 1, 1
        while f <= bound:
            out.append(f)
            k += 1
            f *= k
        return out
    raise SetSpecError(f"unknown family {kind!r}")


@dataclass(frozen=True)
class PartSet:
    """A strictly increasing set of allowed parts, possibly infinite.

    ``kind`` is a family id from :data:`FAMILY_KINDS`; ``param`` holds m for
    ``mary``, d for ``power`` and the element tuple for ``explicit``.
    ``excluded`` removes one member of the underlying sequence.
    """

    kind: str
    param: object = None
    excluded: Optional[int] = None
    label: str = ""

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise SetSpecError(f"unknown family {self.kind!r}")
        if self.kind == "mary" and (not isinstance(self.param, int) or self.param < 2):
            raise SetSpecError("mary requires an integer m >= 2")
        if self.kind == "power" and (not isinstance(self.param, int) or self.param < 2):
            raise SetSpecError("power requires an integer d >= 2")
        if self.kind == "explicit":
            elems = tuple(int(a) for a in self.param)
            if not elems:
                raise SetSpecError("explicit set must be non-empty")
            if elems[0] < 1 or any(b <= a for a, b in zip(elems, elems[1:])):
                raise SetSpecError(f"explicit set must be strictly increasing positive integers: {elems}")
            object.__setattr__(self, "param", elems)
        elif self.kind in ("fib", "factorial", "all"):
            object.__setattr__(self, "param", None)
        if self.excluded is not None and not self._contains_unrestricted(self.excluded):
            raise SetSpecError(f"excluded part {self.excluded} is not a member of {self.base_spec}")
        if not self.label:
            object.__setattr__(self, "label", self.spec)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def mary(cls, m: int) -> "PartSet":
        return cls("mary", m)

    @classmethod
    def power(cls, d: int) -> "PartSet":
        return cls("power", d)

    @classmethod
    def fibonacci(cls) -> "PartSet":
        return cls("fib")

    @classmethod
    def factorial(cls) -> "PartSet":
        return cls("factorial")

    @classmethod
    def all_integers(cls) -> "PartSet":
        return cls("all")

    @classmethod
    def explicit(cls, elements: Sequence[int]) -> "PartSet":
        return cls("explicit", tuple(elements))

    def without(self, part: int) -> "PartSet":
        """Same underlying sequence with ``part`` removed."""
        return PartSet(self.kind, self.param, excluded=part)

    def unrestricted(self) -> "PartSet":
        return PartSet(self.kind, self.param)

    # -- naming ---------------------------------------------------------------

    @property
    def base_spec(self) -> str:
        if self.kind in ("mary", "power"):
            return f"{self.kind}:{self.param}"
        if self.kind == "explicit":
            return "explicit:" + ",".join(map(str, self.param))
        return self.kind

    @property
    def spec(self) -> str:
        """Canonical mini-grammar string; ``parse_set(s.spec) == s``."""
        if self.excluded is None:
            return self.base_spec
        return f"{self.base_spec}!exclude={self.excluded}"

    def __str__(self) -> str:
        return self.spec

    # -- membership -----------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind == "explicit"

    def _raw_parts(self, bound: int) -> list[int]:
        if self.kind == "explicit":
            return [a for a in self.param if a <= bound]
        return _family_parts(self.kind, self.param, bound)

    def _contains_unrestricted(self, a: int) -> bool:
        return a >= 1 and a in self._raw_parts(a)

    def __contains__(self, a: object) -> bool:
        if not isinstance(a, int) or a == self.excluded:
            return False
        return self._contains_unrestricted(a)

    def parts_up_to(self, bound: int) -> list[int]:
        """All allowed parts <= bound, increasing, with the excluded part removed."""
        if bound < 0:
            raise ValueError("bound must be non-negative")
        return [a for a in self._raw_parts(bound) if a != self.excluded]

    def element(self, k: int) -> int:
        """The k-th smallest element (1-based) of the unrestricted sequence."""
        if k < 1:
            raise ValueError("element index is 1-based")
        if self.kind == "explicit":
            if k > len(self.param):
                raise IndexError(f"{self.base_spec} has only {len(self.param)} elements")
            return self.param[k - 1]
        if self.kind == "all":
            return k
        if self.kind == "mary":
            return self.param ** (k - 1)
        if self.kind == "power":
            return k**self.param
        bound = 2
        while True:
            parts = _family_parts(self.kind, self.param, bound)
            if len(parts) >= k:
                return parts[k - 1]
            bound *= 2

    def elements_up_to(self, bound: int) -> list[int]:
        """Unrestricted sequence materialized up to ``bound`` (ignores ``excluded``)."""
        return self._raw_parts(bound)


def parse_set(text: str) -> PartSet:
    """Parse the set mini-grammar, e.g. ``mary:2``, ``explicit:1,2,5!exclude=2``."""
    text = text.strip()
    excluded = None
    if "!" in text:
        text, _, suffix = text.partition("!")
        key, eq, value = suffix.partition("=")
        if key != "exclude" or not eq:
            raise SetSpecError(f"bad set suffix {suffix!r}; expected !exclude=<part>")
        try:
            excluded = int(value)
        except ValueError:
            raise SetSpecError(f"bad excluded part {value!r}") from None
    kind, _, arg = text.partition(":")
    try:
        if kind in ("mary", "power"):
            ps = PartSet(kind, int(arg))
        elif kind == "explicit":
            ps = PartSet("explicit", tuple(int(v) for v in arg.split(",")))
        elif kind in ("fib", "factorial", "all") and not arg:
            ps = PartSet(kind)
        else:
            raise SetSpecError(f"cannot parse set spec {text!r}")
    except ValueError as exc:
        if isinstance(exc, SetSpecError):
            raise
        raise SetSpecError(f"cannot parse set spec {text!r}: {exc}") from None
    if excluded is not None:
        ps = ps.without(excluded)
    return ps


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(b > a for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        """Build from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def from_multiplicities(cls, runs: Sequence[tuple[int, int]]) -> "Partition":
        """Build from ``(part, multiplicity)`` pairs; zero multiplicities are skipped.

        >>> Partition.from_multiplicities([(5, 3), (2, 2), (1, 1)])
        Partition(parts=(5, 5, 5, 2, 2, 1))
        """
        parts: list[int] = []
        for part, mult in runs:
            if mult < 0:
                raise ValueError(f"negative multiplicity for part {part}")
            parts.extend([part] * mult)
        return cls.of(*parts)

    def multiplicities(self) -> list[tuple[int, int]]:
        runs: list[tuple[int, int]] = []
        for p in self.parts:
            if runs and runs[-1][0] == p:
                runs[-1] = (p, runs[-1][1] + 1)
            else:
                runs.append((p, 1))
        return runs

    def count(self, part: int) -> int:
        return self.parts.count(part)

    def __str__(self) -> str:
        if not self.parts:
            return "()"
        body = ",".join(str(p) if k == 1 else f"{p}^{k}" for p, k in self.multiplicities())
        return f"({body})"


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CountTable:
    """p_A(0..bound) for one part set (the set's exclusion is the restriction)."""

    partset: PartSet
    bound: int
    counts: tuple[int, ...] = field(repr=False)

    @property
    def restriction(self) -> Optional[int]:
        return self.partset.excluded

    def __getitem__(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.bound:
            raise BoundError(f"n={n} beyond table bound {self.bound} for {self.partset}")
        return self.counts[n]

    def __len__(self) -> int:
        return len(self.counts)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for n, c in enumerate(self.counts):
            writer.writerow([n, str(c)])
        return buf.getvalue()


def count_table(partset: PartSet, bound: int) -> CountTable:
    """Coin-change DP over the parts of ``partset`` up to ``bound``."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    counts = [0] * (bound + 1)
    counts[0] = 1
    for a in partset.parts_up_to(bound):
        for n in range(a, bound + 1):
            counts[n] += counts[n - a]
    return CountTable(partset, bound, tuple(counts))


@lru_cache(maxsize=64)
def cached_table(partset: PartSet, bound: int) -> CountTable:
    return count_table(partset, bound)


def iter_partitions(partset: PartSet, n: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Yield partitions of n into allowed parts in decreasing lexicographic order."""
    if n < 0:
        return
    top = n if max_part is None else min(n, max_part)
    parts = partset.parts_up_to(top)[::-1]
    prefix: list[int] = []

    def rec(rest: int, start: int) -> Iterator[Partition]:
        if rest == 0:
            yield Partition(tuple(prefix))
            return
        for idx in range(start, len(parts)):
            a = parts[idx]
            if a <= rest:
                prefix.append(a)
                yield from rec(rest - a, idx)
                prefix.pop()

    yield from rec(n, 0)


def enumerate_partitions(
    partset: PartSet,
    n: int,
    max_part: Optional[int] = None,
    cap: int = DEFAULT_ENUM_CAP,
) -> list[Partition]:
    if n < 0:
        raise ValueError("n must be non-negative")
    out: list[Partition] = []
    for lam in iter_partitions(partset, n, max_part):
        if len(out) >= cap:
            raise EnumerationOverflow(f"more than {cap} partitions of {n} into {partset}")
        out.append(lam)
    return out


def extended_value(partset: PartSet, lam: Partition, table: CountTable) -> int:
    """Product of p_A over the parts of lam."""
    value = 1
    for part in lam.parts:
        if part not in partset:
            raise DomainError(f"part {part} is not in {partset}")
        if part > table.bound:
            raise DomainError(f"part {part} beyond table bound {table.bound}")
        value *= table.counts[part]
    return value


# ---------------------------------------------------------------------------
# Maximum of the extended function
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaxResult:
    n: int
    value: int
    witnesses: tuple[Partition, ...]
    witness_cap_hit: bool = False


def max_table(table: CountTable, n: Optional[int] = None) -> list[int]:
    """M[k] = max over partitions of k of the extended value, for k <= n."""
    n = table.bound if n is None else n
    if n > table.bound:
        raise BoundError(f"n={n} beyond table bound {table.bound}")
    parts = table.partset.parts_up_to(n)
    best = [0] * (n + 1)
    best[0] = 1
    for k in range(1, n + 1):
        m = 0
        for a in parts:
            if a > k:
                break
            v = table.counts[a] * best[k - a]
            if v > m:
                m = v
        best[k] = m
    return best


def max_value(
    partset: PartSet,
    n: int,
    table: Optional[CountTable] = None,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> MaxResult:
    if n < 0:
        raise ValueError("n must be non-negative")
    if table is None:
        table = count_table(partset, n)
    best = max_table(table, n)
    if best[n] == 0:
        return MaxResult(n, 0, ())
    parts = partset.parts_up_to(n)
    counts = table.counts

    # feasible[(k, cap)]: some optimal partition of k has all parts <= cap
    @lru_cache(maxsize=None)
    def feasible(k: int, cap: int) -> bool:
        if k == 0:
            return True
        return any(
            counts[a] * best[k - a] == best[k] and feasible(k - a, a)
            for a in parts
            if a <= min(k, cap)
        )

    witnesses: list[Partition] = []
    hit = False
    prefix: list[int] = []

    def walk(k: int, cap: int) -> bool:
        nonlocal hit
        if k == 0:
            if len(witnesses) >= witness_cap:
                hit = True
                return False
            witnesses.append(Partition(tuple(prefix)))
            return True
        for a in reversed(parts):
            if a > min(k, cap) or counts[a] * best[k - a] != best[k] or not feasible(k - a, a):
                continue
            prefix.append(a)
            ok = walk(k - a, a)
            prefix.pop()
            if not ok:
                return False
        return True

    walk(n, n)
    feasible.cache_clear()
    return MaxResult(n, best[n], tuple(witnesses), hit)
