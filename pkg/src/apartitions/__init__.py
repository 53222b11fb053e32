"""Exact A-partition counts, Bessenrodt-Ono inequality checks and injection maps."""

__version__ = "0.1.0"

from .core import (
    CountTable,
    MaxResult,
    Partition,
    PartSet,
    count_table,
    enumerate_partitions,
    extended_value,
    max_value,
    parse_set,
)

__all__ = [
    "CountTable",
    "MaxResult",
    "Partition",
    "PartSet",
    "count_table",
    "enumerate_partitions",
    "extended_value",
    "max_value",
    "parse_set",
]
