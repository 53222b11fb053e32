"""Command-line front end.

Every command builds one JSON-ready payload; text and CSV renderings are made
from that same payload, so all three formats carry identical numbers.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import shlex
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import __version__
from .bo import (
    InconclusiveError,
    bo_check_pair,
    certify_bo,
    conjecture_scan,
    default_jobs,
    default_scheme,
    find_threshold,
    mary_exception_table,
    random_gcd1_sets,
    scan_region,
    scheme_for,
)
from .core import (
    BoundError,
    DEFAULT_ENUM_CAP,
    DEFAULT_WITNESS_CAP,
    DomainError,
    EnumerationOverflow,
    Partition,
    PartitionError,
    SetSpecError,
    count_table,
    enumerate_partitions,
    max_value,
    parse_set,
)
from .families import FamilySpec, mary_scan_bound, max_formula_check
from .injections import VARIANT_F, VARIANT_G, HypothesisError, ScalingError, f_apply, g_apply, verify_injection

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Config
# ---------------------------------------------------------------------------

_NUMERIC = ("bound", "n", "w", "z", "max_part", "min_part", "sum_max", "scan_bound", "L", "cap",
            "sets", "max_element", "seed")
_TEXT = ("family", "m", "sizes", "variant", "partition")
_FLAGS = ("check_formula", "lemma_filter")


@dataclass
class CommandConfig:
    subcommand: str
    set_spec: Optional[str] = None
    options: dict = field(default_factory=dict)
    format: str = "text"
    witness_cap: int = DEFAULT_WITNESS_CAP
    jobs: int = 1

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "CommandConfig":
        sub = ns.command if not getattr(ns, "action", None) else f"{ns.command} {ns.action}"
        set_spec = getattr(ns, "set", None)
        if set_spec is not None:
            try:
                set_spec = parse_set(set_spec).spec
            except SetSpecError as exc:
                raise UsageError(str(exc)) from None
        opts = {}
        for key in _NUMERIC + _TEXT + _FLAGS:
            val = getattr(ns, key, None)
            if val is not None and val is not False:
                opts[key] = val
        return cls(sub, set_spec, opts, ns.format, ns.witness_cap, ns.jobs)

    def argv(self) -> list[str]:
        out = ["--format", self.format, "--witness-cap", str(self.witness_cap), "--jobs", str(self.jobs)]
        out += self.subcommand.split()
        if self.set_spec is not None:
            out += ["--set", self.set_spec]
        for key in sorted(self.options):
            val = self.options[key]
            flag = "--" + key.replace("_", "-")
            if key in _FLAGS:
                out.append(flag)
            else:
                out += [flag, str(val)]
        return out

    def canonical(self) -> str:
        return shlex.join(self.argv())

    def to_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "set": self.set_spec,
            "options": {k: self.options[k] for k in sorted(self.options)},
            "format": self.format,
            "witness_cap": self.witness_cap,
            "jobs": self.jobs,
        }


def _range_arg(text: str) -> range:
    lo, sep, hi = text.partition(":")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a or a:b") from None
    if b < a:
        raise UsageError(f"empty range {text!r}")
    return range(a, b + 1)


def _partition_arg(text: str) -> Partition:
    try:
        parts = [int(v) for v in text.split(",") if v.strip()]
        return Partition.of(*parts)
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from None


def _need(cfg: CommandConfig, *keys: str) -> None:
    missing = [k for k in keys if k not in cfg.options]
    if missing:
        raise UsageError(f"{cfg.subcommand}: missing --" + ", --".join(m.replace("_", "-") for m in missing))


def _set(cfg: CommandConfig):
    if cfg.set_spec is None:
        raise UsageError(f"{cfg.subcommand}: --set is required")
    return parse_set(cfg.set_spec)


# ---------------------------------------------------------------------------
# Commands: each returns (payload, columns, rows)
# ---------------------------------------------------------------------------


def cmd_count(cfg: CommandConfig):
    _need(cfg, "bound")
    ps = _set(cfg)
    table = count_table(ps, cfg.options["bound"])
    rows = [[n, str(c)] for n, c in enumerate(table.counts)]
    payload = {"set": ps.spec, "bound": table.bound, "counts": [str(c) for c in table.counts]}
    return payload, ["n", "count"], rows


def cmd_enumerate(cfg: CommandConfig):
    _need(cfg, "n")
    ps = _set(cfg)
    parts = enumerate_partitions(ps, cfg.options["n"], cfg.options.get("max_part"), cfg.options.get("cap", DEFAULT_ENUM_CAP))
    payload = {"set": ps.spec, "n": cfg.options["n"], "count": len(parts), "partitions": [list(p.parts) for p in parts]}
    return payload, ["partition"], [[str(p)] for p in parts]


def cmd_max(cfg: CommandConfig):
    _need(cfg, "n")
    ps = _set(cfg)
    n = cfg.options["n"]
    res = max_value(ps, n, witness_cap=cfg.witness_cap)
    payload = {
        "set": ps.spec,
        "n": n,
        "value": str(res.value),
        "witnesses": [list(w.parts) for w in res.witnesses],
        "witness_cap_hit": res.witness_cap_hit,
    }
    if cfg.options.get("check_formula"):
        if ps.kind == "explicit" or ps.excluded is not None:
            payload["formula"] = None
        else:
            payload["formula"] = max_formula_check(FamilySpec.of(ps), n, res).to_dict()
    rows = [[str(w), str(res.value)] for w in res.witnesses]
    return payload, ["witness", "value"], rows


def _exception_rows(records):
    return [[e.w, e.z, str(e.lhs), str(e.rhs), "=" if e.equality else ""] for e in records]


def cmd_bo_pair(cfg: CommandConfig):
    _need(cfg, "w", "z")
    ps = _set(cfg)
    w, z = cfg.options["w"], cfg.options["z"]
    o = bo_check_pair(count_table(ps, w + z), w, z)
    return {"set": ps.spec, **o.to_dict()}, ["w", "z", "lhs", "rhs", "relation"], [[o.w, o.z, str(o.lhs), str(o.rhs), o.relation]]


def cmd_bo_scan(cfg: CommandConfig):
    _need(cfg, "sum_max")
    ps = _set(cfg)
    lo = cfg.options.get("min_part", 1)
    hi = cfg.options["sum_max"]
    if cfg.options.get("lemma_filter"):
        if ps.kind != "mary" or ps.excluded is not None:
            raise UsageError("--lemma-filter applies to mary sets only")
        records = mary_exception_table(ps.param, hi, jobs=cfg.jobs).exceptions
        records = [e for e in records if e.w >= lo]
    else:
        table = count_table(ps, hi)
        span = range(lo, hi + 1)
        records = scan_region(table, span, span, True, hi, jobs=cfg.jobs)
    payload = {
        "set": ps.spec,
        "min_part": lo,
        "sum_max": hi,
        "lemma_filter": bool(cfg.options.get("lemma_filter")),
        "exceptions": [e.to_dict() for e in records],
    }
    return payload, ["w", "z", "lhs", "rhs", "="], _exception_rows(records)


def cmd_bo_certify(cfg: CommandConfig):
    ps = _set(cfg)
    scheme = default_scheme(ps)
    variant = cfg.options.get("variant", scheme.variant)
    if "L" in cfg.options:
        scheme = scheme_for(ps, cfg.options["L"], variant)
    elif variant != scheme.variant:
        scheme = scheme_for(ps, None, variant)
    cert = certify_bo(ps, scheme, jobs=cfg.jobs)
    payload = cert.to_dict()
    payload["config"] = cfg.to_dict()
    rows = [[o.w, o.z, str(o.lhs), str(o.rhs), o.relation] for o in cert.window_outcomes]
    return payload, ["w", "z", "lhs", "rhs", "relation"], rows


def cmd_bo_thresholds(cfg: CommandConfig):
    results = []
    if "family" in cfg.options:
        if cfg.options["family"] != "mary":
            raise UsageError("thresholds --family supports mary; use --set with --min-part for other sets")
        _need(cfg, "m")
        for m in _range_arg(cfg.options["m"]):
            if m < 2:
                raise UsageError("m must be >= 2")
            bound = cfg.options.get("scan_bound", mary_scan_bound(m))
            results.append(find_threshold(parse_set(f"mary:{m}"), m, bound, jobs=cfg.jobs))
    else:
        _need(cfg, "min_part", "scan_bound")
        results.append(find_threshold(_set(cfg), cfg.options["min_part"], cfg.options["scan_bound"], jobs=cfg.jobs))
    rows = [
        [r.set, r.part_min, r.threshold, "" if r.witness is None else f"({r.witness.w},{r.witness.z})"]
        for r in results
    ]
    return {"thresholds": [r.to_dict() for r in results]}, ["set", "part_min", "threshold", "witness"], rows


def cmd_inject_verify(cfg: CommandConfig):
    _need(cfg, "w", "z")
    ps = _set(cfg)
    rep = verify_injection(ps, cfg.options["w"], cfg.options["z"], cfg.options.get("variant", VARIANT_F),
                           cfg.options.get("cap", DEFAULT_ENUM_CAP))
    payload = rep.to_dict()
    rows = [[k, v] for k, v in payload["case_histogram"].items()]
    return payload, ["case", "count"], rows


def cmd_inject_apply(cfg: CommandConfig):
    _need(cfg, "w", "z", "partition")
    ps = _set(cfg)
    lam = _partition_arg(cfg.options["partition"])
    apply = g_apply if cfg.options.get("variant") == VARIANT_G else f_apply
    img = apply(ps, lam, cfg.options["w"], cfg.options["z"])
    payload = {
        "set": ps.spec,
        "partition": list(lam.parts),
        "left": list(img.left.parts),
        "right": list(img.right.parts),
        "case": str(img.case_id),
    }
    return payload, ["left", "right", "case"], [[str(img.left), str(img.right), str(img.case_id)]]


def cmd_conjecture_scan(cfg: CommandConfig):
    _need(cfg, "bound")
    sizes = _range_arg(cfg.options.get("sizes", "2:4"))
    sets = random_gcd1_sets(cfg.options.get("sets", 10), cfg.options.get("max_element", 12), sizes,
                            cfg.options.get("seed", 0))
    rows_ = conjecture_scan(sets, cfg.options["bound"], cfg.options.get("min_part", 1), jobs=cfg.jobs)
    payload = {"seed": cfg.options.get("seed", 0), "rows": [r.to_dict() for r in rows_]}
    rows = [[r.set, r.largest_exception_sum if r.largest_exception_sum is not None else "", r.min_part_threshold,
             r.exceptions] for r in rows_]
    return payload, ["set", "largest_exception_sum", "min_part_threshold", "exceptions"], rows


COMMANDS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "max": cmd_max,
    "bo pair": cmd_bo_pair,
    "bo scan": cmd_bo_scan,
    "bo certify": cmd_bo_certify,
    "bo thresholds": cmd_bo_thresholds,
    "inject verify": cmd_inject_verify,
    "inject apply": cmd_inject_apply,
    "conjecture scan": cmd_conjecture_scan,
}


# ---------------------------------------------------------------------------
# Parsing and rendering
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse's exit code 2 but route through main
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--witness-cap", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="worker processes for scans (default from APARTITIONS_JOBS)")

    p = _Parser(prog="apartitions", description="A-partition counts and Bessenrodt-Ono checks", parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_set(sp, required=True):
        sp.add_argument("--set", required=required, help="mary:<m> | power:<d> | fib | factorial | all | "
                                                         "explicit:<a,b,...>, optional !exclude=<part>")

    sp = sub.add_parser("count", parents=[common], help="p_A(0..bound)")
    with_set(sp)
    sp.add_argument("--bound", type=int, required=True)

    sp = sub.add_parser("enumerate", parents=[common], help="list partitions of n")
    with_set(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-part", type=int)
    sp.add_argument("--cap", type=int)

    sp = sub.add_parser("max", parents=[common], help="max of the extended function with witnesses")
    with_set(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--check-formula", action="store_true")

    bo = sub.add_parser("bo", help="Bessenrodt-Ono checks")
    bosub = bo.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = bosub.add_parser("pair", parents=[common])
    with_set(sp)
    sp.add_argument("--w", type=int, required=True)
    sp.add_argument("--z", type=int, required=True)
    sp = bosub.add_parser("scan", parents=[common])
    with_set(sp)
    sp.add_argument("--min-part", type=int)
    sp.add_argument("--sum-max", type=int, required=True)
    sp.add_argument("--lemma-filter", action="store_true", help="drop m-ary pairs covered by the lemmas")
    sp = bosub.add_parser("certify", parents=[common])
    with_set(sp)
    sp.add_argument("--L", type=int)
    sp.add_argument("--variant", choices=(VARIANT_F, VARIANT_G))
    sp = bosub.add_parser("thresholds", parents=[common])
    with_set(sp, required=False)
    sp.add_argument("--family")
    sp.add_argument("--m")
    sp.add_argument("--min-part", type=int)
    sp.add_argument("--scan-bound", type=int)

    inj = sub.add_parser("inject", help="injection maps")
    injsub = inj.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("verify", "apply"):
        sp = injsub.add_parser(name, parents=[common])
        with_set(sp)
        sp.add_argument("--w", type=int, required=True)
        sp.add_argument("--z", type=int, required=True)
        sp.add_argument("--variant", choices=(VARIANT_F, VARIANT_G))
        if name == "apply":
            sp.add_argument("--partition", required=True, help="comma-separated parts")
        else:
            sp.add_argument("--cap", type=int)

    conj = sub.add_parser("conjecture", help="empirical scans for gcd-1 sets")
    conjsub = conj.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = conjsub.add_parser("scan", parents=[common])
    sp.add_argument("--sets", type=int)
    sp.add_argument("--max-element", type=int)
    sp.add_argument("--sizes")
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--min-part", type=int)
    sp.add_argument("--seed", type=int)
    return p


def parse_config(argv: Sequence[str]) -> CommandConfig:
    ns = build_parser().parse_args(list(argv))
    ns.format = getattr(ns, "format", "text")
    ns.witness_cap = getattr(ns, "witness_cap", DEFAULT_WITNESS_CAP)
    ns.jobs = getattr(ns, "jobs", None) or default_jobs()
    if not hasattr(ns, "action"):
        ns.action = None
    return CommandConfig.from_namespace(ns)


def _text(payload: dict, columns: list[str], rows: list[list]) -> str:
    lines = []
    for key, val in payload.items():
        if isinstance(val, dict):
            lines.extend(f"{key}.{k}: {v}" for k, v in val.items() if not isinstance(v, (list, dict)))
        elif not isinstance(val, list):
            lines.append(f"{key}: {val}")
    if rows:
        widths = [max(len(str(c)), *(len(str(r[i])) for r in rows)) for i, c in enumerate(columns)]
        lines.append("  ".join(str(c).rjust(wd) for c, wd in zip(columns, widths)))
        for r in rows:
            lines.append("  ".join(str(v).rjust(wd) for v, wd in zip(r, widths)))
    return "\n".join(lines) + "\n"


def _csv(columns: list[str], rows: list[list], header: bool) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def render(cfg: CommandConfig, payload: dict, columns: list[str], rows: list[list]) -> str:
    if cfg.format == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if cfg.format == "csv":
        # count tables export bare n,count rows
        return _csv(columns, rows, header=cfg.subcommand != "count")
    return _text(payload, columns, rows)


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run a command; returns (exit code, output text)."""
    try:
        cfg = parse_config(argv)
        payload, columns, rows = COMMANDS[cfg.subcommand](cfg)
    except (UsageError, SetSpecError, HypothesisError, ScalingError, DomainError, BoundError) as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    except (EnumerationOverflow, InconclusiveError) as exc:
        return EXIT_RESOURCE, f"error: {exc}\n"
    except PartitionError as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    return EXIT_OK, render(cfg, payload, columns, rows)


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    (sys.stdout if code == EXIT_OK else sys.stderr).write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
