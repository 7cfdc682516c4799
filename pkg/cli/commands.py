"""
Command handlers for the secrecy toolkit CLI

Each handler takes the parsed arguments and the loaded config and returns a
dict with the rendered payload, the digest of its input document and the
resolved parameters. Writing files and manifests is left to the runner.
"""

from argparse import Namespace
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import structlog

from secrecy.channel_model import standardize
from secrecy.power_opt import (
    batw_jamming,
    jamming_advisory,
    jamming_rate,
    jamming_region,
    lattice_gap_bound,
    optimal_jamming,
    optimal_jamming_oracle,
    optimal_power,
    optimal_power_oracle,
)
from secrecy.rate_region import batw_capacities, batw_region, gtw_region_closure, pos_part
from secrecy.secrecy_sim import build_scheme, decode_error, design_scheme, exact_equivocation
from tools.channel_io import (
    canonical_digest,
    parse_channel,
    parse_raw_channel,
    parse_scheme,
    read_document,
    scheme_document,
)
from tools.export import format_number, jam_sweep_csv, json_text, region_csv
from utils.config import get_setting
from utils.errors import DomainError, InputDocumentError
from utils.models import (
    BatwChannel,
    BatwJamReport,
    JamSweepRow,
    OptimizerReport,
    PowerPoint,
    StandardGtwChannel,
)

logger = structlog.get_logger()

CommandResult = Dict[str, Any]


def _pick(flag: Any, *fallbacks: Any) -> Any:
    """First value that is not None: CLI flag, then document, then config."""
    for value in (flag, *fallbacks):
        if value is not None:
            return value
    return None


def _digits(config: Dict[str, Any]) -> int:
    return int(get_setting(config, "output", "significant_digits", 12))


def _result(payload: str, doc: Dict[str, Any], **parameters: Any) -> CommandResult:
    return {"payload": payload, "input_digest": canonical_digest(doc), "parameters": parameters}


def _gaussian(doc: Dict[str, Any], path: str, command: str) -> StandardGtwChannel:
    ch = parse_channel(doc, path)
    if not isinstance(ch, StandardGtwChannel):
        raise InputDocumentError(f"{command} needs a Gaussian channel; use batw-jam for binary channels", path)
    return ch


def _batw(doc: Dict[str, Any], path: str, command: str) -> BatwChannel:
    ch = parse_channel(doc, path)
    if not isinstance(ch, BatwChannel):
        raise InputDocumentError(f"{command} needs a binary (batw) channel", path)
    return ch


def cmd_standardize(args: Namespace, config: Dict[str, Any]) -> CommandResult:
    """Raw Gaussian channel to a {"gaussian": ...} standardized channel document."""
    doc = read_document(args.input)
    standard = standardize(parse_raw_channel(doc, args.input))
    return _result(json_text({"gaussian": standard.model_dump()}), doc)


def cmd_region(args: Namespace, config: Dict[str, Any]) -> CommandResult:
    """
    Hull vertices of the achievable region as CSV.

    Gaussian channels get the convex closure over a grid x grid power
    lattice; binary channels get their single fixed polygon.
    """
    doc = read_document(args.input)
    ch = parse_channel(doc, args.input)

    if isinstance(ch, BatwChannel):
        region = batw_region(ch)
        parameters: Dict[str, Any] = {}
    else:
        grid = int(_pick(args.grid, get_setting(config, "region", "grid", 64)))
        region = gtw_region_closure(ch, grid)
        parameters = {"grid": grid}

    digest = canonical_digest(doc)
    header = {"command": "region", "input_sha256": digest, **parameters}
    logger.info("region_ready", vertices=len(region.vertices), **parameters)
    return _result(region_csv(region, header, _digits(config)), doc, **parameters)


def cmd_optimize(args: Namespace, config: Dict[str, Any]) -> CommandResult:
    """
    Closed-form optimal powers, optionally checked against the lattice oracle.

    The gap is closed-form objective minus oracle objective; both objectives
    change by at most (1 + h_k)/(2 ln 2) per unit of P_k, so the gap stays
    below lattice_gap_bound for either mode.
    """
    doc = read_document(args.input)
    ch = _gaussian(doc, args.input, "optimize")
    oracle_grid = args.oracle_grid
    if oracle_grid == 0:
        # bare --oracle-grid
        oracle_grid = int(get_setting(config, "optimizer", "oracle_grid", 401))

    if args.mode == "sum":
        allocation = optimal_power(ch)
        oracle = optimal_power_oracle(ch, oracle_grid) if oracle_grid else None
        advisory, region = None, None
    else:
        allocation = optimal_jamming(ch)
        oracle = optimal_jamming_oracle(ch, oracle_grid) if oracle_grid else None
        advisory = jamming_advisory(ch)
        region = jamming_region(ch)

    gap: Optional[float] = None
    bound: Optional[float] = None
    if oracle is not None:
        gap = allocation.objective_value - oracle.objective_value
        bound = lattice_gap_bound(ch, oracle_grid)
        if abs(gap) > bound:
            logger.warning("oracle_gap_beyond_lattice_bound", gap=gap, bound=bound, mode=args.mode)

    report = OptimizerReport(
        mode=args.mode,
        allocation=(allocation.p.p_1, allocation.p.p_2),
        case=allocation.case_label,
        objective_bits=allocation.objective_value,
        oracle_gap=gap,
        oracle_gap_bound=bound,
        advisory=advisory,
        jamming_region=region,
    )
    return _result(json_text(report), doc, mode=args.mode, oracle_grid=oracle_grid)


def jam_sweep_rows(ch: StandardGtwChannel, points: int) -> List[JamSweepRow]:
    """Jamming rate at p_1 = pmax_1 over points evenly spaced jamming powers in [0, pmax_2]."""
    if points < 1:
        raise DomainError(f"points must be >= 1, got {points}")
    return [
        JamSweepRow(p_2=float(p_2), rate=pos_part(jamming_rate(ch, PowerPoint(p_1=ch.pmax_1, p_2=float(p_2)))))
        for p_2 in np.linspace(0.0, ch.pmax_2, points)
    ]


def cmd_jam_sweep(args: Namespace, config: Dict[str, Any]) -> CommandResult:
    doc = read_document(args.input)
    ch = _gaussian(doc, args.input, "jam-sweep")
    points = int(_pick(args.points, get_setting(config, "jam_sweep", "points", 21)))

    rows = jam_sweep_rows(ch, points)
    header = {"command": "jam-sweep", "input_sha256": canonical_digest(doc), "points": points}
    return _result(jam_sweep_csv(rows, header, _digits(config)), doc, points=points)


def _table(fields: Dict[str, Any], digits: int) -> str:
    def cell(value: Any) -> str:
        if isinstance(value, (list, tuple)):
            return ", ".join(cell(v) for v in value)
        if isinstance(value, float):
            return format_number(value, digits)
        return str(value)

    width = max(len(k) for k in fields)
    return "".join(f"{k.ljust(width)}  {cell(v)}\n" for k, v in fields.items())


def cmd_verify(args: Namespace, config: Dict[str, Any]) -> CommandResult:
    """
    Exact equivocation report of a scheme document.

    Seed and budget come from the flag, then the document, then the config.
    """
    doc = read_document(args.input)
    body = doc.get("scheme") if isinstance(doc.get("scheme"), dict) else {}
    overrides = {
        "seed": _pick(args.seed, body.get("seed"), get_setting(config, "secrecy", "seed", None)),
        "budget": _pick(args.budget, body.get("budget"), get_setting(config, "secrecy", "budget", None)),
    }
    scheme = parse_scheme(doc, overrides, args.input)

    report = exact_equivocation(scheme, args.eps_w)
    fields = report.model_dump(mode="json")
    if args.eps_self is not None:
        fields["decode_error"] = decode_error(scheme, args.eps_self).model_dump(mode="json")

    if args.format == "table":
        flat = dict(fields)
        errors = flat.pop("decode_error", None)
        if errors:
            flat.update({f"decode_{k}": v for k, v in errors.items()})
        payload = _table(flat, _digits(config))
    else:
        payload = json_text(fields)

    return _result(payload, doc, eps_w=args.eps_w, eps_self=args.eps_self, format=args.format, **overrides)


def cmd_batw_jam(args: Namespace, config: Dict[str, Any]) -> CommandResult:
    """Jamming rate reported next to the plain region it is compared with."""
    doc = read_document(args.input)
    ch = _batw(doc, args.input, "batw-jam")
    caps = batw_capacities(ch)

    report = BatwJamReport(
        **batw_jamming(ch).model_dump(),
        region=batw_region(ch),
        secret_sum_bound=pos_part(caps.c_1 + caps.c_2 - caps.c_w),
    )
    return _result(json_text(report), doc)


def cmd_design(args: Namespace, config: Dict[str, Any]) -> CommandResult:
    """
    Scheme document sized for a binary channel, ready for verify.

    With --books the drawn codebooks are written out too, so the document
    no longer depends on the seed.
    """
    doc = read_document(args.input)
    ch = _batw(doc, args.input, "design")
    n = int(_pick(args.n, get_setting(config, "secrecy", "design_block_length", 6)))
    seed = int(_pick(args.seed, get_setting(config, "secrecy", "seed", 0)))
    budget = int(_pick(args.budget, get_setting(config, "secrecy", "budget", 2 ** 28)))

    scheme_config = design_scheme(ch, n, seed=seed, budget=budget)
    scheme = build_scheme(scheme_config) if args.books else None
    payload = json_text(scheme_document(scheme_config, scheme))
    return _result(payload, doc, n=n, seed=seed, budget=budget, books=args.books)


COMMANDS: Dict[str, Callable[[Namespace, Dict[str, Any]], CommandResult]] = {
    "standardize": cmd_standardize,
    "region": cmd_region,
    "optimize": cmd_optimize,
    "jam-sweep": cmd_jam_sweep,
    "verify": cmd_verify,
    "batw-jam": cmd_batw_jam,
    "design": cmd_design,
}
