"""Command-line front end.

    partineq compute euler 26
    partineq compute plane 0..5 --format csv
    partineq certify chen --min 37 --max 1000
    partineq criterion bo-euler-example21 --horizon 500 --format json
    partineq scan bo euler --min 2 --sum-max 100
    partineq scan lc euler --max 500
    partineq audit cassini --max 10000
    partineq report run.json --format text

Exit codes: 0 all verdicts Verified, 1 some Refuted, 2 usage error,
3 domain error, 4 some Inconclusive and none Refuted.
"""
from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from . import analysis, criteria, envelopes, presets
from .errors import DomainError, InvalidSpec, PrecisionExhausted
from .intervals import DEFAULT_CAP_BITS, START_BITS
from .report import (
    EXIT_DOMAIN,
    EXIT_INCONCLUSIVE,
    EXIT_USAGE,
    build_report,
    exit_code,
    load_report,
    render,
    values_entry,
)
from .seq_core import SequenceSpec, values

DEFAULT_HORIZONS = {"bo-euler-example21": 500, "bo-planepartition": 500, "bo-mary": 2000, "lc-chen": 500}
AUDITS = ("cassini", "golden", "bo-gap-q", "thm43", "prop42", "ratio-descent", "limsup", "bo-threshold")


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        n = int(text)
    except ValueError:
        raise UsageError(f"expected N or A..B, got {text!r}") from None
    return n, n


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--horizon", type=_positive, help="largest index examined")
    p.add_argument("--precision-cap", type=_positive, default=DEFAULT_CAP_BITS,
                   help=f"maximum interval precision in bits (default {DEFAULT_CAP_BITS})")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--threads", type=_positive, default=1, help="worker processes for scans (default 1)")
    p.add_argument("--no-timing", action="store_true", help="omit timing fields")
    p.add_argument("--config", metavar="PATH", help="INI file with custom envelopes and criteria")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partineq", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="exact sequence values")
    p.add_argument("selector", help="euler | restricted:A | plane | mary:m | fib-even | shift:j:inner")
    p.add_argument("index", help="N or A..B")
    _common(p)

    p = sub.add_parser("certify", help="check an envelope against exact values")
    p.add_argument("envelope", help="lehmer | chen | wright | mahler | name from --config")
    p.add_argument("--sequence", help="override the sequence the envelope is checked against")
    p.add_argument("--min", type=_positive)
    p.add_argument("--max", type=_positive, default=1000)
    p.add_argument("--m", type=int, default=2, help="base for the mahler envelope")
    _common(p)

    p = sub.add_parser("criterion", help="run a criterion preset or a criterion from --config")
    p.add_argument("preset")
    p.add_argument("--m", type=int, default=2, help="base for bo-mary")
    p.add_argument("--constants", choices=("calibrated", "fixed"), default="calibrated",
                   help="bo-mary envelope constants")
    _common(p)

    p = sub.add_parser("scan", help="exact violation scans")
    p.add_argument("kind", choices=("bo", "lc"))
    p.add_argument("selector")
    p.add_argument("--min", type=_positive, help="a_min (bo) or n_min (lc)")
    p.add_argument("--max", type=_positive, help="n_max (lc)")
    p.add_argument("--sum-max", type=_positive, help="largest a+b (bo)")
    _common(p)

    p = sub.add_parser("audit", help="identity audits and implication checks")
    p.add_argument("kind", choices=AUDITS)
    p.add_argument("selector", nargs="?", default="euler", help="sequence for thm43/prop42/ratio-descent/limsup/bo-threshold")
    p.add_argument("--max", type=_positive)
    p.add_argument("--sum-max", type=_positive)
    p.add_argument("--n0", type=int, default=26)
    _common(p)

    p = sub.add_parser("report", help="re-render a saved JSON report")
    p.add_argument("path")
    _common(p)
    return parser


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _load_config(args):
    return presets.load_config(args.config) if args.config else None


def cmd_compute(args) -> list:
    spec = SequenceSpec.parse(args.selector)
    lo, hi = _parse_range(args.index)
    if lo < 0 or hi < 0:
        raise DomainError("indices must be non-negative")
    if hi < lo:
        raise UsageError(f"empty range {lo}..{hi}")
    vals = values(spec, hi)
    return [values_entry(spec.selector, [(n, vals[n]) for n in range(lo, hi + 1)])]


def _envelope_and_sequence(args):
    cfg = _load_config(args)
    name = args.envelope
    if cfg is not None and name in cfg.envelopes and name not in ("lehmer", "chen"):
        env = cfg.envelopes[name]
        default_seq = {"wright": "plane", "mahler": f"mary:{cfg.mahler.m}" if cfg.mahler else None}.get(name)
    elif name == "lehmer":
        env, default_seq = envelopes.LEHMER, "euler"
    elif name == "chen":
        env, default_seq = envelopes.CHEN, "euler"
    elif name == "wright":
        env, default_seq = envelopes.wright_envelope_def(), "plane"
    elif name == "mahler":
        env, default_seq = envelopes.mahler_envelope_def(envelopes.MahlerParams(args.m)), f"mary:{args.m}"
    else:
        raise UsageError(f"unknown envelope {name!r}")
    sel = args.sequence or default_seq
    if sel is None:
        raise UsageError(f"envelope {name!r} needs --sequence")
    return env, SequenceSpec.parse(sel)


def cmd_certify(args) -> list:
    env, seq = _envelope_and_sequence(args)
    lo = args.min if args.min is not None else max(1, env.N0)
    hi = args.horizon or args.max
    return [envelopes.certify_envelope(env, seq, lo, hi, START_BITS, args.precision_cap)]


def cmd_criterion(args) -> list:
    cfg = _load_config(args)
    if cfg is not None and args.preset in cfg.criteria:
        inst = cfg.criteria[args.preset]
        horizon = args.horizon or inst.horizon or 500
    elif args.preset in presets.PRESET_IDS:
        kw = {}
        horizon = args.horizon or DEFAULT_HORIZONS[args.preset]
        if args.preset == "bo-mary":
            kw = {"m": args.m, "horizon": horizon, "constants": args.constants}
        inst = presets.preset(args.preset, **kw)
    else:
        raise UsageError(f"unknown preset {args.preset!r}; known: {', '.join(presets.PRESET_IDS)}")
    run = criteria.run_bo_criterion if inst.kind == "bo" else criteria.run_lc_criterion
    return [run(inst.inputs, inst.sequence, horizon, START_BITS, args.precision_cap)]


def cmd_scan(args) -> list:
    spec = SequenceSpec.parse(args.selector)
    if args.kind == "bo":
        a_min = args.min or max(1, spec.domain_start)
        sum_max = args.sum_max or args.horizon or 100
        return [analysis.scan_bo(spec, a_min, sum_max, args.threads)]
    n_min = args.min or spec.domain_start + 1
    n_max = args.max or args.horizon or 500
    return [analysis.scan_logconcavity(spec, n_min, n_max, args.threads)]


def cmd_audit(args) -> list:
    cap = args.precision_cap
    k = args.kind
    if k == "cassini":
        return [analysis.cassini_audit(args.max or args.horizon or 10000)]
    if k == "golden":
        return [analysis.golden_bounds_audit(args.max or args.horizon or 500, START_BITS, cap)]
    if k == "bo-gap-q":
        return [analysis.bo_gap_audit_q(args.sum_max or args.horizon or 40, START_BITS, cap)]
    spec = SequenceSpec.parse(args.selector)
    n_max = args.max or args.horizon or 400
    if k == "thm43":
        return [criteria.check_thm43(spec, n_max)]
    if k == "prop42":
        return [criteria.check_prop42(spec, args.n0, n_max)]
    if k == "ratio-descent":
        return [criteria.check_ratio_descent(spec, args.n0, n_max)]
    if k == "limsup":
        return [criteria.limsup_probe(spec, args.n0, n_max)]
    t = analysis.find_min_bo_threshold(spec, n_max, args.threads)
    return [{"type": "threshold", "name": f"bo-threshold:{spec.selector}", "horizon": n_max, "threshold": t}]


COMMANDS = {
    "compute": cmd_compute,
    "certify": cmd_certify,
    "criterion": cmd_criterion,
    "scan": cmd_scan,
    "audit": cmd_audit,
}

_ECHO_SKIP = {"out", "format", "no_timing", "command"}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    if args.precision_cap < START_BITS:
        parser.error(f"--precision-cap must be at least {START_BITS}")
    try:
        if args.command == "report":
            with open(args.path, encoding="utf-8") as fh:
                report = load_report(fh.read())
        else:
            t0 = time.perf_counter()
            results = COMMANDS[args.command](args)
            elapsed = time.perf_counter() - t0
            config = {k: v for k, v in sorted(vars(args).items()) if k not in _ECHO_SKIP}
            timing = None if args.no_timing else {"total_seconds": round(elapsed, 6)}
            report = build_report(args.command, config, results, timing)
        _emit(render(report, args.format), args.out)
    except (UsageError, InvalidSpec, OSError) as exc:
        print(f"partineq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        if isinstance(exc, DomainError):
            print(f"partineq: domain error: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
        print(f"partineq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        print(f"partineq: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return exit_code(report["results"])


if __name__ == "__main__":
    sys.exit(main())
