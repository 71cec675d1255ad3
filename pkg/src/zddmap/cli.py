"""``zddmap`` command line driver.

Exit codes:

    0  success
    1  input file could not be read or output could not be written
    2  bad command line (argparse)
    3  circuit or device parse error
    4  infeasible instance (fewer physical than pseudo qubits, or a gate
       that fits on no device edge)
    5  self-check found a coupling violation
    6  internal invariant violated
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .circuit import ParseError, parse_circuit, parse_device, serialize_circuit, stats
from .circuit import is_device_generator
from .layers import ScoreWeights
from .mapper import DEFAULT_LOOKAHEAD, MappingError, map_circuit
from .verify import check_couplings, replay_check

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INFEASIBLE = 4
EXIT_SELFCHECK = 5
EXIT_INTERNAL = 6

log = logging.getLogger("zddmap")


@dataclass
class RunConfig:
    circuit: Path
    device: str
    weights: ScoreWeights
    lookahead: int | None = DEFAULT_LOOKAHEAD
    out: Path | None = None
    report: Path | None = None
    dot: Path | None = None
    selfcheck: bool = False
    verify_only: bool = False
    backend: str | None = None
    verbosity: int = 0


class InvariantError(RuntimeError):
    pass


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("weights must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="zddmap",
        description="Map a circuit onto a coupling graph with ZDD partitions and SWAP layers.")
    p.add_argument("--circuit", required=True, type=Path, help="circuit file")
    p.add_argument("--device", required=True,
                   help="device file, or ring:<n> / path:<n>")
    p.add_argument("--alpha", type=_fraction, default=Fraction(0), help="depth weight (0)")
    p.add_argument("--beta", type=_fraction, default=Fraction(1), help="map weight (1)")
    p.add_argument("--gamma", type=_fraction, default=Fraction(1), help="swap weight (1)")
    p.add_argument("--lookahead", type=int, default=DEFAULT_LOOKAHEAD,
                   help="depth-count horizon in gates; 0 means unbounded (20)")
    p.add_argument("--out", type=Path, help="mapped circuit path (stdout if omitted)")
    p.add_argument("--report", type=Path, help="JSON report path")
    p.add_argument("--dot", type=Path, help="write the maximal partition's mappings as DOT")
    p.add_argument("--selfcheck", action="store_true",
                   help="replay the output and check every in-partition coupling")
    p.add_argument("--verify-only", action="store_true",
                   help="treat --circuit as already mapped and only check its couplings")
    p.add_argument("--backend", choices=["compiled", "python"],
                   help="ZDD kernel (default: compiled when built)")
    p.add_argument("-v", "--verbose", action="count", default=0)
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    weights = ScoreWeights(args.alpha, args.beta, args.gamma)
    if args.lookahead < 0:
        raise ValueError("--lookahead must be nonnegative")
    paths = [x.resolve() for x in (args.circuit, args.out, args.report, args.dot) if x]
    if len(set(paths)) != len(paths):
        raise ValueError("circuit, output, report and dot paths must differ")
    return RunConfig(args.circuit, args.device, weights, args.lookahead or None,
                     args.out, args.report, args.dot, args.selfcheck, args.verify_only,
                     args.backend, args.verbose)


def _read_device(source: str):
    if is_device_generator(source):
        return parse_device(source)
    return parse_device(Path(source).read_text(encoding="utf-8"))


def build_report(cfg: RunConfig, circuit, device, result, wall: float) -> dict:
    partitions = [p.to_dict(device) for p in result.partitions]
    return {
        "schema_version": SCHEMA_VERSION,
        "fully_mapped": result.fully_mapped,
        "partitions": partitions,
        "maximal_partition": result.maximal,
        "mapping_counts": [p["mapping_count"] for p in partitions],
        "assignment": result.named_assignment(circuit, device),
        "swaps_inserted": result.swaps_inserted,
        "unrouted_gates": result.unrouted,
        "input_stats": stats(circuit).to_dict(),
        "output_stats": stats(result.mapped_circuit).to_dict(),
        "weights": {"alpha": str(cfg.weights.alpha), "beta": str(cfg.weights.beta),
                    "gamma": str(cfg.weights.gamma)},
        "lookahead": cfg.lookahead or 0,
        "wall_time_s": round(wall, 6),
    }


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def verify_only(cfg: RunConfig) -> int:
    mapped = parse_circuit(cfg.circuit.read_text(encoding="utf-8"))
    device = _read_device(cfg.device)
    bad = check_couplings(mapped, device)
    for v in bad:
        print(f"coupling violation: {v}", file=sys.stderr)
    return EXIT_SELFCHECK if bad else EXIT_OK


def run(cfg: RunConfig) -> int:
    if cfg.verify_only:
        return verify_only(cfg)
    circuit = parse_circuit(cfg.circuit.read_text(encoding="utf-8"))
    device = _read_device(cfg.device)
    start = time.perf_counter()
    result = map_circuit(circuit, device, cfg.weights, cfg.lookahead, cfg.backend)
    wall = time.perf_counter() - start

    in_stats, out_stats = stats(circuit), stats(result.mapped_circuit)
    if out_stats.two_qubit_count != in_stats.two_qubit_count + result.swaps_inserted:
        raise InvariantError("two-qubit gate count does not add up")
    if result.fully_mapped and result.unrouted:
        raise InvariantError("fully mapped result has unrouted gates")

    _write(cfg.out, serialize_circuit(result.mapped_circuit))
    if cfg.report is not None:
        report = build_report(cfg, circuit, device, result, wall)
        cfg.report.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    if cfg.dot is not None:
        _write_dot(cfg, circuit, device, result)
    log.info("%d partition(s), %d swap(s), fully mapped: %s",
             len(result.partitions), result.swaps_inserted, result.fully_mapped)
    if result.unrouted:
        log.warning("%d two-qubit gate(s) outside the maximal partition were not routed",
                    len(result.unrouted))

    if cfg.selfcheck:
        bad = replay_check(circuit, result.mapped_circuit, device, result.assignment,
                           skip=result.unrouted)
        for v in bad:
            print(f"selfcheck: {v}", file=sys.stderr)
        if bad:
            return EXIT_SELFCHECK
        log.info("selfcheck passed")
    return EXIT_OK


def _write_dot(cfg: RunConfig, circuit, device, result) -> None:
    if result.maximal is None:
        cfg.dot.write_text("digraph zdd {\n}\n", encoding="utf-8")
        return
    phi = result.partitions[result.maximal].initial_phi
    cfg.dot.write_text(phi.engine.to_dot(phi), encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return run(cfg)
    except OSError as exc:
        print(f"zddmap: {exc}", file=sys.stderr)
        return EXIT_IO
    except ParseError as exc:
        print(f"zddmap: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MappingError as exc:
        print(f"zddmap: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InvariantError, AssertionError) as exc:
        print(f"zddmap: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
