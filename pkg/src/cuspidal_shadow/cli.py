"""
Command-line entry point.

Every subcommand writes one deterministic report (JSON or TSV) to stdout or
to --output; logging goes to stderr. Exit codes: 0 success, 1 verification
failure, 2 usage error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from cuspidal_shadow.affine import CuspParam, cuspidal_line, standard_descriptor, unmixed_check
from cuspidal_shadow.basis_cache import BasisCache
from cuspidal_shadow.config import COMMANDS, FORMATS, LOG_LEVELS, SWEEPS, RunConfig
from cuspidal_shadow.exceptions import CuspidalShadowError, InvariantViolation
from cuspidal_shadow.gbasis import GlobalBasis, exponent_to_str
from cuspidal_shadow.invariants import PairCalculator
from cuspidal_shadow.liecore import (
    ReducedWord,
    RootVec,
    beta_sequence,
    enumerate_reduced_words,
    height,
    root_system,
    weights_up_to,
)
from cuspidal_shadow.qdata import (
    DynkinQuiver,
    QData,
    adapted_word,
    ar_quiver,
    dynkin_quivers,
    height_functions,
    validate_qdata,
)
from cuspidal_shadow.shuffle import word_to_str
from cuspidal_shadow.verify import run_verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3

Report = Tuple[Dict[str, Any], str, int]  # (json payload, tsv text, exit code)


def _first_word(config: RunConfig) -> ReducedWord:
    return config.word or enumerate_reduced_words(config.cartan_datum, 1).words[0]


def _weights(config: RunConfig) -> List[RootVec]:
    return [config.weight] if config.weight else weights_up_to(config.cartan_datum, config.height_bound)


def _engine(config: RunConfig) -> GlobalBasis:
    C = config.cartan_datum
    cache = BasisCache(Path(config.cache)) if config.cache else None
    return GlobalBasis.for_word(C, beta_sequence(C, _first_word(config)), config.height_bound, cache)


def _qdata(config: RunConfig) -> QData:
    C = config.cartan_datum
    quiver = DynkinQuiver.parse(C, config.quiver) if config.quiver else dynkin_quivers(C)[0]
    return height_functions(quiver, 1, config.phi_base)[0]


def cmd_roots(config: RunConfig) -> Report:
    roots = list(root_system(config.cartan_datum))
    payload = {"cartan": config.cartan, "count": len(roots), "roots": [list(r) for r in roots]}
    tsv = ["root\theight"] + [f"{','.join(map(str, r))}\t{height(r)}" for r in roots]
    return payload, "\n".join(tsv) + "\n", EXIT_OK


def cmd_words(config: RunConfig) -> Report:
    enumeration = enumerate_reduced_words(config.cartan_datum, config.word_cap)
    words = [word_to_str(w) for w in enumeration]
    payload = {
        "cartan": config.cartan,
        "count": len(words),
        "truncated": enumeration.truncated,
        "words": words,
    }
    return payload, "\n".join(["word"] + words) + "\n", EXIT_OK


def cmd_pbw(config: RunConfig) -> Report:
    engine = _engine(config)
    pbw = engine.pbw
    spaces = {}
    tsv = []
    for mu in _weights(config):
        exponents, _ = pbw.weight_space(mu)
        elements = [pbw.basis_element(a) for a in exponents]
        spaces[exponent_to_str(mu)] = [
            {
                "exponent": exponent_to_str(e.exponent),
                "leading_word": word_to_str(e.leading_word),
                "element": e.value.to_json(),
            }
            for e in elements
        ]
        tsv.extend(e.tsv_row() for e in elements)
    payload = {
        "cartan": config.cartan,
        "word": word_to_str(pbw.seq.word),
        "betas": [list(b) for b in pbw.seq.betas],
        "weights": spaces,
    }
    return payload, "\n".join(["exponent\tleading_word\telement"] + tsv) + "\n", EXIT_OK


def cmd_gbasis(config: RunConfig) -> Report:
    engine = _engine(config)
    reports = [engine.weight_report(mu) for mu in _weights(config)]
    tsv = ["weight\texponent\telement"]
    for report in reports:
        weight = exponent_to_str(report["weight"])
        for exponent in report["exponents"]:
            element = json.dumps(report["elements"][exponent], sort_keys=True, separators=(",", ":"))
            tsv.append(f"{weight}\t{exponent}\t{element}")
    payload = {"cartan": config.cartan, "word": word_to_str(engine.seq.word), "weights": reports}
    return payload, "\n".join(tsv) + "\n", EXIT_OK


def cmd_invariants(config: RunConfig) -> Report:
    if not (config.left and config.right):
        raise CuspidalShadowError("invariants needs --left and --right exponents")
    engine = _engine(config)
    x, y = engine.element(config.left), engine.element(config.right)
    calculator = PairCalculator(engine)
    invariants = calculator.pair_invariants(x, y)
    commuting, c = calculator.commutes(x, y)
    payload = {
        "cartan": config.cartan,
        "word": word_to_str(engine.seq.word),
        "left": exponent_to_str(x.exponent),
        "right": exponent_to_str(y.exponent),
        "commutes": commuting,
        "commutation_exponent": c,
        **invariants.to_dict(),
    }
    keys = sorted(payload)
    tsv = "\t".join(keys) + "\n" + "\t".join(str(payload[k]) for k in keys) + "\n"
    return payload, tsv, EXIT_OK


def cmd_qdata(config: RunConfig) -> Report:
    q = _qdata(config)
    violations = validate_qdata(q)
    if violations:
        payload = {"cartan": config.cartan, "quiver": str(q.quiver), "phi": list(q.phi), "violations": violations}
        return payload, "\n".join(["violation"] + violations) + "\n", EXIT_VERIFY_FAILED
    ar = ar_quiver(q)
    payload = {**ar.to_json(), "violations": [], "adapted_word": word_to_str(adapted_word(q))}
    return payload, ar.tsv_grid(), EXIT_OK


def cmd_cuspline(config: RunConfig) -> Report:
    q = _qdata(config)
    word = config.word or adapted_word(q)
    ell = len(word)
    low, high = config.k_range or (1, ell)
    line = cuspidal_line(q, word, range(low, high + 1))
    payload = line.to_json()
    if line.adapted:
        payload["unmixed"] = unmixed_check(line)
    if config.param is not None:
        payload["descriptor"] = standard_descriptor(line, CuspParam.parse(config.param)).to_json()
    tsv = ["k\tlabel"]
    for k in line.k_range:
        tsv.append(f"{k}\t{line.entries[k]}")
    return payload, "\n".join(tsv) + "\n", EXIT_OK


def cmd_verify(config: RunConfig) -> Report:
    summary = run_verify(config)
    payload = {"cartan": config.cartan, **summary.to_dict(timings=config.timings)}
    tsv = ["sweep\tpassed\tchecked"] + [f"{r.name}\t{r.passed}\t{r.checked}" for r in summary.results]
    return payload, "\n".join(tsv) + "\n", EXIT_OK if summary.passed else EXIT_VERIFY_FAILED


COMMAND_HANDLERS: Dict[str, Callable[[RunConfig], Report]] = {
    "roots": cmd_roots,
    "words": cmd_words,
    "pbw": cmd_pbw,
    "gbasis": cmd_gbasis,
    "invariants": cmd_invariants,
    "qdata": cmd_qdata,
    "cuspline": cmd_cuspline,
    "verify": cmd_verify,
}


def _emit(config: RunConfig, payload: Dict[str, Any], tsv: str) -> None:
    text = tsv if config.format == "tsv" else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if config.output and config.output != "-":
        Path(config.output).write_text(text)
    else:
        sys.stdout.write(text)


def run(config: RunConfig) -> int:
    """Dispatch one configured command and emit its report.

    Returns:
        The process exit code
    """
    try:
        payload, tsv, code = COMMAND_HANDLERS[config.command](config)
    except InvariantViolation as e:
        logger.error(f"Internal invariant violated: {e}")
        print(f"[invariant] {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except CuspidalShadowError as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(config, payload, tsv)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuspidal-shadow",
        description="Exact shadows of cuspidal modules: root systems, shuffle bases, Q-data and duality checks.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--cartan", help="Cartan type, e.g. A2, A3, D4")
    parser.add_argument("--config", type=Path, help="key=value file; flags override its values")
    parser.add_argument("--word", help="reduced word of w0, e.g. 1,2,1 (default: first in enumeration order)")
    parser.add_argument("--height-bound", dest="height_bound", help="largest weight height (default: 6)")
    parser.add_argument("--word-cap", dest="word_cap", help="maximum number of enumerated words (default: 10000)")
    parser.add_argument("--output", help="output file (default: stdout)")
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--seed", help="seed for randomized sweeps (default: 1729)")
    parser.add_argument("--cache", help="JSON file used as a shared global-basis cache")
    parser.add_argument("--workers", help="process pool size for verify (default: 1)")
    parser.add_argument("--weight", help="single weight, e.g. 1,1 (default: all up to the height bound)")
    parser.add_argument("--left", help="left exponent for invariants, e.g. 1,0,0")
    parser.add_argument("--right", help="right exponent for invariants, e.g. 0,0,1")
    parser.add_argument("--quiver", help="arrows of the Dynkin quiver, e.g. 2>1")
    parser.add_argument("--phi-base", dest="phi_base", help="even value of the height function at vertex 1")
    parser.add_argument(
        "--k-range", dest="k_range", help="inclusive k-range of a cuspidal line, e.g. -3:6 (negative starts are fine)"
    )
    parser.add_argument("--param", help="cuspidal parameter as k:a pairs, e.g. -1:1,3:1")
    parser.add_argument(
        "--sweep",
        dest="sweeps",
        action="append",
        choices=SWEEPS,
        help="verify sweep to run; repeatable (default: all)",
    )
    parser.add_argument(
        "--timings", action="store_const", const=True, help="include timing percentiles in verify output"
    )
    parser.add_argument("--log-level", dest="log_level", choices=LOG_LEVELS)
    return parser


# flags whose values may start with "-"
SIGNED_VALUE_FLAGS = ("--k-range", "--param", "--phi-base")


def join_signed_values(argv: Sequence[str]) -> List[str]:
    """Rewrite `--k-range -1:4` as `--k-range=-1:4` so argparse keeps the value."""
    out: List[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token in SIGNED_VALUE_FLAGS:
            value = next(tokens, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = vars(build_parser().parse_args(join_signed_values(argv)))
    config_path = args.pop("config")
    if args.get("sweeps"):
        args["sweeps"] = tuple(args["sweeps"])
    try:
        config = RunConfig.load(config_path, args)
    except CuspidalShadowError as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=getattr(logging, config.log_level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
