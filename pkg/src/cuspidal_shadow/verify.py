"""
Verification sweeps

Each sweep checks one family of exact statements on a single Cartan type and
returns a SweepResult. Failed checks are recorded as data; an
InvariantViolation raised inside a sweep is never caught here, so it aborts
the whole run.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from cuspidal_shadow.affine import (
    CuspParam,
    Order,
    bilex_compare,
    c0_labels,
    cuspidal_line,
    line_root_module_failures,
    root_module_check,
    simple_root_labels,
    strong_datum_check,
    unmixed_check,
    window_params,
)
from cuspidal_shadow.basis_cache import BasisCache
from cuspidal_shadow.config import RunConfig
from cuspidal_shadow.exceptions import DomainError, UnsupportedFeatureError
from cuspidal_shadow.gbasis import GlobalBasis, GlobalBasisElt, cuspidal_decomposition_window
from cuspidal_shadow.invariants import PairCalculator
from cuspidal_shadow.laurent import ONE
from cuspidal_shadow.liecore import (
    CartanDatum,
    ReducedWord,
    beta_sequence,
    convexity_check,
    enumerate_reduced_words,
    height,
    involution_and_coxeter,
    kostant_partition_count,
    root_system,
    weights_up_to,
)
from cuspidal_shadow.pbw import exponent_weight, pbw_exponents
from cuspidal_shadow.qdata import QData, adapted_word, dshift_label, dynkin_quivers, height_functions
from cuspidal_shadow.reports import SweepResult, VerifySummary
from cuspidal_shadow.shuffle import word_to_str

logger = logging.getLogger(__name__)

# Constants
ALGEBRA_WORD_LIMIT = 16  # reduced words used by the shuffle-algebra sweeps (all of A3)
HEIGHT_FUNCTIONS_PER_QUIVER = 3
PAIR_HEIGHT_BOUND = 4
BILEX_TRIPLES = 10_000
BILEX_SUPPORT_WIDTH = 8


@dataclass(frozen=True)
class SweepSettings:
    """Picklable inputs shared by all sweeps of one run."""

    cartan: str
    height_bound: int
    word_cap: int
    seed: int
    timings: bool
    phi_base: int = 0
    cache: Optional[str] = None

    @classmethod
    def from_config(cls, config: RunConfig) -> SweepSettings:
        return cls(
            config.cartan,
            config.height_bound,
            config.word_cap,
            config.seed,
            config.timings,
            config.phi_base,
            config.cache,
        )


class SweepContext:
    """Lazily built shared objects for the sweeps of one Cartan type."""

    def __init__(self, settings: SweepSettings):
        self.settings = settings
        self.cartan = RunConfig(command="verify", cartan=settings.cartan).cartan_datum
        self._engines: Dict[ReducedWord, GlobalBasis] = {}

    @cached_property
    def words(self) -> Tuple[ReducedWord, ...]:
        return enumerate_reduced_words(self.cartan, self.settings.word_cap).words

    @property
    def algebra_words(self) -> Tuple[ReducedWord, ...]:
        return self.words[:ALGEBRA_WORD_LIMIT]

    @cached_property
    def weights(self) -> List[Tuple[int, ...]]:
        return weights_up_to(self.cartan, self.settings.height_bound)

    @cached_property
    def cache(self) -> Optional[BasisCache]:
        return BasisCache(Path(self.settings.cache)) if self.settings.cache else None

    def engine(self, word: ReducedWord) -> GlobalBasis:
        engine = self._engines.get(word)
        if engine is None:
            seq = beta_sequence(self.cartan, word)
            engine = GlobalBasis.for_word(self.cartan, seq, self.settings.height_bound, self.cache)
            self._engines[word] = engine
        return engine

    @cached_property
    def qdata_family(self) -> List[QData]:
        family = []
        for quiver in dynkin_quivers(self.cartan):
            family.extend(height_functions(quiver, HEIGHT_FUNCTIONS_PER_QUIVER, self.settings.phi_base))
        return family

    @contextmanager
    def timed(self, result: SweepResult) -> Iterator[None]:
        start = time.perf_counter()
        yield
        result.checked += 1
        if self.settings.timings:
            result.record_time(time.perf_counter() - start)


def sweep_convexity(ctx: SweepContext, result: SweepResult) -> None:
    roots = sorted(root_system(ctx.cartan))
    for word in ctx.words:
        with ctx.timed(result):
            seq = beta_sequence(ctx.cartan, word)
            if sorted(seq.betas) != roots:
                result.failures.append(f"{word}: β sequence is not a bijection onto Φ⁺")
            elif not convexity_check(ctx.cartan, seq.betas):
                result.failures.append(f"{word}: β sequence is not convex")


def sweep_pbw_basis(ctx: SweepContext, result: SweepResult) -> None:
    for word in ctx.algebra_words:
        pbw = ctx.engine(word).pbw
        for mu in ctx.weights:
            with ctx.timed(result):
                exponents = pbw_exponents(pbw.seq, mu)
                expected = kostant_partition_count(ctx.cartan, mu)
                if len(exponents) != expected:
                    result.failures.append(f"{word} {mu}: {len(exponents)} exponents, Kostant count {expected}")
                    continue
                for shared, group in pbw.leading_word_collisions(mu).items():
                    result.failures.append(f"{word} {mu}: leading word {word_to_str(shared)} is shared by {group}")
                for a in exponents:
                    if pbw.expand(pbw.monomial(a)) != {a: ONE}:
                        result.failures.append(f"{word} {mu}: expansion of E*{a} is not the unit vector")


def sweep_global_basis(ctx: SweepContext, result: SweepResult) -> None:
    reference: Dict[Tuple[int, ...], frozenset] = {}
    for word in ctx.algebra_words:
        engine = ctx.engine(word)
        for mu in ctx.weights:
            with ctx.timed(result):
                elements = engine.at_weight(mu)
                for g in elements:
                    if dict(g.pbw).get(g.exponent) != ONE:
                        result.failures.append(f"{word} G{g.exponent}: diagonal PBW coefficient is not 1")
                values = frozenset(g.value for g in elements)
                if reference.setdefault(mu, values) != values:
                    result.failures.append(f"{word} {mu}: global basis differs from the one of {ctx.algebra_words[0]}")


def _window_total(C: CartanDatum) -> int:
    return 4 if C.rank <= 2 else 3


def sweep_unitriangularity(ctx: SweepContext, result: SweepResult) -> None:
    for word in ctx.algebra_words:
        engine = ctx.engine(word)
        for a in window_params(len(word), _window_total(ctx.cartan)):
            if not any(a) or height(exponent_weight(engine.seq, a)) > ctx.settings.height_bound:
                continue
            with ctx.timed(result):
                report = engine.unitriangularity_report(a)
                result.failures.extend(f"{word}: {f}" for f in report.failures)


def _skip_unsupported(result: SweepResult, body: Callable[[], None]) -> None:
    try:
        body()
    except UnsupportedFeatureError as e:
        result.skipped = e.reason
        result.failures.clear()


def sweep_strong_datum(ctx: SweepContext, result: SweepResult) -> None:
    def body() -> None:
        for q in ctx.qdata_family:
            with ctx.timed(result):
                report = strong_datum_check(simple_root_labels(q), ctx.cartan)
                if not report.passed:
                    result.failures.append(
                        f"{q.quiver} φ={q.phi}: root failures {report.root_failures}, "
                        f"pair failures {report.pair_failures[:3]}, recovered {report.recovered}"
                    )
        _, h = involution_and_coxeter(ctx.cartan)
        for label in c0_labels(ctx.cartan, 0, 2 * h - 1):
            with ctx.timed(result):
                if not root_module_check(ctx.cartan, label):
                    result.failures.append(f"{label} is not a root module")

    _skip_unsupported(result, body)


def sweep_unmixed(ctx: SweepContext, result: SweepResult) -> None:
    def body() -> None:
        ell = len(root_system(ctx.cartan))
        k_range = range(1 - ell, 2 * ell + 1)
        for q in ctx.qdata_family:
            with ctx.timed(result):
                line = cuspidal_line(q, adapted_word(q), k_range)
                label = f"{q.quiver} φ={q.phi}"
                if not unmixed_check(line):
                    result.failures.append(f"{label}: adapted line is not unmixed")
                bad = line_root_module_failures(line)
                if bad:
                    result.failures.append(f"{label}: S_k not a root module for k in {bad}")
                for k in k_range:
                    if k + ell in k_range and line.entries[k + ell] != dshift_label(ctx.cartan, line.entries[k]):
                        result.failures.append(f"{label}: S_{k + ell} is not D(S_{k})")

    _skip_unsupported(result, body)


def sweep_parameterization(ctx: SweepContext, result: SweepResult) -> None:
    engine = ctx.engine(ctx.words[0])
    for mu in ctx.weights:
        with ctx.timed(result):
            exponents = pbw_exponents(engine.seq, mu)
            elements = engine.at_weight(mu)
            if sorted(g.exponent for g in elements) != sorted(exponents):
                result.failures.append(f"{mu}: global labels differ from PBW exponents")
                continue
            for a in exponents:
                coordinates = engine.expand(engine.pbw.monomial(a))
                below = all(bilex_compare(b, a) is Order.LESS for b in coordinates if b != a)
                try:
                    label = cuspidal_decomposition_window(engine.element(a).value, engine.pbw)
                except DomainError as e:
                    result.failures.append(f"{mu}: {e}")
                    continue
                if coordinates.get(a) != ONE or not below or label != a:
                    result.failures.append(f"{mu}: head of E*{a} is not labelled {a}")


def _pair_elements(engine: GlobalBasis, bound: int) -> List[GlobalBasisElt]:
    elements = []
    for mu in weights_up_to(engine.seq.cartan, bound - 1):
        elements.extend(engine.at_weight(mu))
    return elements


def sweep_invariants(ctx: SweepContext, result: SweepResult) -> None:
    bound = min(PAIR_HEIGHT_BOUND, ctx.settings.height_bound)
    engine = ctx.engine(ctx.words[0])
    calculator = PairCalculator(engine)
    elements = _pair_elements(engine, bound)
    C = ctx.cartan
    for x in elements:
        for y in elements:
            if height(x.value.weight) + height(y.value.weight) > bound:
                continue
            with ctx.timed(result):
                inv = calculator.pair_invariants(x, y)
                commuting, _ = calculator.commutes(x, y)
                label = f"G{x.exponent}, G{y.exponent}"
                if inv.delta is not None and (inv.delta == 0) != commuting:
                    result.failures.append(f"{label}: δ = {inv.delta} but commutes = {commuting}")
                if commuting and None not in (inv.lambda_xy, inv.lambda_yx) and inv.lambda_xy != -inv.lambda_yx:
                    result.failures.append(f"{label}: Λ not antisymmetric on a commuting pair")
                if len(x.value) == 1 and len(y.value) == 1:
                    (wx,), (wy,) = x.value.words(), y.value.words()
                    if len(wx) == 1 and len(wy) == 1 and wx != wy and inv.delta != -C.c(wx[0], wy[0]):
                        result.failures.append(f"{label}: δ((i),(j)) = {inv.delta}, expected {-C.c(wx[0], wy[0])}")


def sweep_bilex_order(ctx: SweepContext, result: SweepResult) -> None:
    rng = np.random.default_rng(ctx.settings.seed)
    draws = rng.integers(0, 3, size=(BILEX_TRIPLES, 3, BILEX_SUPPORT_WIDTH))
    for triple in draws:
        with ctx.timed(result):
            a, b, c = (CuspParam.from_window([int(x) for x in row], offset=-1) for row in triple)
            if bilex_compare(a, a) is not Order.EQUAL:
                result.failures.append(f"{a} not equal to itself")
            ab = bilex_compare(a, b)
            if ab is Order.LESS:
                if bilex_compare(b, a) is not Order.GREATER:
                    result.failures.append(f"{a} < {b} is not antisymmetric")
                if not _both_lex_less(a, b):
                    result.failures.append(f"{a} < {b} without both lexicographic comparisons")
                if bilex_compare(b, c) is Order.LESS and bilex_compare(a, c) is not Order.LESS:
                    result.failures.append(f"{a} < {b} < {c} is not transitive")


def _both_lex_less(a: CuspParam, b: CuspParam) -> bool:
    keys = sorted(set(a.support) | set(b.support))
    left = [a[k] for k in keys] < [b[k] for k in keys]
    right = [a[k] for k in reversed(keys)] < [b[k] for k in reversed(keys)]
    return left and right


SWEEP_FUNCTIONS: Dict[str, Callable[[SweepContext, SweepResult], None]] = {
    "convexity": sweep_convexity,
    "pbw-basis": sweep_pbw_basis,
    "global-basis": sweep_global_basis,
    "unitriangularity": sweep_unitriangularity,
    "strong-datum": sweep_strong_datum,
    "unmixed": sweep_unmixed,
    "parameterization": sweep_parameterization,
    "invariants": sweep_invariants,
    "bilex-order": sweep_bilex_order,
}


def run_sweep(settings: SweepSettings, name: str, ctx: Optional[SweepContext] = None) -> SweepResult:
    """Run one sweep; top-level so a process pool can pickle it."""
    ctx = ctx or SweepContext(settings)
    result = SweepResult(name, settings.cartan)
    SWEEP_FUNCTIONS[name](ctx, result)
    logger.info(str(result))
    return result


def run_verify(config: RunConfig) -> VerifySummary:
    """Run the configured sweeps, in a process pool when workers > 1."""
    settings = SweepSettings.from_config(config)
    names: Sequence[str] = config.sweeps
    if config.workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(run_sweep, [settings] * len(names), names))
    else:
        ctx = SweepContext(settings)
        results = [run_sweep(settings, name, ctx) for name in names]
    return VerifySummary(results)
