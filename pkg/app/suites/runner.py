# app/suites/runner.py
"""
Suite registration and execution.

A suite collects check builders with the `@suite.checks` decorator. Each
builder receives a SuiteContext and yields Check objects; the runner executes
them on a worker pool, resamples random-mode points that hit a pole, and
folds the outcome into a deterministic Report.
"""
import logging
import multiprocessing
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

from app.config import settings
from app.core.errors import AlgebraError, PoleError, RandomModeExhausted, SingularMatrix
from app.core.scalars import SYMBOLIC, Params, random_assignment
from app.schemas import FailureRecord, Report, SuiteConfig

logger = logging.getLogger(__name__)

ParamRecord = Dict[str, Union[int, str]]
# Raised by arithmetic when a sampled point sits on a pole of some coefficient.
POLE_ERRORS = (PoleError, SingularMatrix, ZeroDivisionError)


class UnknownMutation(ValueError):
    pass


@dataclass
class Check:
    family: str
    params: ParamRecord
    fn: Callable[[], Optional[str]]

    def run(self) -> Optional[str]:
        """None when the identity holds, otherwise the rendered residual."""
        return self.fn()


@dataclass
class SuiteContext:
    cfg: SuiteConfig
    params: Params
    diagnostics: List[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.cfg.n

    @property
    def window(self) -> int:
        return self.cfg.window

    @property
    def mutation(self) -> Optional[str]:
        return self.cfg.mutation

    def check(self, family: str, params: ParamRecord, fn: Callable, *args) -> Check:
        return Check(family, dict(params), partial(fn, *args) if args else fn)

    def diagnose(self, message: str):
        if message not in self.diagnostics:
            logger.warning("%s", message)
            self.diagnostics.append(message)


# -----------------------------
# RESIDUAL HELPERS
# -----------------------------
def residual(element) -> Optional[str]:
    """None for a vanishing operator element, otherwise its canonical rendering."""
    return None if element.is_zero() else element.render()


def difference(actual, expected) -> Optional[str]:
    return residual(actual - expected)


def scalar_residual(value) -> Optional[str]:
    return None if not value else str(value)


def params_key(params: ParamRecord) -> Tuple:
    return tuple(
        (name, (0, value, "") if isinstance(value, int) else (1, 0, str(value)))
        for name, value in sorted(params.items())
    )


# -----------------------------
# WORKERS
# -----------------------------
FORK_AVAILABLE = "fork" in multiprocessing.get_all_start_methods()

# Read by forked workers; set only while a process pool is running.
_pending: List[Check] = []


def _guarded(check: Check, strict: bool) -> Optional[str]:
    try:
        return check.run()
    except POLE_ERRORS:
        if strict:
            raise
        return f"error: {check.family} hit a pole"
    except AlgebraError as exc:
        return f"error: {type(exc).__name__}: {exc}"


def _run_pending(index: int, strict: bool) -> Optional[str]:
    return _guarded(_pending[index], strict)


def _execute_forked(checks: List[Check], jobs: int, strict: bool) -> List[Optional[str]]:
    """Run checks on forked worker processes; results come back in schedule order."""
    global _pending
    _pending = checks
    try:
        context = multiprocessing.get_context("fork")
        chunk = max(1, len(checks) // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs, mp_context=context) as pool:
            return list(pool.map(partial(_run_pending, strict=strict), range(len(checks)), chunksize=chunk))
    finally:
        _pending = []


# -----------------------------
# SUITES
# -----------------------------
Builder = Callable[[SuiteContext], Iterable[Check]]


class Suite:
    def __init__(self, name: str, window_key: str = "K", mutations: Tuple[str, ...] = ()):
        self.name = name
        self.window_key = window_key
        self.mutations = mutations
        self.builders: List[Builder] = []

    def __repr__(self):
        return f"Suite({self.name})"

    def checks(self, builder: Builder) -> Builder:
        self.builders.append(builder)
        return builder

    def build(self, ctx: SuiteContext) -> List[Check]:
        out: List[Check] = []
        for builder in self.builders:
            out.extend(builder(ctx))
        return out

    # -----------------------------
    # EXECUTION
    # -----------------------------
    def _execute(self, checks: List[Check], jobs: int, strict: bool) -> List[Optional[str]]:
        if jobs <= 1:
            return [_guarded(c, strict) for c in checks]
        if FORK_AVAILABLE:
            return _execute_forked(checks, jobs, strict)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(partial(_guarded, strict=strict), checks))

    def _run_point(self, cfg: SuiteConfig, point: int, diagnostics: List[str]):
        for attempt in range(settings.VERIFY_RANDOM_RETRIES):
            assignment = random_assignment(cfg.seed, point, attempt)
            try:
                params = Params.numeric(assignment).specialize(cfg.specialize)
                ctx = SuiteContext(cfg, params, diagnostics)
                checks = self.build(ctx)
                return checks, self._execute(checks, cfg.jobs, strict=True)
            except POLE_ERRORS:
                logger.info("%s: point %d attempt %d hit a pole, resampling", self.name, point, attempt)
        raise RandomModeExhausted(
            f"{self.name}: point {point} hit a pole on all {settings.VERIFY_RANDOM_RETRIES} attempts"
        )

    def run(self, cfg: SuiteConfig) -> Report:
        if cfg.mutation is not None and cfg.mutation not in self.mutations:
            raise UnknownMutation(f"suite '{self.name}' has no mutation '{cfg.mutation}'")
        logger.info("%s: starting (n=%d, window=%d, mode=%s)", self.name, cfg.n, cfg.window, cfg.mode)
        started = time.perf_counter()
        diagnostics: List[str] = []
        found: Dict[Tuple, FailureRecord] = {}

        if cfg.mode == "exact":
            ctx = SuiteContext(cfg, SYMBOLIC.specialize(cfg.specialize), diagnostics)
            checks = self.build(ctx)
            outcomes = [(checks, self._execute(checks, cfg.jobs, strict=False))]
        else:
            outcomes = [self._run_point(cfg, point, diagnostics) for point in range(cfg.points)]
            checks = outcomes[0][0]

        for batch, results in outcomes:
            for check, res in zip(batch, results):
                if res is None:
                    continue
                key = (check.family, params_key(check.params))
                found.setdefault(key, FailureRecord(family=check.family, params=check.params, residual=res))

        failures = self._cap([found[key] for key in sorted(found)], diagnostics)
        elapsed_ms = int((time.perf_counter() - started) * 1000)
        logger.info("%s: %d instances, %d failures, %d ms", self.name, len(checks), len(found), elapsed_ms)
        return Report(
            suite=self.name,
            n=cfg.n,
            window={self.window_key: cfg.window},
            mode=cfg.mode,
            seed=cfg.seed,
            instances=len(checks),
            failures=failures,
            elapsed_ms=elapsed_ms,
            passed=not failures,
            diagnostics=diagnostics,
        )

    def _cap(self, failures: List[FailureRecord], diagnostics: List[str]) -> List[FailureRecord]:
        kept: List[FailureRecord] = []
        per_family: Dict[str, int] = defaultdict(int)
        for record in failures:
            per_family[record.family] += 1
            if per_family[record.family] <= settings.VERIFY_MAX_FAILURES:
                kept.append(record)
        for family, count in sorted(per_family.items()):
            omitted = count - settings.VERIFY_MAX_FAILURES
            if omitted > 0:
                message = f"{family}: {omitted} further failures omitted"
                logger.info("%s: %s", self.name, message)
                diagnostics.append(message)
        return kept
