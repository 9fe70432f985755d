"""Randomized and exhaustive checks of the polarization statements for sl(n)."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
import functools
import inspect
import logging
import time
from typing import TYPE_CHECKING, Any

import numpy as np

from .algebra import GElement, LieAlgebraA, build_sl, nonzero_integers
from .const import (
    ALL_CHECKS,
    CHECK_CENTRALIZER,
    CHECK_FIBER_CARDINALITY,
    CHECK_GENERIC_FIBER,
    CHECK_PARABOLIC_CONJUGACY,
    CHECK_RICHARDSON_DENSITY,
    CHECK_VARPI_IMAGE,
    CHECK_VXY_DECOMPOSITION,
    CHECK_VXY_EQ_B,
    CHECK_VXY_IN_LEVI_SUM,
    CHECK_VXY_IN_OPPOSITE,
    CHECK_VXY_IN_P,
    CHECK_WEYL_LEMMA,
    DEFAULT_BOUND,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    MAX_EXHAUSTIVE_RANK,
    RANK_CHECKS,
    RESAMPLE_CAP,
    RICHARDSON_THRESHOLD,
)
from .exact import Subspace
from .exceptions import DegenerateSamplingError, SlPolarError, WeylRankError
from .invariants import v_space, v_space_levi
from .parabolic import (
    ParabolicData,
    build_parabolic,
    in_R_p,
    in_R_prime_p,
    levi_centralizer,
    project_subspace,
    sample_in,
    sample_pair_in,
    sample_regular_diagonal,
    sample_regular_semisimple,
    sample_until,
    translate,
    trial_rng,
    varpi,
)
from .weyl import (
    LeviComposition,
    act,
    act_on_set,
    compositions,
    cosets,
    enumerate_weyl,
    multinomial,
    parabolic_roots,
    r_levi,
    r_prime_plus,
)

if TYPE_CHECKING:
    from .config import RunConfig

_LOGGER = logging.getLogger(__name__)


def _fmt(x: GElement) -> list[str]:
    return [str(c) for c in x.coords]


@dataclass
class CheckResult:
    """Outcome of one check over one grid cell."""

    check_id: str
    n: int
    levi: str | None
    samples: int
    seed: int
    trials: int = 0
    failures: int = 0
    filtered: int = 0
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record_failure(self, trial: int | None = None, **payload: Any) -> None:
        self.failures += 1
        witness: dict[str, Any] = {"seed": self.seed}
        if trial is not None:
            witness["trial"] = trial
        witness.update(payload)
        self.witnesses.append(witness)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["passed"] = self.passed
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> CheckResult:
        fields = {key: value for key, value in data.items() if key != "passed"}
        return cls(**fields)


def check_exception_handler(check_id: str) -> Callable[[Callable[..., CheckResult]], Callable[..., CheckResult]]:
    """Time a check and turn verifier errors into a failed result."""

    def decorator(func: Callable[..., CheckResult]) -> Callable[..., CheckResult]:
        signature = inspect.signature(func)

        @functools.wraps(func)
        def inner_function(*args: Any, **kwargs: Any) -> CheckResult:
            start = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except SlPolarError as err:
                bound_args = signature.bind(*args, **kwargs)
                bound_args.apply_defaults()
                params = bound_args.arguments
                levi = params.get("levi")
                _LOGGER.error("%s failed on n=%s levi=%s: %s", check_id, params.get("n"), levi, err)
                result = CheckResult(
                    check_id=check_id,
                    n=params["n"],
                    levi=str(levi) if levi is not None else None,
                    samples=params.get("samples", 0),
                    seed=params.get("seed", DEFAULT_SEED),
                )
                result.record_failure(error=type(err).__name__, message=str(err))
            result.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
            _LOGGER.info(
                "%s n=%s levi=%s: %s/%s failed (%.1f ms)",
                check_id,
                result.n,
                result.levi,
                result.failures,
                result.trials,
                result.elapsed_ms,
            )
            return result

        return inner_function

    return decorator


def _setup(n: int, levi: LeviComposition) -> ParabolicData:
    return build_parabolic(build_sl(n), levi)


def _tag(check_id: str, n: int, levi: LeviComposition | None) -> str:
    return f"{check_id}:{n}:{levi}"


def _pairs(
    check_id: str,
    p: ParabolicData,
    samples: int,
    seed: int,
    bound: int,
    space: Subspace | None = None,
) -> Iterable[tuple[int, np.random.Generator, GElement, GElement]]:
    space = p.p if space is None else space
    tag = _tag(check_id, p.algebra.n, p.levi)
    for trial in range(samples):
        rng = trial_rng(seed, tag, trial)
        yield trial, rng, *sample_pair_in(space, rng, bound)


@check_exception_handler(CHECK_VXY_IN_P)
def check_vxy_in_p(
    n: int,
    levi: LeviComposition,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    bound: int = DEFAULT_BOUND,
) -> CheckResult:
    """V_{x,y} lies in p whenever x and y do."""
    p = _setup(n, levi)
    result = CheckResult(CHECK_VXY_IN_P, n, str(levi), samples, seed)
    for trial, _, x, y in _pairs(CHECK_VXY_IN_P, p, samples, seed, bound):
        result.trials += 1
        if not v_space(p.algebra, x, y) <= p.p:
            result.record_failure(trial, x=_fmt(x), y=_fmt(y))
    return result


@check_exception_handler(CHECK_VXY_IN_OPPOSITE)
def check_vxy_in_opposite(
    n: int,
    levi: LeviComposition,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    bound: int = DEFAULT_BOUND,
) -> CheckResult:
    """V_{x,y} lies in the opposite parabolic whenever x and y do."""
    p = _setup(n, levi)
    result = CheckResult(CHECK_VXY_IN_OPPOSITE, n, str(levi), samples, seed)
    for trial, _, x, y in _pairs(CHECK_VXY_IN_OPPOSITE, p, samples, seed, bound, p.pminus):
        result.trials += 1
        if not v_space(p.algebra, x, y) <= p.pminus:
            result.record_failure(trial, x=_fmt(x), y=_fmt(y))
    return result


def _generic_trial(
    result: CheckResult,
    trial: int,
    draw: Callable[[], tuple[np.random.Generator, GElement, GElement]],
    conclusion: Callable[[GElement, GElement], str | None],
    bound: int,
    g: LieAlgebraA,
) -> None:
    """Run one trial of a statement about generic pairs.

    ``conclusion`` returns None when it holds, or a short reason. A pair that
    breaks the conclusion only counts as a failure when it survives the
    genericity test; otherwise it is filtered out and redrawn.
    """
    for _ in range(RESAMPLE_CAP):
        rng, x, y = draw()
        reason = conclusion(x, y)
        if reason is None:
            return
        if g.in_omega(x, y, rng, bound):
            result.record_failure(trial, reason=reason, x=_fmt(x), y=_fmt(y))
            return
        result.filtered += 1
        _LOGGER.debug("Trial %s: non-generic pair filtered (%s)", trial, reason)
    raise DegenerateSamplingError(f"trial {trial} found no generic pair")


def _drawer(
    check_id: str, p: ParabolicData, seed: int, trial: int, bound: int
) -> Callable[[], tuple[np.random.Generator, GElement, GElement]]:
    rng = trial_rng(seed, _tag(check_id, p.algebra.n, p.levi), trial)

    def draw() -> tuple[np.random.Generator, GElement, GElement]:
        return rng, *sample_pair_in(p.p, rng, bound)

    return draw


def _filter_rate(result: CheckResult) -> None:
    total = result.trials + result.filtered
    result.details["filter_rate"] = round(result.filtered / total, 4) if total else 0.0


@check_exception_handler(CHECK_VXY_EQ_B)
def check_vxy_eq_b(
    n: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    bound: int = DEFAULT_BOUND,
) -> CheckResult:
    """V_{x,y} equals the Borel subalgebra for a generic pair in b."""
    levi = LeviComposition.borel(n)
    p = _setup(n, levi)
    result = CheckResult(CHECK_VXY_EQ_B, n, str(levi), samples, seed)

    def conclusion(x: GElement, y: GElement) -> str | None:
        space = v_space(p.algebra, x, y)
        return None if space == p.p else f"dim V = {space.rank}, dim b = {p.p.rank}"

    for trial in range(samples):
        result.trials += 1
        _generic_trial(result, trial, _drawer(CHECK_VXY_EQ_B, p, seed, trial, bound), conclusion, bound, p.algebra)
    _filter_rate(result)
    return result


@check_exception_handler(CHECK_VXY_IN_LEVI_SUM)
def check_vxy_in_levi_sum(
    n: int,
    levi: LeviComposition,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    bound: int = DEFAULT_BOUND,
) -> CheckResult:
    """V_{x,y} lies in V^l at the Levi parts plus the nilradical."""
    p = _setup(n, levi)
    result = CheckResult(CHECK_VXY_IN_LEVI_SUM, n, str(levi), samples, seed)
    for trial, _, x, y in _pairs(CHECK_VXY_IN_LEVI_SUM, p, samples, seed, bound):
        result.trials += 1
        target = v_space_levi(p, varpi(p, x), varpi(p, y)) + p.pu
        if not v_space(p.algebra, x, y) <= target:
            result.record_failure(trial, x=_fmt(x), y=_fmt(y))
    return result


@check_exception_handler(CHECK_VXY_DECOMPOSITION)
def check_vxy_decomposition(
    n: int,
    levi: LeviComposition,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    bound: int = DEFAULT_BOUND,
) -> CheckResult:
    """For a generic pair in p, V_{x,y} is V^l at the Levi parts plus the nilradical."""
    p = _setup(n, levi)
    result = CheckResult(CHECK_VXY_DECOMPOSITION, n, str(levi), samples, seed)

    def conclusion(x: GElement, y: GElement) -> str | None:
        space = v_space(p.algebra, x, y)
        levi_space = v_space_levi(p, varpi(p, x), varpi(p, y))
        if not p.pu <= space:
            return "nilradical not contained"
        projected = project_subspace(p, space).rank
        if projected != p.b_l:
            return f"projection to l has dimension {projected}, expected {p.b_l}"
        if space != levi_space + p.pu:
            return "not the sum of the Levi space and the nilradical"
        return None

    for trial in range(samples):
        result.trials += 1
        _generic_trial(
            result, trial, _drawer(CHECK_VXY_DECOMPOSITION, p, seed, trial, bound), conclusion, bound, p.algebra
        )
    _filter_rate(result)
    return result


@check_exception_handler(CHECK_VARPI_IMAGE)
def check_varpi_image(
    n: int,
    levi: LeviComposition,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    bound: int = DEFAULT_BOUND,
) -> CheckResult:
    """The projection of V_{x,y} to l is V^l at the Levi parts, for x in R'_p.

    Even trials filter plain draws from p, odd trials start from a regular
    semisimple element built inside R'_p.
    """
    p = _setup(n, levi)
    g = p.algebra
    result = CheckResult(CHECK_VARPI_IMAGE, n, str(levi), samples, seed)
    tag = _tag(CHECK_VARPI_IMAGE, n, levi)
    for trial in range(samples):
        rng = trial_rng(seed, tag, trial)
        if trial % 2:
            draw = functools.partial(sample_regular_semisimple, p, rng, bound)
        else:
            draw = functools.partial(sample_in, p.p, rng, bound)
        x, rejected = sample_until(
            draw,
            functools.partial(in_R_prime_p, p),
            "element of R'_p",
        )
        y = sample_in(p.p, rng, bound)
        result.trials += 1
        result.filtered += rejected
        projected = project_subspace(p, v_space(g, x, y))
        if projected != v_space_levi(p, varpi(p, x), varpi(p, y)):
            result.record_failure(trial, x=_fmt(x), y=_fmt(y))
    _filter_rate(result)
    return result


def _centralizer_draw(
    p: ParabolicData, e: GElement, rng: np.random.Generator, bound: int, nilpotent: bool
) -> GElement:
    if not nilpotent:
        return sample_in(p.p, rng, bound)
    x = e * nonzero_integers(rng, bound, 1)[0]
    if p.pu.rank:
        x = x + sample_in(p.pu, rng, bound)
    return x


@check_exception_handler(CHECK_CENTRALIZER)
def check_centralizer_criterion(
    n: int,
    levi: LeviComposition,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    bound: int = DEFAULT_BOUND,
) -> CheckResult:
    """For x in R_p: the centralizer projects onto l^{varpi(x)} iff it misses p_u.

    Odd trials draw x = c e + z with e the principal nilpotent and z in p_u,
    which lands on the side where both statements fail once p is proper.
    """
    p = _setup(n, levi)
    g = p.algebra
    e = g.principal_triple()[0]
    result = CheckResult(CHECK_CENTRALIZER, n, str(levi), samples, seed)
    result.details.update(both_true=0, both_false=0)
    tag = _tag(CHECK_CENTRALIZER, n, levi)
    for trial in range(samples):
        rng = trial_rng(seed, tag, trial)
        x, rejected = sample_until(
            functools.partial(_centralizer_draw, p, e, rng, bound, trial % 2 == 1),
            functools.partial(in_R_p, p),
            "element of R_p",
        )
        result.trials += 1
        result.filtered += rejected
        centralizer = g.centralizer(x)
        projects_onto = project_subspace(p, centralizer) == levi_centralizer(p, varpi(p, x))
        misses_nilradical = (centralizer & p.pu).rank == 0
        if projects_onto != misses_nilradical:
            result.record_failure(
                trial, x=_fmt(x), projects_onto=projects_onto, misses_nilradical=misses_nilradical
            )
        elif projects_onto:
            result.details["both_true"] += 1
        else:
            result.details["both_false"] += 1
    return result


def _require_exhaustive(n: int) -> None:
    if n > MAX_EXHAUSTIVE_RANK:
        raise WeylRankError(f"exhaustive checks stop at n = {MAX_EXHAUSTIVE_RANK}, got {n}")


@check_exception_handler(CHECK_WEYL_LEMMA)
def check_weyl_lemma(n: int) -> CheckResult:
    """A permutation keeping R'_+ positive, or inside R_+ and R_l, lies in W_l."""
    _require_exhaustive(n)
    result = CheckResult(CHECK_WEYL_LEMMA, n, None, 0, 0)
    hypothesis = 0
    for levi in compositions(n):
        nil_roots = r_prime_plus(levi)
        levi_roots = r_levi(levi)
        for w in enumerate_weyl(n):
            result.trials += 1
            images = [act(w, root) for root in nil_roots]
            keeps_positive = all(root.is_positive for root in images)
            keeps_parabolic = all(root.is_positive or root in levi_roots for root in images)
            if keeps_parabolic:
                hypothesis += 1
            if (keeps_positive or keeps_parabolic) and not w.preserves_blocks(levi):
                result.record_failure(
                    levi=str(levi),
                    w=list(w.one_line),
                    form="positive" if keeps_positive else "parabolic",
                )
    result.details["hypothesis_met"] = hypothesis
    return result


@check_exception_handler(CHECK_PARABOLIC_CONJUGACY)
def check_parabolic_conjugacy(n: int) -> CheckResult:
    """If w(p) contains p_u then w(p) = p and w lies in W_l."""
    _require_exhaustive(n)
    result = CheckResult(CHECK_PARABOLIC_CONJUGACY, n, None, 0, 0)
    for levi in compositions(n):
        roots = parabolic_roots(levi)
        nil_roots = r_prime_plus(levi)
        for w in enumerate_weyl(n):
            result.trials += 1
            image = act_on_set(w, roots)
            if nil_roots <= image and (image != roots or not w.preserves_blocks(levi)):
                result.record_failure(levi=str(levi), w=list(w.one_line))
    return result


@check_exception_handler(CHECK_FIBER_CARDINALITY)
def check_fiber_cardinality(n: int, levi: LeviComposition) -> CheckResult:
    """|W / W_l| is the multinomial coefficient and counts the distinct w(p)."""
    _require_exhaustive(n)
    roots = parabolic_roots(levi)
    result = CheckResult(CHECK_FIBER_CARDINALITY, n, str(levi), 0, 0)
    coset_list = cosets(levi)
    expected = multinomial(levi)
    translates = {act_on_set(w, roots) for w in enumerate_weyl(n)}
    result.trials = len(enumerate_weyl(n))
    result.details.update(
        cosets=len(coset_list),
        multinomial=expected,
        translates=len(translates),
        non_normal=len(coset_list) > 1,
    )
    if not len(coset_list) == expected == len(translates):
        result.record_failure(cosets=len(coset_list), multinomial=expected, translates=len(translates))
    return result


@check_exception_handler(CHECK_GENERIC_FIBER)
def check_generic_fiber(
    n: int,
    levi: LeviComposition,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    bound: int = DEFAULT_BOUND,
) -> CheckResult:
    """A regular x in h lies in every w(p), while a generic y in p lies in p alone."""
    _require_exhaustive(n)
    p = _setup(n, levi)
    g = p.algebra
    result = CheckResult(CHECK_GENERIC_FIBER, n, str(levi), samples, seed)
    translates = [translate(p, coset.representative) for coset in cosets(levi)]
    tag = _tag(CHECK_GENERIC_FIBER, n, levi)
    x = sample_regular_diagonal(g, trial_rng(seed, f"{tag}:x", 0), bound)
    containing_x = sum(1 for space in translates if space.contains(x))
    result.details.update(translates=len(translates), containing_x=containing_x)
    if containing_x != len(translates):
        result.record_failure(x=_fmt(x), containing_x=containing_x)
    for trial in range(samples):
        rng = trial_rng(seed, tag, trial)
        y = sample_in(p.p, rng, bound)
        result.trials += 1
        containing = [k for k, space in enumerate(translates) if space.contains(x) and space.contains(y)]
        if containing != [0]:
            result.record_failure(trial, y=_fmt(y), containing=len(containing))
    return result


@check_exception_handler(CHECK_RICHARDSON_DENSITY)
def check_richardson_density(
    n: int,
    levi: LeviComposition,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    bound: int = DEFAULT_BOUND,
) -> CheckResult:
    """Random elements of p_u are Richardson in at least the threshold share of draws."""
    p = _setup(n, levi)
    g = p.algebra
    result = CheckResult(CHECK_RICHARDSON_DENSITY, n, str(levi), samples, seed)
    result.details["threshold"] = RICHARDSON_THRESHOLD
    if p.pu.rank == 0:
        result.details["density"] = None
        return result
    misses = []
    tag = _tag(CHECK_RICHARDSON_DENSITY, n, levi)
    for trial in range(samples):
        x = sample_in(p.pu, trial_rng(seed, tag, trial), bound)
        result.trials += 1
        if not g.is_richardson(x, p):
            misses.append({"seed": seed, "trial": trial, "x": _fmt(x)})
    density = 1 - len(misses) / result.trials if result.trials else 1.0
    result.details["density"] = round(density, 4)
    result.details["misses"] = len(misses)
    if density < RICHARDSON_THRESHOLD:
        result.failures = len(misses)
        result.witnesses = misses
    return result


def _cell_runner(check_id: str) -> Callable[[int, LeviComposition, int, int, int], CheckResult]:
    runners: dict[str, Callable[..., CheckResult]] = {
        CHECK_VXY_IN_P: check_vxy_in_p,
        CHECK_VXY_IN_OPPOSITE: check_vxy_in_opposite,
        CHECK_VXY_IN_LEVI_SUM: check_vxy_in_levi_sum,
        CHECK_VXY_DECOMPOSITION: check_vxy_decomposition,
        CHECK_VARPI_IMAGE: check_varpi_image,
        CHECK_CENTRALIZER: check_centralizer_criterion,
        CHECK_GENERIC_FIBER: check_generic_fiber,
        CHECK_RICHARDSON_DENSITY: check_richardson_density,
    }
    if check_id in runners:
        return runners[check_id]
    if check_id == CHECK_VXY_EQ_B:
        return lambda n, levi, samples, seed, bound: check_vxy_eq_b(n, samples, seed, bound)
    if check_id == CHECK_FIBER_CARDINALITY:
        return lambda n, levi, samples, seed, bound: check_fiber_cardinality(n, levi)
    if check_id == CHECK_WEYL_LEMMA:
        return lambda n, levi, samples, seed, bound: check_weyl_lemma(n)
    if check_id == CHECK_PARABOLIC_CONJUGACY:
        return lambda n, levi, samples, seed, bound: check_parabolic_conjugacy(n)
    raise KeyError(check_id)


Task = tuple[str, int, str | None, int, int, int]


def plan(config: RunConfig) -> list[Task]:
    """The ordered list of (check, n, levi, samples, seed, bound) cells to run.

    Cells go rank by rank, composition by composition, in check order. The
    Borel equality check only runs on the Borel composition, and rank checks
    run once per rank after its compositions.
    """
    tasks: list[Task] = []
    checks = [check for check in ALL_CHECKS if check in config.checks]
    for n in config.ranks:
        for levi in config.compositions_for(n):
            for check in checks:
                if check in RANK_CHECKS or (check == CHECK_VXY_EQ_B and not levi.is_borel):
                    continue
                tasks.append((check, n, str(levi), config.samples, config.seed, config.bound))
        tasks.extend(
            (check, n, None, config.samples, config.seed, config.bound) for check in checks if check in RANK_CHECKS
        )
    return tasks


def run_task(task: Task) -> CheckResult:
    check_id, n, levi, samples, seed, bound = task
    composition = LeviComposition.parse(levi) if levi is not None else None
    return _cell_runner(check_id)(n, composition, samples, seed, bound)


def run_all(config: RunConfig) -> list[CheckResult]:
    """Run every configured check over the grid, in a fixed order."""
    tasks = plan(config)
    _LOGGER.info("Running %s check cells with %s job(s)", len(tasks), config.jobs)
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            return list(executor.map(run_task, tasks))
    return [run_task(task) for task in tasks]
