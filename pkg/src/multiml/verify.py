"""Randomized check of |E_{(mu),gamma}(z)| <= C * E_{mu_1,gamma}(|z_1| + ... + |z_n|).

Every trial draws its parameters from its own Philox stream keyed by the seed
with the trial index in the top counter word, so a trial's inputs do not
depend on which process runs it or in what order. Reductions are counts and
maxima with ties going to the lowest index, which makes reports identical for
any worker count.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .classic import DEFAULT_K_MAX as CLASSIC_K_MAX
from .classic import MLParams, eval_classic
from .combinatorics import DEFAULT_TERM_BUDGET
from .errors import DomainError, MultiMLError
from .estimate import compute_constants
from .multinomial import DEFAULT_K_MAX as MULTI_K_MAX
from .multinomial import N_MAX, MultiMLParams, eval_multinomial

MU_GAP = 1e-3
UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class BoundCheck:
    lhs: float
    rhs_paper: float
    rhs_safe: float
    ok_paper: bool
    ok_safe: bool
    slack: float

    def to_dict(self) -> dict:
        return asdict(self)


def check_bound(
    p: MultiMLParams,
    z: Sequence[float],
    tolerance: float = 1e-12,
    k_max_classic: int = CLASSIC_K_MAX,
    k_max_multinomial: int = MULTI_K_MAX,
    budget: int = DEFAULT_TERM_BUDGET,
) -> BoundCheck:
    """Evaluate both sides of the bound for one (p, z).

    ``slack`` collects what the two truncated sums may be missing: the
    multinomial tail, C times the classic tail, plus ``tolerance``. Terms are
    not formed in double-double here; the bound is never tight when the
    series cancels, so plain rounding cannot flip the outcome.
    """
    p.require_ascending()
    c = compute_constants(p)
    r = float(np.abs(np.asarray(z, dtype=np.float64)).sum())
    # The classic side is cheap and fails first for out-of-range arguments.
    rhs = eval_classic(MLParams(p.mus[0], p.gamma_param), r, tolerance, k_max_classic)
    lhs = eval_multinomial(p, z, tolerance, k_max_multinomial, budget, precise=False)
    a = abs(lhs.value)
    rhs_paper = c.c_paper * rhs.value
    rhs_safe = c.c_safe * rhs.value
    slack = lhs.tail_bound + tolerance
    return BoundCheck(
        lhs=a,
        rhs_paper=rhs_paper,
        rhs_safe=rhs_safe,
        ok_paper=a <= rhs_paper + c.c_paper * rhs.tail_bound + slack,
        ok_safe=a <= rhs_safe + c.c_safe * rhs.tail_bound + slack,
        slack=slack,
    )


@dataclass(frozen=True)
class Ranges:
    """Sampling ranges. Lower ends of mu and gamma are exclusive."""

    n_min: int = 1
    n_max: int = 4
    mu_min: float = 0.0
    mu_max: float = 2.0
    gamma_min: float = 0.05
    gamma_max: float = 3.0
    z_max: float = 10.0

    def __post_init__(self) -> None:
        if not (1 <= self.n_min <= self.n_max <= N_MAX):
            raise DomainError(f"need 1 <= n_min <= n_max <= {N_MAX}")
        if not (0.0 <= self.mu_min and self.mu_max - self.mu_min > (self.n_max - 1) * MU_GAP):
            raise DomainError("mu range must be nonnegative and wide enough for n_max exponents")
        if not (0.0 <= self.gamma_min < self.gamma_max):
            raise DomainError("gamma range must satisfy 0 <= gamma_min < gamma_max")
        if not (math.isfinite(self.z_max) and self.z_max >= 0.0):
            raise DomainError("z_max must be finite and >= 0")


def trial_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed, counter=index << 192))


def draw_trial(seed: int, index: int, ranges: Ranges) -> tuple[MultiMLParams, np.ndarray]:
    g = trial_generator(seed, index)
    n = int(g.integers(ranges.n_min, ranges.n_max + 1))
    # Uniform on (mu_min, top], sorted, then spread by the minimum gap.
    top = ranges.mu_max - (n - 1) * MU_GAP
    base = np.sort(top - (top - ranges.mu_min) * g.random(n))
    mus = tuple(float(m + i * MU_GAP) for i, m in enumerate(base))
    gam = ranges.gamma_max - (ranges.gamma_max - ranges.gamma_min) * g.random()
    z = g.uniform(-ranges.z_max, ranges.z_max, n) if ranges.z_max > 0 else np.zeros(n)
    return MultiMLParams(mus, float(gam)), z


@dataclass(frozen=True)
class _Outcome:
    index: int
    ratio_paper: float = math.nan
    ratio_safe: float = math.nan
    ok_paper: bool = True
    ok_safe: bool = True
    error: str | None = None


def _run_trial(args) -> _Outcome:
    seed, index, ranges, tolerance, k_max_classic, k_max_multinomial, budget = args
    p, z = draw_trial(seed, index, ranges)
    try:
        b = check_bound(p, z, tolerance, k_max_classic, k_max_multinomial, budget)
    except MultiMLError as exc:
        return _Outcome(index, error=type(exc).__name__)
    return _Outcome(
        index,
        ratio_paper=b.lhs / b.rhs_paper,
        ratio_safe=b.lhs / b.rhs_safe,
        ok_paper=b.ok_paper,
        ok_safe=b.ok_safe,
    )


def _run_chunk(args_list) -> list[_Outcome]:
    return [_run_trial(a) for a in args_list]


@dataclass(frozen=True)
class VerifyReport:
    trials: int
    violations_paper: int
    violations_safe: int
    max_ratio_paper: float
    max_ratio_safe: float
    seed: int
    worst_case: dict | None
    errors: int = 0
    error_kinds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def verify_random(
    trials: int,
    seed: int = 0,
    ranges: Ranges | None = None,
    tolerance: float = 1e-12,
    k_max_classic: int = CLASSIC_K_MAX,
    k_max_multinomial: int = MULTI_K_MAX,
    budget: int = DEFAULT_TERM_BUDGET,
    workers: int = 1,
) -> VerifyReport:
    """Run ``check_bound`` on ``trials`` random instances.

    Trials that raise (budget, convergence, overflow) are excluded from the
    violation counts and tallied in ``errors`` / ``error_kinds``.
    """
    if int(trials) != trials or trials < 1:
        raise DomainError(f"trials must be a positive integer, got {trials!r}")
    if int(seed) != seed or not (0 <= seed <= UINT64_MAX):
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    trials, seed = int(trials), int(seed)
    ranges = ranges or Ranges()
    jobs = [
        (seed, i, ranges, tolerance, k_max_classic, k_max_multinomial, budget)
        for i in range(trials)
    ]
    if workers > 1:
        size = max(1, trials // (8 * workers))
        chunks = [jobs[i : i + size] for i in range(0, trials, size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = [o for part in pool.map(_run_chunk, chunks) for o in part]
    else:
        outcomes = _run_chunk(jobs)

    viol_paper = viol_safe = 0
    max_paper = max_safe = -math.inf
    worst = None
    kinds: Counter[str] = Counter()
    for o in outcomes:
        if o.error is not None:
            kinds[o.error] += 1
            continue
        viol_paper += not o.ok_paper
        viol_safe += not o.ok_safe
        max_paper = max(max_paper, o.ratio_paper)
        if o.ratio_safe > max_safe:
            max_safe, worst = o.ratio_safe, o.index

    worst_case = None
    if worst is not None:
        p, z = draw_trial(seed, worst, ranges)
        worst_case = {"mus": list(p.mus), "gamma": p.gamma_param, "z": [float(v) for v in z]}
    return VerifyReport(
        trials=trials,
        violations_paper=viol_paper,
        violations_safe=viol_safe,
        max_ratio_paper=max_paper if worst is not None else math.nan,
        max_ratio_safe=max_safe if worst is not None else math.nan,
        seed=seed,
        worst_case=worst_case,
        errors=sum(kinds.values()),
        error_kinds=dict(sorted(kinds.items())),
    )
