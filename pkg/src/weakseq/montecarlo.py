"""Seeded Monte Carlo estimators for the random-ordering bounds, plus exact
enumeration oracles for desk-scale configurations.

Reproducibility contract: every trial derives its own generator from
(seed, trial index) via SHA-256, so reports are bit-identical for a given
seed no matter how trials are partitioned.  The underlying generator is
CPython's Mersenne Twister driven only through getrandbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .search import derive_rng, shuffled, _randbelow
from .zn import Modulus, Ordering, SubsetSpec, t_weak_violations


@dataclass(frozen=True)
class TrialConfig:
    n: int
    k: int
    t: int
    trials: int
    seed: int

    def __post_init__(self):
        if not 2 <= self.t < self.k < self.n:
            raise ValueError(f"need 2 <= t < k < n, got t={self.t}, k={self.k}, n={self.n}")
        if self.trials < 1:
            raise ValueError("trials must be positive")


@dataclass(frozen=True)
class EstimateReport:
    kind: str  # "failure_probability" | "collision_mean"
    estimate: float
    std_error: float
    bound: float
    bound_satisfied: bool  # estimate <= bound + 4 * std_error
    seed: int
    trials: int
    sharper_bound: float | None = None

    def to_json_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "estimate": self.estimate,
            "std_error": self.std_error,
            "bound": self.bound,
            "bound_satisfied": self.bound_satisfied,
            "seed": self.seed,
            "trials": self.trials,
        }
        if self.sharper_bound is not None:
            out["sharper_bound"] = self.sharper_bound
        return out


def failure_bound(n: int, k: int, t: int) -> Fraction:
    """Claimed cap on P(uniform ordered k-tuple is not a t-weak sequencing)."""
    return Fraction((t - 1) * (k - 2), n - 2)


def collision_sum_bound(k: int, t: int) -> Fraction:
    """The per-length refinement sum below t-1 quoted for the mean."""
    return sum((Fraction(k - l, k - l + 1) for l in range(2, t + 1)), Fraction(0))


def collision_count(n: int, seq, t: int) -> int:
    """X = number of pairs (i, j), j - i <= t, j != i+1, with s_i = s_j."""
    sums = [0]
    for a in seq:
        sums.append((sums[-1] + a) % n)
    k = len(seq)
    count = 0
    for i in range(k + 1):
        for j in range(i + 2, min(k, i + t) + 1):
            if sums[i] == sums[j]:
                count += 1
    return count


def _sample_distinct(n: int, k: int, rng) -> list[int]:
    # rejection for sparse draws, partial Fisher-Yates otherwise; the branch
    # depends only on (n, k), so sampling stays reproducible per config
    if 2 * k <= n - 1:
        out: list[int] = []
        seen: set[int] = set()
        while len(out) < k:
            x = 1 + _randbelow(rng, n - 1)
            if x not in seen:
                seen.add(x)
                out.append(x)
        return out
    pool = list(range(1, n))
    for i in range(k):
        j = i + _randbelow(rng, len(pool) - i)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:k]


def _proportion_report(kind, hits, trials, bound, seed, sharper=None) -> EstimateReport:
    p = hits / trials
    se = math.sqrt(p * (1.0 - p) / trials)
    return EstimateReport(
        kind=kind,
        estimate=p,
        std_error=se,
        bound=float(bound),
        bound_satisfied=p <= float(bound) + 4.0 * se,
        seed=seed,
        trials=trials,
        sharper_bound=sharper,
    )


def estimate_failure_probability(cfg: TrialConfig) -> EstimateReport:
    """Sample uniform ordered k-tuples of distinct nonzero residues and
    estimate P(not a t-weak sequencing)."""
    failures = 0
    for trial in range(cfg.trials):
        rng = derive_rng(cfg.seed, trial)
        seq = _sample_distinct(cfg.n, cfg.k, rng)
        if collision_count(cfg.n, seq, cfg.t) > 0:
            failures += 1
    return _proportion_report(
        "failure_probability",
        failures,
        cfg.trials,
        failure_bound(cfg.n, cfg.k, cfg.t),
        cfg.seed,
    )


def estimate_collision_mean(subset: SubsetSpec, t: int, trials: int, seed: int) -> EstimateReport:
    """Sample uniform orderings of the set and estimate E(X), the mean number
    of short-window partial-sum collisions."""
    k = subset.k
    if not 2 <= t < k:
        raise ValueError(f"need 2 <= t < k, got t={t}, k={k}")
    if trials < 1:
        raise ValueError("trials must be positive")
    n = subset.modulus.n
    counts = []
    for trial in range(trials):
        rng = derive_rng(seed, trial)
        seq = shuffled(subset.elements, rng)
        counts.append(collision_count(n, seq, t))
    mean = sum(counts) / trials
    if trials > 1:
        var = sum((c - mean) ** 2 for c in counts) / (trials - 1)
        se = math.sqrt(var / trials)
    else:
        se = 0.0
    bound = float(t - 1)
    return EstimateReport(
        kind="collision_mean",
        estimate=mean,
        std_error=se,
        bound=bound,
        bound_satisfied=mean <= bound + 4.0 * se,
        seed=seed,
        trials=trials,
        sharper_bound=float(collision_sum_bound(k, t)),
    )


# ---------------------------------------------------------------------------
# exact enumeration (replaces sampling at desk scale)
# ---------------------------------------------------------------------------


def exact_failure_probability(n: int, k: int, t: int) -> Fraction:
    """P(uniform ordered k-tuple of distinct nonzero residues fails) by full
    enumeration; feasible for k <= 6, n <= 17."""
    if not 2 <= t < k < n:
        raise ValueError(f"need 2 <= t < k < n, got t={t}, k={k}, n={n}")
    total = 0
    bad = 0
    for seq in permutations(range(1, n), k):
        total += 1
        if collision_count(n, seq, t) > 0:
            bad += 1
    return Fraction(bad, total)


def exact_collision_mean(subset: SubsetSpec, t: int) -> Fraction:
    """E(X) over all orderings of the set; feasible for k <= 8.

    Also cross-checks that X agrees with the verifier's violation count
    (gap-1 pairs can never collide, so the two counts must coincide).
    """
    k = subset.k
    if not 2 <= t < k:
        raise ValueError(f"need 2 <= t < k, got t={t}, k={k}")
    n = subset.modulus.n
    total = 0
    acc = 0
    for seq in permutations(subset.elements):
        x = collision_count(n, seq, t)
        v = len(t_weak_violations(Ordering(subset.modulus, seq), t))
        if x != v:
            raise AssertionError(
                f"collision count {x} != violation count {v} for {seq} (n={n}, t={t})"
            )
        acc += x
        total += 1
    return Fraction(acc, total)


def exact_failure_report(n: int, k: int, t: int) -> EstimateReport:
    """EstimateReport wrapper for the enumeration (std error 0)."""
    p = exact_failure_probability(n, k, t)
    bound = failure_bound(n, k, t)
    return EstimateReport(
        kind="failure_probability",
        estimate=float(p),
        std_error=0.0,
        bound=float(bound),
        bound_satisfied=p <= bound,
        seed=0,
        trials=math.perm(n - 1, k),
    )


def exact_collision_report(subset: SubsetSpec, t: int) -> EstimateReport:
    mean = exact_collision_mean(subset, t)
    return EstimateReport(
        kind="collision_mean",
        estimate=float(mean),
        std_error=0.0,
        bound=float(t - 1),
        bound_satisfied=mean <= t - 1,
        seed=0,
        trials=math.factorial(subset.k),
        sharper_bound=float(collision_sum_bound(subset.k, t)),
    )
