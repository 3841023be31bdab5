"""Constructive search: greedy prefixes, backtracking, the t=3 direct
construction, low-collision orderings and exhaustive small-group sweeps.

Everything is deterministic: candidates are always scanned in ascending
canonical residue order, and randomized restarts derive their generator
from an explicit seed.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import InternalInvariantError
from .zn import Modulus, Ordering, SubsetSpec, t_weak_violations


@dataclass(frozen=True)
class GreedyOptions:
    variant: str = "main"  # "main" | "cmpp"; candidates always tried ascending
    involution_first: bool = False

    def __post_init__(self):
        if self.variant not in ("main", "cmpp"):
            raise ValueError(f"variant must be 'main' or 'cmpp', got {self.variant!r}")


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = 1_000_000
    time_limit_ms: int | None = None

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes < 1:
            raise ValueError("max_nodes must be positive")
        if self.time_limit_ms is not None and self.time_limit_ms < 1:
            raise ValueError("time_limit_ms must be positive")


UNBOUNDED = SearchBudget(max_nodes=None, time_limit_ms=None)


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "none" | "budget_exhausted"
    ordering: tuple[int, ...] | None
    nodes_visited: int


def greedy_prefix(
    subset: SubsetSpec, t: int, h: int, opts: GreedyOptions = GreedyOptions()
) -> tuple[int, ...]:
    """First h elements of an ordering with no short-window partial-sum
    repeat inside the prefix.

    At each step the forbidden values are the <= t-1 residues that would
    close a window ending at the new element; at most t-1 candidates die,
    and the size bound (h <= k-(t-1), or k-(t-2) for the cmpp variant, which
    ignores the length-2 window) leaves at least one survivor.  Running out
    of candidates inside the bound is therefore a bug, not an input error.
    """
    n = subset.modulus.n
    k = subset.k
    if t < 1:
        raise ValueError("t must be positive")
    allowed_h = min(k, k - (t - 1) if opts.variant == "main" else k - (t - 2))
    if not 1 <= h <= allowed_h:
        raise ValueError(
            f"h must satisfy 1 <= h <= {allowed_h} for variant {opts.variant!r} (k={k}, t={t})"
        )
    if opts.variant == "cmpp":
        from .zn import cmpp_admissible

        if not cmpp_admissible(subset):
            raise ValueError("cmpp variant requires a set with at most one of each pair {x, -x}")
    if opts.involution_first and (n % 2 != 0 or n // 2 not in subset.elements):
        raise ValueError("involution_first requires even n with n/2 in the set")

    elements = list(subset.elements)  # ascending
    used: set[int] = set()
    prefix: list[int] = []
    sums = [0]
    if opts.involution_first:
        a1 = n // 2
        prefix.append(a1)
        used.add(a1)
        sums.append(a1 % n)
    while len(prefix) < h:
        m = len(prefix)
        # windows (i, m+1) with length m+1-i in [2, t] forbid x = s_i - s_m
        lo = max(0, m + 1 - t)
        hi = m - 1 if opts.variant == "cmpp" else m
        forbidden = {(sums[i] - sums[m]) % n for i in range(lo, hi)}
        for x in elements:
            if x not in used and x not in forbidden:
                prefix.append(x)
                used.add(x)
                sums.append((sums[m] + x) % n)
                break
        else:
            raise InternalInvariantError(
                f"greedy pigeonhole failed: n={n}, set={subset.elements}, t={t}, "
                f"variant={opts.variant}, prefix={prefix}"
            )
    return tuple(prefix)


def backtracking_search(
    subset: SubsetSpec, t: int, budget: SearchBudget = SearchBudget()
) -> SearchResult:
    """Depth-first search for a t-weak sequencing.

    Prunes any prefix with a window-t collision; children are visited in
    ascending residue order, so the found ordering is the lexicographically
    first valid one.  One node = one attempted element placement.
    """
    n = subset.modulus.n
    k = subset.k
    if not 1 <= t < k:
        raise ValueError(f"need 1 <= t < k, got t={t}, k={k}")
    deadline = None
    if budget.time_limit_ms is not None:
        deadline = time.monotonic() + budget.time_limit_ms / 1000.0
    elements = list(subset.elements)
    used = [False] * k
    seq: list[int] = []
    sums = [0]
    nodes = 0
    exhausted = False

    def rec() -> bool:
        nonlocal nodes, exhausted
        m = len(seq)
        if m == k:
            return True
        window_lo = max(0, m + 1 - t)
        for idx in range(k):
            if used[idx]:
                continue
            if budget.max_nodes is not None and nodes >= budget.max_nodes:
                exhausted = True
                return False
            if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
                exhausted = True
                return False
            nodes += 1
            s = (sums[m] + elements[idx]) % n
            if any(s == sums[i] for i in range(window_lo, m + 1)):
                continue
            used[idx] = True
            seq.append(elements[idx])
            sums.append(s)
            if rec():
                return True
            used[idx] = False
            seq.pop()
            sums.pop()
            if exhausted:
                return False
        return False

    if rec():
        return SearchResult("found", tuple(seq), nodes)
    return SearchResult("budget_exhausted" if exhausted else "none", None, nodes)


def construct_t3(subset: SubsetSpec) -> tuple[int, ...]:
    """A 3-weak sequencing of any subset of size >= 4 of any Z_n.

    Sets of size <= 9 are handled by direct search (they are known to admit
    a full sequencing, which is in particular 3-weak).  Larger sets get a
    greedy prefix of k-4 elements, involution first when n is even and
    n/2 is present, and then the first of the 24 arrangements of the
    remaining four elements that verifies clean; the case analysis behind
    the greedy guarantee shows one of them always does.
    """
    n = subset.modulus.n
    k = subset.k
    if k < 4:
        raise ValueError(f"need |A| >= 4, got {k}")
    if k <= 9:
        result = backtracking_search(subset, 3, UNBOUNDED)
        if result.status != "found":
            raise InternalInvariantError(
                f"no 3-weak sequencing found for small set n={n}, A={subset.elements}"
            )
        return result.ordering
    involution = n % 2 == 0 and n // 2 in subset.elements
    prefix = greedy_prefix(subset, 3, k - 4, GreedyOptions(involution_first=involution))
    rest = sorted(set(subset.elements) - set(prefix))
    for tail in permutations(rest):
        candidate = Ordering(subset.modulus, prefix + tail)
        if not t_weak_violations(candidate, 3):
            return candidate.sequence
    raise InternalInvariantError(
        f"all 24 tail arrangements failed: n={n}, A={subset.elements}, prefix={prefix}"
    )


# ---------------------------------------------------------------------------
# randomized restarts
# ---------------------------------------------------------------------------


def derive_rng(seed: int, stream: int) -> random.Random:
    """Deterministic, documented child-seed derivation: SHA-256 of
    "<seed>:<stream>" taken as a 64-bit integer seeding CPython's
    Mersenne Twister."""
    digest = hashlib.sha256(f"{seed}:{stream}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def shuffled(values, rng: random.Random) -> list:
    """Fisher-Yates with rejection-sampled indices (stable across Python
    releases, unlike the stdlib shuffle contract)."""
    out = list(values)
    for i in range(len(out) - 1, 0, -1):
        j = _randbelow(rng, i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def _randbelow(rng: random.Random, bound: int) -> int:
    bits = (bound - 1).bit_length()
    if bound <= 1:
        return 0
    while True:
        r = rng.getrandbits(bits)
        if r < bound:
            return r


@dataclass(frozen=True)
class LowCollisionResult:
    ordering: tuple[int, ...]
    violation_count: int
    bound_met: bool  # violation_count <= t - 2
    restarts_used: int
    seed: int


def find_low_collision_ordering(
    subset: SubsetSpec, t: int, seed: int, restarts: int
) -> LowCollisionResult:
    """Random-restart hunt for an ordering with at most t-2 short-window
    collisions (such orderings exist: the expected count over a uniform
    ordering stays below t-1)."""
    k = subset.k
    if not 2 <= t < k:
        raise ValueError(f"need 2 <= t < k, got t={t}, k={k}")
    if restarts < 1:
        raise ValueError("restarts must be positive")
    best_seq: tuple[int, ...] | None = None
    best_count = None
    used = 0
    for r in range(restarts):
        used = r + 1
        rng = derive_rng(seed, r)
        seq = tuple(shuffled(subset.elements, rng))
        count = len(t_weak_violations(Ordering(subset.modulus, seq), t))
        if best_count is None or count < best_count:
            best_seq, best_count = seq, count
        if best_count <= t - 2:
            break
    return LowCollisionResult(
        ordering=best_seq,
        violation_count=best_count,
        bound_met=best_count <= t - 2,
        restarts_used=used,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# exhaustive sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExhaustiveReport:
    n: int
    t: int
    k_lo: int
    k_hi: int
    subsets_checked: int
    sequenceable: int
    undecided: tuple[tuple[int, ...], ...]
    counterexamples: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "k_range": [self.k_lo, self.k_hi],
            "subsets_checked": self.subsets_checked,
            "sequenceable": self.sequenceable,
            "undecided": [list(s) for s in self.undecided],
            "counterexamples": [list(s) for s in self.counterexamples],
        }


def _check_chunk(args):
    n, t, max_nodes, chunk = args
    modulus = Modulus(n)
    ok = 0
    undecided = []
    counter = []
    for elems in chunk:
        subset = SubsetSpec(modulus, elems)
        result = backtracking_search(subset, t, SearchBudget(max_nodes=max_nodes))
        if result.status == "found":
            ok += 1
        elif result.status == "none":
            counter.append(elems)
        else:
            undecided.append(elems)
    return ok, undecided, counter


def exhaustive_check(
    modulus: Modulus,
    t: int,
    k_range: tuple[int, int],
    *,
    budget: SearchBudget = SearchBudget(),
    workers: int = 1,
) -> ExhaustiveReport:
    """Try every k-subset of Z_n \\ {0} for k in [k_lo, k_hi] with k > t.

    Budget exhaustion is reported per-set as "undecided", never as a
    counterexample.  The merged report does not depend on the worker count.
    """
    n = modulus.n
    k_lo, k_hi = k_range
    if k_lo > k_hi:
        raise ValueError("empty k range")
    elements = tuple(range(1, n))
    all_subsets = [
        elems
        for k in range(max(k_lo, t + 1), min(k_hi, n - 1) + 1)
        for elems in combinations(elements, k)
    ]
    if workers <= 1 or len(all_subsets) < 64:
        ok, undecided, counter = _check_chunk((n, t, budget.max_nodes, all_subsets))
    else:
        import multiprocessing

        chunk_size = (len(all_subsets) + workers - 1) // workers
        chunks = [
            (n, t, budget.max_nodes, all_subsets[i : i + chunk_size])
            for i in range(0, len(all_subsets), chunk_size)
        ]
        with multiprocessing.Pool(workers) as pool:
            parts = pool.map(_check_chunk, chunks)
        ok = sum(p[0] for p in parts)
        undecided = [s for p in parts for s in p[1]]
        counter = [s for p in parts for s in p[2]]
    return ExhaustiveReport(
        n=n,
        t=t,
        k_lo=k_lo,
        k_hi=k_hi,
        subsets_checked=len(all_subsets),
        sequenceable=ok,
        undecided=tuple(sorted(undecided)),
        counterexamples=tuple(sorted(counter)),
    )
