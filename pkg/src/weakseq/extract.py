"""Exact coefficient extraction from products of degree-1 linear forms.

The extractor walks the factors once (canonical order: ascending maximum
variable), maintaining a map from partial exponent vectors to exact integer
coefficients.  Two prunes keep the map small without ever touching the
result:

  * componentwise cap: a partial exponent may never exceed the target, and
  * closing projection: once the remaining factors can no longer lift a
    variable up to its target exponent, the state is dead.

Exponent vectors are packed into a single int, one fixed-width field per
variable with a spare guard bit, so the projection is three integer ops per
state.  All arithmetic is exact; nothing is reduced mod p.
"""

from __future__ import annotations

import os

from .errors import ResourceLimitError
from .polysys import FactorSystem

Monomial = tuple[int, ...]

# Cap on live exponent-vector states.  A state costs roughly 200 bytes
# (dict slot + packed key + coefficient), so the default corresponds to
# about 8 GiB.  Override with the WEAKSEQ_STATE_CAP environment variable.
DEFAULT_STATE_CAP = 40_000_000


def state_cap_from_env() -> int:
    raw = os.environ.get("WEAKSEQ_STATE_CAP")
    if raw is None:
        return DEFAULT_STATE_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError("WEAKSEQ_STATE_CAP must be positive")
    return cap


def check_monomial(system: FactorSystem, monomial: Monomial) -> None:
    if len(monomial) != system.num_vars:
        raise ValueError(
            f"monomial has {len(monomial)} exponents, system has {system.num_vars} variables"
        )
    if any(e < 0 for e in monomial):
        raise ValueError("monomial exponents must be non-negative")


def coefficient(system: FactorSystem, monomial: Monomial, *, state_cap: int | None = None) -> int:
    """Exact integer coefficient of the monomial in the expanded product."""
    check_monomial(system, monomial)
    return coefficient_for_factor_order(
        system.factors, system.num_vars, tuple(monomial), state_cap=state_cap
    )


def coefficient_for_factor_order(
    factors,
    num_vars: int,
    target: Monomial,
    *,
    state_cap: int | None = None,
) -> int:
    """Extraction honouring the given factor order (the result is order
    independent; the canonical order just closes variables early)."""
    cap = state_cap_from_env() if state_cap is None else state_cap
    factors = tuple(factors)
    if sum(target) > len(factors):
        return 0  # no monomial exceeds the total degree

    # field width: target exponents plus one guard bit per variable
    width = max(2, max(target, default=0).bit_length() + 1)
    mask = (1 << width) - 1
    guard = 0
    for v in range(num_vars):
        guard |= (1 << (width - 1)) << (width * v)

    # rem[i][v] = how many factors from index i on still touch variable v;
    # once exhausted, e_v must already equal target_v
    rem = [0] * num_vars
    lows = [0] * (len(factors) + 1)
    for idx in range(len(factors) - 1, -1, -1):
        packed_low = 0
        for v in range(num_vars):
            low = target[v] - rem[v]
            if low > 0:
                packed_low |= low << (width * v)
        lows[idx + 1] = packed_low
        for v, _ in factors[idx]:
            rem[v] += 1
    # before any factor: low = target_v - rem[v] (usually <= 0)
    packed_low = 0
    for v in range(num_vars):
        low = target[v] - rem[v]
        if low > 0:
            packed_low |= low << (width * v)
    lows[0] = packed_low
    if ((0 | guard) - lows[0]) & guard != guard:
        return 0  # some variable can never reach its target exponent

    states: dict[int, int] = {0: 1}
    for idx, factor in enumerate(factors):
        terms = [(width * v, coef, target[v]) for v, coef in factor]
        new: dict[int, int] = {}
        get = new.get
        for e, c in states.items():
            for shift, coef, cap_v in terms:
                if (e >> shift) & mask < cap_v:
                    ne = e + (1 << shift)
                    prev = get(ne)
                    new[ne] = c * coef if prev is None else prev + c * coef
        low = lows[idx + 1]
        states = {
            e: c for e, c in new.items() if c != 0 and ((e | guard) - low) & guard == guard
        }
        if len(states) > cap:
            raise ResourceLimitError(
                f"extraction state map exceeded cap after factor {idx + 1}/{len(factors)}"
                f" ({len(states)} > {cap} states); raise WEAKSEQ_STATE_CAP to proceed",
                cap=cap,
                used=len(states),
            )

    key = 0
    for v in range(num_vars):
        key |= target[v] << (width * v)
    return states.get(key, 0)


# ---------------------------------------------------------------------------
# independent oracle: full sparse expansion, no pruning
# ---------------------------------------------------------------------------

DEFAULT_TERM_CAP = 5_000_000


def expand_system(system: FactorSystem, *, term_cap: int = DEFAULT_TERM_CAP) -> dict[Monomial, int]:
    """Expand the whole product as {exponent vector: coefficient}.

    Only meant for small systems (the certificate-scale ones need the pruned
    extractor); raises once the term count passes the cap.
    """
    states: dict[Monomial, int] = {(0,) * system.num_vars: 1}
    for factor in system.factors:
        new: dict[Monomial, int] = {}
        for e, c in states.items():
            for v, coef in factor:
                ne = e[:v] + (e[v] + 1,) + e[v + 1:]
                new[ne] = new.get(ne, 0) + c * coef
        states = {e: c for e, c in new.items() if c != 0}
        if len(states) > term_cap:
            raise ResourceLimitError(
                f"full expansion exceeded {term_cap} terms; use coefficient() instead",
                cap=term_cap,
                used=len(states),
            )
    return states


def coefficient_oracle(
    system: FactorSystem, monomial: Monomial, *, term_cap: int = DEFAULT_TERM_CAP
) -> int:
    """Coefficient via full expansion; must agree with coefficient() exactly."""
    check_monomial(system, monomial)
    return expand_system(system, term_cap=term_cap).get(tuple(monomial), 0)
