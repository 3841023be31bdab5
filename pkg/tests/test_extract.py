"""Coefficient extraction against the full-expansion oracle."""

from __future__ import annotations

import random

import pytest

from weakseq.errors import ResourceLimitError
from weakseq.extract import (
    coefficient,
    coefficient_for_factor_order,
    coefficient_oracle,
    expand_system,
)
from weakseq.polysys import build_factor_system


def test_q23_target_222_is_minus_one():
    q23 = build_factor_system("Q", t=2, ell=3)
    assert coefficient(q23, (2, 2, 2)) == -1
    assert coefficient_oracle(q23, (2, 2, 2)) == -1


def test_unreachable_exponent_is_zero():
    q23 = build_factor_system("Q", t=2, ell=3)
    assert coefficient(q23, (6, 0, 0)) == 0


def test_above_total_degree_is_zero():
    q23 = build_factor_system("Q", t=2, ell=3)
    assert coefficient(q23, (3, 3, 3)) == 0
    assert coefficient_oracle(q23, (3, 3, 3)) == 0


def test_below_total_degree_matches_oracle():
    p32 = build_factor_system("P", k=3, t=2)
    full = expand_system(p32)
    for target in [(1, 2, 2), (0, 0, 0), (2, 2, 1), (1, 1, 1)]:
        assert coefficient(p32, target) == full.get(target, 0)


def random_targets(rng, system, count):
    """Half sampled from actual expansion paths, half arbitrary."""
    degree = system.degree
    nv = system.num_vars
    for _ in range(count // 2):
        e = [0] * nv
        for factor in system.factors:
            v, _ = factor[rng.randrange(len(factor))]
            e[v] += 1
        yield tuple(e)
    for _ in range(count - count // 2):
        yield tuple(rng.randint(0, max(2, degree // nv + 2)) for _ in range(nv))


@pytest.mark.parametrize(
    "family,kwargs",
    [
        ("F", dict(k=4)),
        ("P", dict(k=5, t=3)),
        ("Pbar", dict(k=5, t=4)),
        ("Q", dict(t=3, ell=4)),
        ("Qbar", dict(t=4, ell=5)),
        ("Htop", dict(k=7, t=3, ell=5)),
        ("Hbartop", dict(k=7, t=4, ell=5)),
    ],
)
def test_extraction_matches_oracle_on_random_targets(family, kwargs):
    system = build_factor_system(family, **kwargs)
    full = expand_system(system)
    rng = random.Random(f"{family}{sorted(kwargs.items())}")
    for target in random_targets(rng, system, 60):
        assert coefficient(system, target) == full.get(target, 0), (family, target)


def test_order_independence():
    system = build_factor_system("Q", t=3, ell=4)
    target = (3, 3, 3, 3)
    reference = coefficient(system, target)
    rng = random.Random(7)
    for _ in range(12):
        factors = list(system.factors)
        rng.shuffle(factors)
        assert coefficient_for_factor_order(factors, 4, target) == reference


def test_state_cap_raises_resource_error():
    system = build_factor_system("Q", t=4, ell=6)
    assert system.degree == 33
    target = (6, 6, 6, 5, 5, 5)  # balanced, reaches the total degree
    with pytest.raises(ResourceLimitError) as exc_info:
        coefficient(system, target, state_cap=16)
    assert exc_info.value.cap == 16


def test_oracle_term_cap():
    system = build_factor_system("Q", t=6, ell=11)
    with pytest.raises(ResourceLimitError):
        coefficient_oracle(system, (10,) * 11, term_cap=1000)


def test_monomial_validation():
    q23 = build_factor_system("Q", t=2, ell=3)
    with pytest.raises(ValueError):
        coefficient(q23, (1, 2))
    with pytest.raises(ValueError):
        coefficient(q23, (-1, 2, 2))


def test_empty_product_has_unit_constant_term():
    system = build_factor_system("Qbar", t=2, ell=1)  # no factors at all
    assert system.degree == 0
    assert coefficient(system, (0,)) == 1
    assert coefficient(system, (1,)) == 0
