"""Shared fixtures: the sparse digit-set suite and pinned-seed translation
generators used across the oracle-equivalence and property tests."""

from __future__ import annotations

import random

import pytest

from cantor_intersect import DigitSet, NaryExpansion, make_digit_set
from cantor_intersect.transition import CaseState, sigma_step

# Sparse suite: the four required sets plus enough variety to cover
# uniform / regular-only / sparse-only shapes and digit counts 2..5.
SPARSE_SUITE_SPECS = [
    (3, [0, 2]),
    (8, [0, 5, 7]),
    (11, [0, 7, 10]),
    (9, [0, 2, 8]),
    (4, [0, 2]),
    (4, [0, 3]),
    (5, [0, 2]),
    (5, [0, 3]),
    (6, [0, 2, 4]),
    (7, [0, 3, 6]),
    (8, [0, 2, 6]),
    (9, [0, 4, 8]),
    (9, [0, 3, 8]),
    (10, [0, 2, 4, 6, 8]),
    (12, [0, 5, 7]),
]

NONSPARSE_NGA = (17, [0, 2, 4, 7, 10, 13])


@pytest.fixture(scope="session")
def sparse_suite() -> list[DigitSet]:
    suite = [make_digit_set(n, d) for n, d in SPARSE_SUITE_SPECS]
    assert all(ds.delta.sparse for ds in suite)
    assert len(suite) >= 12
    return suite


def random_expansion(rng: random.Random, ds: DigitSet) -> NaryExpansion:
    """A pinned-seed eventually periodic translation; half the draws bias
    digits toward the survivor sets so traces of useful depth appear."""
    n = ds.base
    if rng.random() < 0.5:
        pool = list(range(n))
    else:
        d = ds.delta
        pool = sorted(
            {x for x in d.members | d.members_minus_one if 0 <= x <= n - 1}
        )
    pre = tuple(rng.choice(pool) for _ in range(rng.randint(0, 2)))
    per = tuple(rng.choice(pool) for _ in range(rng.randint(1, 4)))
    return NaryExpansion(n, pre, per)


def random_alive_expansion(
    rng: random.Random, ds: DigitSet, tries: int = 200
) -> NaryExpansion | None:
    """Rejection-sample an eventually periodic t whose trace never dies."""
    allowed = {
        CaseState.INTERVAL: sorted(
            x
            for x in ds.delta.members | ds.delta.members_minus_one
            if 0 <= x <= ds.base - 1
        ),
        CaseState.POTENTIAL: sorted(
            x
            for x in ds.delta.reflected | ds.delta.reflected_minus_one
            if 0 <= x <= ds.base - 1
        ),
    }
    for _ in range(tries):
        state = CaseState.INTERVAL
        pre = []
        for _ in range(rng.randint(0, 2)):
            h = rng.choice(allowed[state])
            pre.append(h)
            state = sigma_step(state, h, ds)
        start_state = state
        per = []
        for _ in range(rng.randint(1, 4)):
            h = rng.choice(allowed[state])
            per.append(h)
            state = sigma_step(state, h, ds)
        if state is start_state and any(per):
            return NaryExpansion(ds.base, tuple(pre), tuple(per))
    return None
