"""Shared test helpers.

The reference computations here are deliberately written from first
principles (plain double loops, exhaustive enumeration) so they stay
independent of the package's incremental machinery.
"""

from __future__ import annotations

import itertools
import os
import random

import pytest

from labsolver.bounds import PartialState


def naive_correlations(seq):
    n = len(seq)
    return [
        sum(seq[i] * seq[i + k] for i in range(n - k)) for k in range(1, n)
    ]


def naive_energy(seq):
    return sum(c * c for c in naive_correlations(seq))


def all_sequences(n):
    return itertools.product((1, -1), repeat=n)


def completions(spins):
    """All full sequences extending a partial assignment (0 = unassigned)."""
    gap = [i for i, v in enumerate(spins) if v == 0]
    for bits in itertools.product((1, -1), repeat=len(gap)):
        full = list(spins)
        for pos, v in zip(gap, bits):
            full[pos] = v
        yield tuple(full)


def random_partial(rng: random.Random, n: int, depth: int | None = None,
                   **kwargs) -> PartialState:
    """A PartialState reached by a random outermost-first walk."""
    st = PartialState(n, **kwargs)
    if depth is None:
        depth = rng.randint(0, n)
    for _ in range(depth):
        prefix, suffix = st._prefix, st._suffix
        choices = []
        if prefix <= suffix:
            choices.append(prefix)
        if suffix <= prefix and st.spins[n - 1 - suffix] == 0:
            choices.append(n - 1 - suffix)
        st.assign(rng.choice(choices), rng.choice((1, -1)))
    return st


def extended_enabled() -> bool:
    return os.environ.get("LABS_EXTENDED", "") == "1"


def pytest_collection_modifyitems(config, items):
    if extended_enabled():
        return
    skip = pytest.mark.skip(reason="extended run disabled (set LABS_EXTENDED=1)")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)
