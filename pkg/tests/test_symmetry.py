import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from labsolver.sequences import SYMMETRY_GROUP, apply_symmetry, energy, is_skew
from labsolver.symmetry import (
    LexLeaderCheck,
    LexStatus,
    lex_leader_checks,
    lex_leader_satisfied,
    should_check,
    skew_preserving_symmetries,
    transform_by_template,
)
from labsolver.templates import Template, build_skew_template, build_template

from conftest import all_sequences, completions

spins = st.sampled_from((1, -1))


def random_template(rng, n):
    return Template(tuple(rng.choice((1, -1)) for _ in range(n)))


def passes_all(partial, checks):
    return all(
        lex_leader_satisfied(partial, c) is not LexStatus.VIOLATED
        for c in checks
    )


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------

def test_template_maps_to_all_plus_one():
    tpl = build_template(12)
    assert transform_by_template(tpl.values, tpl) == (1,) * 12


def test_all_ones_template_is_identity():
    tpl = Template((1,) * 5)
    assert transform_by_template((1, -1, 1, 1, -1), tpl) == (1, -1, 1, 1, -1)


def test_transform_keeps_unassigned_unassigned():
    tpl = Template((1, -1, -1))
    assert transform_by_template((0, -1, 0), tpl) == (0, 1, 0)


def test_transform_length_mismatch():
    with pytest.raises(ValueError):
        transform_by_template((1, 1), Template((1, 1, 1)))


@given(st.integers(2, 16), st.data())
def test_transform_is_involution(n, data):
    seq = tuple(data.draw(spins) for _ in range(n))
    tpl = Template(tuple(data.draw(spins) for _ in range(n)))
    once = transform_by_template(seq, tpl)
    assert transform_by_template(once, tpl) == seq


# ---------------------------------------------------------------------------
# lex-leader checks
# ---------------------------------------------------------------------------

def test_exactly_seven_checks():
    checks = lex_leader_checks(build_template(9))
    assert len(checks) == 7
    assert all(not c.symmetry.is_identity for c in checks)


def test_identity_rejected_for_single_check():
    with pytest.raises(ValueError):
        LexLeaderCheck.build(SYMMETRY_GROUP[0], build_template(5))


def test_template_satisfies_every_check():
    for n in (5, 8, 11, 14):
        tpl = build_template(n)
        for check in lex_leader_checks(tpl):
            assert lex_leader_satisfied(tpl.values, check) is LexStatus.SATISFIED


def test_empty_assignment_is_undetermined():
    tpl = build_template(7)
    for check in lex_leader_checks(tpl):
        assert lex_leader_satisfied((0,) * 7, check) is LexStatus.UNDETERMINED


def test_one_survivor_per_orbit_n8():
    n = 8
    tpl = build_template(n)
    checks = lex_leader_checks(tpl)
    survivors = {s for s in all_sequences(n) if passes_all(s, checks)}
    seen = set()
    orbit_count = 0
    for s in all_sequences(n):
        if s in seen:
            continue
        orbit = {apply_symmetry(s, g) for g in SYMMETRY_GROUP}
        seen |= orbit
        orbit_count += 1
        assert len(orbit & survivors) == 1
    assert len(survivors) == orbit_count


@pytest.mark.parametrize("n", range(2, 11))
def test_survivor_energy_set_is_complete(n):
    rng = random.Random(n)
    for tpl in (build_template(n), random_template(rng, n)):
        checks = lex_leader_checks(tpl)
        survivor_energies = set()
        all_energies = set()
        for s in all_sequences(n):
            e = energy(s)
            all_energies.add(e)
            if passes_all(s, checks):
                survivor_energies.add(e)
        assert survivor_energies == all_energies


def test_violated_partials_stay_violated():
    rng = random.Random(404)
    tried = 0
    for _ in range(300):
        n = rng.randint(3, 10)
        tpl = random_template(rng, n)
        checks = lex_leader_checks(tpl)
        partial = tuple(
            rng.choice((0, 1, -1)) for _ in range(n)
        )
        for check in checks:
            if lex_leader_satisfied(partial, check) is LexStatus.VIOLATED:
                tried += 1
                for full in completions(partial):
                    assert lex_leader_satisfied(full, check) is LexStatus.VIOLATED
    assert tried > 50


def test_undetermined_partials_split_both_ways():
    # An undetermined comparison must leave the deciding position open, so
    # by definition it cannot justify pruning; spot-check that completions
    # of undetermined states really do land on both outcomes somewhere.
    rng = random.Random(11)
    saw_sat = saw_vio = False
    for _ in range(200):
        n = rng.randint(3, 8)
        tpl = random_template(rng, n)
        check = lex_leader_checks(tpl)[rng.randrange(7)]
        partial = tuple(rng.choice((0, 1, -1)) for _ in range(n))
        if lex_leader_satisfied(partial, check) is not LexStatus.UNDETERMINED:
            continue
        outcomes = {lex_leader_satisfied(f, check) for f in completions(partial)}
        saw_sat |= LexStatus.SATISFIED in outcomes
        saw_vio |= LexStatus.VIOLATED in outcomes
    assert saw_sat and saw_vio


# ---------------------------------------------------------------------------
# scheduling and the skew restriction
# ---------------------------------------------------------------------------

def test_should_check_examples():
    assert should_check(2, 40)
    assert not should_check(3, 40)
    assert not should_check(22, 40)
    assert should_check(0, 40)
    assert should_check(20, 40)
    assert not should_check(21, 41)  # odd depth
    assert should_check(20, 41)
    with pytest.raises(ValueError):
        should_check(-1, 10)


def test_skew_preserving_symmetries_on_probe():
    probe = build_skew_template(30).values  # N = 59
    kept = skew_preserving_symmetries(probe)
    # All seven non-identity elements preserve skew-symmetry.
    assert len(kept) == 7
    rng = random.Random(3)
    from labsolver.sequences import expand_skew

    for _ in range(50):
        free = tuple(rng.choice((1, -1)) for _ in range(rng.randint(2, 12)))
        full = expand_skew(free)
        for g in kept:
            assert is_skew(apply_symmetry(full, g))


def test_skew_probe_must_be_skew():
    with pytest.raises(ValueError):
        skew_preserving_symmetries((1, 1, 1))
