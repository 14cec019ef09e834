import pytest

from actlab.act import all_acts, example_act, regular_act
from actlab.congruence import (
    RightCongruence,
    all_right_congruences,
    generated_congruence,
    identity_congruence,
    intersection_oracle,
    is_compatible,
    kernel,
    lattice_height,
    minimal_generating_pairs,
    noetherian_certificate,
    quotient_act,
    rgs_partitions,
    universal_congruence,
)
from actlab.errors import BoundExceeded
from actlab.monoid import all_monoids, cyclic_group
from actlab.natacts import tail_into_cycle

from . import oracles


def test_partition_count():
    # Bell numbers
    assert [len(rgs_partitions(n)) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]


def test_all_congruences_match_brute_force():
    for M in all_monoids(3):
        for X in all_acts(M, 4):
            got = sorted(r.labels for r in all_right_congruences(X))
            assert got == sorted(oracles.congruences(X.action))


def test_congruences_sorted_finest_first(SL2):
    congs = all_right_congruences(example_act(4, SL2))
    assert congs[0].is_identity
    assert congs[-1].is_universal
    assert [r.num_blocks for r in congs] == sorted((r.num_blocks for r in congs), reverse=True)


def test_generated_matches_both_oracles():
    for M in all_monoids(2):
        for X in all_acts(M, 4):
            for a in X.elements:
                for b in X.elements:
                    rho = generated_congruence(X, [(a, b)])
                    assert rho.pairs() == oracles.generated(X.action, [(a, b)])
                    assert rho.labels == intersection_oracle(X, [(a, b)]).labels


def test_generated_empty_is_identity(SL2):
    X = example_act(3, SL2)
    assert generated_congruence(X, []).is_identity


def test_generated_out_of_range(SL2):
    with pytest.raises(IndexError):
        generated_congruence(example_act(2, SL2), [(0, 5)])


def test_quotient_kernel_round_trip():
    for M in all_monoids(3):
        for X in all_acts(M, 3):
            for rho in all_right_congruences(X):
                Q, proj = quotient_act(X, rho)
                assert kernel(proj).labels == rho.labels
                assert proj.is_surjective
                assert Q.size == rho.num_blocks


def test_quotient_of_natact():
    X = tail_into_cycle(2, 3)
    rho = generated_congruence(X, [(0, 3)])
    Q, proj = quotient_act(X, rho)
    assert kernel(proj).labels == rho.labels


def test_meet_and_refinement(SL2):
    X = example_act(4, SL2)
    congs = all_right_congruences(X)
    for a in congs:
        for b in congs:
            m = a.meet(b)
            assert is_compatible(X, m.labels)
            assert m <= a and m <= b
    assert identity_congruence(X) <= universal_congruence(X)


def test_noetherian_certificate():
    X = regular_act(cyclic_group(3))
    rep = noetherian_certificate(X)
    assert rep.noetherian
    # subgroups of Z3: trivial and whole
    assert rep.num_congruences == 2
    assert rep.height == 2
    assert rep.generating_set == (0,)


def test_minimal_generating_pairs_regenerate(SL2):
    X = example_act(4, SL2)
    for rho in all_right_congruences(X):
        pairs = minimal_generating_pairs(rho)
        assert generated_congruence(X, pairs).labels == rho.labels
        assert len(pairs) <= rho.act.size - rho.num_blocks


def test_lattice_height_chain(SL2):
    congs = all_right_congruences(example_act(3, SL2))
    assert lattice_height(congs) == 3


def test_congruence_cap(SL2):
    with pytest.raises(BoundExceeded):
        all_right_congruences(example_act(9, SL2))
