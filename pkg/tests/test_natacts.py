from itertools import product

import pytest

from actlab.act import hom_mappings
from actlab.errors import BoundExceeded, IndexOutOfRange
from actlab.natacts import (
    adapter_class_check,
    all_natacts,
    canonical_key,
    divisible_natacts,
    enumerate_natacts,
    eventual_image,
    nat_class_check,
    nat_divisible_cover,
    natact,
    tail_into_cycle,
    threshold_period,
    to_finite_act,
)

from . import oracles


def test_tail_into_cycle_shape():
    X = tail_into_cycle(2, 3)
    assert X.step == (1, 2, 3, 4, 2)
    E, g = eventual_image(X)
    assert E.members == (2, 3, 4)
    assert g == {2: 3, 3: 4, 4: 2}


def test_eventual_image_simple_cases():
    assert eventual_image(natact([1, 2, 0]))[0].members == (0, 1, 2)
    assert eventual_image(natact([2, 2, 2]))[0].members == (2,)
    assert eventual_image(natact([0, 1]))[0].members == (0, 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_eventual_image_matches_subset_scan(n):
    for step in product(range(n), repeat=n):
        assert eventual_image(natact(step))[0].members == oracles.eventual_image(step)


def test_class_checks():
    assert nat_class_check(natact([1, 2, 0]), "TF")
    assert nat_class_check(natact([1, 2, 0]), "D")
    const = natact([0, 0])
    assert not nat_class_check(const, "TF")
    assert not nat_class_check(const, "D")
    assert nat_class_check(natact([0, 1]), "WTF")
    with pytest.raises(ValueError):
        nat_class_check(const, "I")


@pytest.mark.parametrize("n", range(1, 5))
def test_adapter_preserves_verdicts(n):
    for X in enumerate_natacts(n, up_to_iso=False):
        for label in ("TF", "WTF", "D"):
            assert bool(adapter_class_check(X, label)) == bool(nat_class_check(X, label))


def test_threshold_period():
    assert threshold_period(tail_into_cycle(2, 3)) == (2, 3)
    assert threshold_period(natact([0])) == (0, 1)
    F = to_finite_act(tail_into_cycle(2, 3))
    assert F.monoid.order == 5


def test_enumeration_counts():
    # functional graphs up to isomorphism
    assert [len(enumerate_natacts(n)) for n in range(1, 7)] == [1, 3, 7, 19, 47, 130]
    assert [len(enumerate_natacts(n)) for n in range(1, 5)] == [oracles.functional_graph_count(n) for n in range(1, 5)]
    with pytest.raises(BoundExceeded):
        enumerate_natacts(7)


def test_canonical_key_is_complete():
    for n in range(1, 5):
        steps = list(product(range(n), repeat=n))
        keys = {}
        for s in steps:
            keys.setdefault(canonical_key(natact(s)), []).append(s)
        for group in keys.values():
            X = natact(group[0])
            for s in group[1:]:
                assert hom_mappings(X, natact(s), mono=True, limit=1)


def test_homs_preserve_eventual_image():
    acts = all_natacts(4)
    for X in acts:
        EX = set(eventual_image(X)[0].members)
        for Y in acts:
            EY = set(eventual_image(Y)[0].members)
            for f in hom_mappings(X, Y):
                assert {f[x] for x in EX} <= EY


def test_divisible_natacts_are_bijective():
    for X in divisible_natacts(5):
        assert sorted(X.step) == list(range(X.size))
    # partitions of 1..5
    assert len(divisible_natacts(5)) == 1 + 2 + 3 + 5 + 7


def test_nat_divisible_cover():
    cert = nat_divisible_cover(tail_into_cycle(2, 3))
    assert cert and cert.map.mapping == (2, 3, 4)
    assert nat_divisible_cover(natact([1, 0])).map.mapping == (0, 1)
    assert nat_divisible_cover(natact([0])).map.mapping == (0,)


def test_natact_validation():
    with pytest.raises(IndexOutOfRange):
        natact([3, 0])
    with pytest.raises(IndexOutOfRange):
        natact([])
