"""The compiled kernels and the pure-Python fallback must agree exactly, order included."""
from itertools import permutations

import pytest

from actlab import _kernels_py as py
from actlab import kernels
from actlab.act import all_acts, example_act, regular_act
from actlab.monoid import all_monoids, sl2

ck = pytest.importorskip("actlab._ckernels")


def perms0(n):
    return [(0,) + p for p in permutations(range(1, n))]


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_monoid_tables_agree(n):
    assert py.monoid_tables(n, perms0(n)) == ck.monoid_tables(n, perms0(n))
    assert py.monoid_tables(n) == ck.monoid_tables(n)


def test_canonical_table_agree():
    for T in py.monoid_tables(3):
        assert py.canonical_table(T, 3, perms0(3)) == ck.canonical_table(T, 3, perms0(3))


@pytest.mark.parametrize("size", [1, 2, 3])
def test_action_tables_agree(size):
    for M in all_monoids(3):
        a = py.action_tables(M.flat, M.order, M.identity, size)
        b = ck.action_tables(M.flat, M.order, M.identity, size)
        assert a == b
        ps = list(permutations(range(size)))
        for f in a[:20]:
            assert py.canonical_action(f, size, M.order, ps) == ck.canonical_action(f, size, M.order, ps)


def test_homs_agree():
    for M in all_monoids(2):
        acts = all_acts(M, 3)
        for X in acts:
            for Y in acts:
                args = (X.hom_flat, X.size, Y.hom_flat, Y.size, X.hom_cols)
                assert py.homs(*args) == ck.homs(*args)
                assert py.homs(*args, mono=True) == ck.homs(*args, mono=True)
                assert py.homs(*args, limit=1) == ck.homs(*args, limit=1)


def test_homs_allowed_masks_agree():
    X = example_act(4, sl2())
    sets = [{0, 3}, {1, 3}, {0, 1, 2, 3}, {3}]
    allowed = [1 if y in sets[x] else 0 for x in range(4) for y in range(4)]
    args = (X.hom_flat, 4, X.hom_flat, 4, X.hom_cols)
    assert py.homs(*args, allowed=allowed) == ck.homs(*args, allowed=allowed)


def test_congruence_kernels_agree():
    for M in all_monoids(3):
        for X in all_acts(M, 3):
            assert py.right_congruences(X.flat, X.size, M.order) == ck.right_congruences(X.flat, X.size, M.order)
            pairs = [(0, X.size - 1)]
            assert py.closure(X.flat, X.size, M.order, pairs) == ck.closure(X.flat, X.size, M.order, pairs)
    S = regular_act(all_monoids(3)[-1])
    assert py.right_congruences(S.flat, S.size, S.size) == ck.right_congruences(S.flat, S.size, S.size)
