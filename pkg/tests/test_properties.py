"""Property tests: random acts, relations and maps against the brute-force oracles."""
from hypothesis import given, settings, strategies as st

from actlab.act import ActMap, all_acts, hom_mappings, is_equivariant
from actlab.congruence import generated_congruence, is_compatible, kernel, quotient_act
from actlab.monoid import all_monoids
from actlab.natacts import eventual_image, natact
from actlab.quotients import nat_sigma_oracle, weak_torsion_relation

from . import oracles

MONOIDS = all_monoids(3)
ACTS = [X for M in MONOIDS for X in all_acts(M, 4)]


def _pairs(n):
    return st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3)


@st.composite
def act_and_pairs(draw):
    X = draw(st.sampled_from(ACTS))
    return X, draw(_pairs(X.size))


@st.composite
def steps(draw):
    n = draw(st.integers(1, 7))
    return tuple(draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))


@settings(max_examples=150, deadline=None)
@given(act_and_pairs())
def test_generated_congruence_is_least_compatible(case):
    X, pairs = case
    rho = generated_congruence(X, pairs)
    assert is_compatible(X, rho.labels)
    assert oracles.compatible(X.action, rho.labels)
    assert all(rho.related(x, y) for x, y in pairs)
    assert rho.pairs() == oracles.generated(X.action, pairs)


@settings(max_examples=100, deadline=None)
@given(act_and_pairs())
def test_quotient_kernel_round_trip(case):
    X, pairs = case
    rho = generated_congruence(X, pairs)
    Q, proj = quotient_act(X, rho)
    assert Q.size == rho.num_blocks
    assert proj.is_surjective
    assert is_equivariant(X, Q, proj.mapping)
    assert kernel(proj).labels == rho.labels


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_composite_of_homs_is_hom(data):
    M = data.draw(st.sampled_from(MONOIDS))
    acts = all_acts(M, 3)
    A, B, C = (data.draw(st.sampled_from(acts)) for _ in range(3))
    f_maps, g_maps = hom_mappings(A, B), hom_mappings(B, C)
    assert sorted(f_maps) == sorted(oracles.homs(A.action, B.action))
    if f_maps and g_maps:
        f = ActMap(A, B, data.draw(st.sampled_from(f_maps)))
        g = ActMap(B, C, data.draw(st.sampled_from(g_maps)))
        assert is_equivariant(A, C, g.compose(f).mapping)


@settings(max_examples=200, deadline=None)
@given(steps())
def test_eventual_image_matches_subset_scan(step):
    X = natact(step)
    assert eventual_image(X)[0].members == oracles.eventual_image(step)


@settings(max_examples=200, deadline=None)
@given(steps())
def test_nat_sigma_is_congruence(step):
    X = natact(step)
    rel = weak_torsion_relation(X)
    assert rel.is_congruence, rel.witness
    assert rel.pairs == nat_sigma_oracle(X)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(ACTS))
def test_finite_sigma_is_diagonal(X):
    rel = weak_torsion_relation(X)
    assert rel.is_congruence
    assert rel.pairs == frozenset((x, x) for x in X.elements)
