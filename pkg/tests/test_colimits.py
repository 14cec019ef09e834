import pytest

from actlab.act import ActMap, coproduct, example_act, hom_mappings, regular_act, terminal_act
from actlab.colimits import (
    Cocone,
    Diagram,
    DirectSystem,
    chain_system,
    coequalizer,
    coequalizer_cocone,
    colimit,
    jointly_epi,
    probe_library,
    pushout,
    pushout_cocone,
    verify_universal,
)
from actlab.errors import BoundExceeded, MismatchedEndpoints, MismatchedSource
from actlab.natacts import natact


def test_coequalizer_identifies_images(SL2):
    X = example_act(3, SL2)
    f = ActMap(X, X, (0, 1, 2))
    g = ActMap(X, X, (1, 0, 2))
    E, q = coequalizer(f, g)
    assert E.size == 2
    assert q.mapping[0] == q.mapping[1]
    assert verify_universal(coequalizer_cocone(f, g), 4)


def test_pushout_square_commutes(SL2):
    theta = terminal_act(SL2)
    S = regular_act(SL2)
    f = ActMap(theta, S, (1,))
    g = ActMap(theta, S, (1,))
    Q, qX, qY = pushout(f, g)
    assert qX.compose(f).mapping == qY.compose(g).mapping
    # two copies of S glued at the zero
    assert Q.size == 3
    assert verify_universal(pushout_cocone(f, g), 4)


def test_chain_colimit(SL2):
    A = example_act(2, SL2)
    B = example_act(3, SL2)
    f = ActMap(A, B, (0, 2))
    c = colimit(chain_system([A, B], [f]))
    assert c.apex.size == 3
    assert c.commutes()
    assert jointly_epi(c)
    assert verify_universal(c, 4)


def test_direct_system_checks(SL2):
    A = example_act(2, SL2)
    with pytest.raises(ValueError):
        DirectSystem((A, A), frozenset({(0, 0)}), {})
    with pytest.raises(MismatchedEndpoints):
        DirectSystem((A, A), frozenset({(0, 0), (1, 1), (0, 1)}), {})
    sys_ = DirectSystem((A,), frozenset({(0, 0)}), {})
    assert sys_.directed


def test_verify_universal_rejects_wrong_apex(SL2):
    # the coproduct is not a coequalizer of two distinct points
    X = example_act(3, SL2)
    f = ActMap(X, X, (0, 1, 2))
    g = ActMap(X, X, (1, 0, 2))
    D = Diagram((X, X), ((0, 1, f), (0, 1, g)))
    bad = Cocone(D, X, (ActMap(X, X, (0, 1, 2)), ActMap(X, X, (0, 1, 2))))
    rep = verify_universal(bad, 3)
    assert not rep and rep.failure[0] == "not-a-cocone"


def test_verify_universal_detects_non_unique_mediator(SL2):
    # the identity on a 3-point act "coequalizes" f with itself but so does a bigger apex
    X = example_act(2, SL2)
    f = ActMap(X, X, (0, 1))
    C, (i, _) = coproduct([X, terminal_act(SL2)])
    D = Diagram((X, X), ((0, 1, f), (0, 1, f)))
    c = Cocone(D, C, (i, i))
    rep = verify_universal(c, 3)
    assert not rep and rep.failure[0] == "non-unique-mediator"


def test_parallel_and_source_checks(SL2):
    X = example_act(2, SL2)
    Y = example_act(3, SL2)
    f = ActMap(X, X, (0, 1))
    g = ActMap(X, Y, (0, 2))
    with pytest.raises(MismatchedEndpoints):
        coequalizer(f, g)
    h = ActMap(Y, Y, (0, 1, 2))
    with pytest.raises(MismatchedSource):
        pushout(f, h)


def test_probe_library(SL2):
    probes = probe_library(SL2, 3)
    assert {P.size for P in probes} == {1, 2, 3}
    with pytest.raises(BoundExceeded):
        probe_library(SL2, 7)


def test_natact_colimit():
    A = natact([0])
    B = natact([1, 0])
    c = colimit(Diagram((A, B), ()))
    assert c.apex.step == (0, 2, 1)
    assert verify_universal(c, 3)
