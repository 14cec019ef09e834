from urllib.parse import unquote

import pytest

from actlab.errors import BoundExceeded
from actlab.suites import ALL_SUITES, FAIL, PASS, SUITES, theorem_suite


@pytest.mark.parametrize("name", ALL_SUITES)
def test_suite_passes_small(name):
    rep = theorem_suite(name, max_order=2, max_act_size=2, nat_max_size=3, family_bound=3)
    assert rep.ok, [r for r in rep.rows if r.verdict == FAIL]
    assert rep.rows


def test_registry_complete():
    assert set(SUITES) == set(ALL_SUITES)


def test_unknown_suite_and_caps():
    with pytest.raises(ValueError):
        theorem_suite("nope")
    with pytest.raises(BoundExceeded):
        theorem_suite("free-cover", max_order=5)


def test_effective_bounds_reported():
    rep = theorem_suite("injective-coproduct")
    assert "max_order=3 max_act_size=3" in rep.summary()


def test_parallel_matches_serial():
    a = theorem_suite("divisible-cover", parallelism=1, max_order=2, nat_max_size=4)
    b = theorem_suite("divisible-cover", parallelism=3, max_order=2, nat_max_size=4)
    assert a.to_text() == b.to_text()
    assert a.to_tsv() == b.to_tsv()


def test_tsv_rows_round_trip():
    rep = theorem_suite("injective-necessary", max_order=3)
    lines = rep.to_tsv().splitlines()
    assert lines[0] == "instance\tsuite\tverdict\twitness"
    for line, row in zip(lines[1:], rep.rows):
        inst, suite, verdict, witness = line.split("\t")
        assert (inst, suite, verdict, unquote(witness)) == (row.instance, row.suite, row.verdict, row.witness)


def test_exit_codes():
    rep = theorem_suite("example-6")
    assert rep.exit_code == 0 and rep.status == PASS
