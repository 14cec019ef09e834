import io
import os
from pathlib import Path

import pytest

from actlab.act import example_act
from actlab.cli import RunConfig, run_command
from actlab.errors import NotAssociative, ParseError
from actlab.io import parse_act, parse_blocks, parse_monoid, serialize, serialize_with_monoid
from actlab.monoid import all_monoids, sl2
from actlab.natacts import tail_into_cycle

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_sl2_file():
    M = parse_monoid(str(DATA / "sl2.monoid"))
    assert M == sl2()
    assert M.name == "SL2"


def test_parse_natact_short_header():
    X = parse_act("natact 5\nstep 1 2 3 4 2\n")
    assert X == tail_into_cycle(2, 3)


def test_parse_errors():
    with pytest.raises(NotAssociative):
        parse_monoid(str(DATA / "not_associative.monoid"))
    with pytest.raises(ParseError) as exc:
        parse_blocks("monoid M order 2 identity 0\n0 1\n")
    assert exc.value.line == 1
    with pytest.raises(ParseError) as exc:
        parse_blocks("# comment\nmonoid M order 2 identity 0\n0 x\n1 1\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_blocks("act X over NOPE size 1\n0\n")
    with pytest.raises(ParseError):
        parse_blocks("group G\n")


def test_round_trip():
    for M in all_monoids(3):
        text = serialize(M)
        assert serialize(parse_monoid(text)) == text
    X = example_act(5)
    text = serialize_with_monoid(X)
    Y = parse_act(text)
    assert Y == X
    assert serialize_with_monoid(Y) == text
    N = tail_into_cycle(2, 3)
    assert parse_act(serialize(N)) == N


def test_act_over_builtin_monoid():
    X = parse_act("act X over SL2 size 2\n0 1\n1 1\n")
    assert X.monoid == sl2()


def test_run_config_defaults():
    cfg = RunConfig()
    assert (cfg.max_monoid_order, cfg.max_act_size, cfg.family_size_bound, cfg.envelope_cap) == (4, 4, 4, 8)
    with pytest.raises(ValueError):
        RunConfig(max_act_size=0)


def test_cli_check_injective():
    code, out, _ = run("check", str(DATA / "example_sl2_8.act"), "--class", "injective")
    assert code == 0
    assert "member: true" in out


def test_cli_check_tsv():
    code, out, _ = run("check", str(DATA / "example_sl2_8.act"), "--class", "P", "--format", "tsv")
    assert code == 0
    assert "member\tfalse" in out
    assert "external characterization" in out


def test_cli_cover_natact():
    code, out, _ = run("cover", str(DATA / "tail_cycle.natact"), "--class", "divisible")
    assert code == 0
    assert "image: (2,3,4)" in out
    assert "cover: ump-cover" in out


def test_cli_cover_inconclusive():
    code, out, _ = run("cover", str(DATA / "example_sl2_8.act"), "--class", "free", "--bound", "4")
    assert code == 3
    assert "cover: none" in out


def test_cli_verify_free_cover():
    code, out, _ = run("verify", "free-cover", "--max-order", "3")
    assert code == 0
    assert "10 instances, 10 pass" in out


def test_cli_enumerate():
    code, out, _ = run("enumerate", "--order", "4", "--up-to-iso", "--count-only")
    assert code == 0 and out.strip() == "count: 35"
    code, out, _ = run("enumerate", "--order", "2", "--up-to-iso")
    assert out.count("monoid M2.") == 2


def test_cli_quotients():
    code, out, _ = run("quotients", "nat", str(DATA / "tail_cycle.natact"))
    assert code == 0
    assert "Q_X: (1,2,0)" in out
    assert "theta-mono: no" in out
    code, out, _ = run("quotients", "SL2", str(DATA / "example_sl2_8.act"))
    assert code == 0 and "theta-mono: yes" in out


def test_cli_exit_codes():
    assert run("verify", "bogus")[0] == 2
    assert run("check", "missing.act", "--class", "D")[0] == 2
    assert run("check", str(DATA / "not_associative.monoid"), "--class", "D")[0] == 2
    assert run("check", str(DATA / "example_sl2_8.act"), "--class", "flat")[0] == 2
    assert run("verify", "free-cover", "--max-order", "5")[0] == 3
    assert run()[0] == 2


def test_cli_threads_env(monkeypatch):
    monkeypatch.setenv("ACTLAB_THREADS", "2")
    code, out, _ = run("verify", "example-6")
    assert code == 0
    monkeypatch.delenv("ACTLAB_THREADS")
    assert run("verify", "example-6")[1] == out
