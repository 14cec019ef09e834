"""Command line entry point.

Exit codes: 0 pass or verdict printed, 1 a theorem-suite FAIL, 2 usage or
parse error, 3 inconclusive (a bound was exceeded or a search came up empty).
"""
import argparse
import sys
from dataclasses import dataclass

from .act import FiniteAct
from .classes import act_in_class
from .covers import search_cover
from .errors import ActlabError, BoundExceeded, ParseError, ValidationError
from .io import parse_act, parse_blocks, serialize
from .monoid import BUILTIN_MONOIDS, FiniteMonoid, enumerate_monoids
from .natacts import NatAct
from .quotients import act_of_quotients, nat_quotient_monoid, quotient_monoid
from .suites import ALL_SUITES, default_parallelism, fmt, theorem_suite
from .verdict import ClassLabel

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
_SEVERITY = {EXIT_OK: 0, EXIT_INCONCLUSIVE: 1, EXIT_FAIL: 2}


@dataclass(frozen=True)
class RunConfig:
    max_monoid_order: int = 4
    max_act_size: int = 4
    family_size_bound: int = 4
    envelope_cap: int = 8
    parallelism: int = 1
    output_format: str = "text"

    def __post_init__(self):
        for key in ("max_monoid_order", "max_act_size", "family_size_bound", "envelope_cap", "parallelism"):
            if getattr(self, key) < 1:
                raise ValueError(f"{key} must be at least 1")
        if self.output_format not in ("text", "tsv"):
            raise ValueError("output format must be text or tsv")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


class _Usage(Exception):
    pass


def build_parser():
    p = _Parser(prog="actlab", description="Finite monoids, acts, covers and quotients.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="class membership of an act")
    c.add_argument("act")
    c.add_argument("--class", dest="label", required=True)
    c.add_argument("--monoid", help="file holding the act's monoid")

    e = sub.add_parser("enumerate", help="monoids of a given order")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--up-to-iso", action="store_true")
    e.add_argument("--count-only", action="store_true")

    cv = sub.add_parser("cover", help="search for a cover of an act")
    cv.add_argument("act")
    cv.add_argument("--class", dest="label", required=True)
    cv.add_argument("--bound", type=int, default=None)
    cv.add_argument("--monoid")

    v = sub.add_parser("verify", help="run a theorem suite")
    v.add_argument("suite", choices=list(ALL_SUITES) + ["all"])
    v.add_argument("--max-order", type=int, default=None)
    v.add_argument("--max-act-size", type=int, default=None)
    v.add_argument("--family-bound", type=int, default=None)
    v.add_argument("--envelope-cap", type=int, default=None)
    v.add_argument("--nat-max-size", type=int, default=None)

    q = sub.add_parser("quotients", help="monoid and act of quotients")
    q.add_argument("monoid", help="monoid file, built-in name, or 'nat'")
    q.add_argument("act", nargs="?")

    for sp in (c, e, cv, v, q):
        sp.add_argument("--parallelism", type=int, default=None)
        sp.add_argument("--format", dest="output_format", choices=("text", "tsv"), default="text")
    return p


def _config(args):
    return RunConfig(
        max_monoid_order=getattr(args, "max_order", None) or 4,
        max_act_size=getattr(args, "max_act_size", None) or 4,
        family_size_bound=getattr(args, "family_bound", None) or getattr(args, "bound", None) or 4,
        envelope_cap=getattr(args, "envelope_cap", None) or 8,
        parallelism=args.parallelism or default_parallelism(),
        output_format=args.output_format,
    )


def _monoids_from(path):
    if path is None:
        return {}
    return {o.name: o for o in parse_blocks(open(path).read()) if isinstance(o, FiniteMonoid)}


def _load_monoid(name):
    if name in BUILTIN_MONOIDS:
        return BUILTIN_MONOIDS[name]()
    objs = [o for o in parse_blocks(open(name).read()) if isinstance(o, FiniteMonoid)]
    if not objs:
        raise ParseError(0, f"no monoid block in {name}")
    return objs[0]


def _emit(out, rows, fmt_):
    """rows: (key, value) pairs printed as 'key: value' or tab separated."""
    for k, val in rows:
        out.write(f"{k}\t{val}\n" if fmt_ == "tsv" else f"{k}: {val}\n")


def cmd_check(args, cfg, out):
    X = parse_act(open(args.act).read(), _monoids_from(args.monoid))
    label = ClassLabel.parse(args.label)
    v = act_in_class(X, label)
    rows = [("act", X.name or args.act), ("class", label.value), ("member", "true" if v.member else "false")]
    if v.witness is not None:
        rows.append(("witness", fmt(v.witness)))
    if v.note:
        rows.append(("note", v.note))
    _emit(out, rows, cfg.output_format)
    return EXIT_OK


def cmd_enumerate(args, cfg, out):
    monoids = list(enumerate_monoids(args.order, up_to_iso=args.up_to_iso))
    out.write(f"count: {len(monoids)}\n")
    if not args.count_only:
        for k, M in enumerate(monoids):
            out.write(serialize(FiniteMonoid(M.order, M.table, M.identity, f"M{args.order}.{k}")))
    return EXIT_OK


def cmd_cover(args, cfg, out):
    A = parse_act(open(args.act).read(), _monoids_from(args.monoid))
    label = ClassLabel.parse(args.label)
    cert = search_cover(A, label, cfg.family_size_bound)
    if cert is None or not cert:
        reason = getattr(cert, "reason", "none found")
        _emit(out, [("cover", "none"), ("reason", reason), ("bound", cfg.family_size_bound)], cfg.output_format)
        return EXIT_INCONCLUSIVE
    g = cert.map
    rows = [("cover", cert.kind), ("class", label.value), ("source-size", g.source.size)]
    if isinstance(A, NatAct) or g.is_injective:
        rows.append(("image", fmt(tuple(sorted(set(g.mapping))))))
    rows.append(("map", fmt(g.mapping)))
    rows.append(("family", cert.family.provenance))
    _emit(out, rows, cfg.output_format)
    return EXIT_OK


def cmd_verify(args, cfg, out):
    names = ALL_SUITES if args.suite == "all" else (args.suite,)
    bounds = dict(
        max_order=args.max_order,
        max_act_size=args.max_act_size,
        family_bound=args.family_bound,
        envelope_cap=args.envelope_cap,
        nat_max_size=args.nat_max_size,
    )
    code = EXIT_OK
    for name in names:
        rep = theorem_suite(name, cfg.parallelism, **bounds)
        out.write(rep.render(cfg.output_format))
        # a FAIL outranks an inconclusive run, which outranks a pass
        code = max(code, rep.exit_code, key=_SEVERITY.get)
    return code


def _audit_rows(prefix, audit):
    return [(f"{prefix}.{k}", fmt(v)) for k, v in sorted(audit.items())]


def cmd_quotients(args, cfg, out):
    if args.monoid == "nat":
        Qn = nat_quotient_monoid()
        rows = [("Q", "integers"), ("window", Qn.window)] + _audit_rows("Q", Qn.audit)
        if args.act:
            X = parse_act(open(args.act).read())
            if not isinstance(X, NatAct):
                raise ParseError(0, "expected a natact block")
            qa = act_of_quotients(X)
            rows += [
                ("Q_X", fmt(qa.q_act.step)),
                ("eventual-image", fmt(qa.eventual.members)),
                ("theta", fmt(qa.theta.mapping)),
                ("theta-mono", fmt(qa.theta_mono)),
            ] + _audit_rows("Q_X", qa.audit)
        _emit(out, rows, cfg.output_format)
        return EXIT_OK
    M = _load_monoid(args.monoid)
    Q = quotient_monoid(M)
    rows = [("Q.order", Q.order), ("Q.table", fmt(Q.table)), ("Q.identity", Q.identity), ("iota", fmt(Q.embedding)), ("units", fmt(Q.units))]
    rows += _audit_rows("Q", Q.audit)
    if args.act:
        X = parse_act(open(args.act).read(), {M.name: M})
        if not isinstance(X, FiniteAct):
            raise ParseError(0, "expected an act block")
        qa = act_of_quotients(X, Q)
        rows += [("Q_X", fmt(qa.s_act.action)), ("theta", fmt(qa.theta.mapping)), ("theta-mono", fmt(qa.theta_mono))]
        rows += _audit_rows("Q_X", qa.audit)
    _emit(out, rows, cfg.output_format)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "enumerate": cmd_enumerate,
    "cover": cmd_cover,
    "verify": cmd_verify,
    "quotients": cmd_quotients,
}


def run_command(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, out)
    except _Usage as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (ParseError, ValidationError, OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BoundExceeded as exc:
        err.write(f"inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE
    except ActlabError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
