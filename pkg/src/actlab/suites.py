"""Theorem suites: exhaustive instance-level verification with deterministic reports.

Every suite splits into independent jobs (usually one per monoid). Jobs run in
a process pool and come back in submission order, so the report never
depends on the worker count.
"""
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from urllib.parse import quote

from .act import (
    ActMap,
    all_acts,
    all_subacts,
    coproduct,
    cyclic_acts,
    enumerate_acts,
    example_act,
    hom_mappings,
    is_indecomposable,
    regular_act,
    terminal_act,
)
from .classes import (
    act_in_class,
    injective_envelope_bounded,
    injective_verdict,
    is_divisible_subact,
    largest_divisible_subact,
    pwi_extension_test,
    pwi_z_criterion,
)
from .colimits import chain_system, colimit
from .covers import (
    TestFamily,
    certify_ump_cover,
    divisible_cover,
    free_precover,
    is_coessential,
    is_cover,
    is_precover_rel,
    search_cover,
)
from .errors import BoundExceeded
from .monoid import (
    element_property,
    enumerate_monoids,
    find_isomorphism,
    l3,
    monoid_property,
    sl2,
    validate_monoid,
)
from .natacts import all_natacts, eventual_image, nat_divisible_cover
from .quotients import (
    act_of_quotients,
    nat_prop6_verify,
    nat_sigma_oracle,
    prop6_verify,
    weak_torsion_relation,
)
from .verdict import ClassLabel

PASS, FAIL, SKIP, INCONCLUSIVE = "PASS", "FAIL", "SKIP", "INCONCLUSIVE"

DEFAULTS = {
    "max_order": 4,
    "max_act_size": 4,
    "family_bound": 4,
    "envelope_cap": 8,
    "nat_max_size": 6,
}


@dataclass(frozen=True)
class Row:
    instance: str
    suite: str
    verdict: str
    witness: str = ""


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    params: tuple
    rows: tuple

    def count(self, verdict):
        return sum(1 for r in self.rows if r.verdict == verdict)

    @property
    def ok(self):
        return self.count(FAIL) == 0

    @property
    def exit_code(self):
        if self.count(FAIL):
            return 1
        if self.count(INCONCLUSIVE):
            return 3
        return 0

    @property
    def status(self):
        return {0: PASS, 1: FAIL, 3: INCONCLUSIVE}[self.exit_code]

    def summary(self):
        bounds = " ".join(f"{k}={v}" for k, v in self.params)
        return (
            f"suite {self.suite} [{bounds}]: {len(self.rows)} instances, "
            f"{self.count(PASS)} pass, {self.count(FAIL)} fail, {self.count(SKIP)} skip, "
            f"{self.count(INCONCLUSIVE)} inconclusive -> {self.status}"
        )

    def to_text(self):
        lines = [f"{r.verdict:<12} {r.suite} {r.instance} {r.witness}".rstrip() for r in self.rows]
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    def to_tsv(self):
        lines = ["instance\tsuite\tverdict\twitness"]
        lines += [f"{r.instance}\t{r.suite}\t{r.verdict}\t{quote(r.witness, safe='')}" for r in self.rows]
        return "\n".join(lines) + "\n"

    def render(self, fmt="text"):
        return self.to_tsv() if fmt == "tsv" else self.to_text()


# ---------------------------------------------------------------- formatting

def fmt(obj):
    """Deterministic compact text for witnesses."""
    if hasattr(obj, "action"):
        return "act" + fmt(obj.action)
    if hasattr(obj, "step"):
        return "natact" + fmt(obj.step)
    if hasattr(obj, "mapping"):
        return "map" + fmt(obj.mapping)
    if hasattr(obj, "table") and hasattr(obj, "identity"):
        return f"monoid{fmt(obj.table)}@{obj.identity}"
    if isinstance(obj, (tuple, list)):
        return "(" + ",".join(fmt(o) for o in obj) + ")"
    if isinstance(obj, bool):
        return "yes" if obj else "no"
    return str(obj)


def _yn(b):
    return "yes" if b else "no"


def _replay(M, X=None):
    """Data needed to re-run one instance."""
    out = f"monoid={fmt(M.table)}@{M.identity}"
    if X is not None:
        out += f" act={fmt(X.action)}"
    return out


def _row(inst, suite, ok, detail, M=None, X=None):
    if ok:
        return Row(inst, suite, PASS, detail)
    extra = _replay(M, X) if M is not None else ""
    return Row(inst, suite, FAIL, f"{detail} {extra}".strip())


# ---------------------------------------------------------------- jobs

SUITES = {}


def suite(name):
    def register(cls):
        SUITES[name] = cls
        cls.name = name
        return cls

    return register


def _monoid_jobs(max_order):
    jobs = []
    for n in range(1, max_order + 1):
        for k, M in enumerate(enumerate_monoids(n)):
            jobs.append((f"M{n}.{k}", M.table, M.identity))
    return jobs


def _rebuild(job):
    mid, table, identity = job[:3]
    return mid, validate_monoid(table, identity, mid)


def _act_ids(mid, acts):
    counters = {}
    out = []
    for X in acts:
        k = counters.get(X.size, 0)
        counters[X.size] = k + 1
        out.append((f"{mid}/A{X.size}.{k}", X))
    return out


@suite("free-cover")
class FreeCover:
    """Theta has a free cover exactly over groups; the free precover of Theta is coessential exactly then."""

    params = ("max_order", "family_bound")

    @staticmethod
    def jobs(p):
        return _monoid_jobs(p["max_order"])

    @staticmethod
    def run(job, p):
        mid, M = _rebuild(job)
        group = bool(monoid_property(M, "group"))
        theta = terminal_act(M)
        S = regular_act(M)
        family = TestFamily.build(M, ClassLabel.FREE, max(p["family_bound"], M.order))
        # candidates restricted to C = S: a free cover of Theta has a one-element basis
        has_cover = any(is_cover(ActMap(S, theta, g), family) for g in hom_mappings(S, theta))
        coess = bool(is_coessential(free_precover(theta)))
        ok = has_cover == group and coess == group
        detail = f"group={_yn(group)} cover={_yn(has_cover)} coessential={_yn(coess)}"
        return [_row(mid, "free-cover", ok, detail, M)]


@suite("divisible-lemma")
class DivisibleLemma:
    """S divisible, left cancellative implies left invertible, and every small act divisible agree."""

    params = ("max_order", "max_act_size")

    @staticmethod
    def jobs(p):
        return _monoid_jobs(p["max_order"])

    @staticmethod
    def run(job, p):
        mid, M = _rebuild(job)
        c2 = bool(act_in_class(regular_act(M), ClassLabel.DIVISIBLE))
        lc = [c for c in M.elements if element_property(M, c, "left-cancellative")]
        inv = [c for c in M.elements if any(M.table[d][c] == M.identity for d in M.elements)]
        c3 = set(lc) <= set(inv)
        bad = next((X for X in all_acts(M, p["max_act_size"]) if not act_in_class(X, ClassLabel.DIVISIBLE)), None)
        c4 = bad is None
        ok = c2 == c3 == c4
        detail = f"S-divisible={_yn(c2)} lc-left-invertible={_yn(c3)} all-acts-divisible={_yn(c4)}"
        return [_row(mid, "divisible-lemma", ok, detail, M, bad)]


def _divisible_oracle(X):
    """Union of every divisible subact (brute force); the largest one if any exist."""
    members = set()
    for B in all_subacts(X):
        if is_divisible_subact(X, B.members):
            members |= set(B.members)
    return tuple(sorted(members))


def _divisible_cover_row(inst, X, family, M=None):
    D = largest_divisible_subact(X)
    oracle = _divisible_oracle(X)
    got = D.members if D is not None else ()
    if got != oracle:
        return _row(inst, "divisible-cover", False, f"largest={fmt(got)} oracle={fmt(oracle)}", M, X)
    if D is None:
        return Row(inst, "divisible-cover", PASS, "no divisible subact")
    cert = certify_ump_cover(D.as_act()[1], family)
    if not cert or not cert.replay():
        return _row(inst, "divisible-cover", False, f"certificate {getattr(cert, 'reason', 'replay')}", M, X)
    # the only divisible subact whose inclusion is a precover is the largest one;
    # D itself joins the family, since a bounded family can miss its cycles
    probe = TestFamily(family.label, family.members + (D.as_act()[0],), family.provenance + " plus D")
    others = []
    for B in all_subacts(X):
        if B.members != got and is_divisible_subact(X, B.members):
            if is_precover_rel(B.as_act()[1], probe):
                others.append(B.members)
    if others:
        return _row(inst, "divisible-cover", False, f"also-precover={fmt(others[0])}", M, X)
    return Row(inst, "divisible-cover", PASS, f"cover={fmt(got)} family={len(family.members)}")


@suite("divisible-cover")
class DivisibleCover:
    """The largest divisible subact is a certified UMP-cover and the only divisible precovering subact."""

    caps = {"max_order": 3}
    params = ("max_order", "max_act_size", "family_bound", "nat_max_size")

    @staticmethod
    def jobs(p):
        return _monoid_jobs(p["max_order"]) + [("nat", size) for size in range(1, p["nat_max_size"] + 1)]

    @staticmethod
    def run(job, p):
        if job[0] == "nat":
            size = job[1]
            family = TestFamily.build_nat(p["family_bound"])
            rows = []
            for k, X in enumerate(a for a in all_natacts(size) if a.size == size):
                inst = f"N/A{size}.{k}"
                row = _divisible_cover_row(inst, X, family)
                E, _ = eventual_image(X)
                cert = nat_divisible_cover(X, p["family_bound"])
                if row.verdict == PASS and (not cert or E.members != largest_divisible_subact(X).members):
                    row = Row(inst, "divisible-cover", FAIL, f"eventual-image={fmt(E.members)} natact={fmt(X.step)}")
                if row.verdict == FAIL and "natact=" not in row.witness:
                    row = Row(inst, row.suite, FAIL, f"{row.witness} natact={fmt(X.step)}")
                rows.append(row)
            return rows
        mid, M = _rebuild(job)
        family = TestFamily.build(M, ClassLabel.DIVISIBLE, p["family_bound"])
        rows = [_divisible_cover_row(inst, X, family, M) for inst, X in _act_ids(mid, all_acts(M, p["max_act_size"]))]
        # a divisible right ideal exists exactly when every act has a divisible cover
        ideal = any(is_divisible_subact(regular_act(M), B.members) for B in all_subacts(regular_act(M)))
        covers = all(r.verdict == PASS and r.witness.startswith("cover=") for r in rows)
        rows.append(_row(mid, "divisible-cover", ideal == covers, f"divisible-right-ideal={_yn(ideal)} all-covered={_yn(covers)}", M))
        return rows


def _injective_acts(M, max_size):
    return [X for X in all_acts(M, max_size) if injective_verdict(X)]


@suite("injective-necessary")
class InjectiveNecessary:
    """Failures of left reversibility or of a left zero each produce a concrete obstruction."""

    params = ("max_order",)

    @staticmethod
    def jobs(p):
        return _monoid_jobs(p["max_order"]) + [("L3",)]

    @staticmethod
    def run(job, p):
        if job[0] == "L3":
            mid, M = "L3", l3()
        else:
            mid, M = _rebuild(job)
        lr = monoid_property(M, "left-reversible")
        lz = bool(monoid_property(M, "has-left-zero"))
        S = regular_act(M)
        parts = []
        ok = True
        # a left zero is exactly a fixed point of S
        fixed = any(all(v == s for v in S.action[s]) for s in M.elements)
        ok &= fixed == lz
        if not lz:
            inj = _injective_acts(M, 2)
            stray = [X for X in inj if hom_mappings(X, S, limit=1)]
            ok &= not stray
            parts.append(f"no-left-zero: no map from {len(inj)} injective acts into S")
        if not lr:
            theta = terminal_act(M)
            pair, _ = coproduct([theta, theta])
            v = injective_verdict(pair)
            ok &= not v.member and bool(injective_verdict(theta))
            w = v.witness if v.witness else ()
            parts.append(f"not-left-reversible at {fmt(lr.witness)}: Theta+Theta injective={_yn(v.member)} witness={fmt(w)}")
        if lr and lz:
            parts.append("left-reversible with left zero")
        return [_row(mid, "injective-necessary", ok, "; ".join(parts), M)]


def _left_rev_zero(M):
    return bool(monoid_property(M, "left-reversible")) and bool(monoid_property(M, "has-left-zero"))


@suite("injective-coproduct")
class InjectiveCoproduct:
    """Over left reversible monoids with a left zero, A+B is injective iff A and B are."""

    caps = {"max_order": 3, "max_act_size": 3}
    params = ("max_order", "max_act_size")

    @staticmethod
    def jobs(p):
        return _monoid_jobs(p["max_order"])

    @staticmethod
    def run(job, p):
        mid, M = _rebuild(job)
        if not _left_rev_zero(M):
            return [Row(mid, "injective-coproduct", SKIP, "not left reversible with left zero")]
        acts = all_acts(M, p["max_act_size"])
        inj = [bool(injective_verdict(X)) for X in acts]
        checked = 0
        for i, j in combinations_with_replacement(range(len(acts)), 2):
            C, _ = coproduct([acts[i], acts[j]])
            both = inj[i] and inj[j]
            if bool(injective_verdict(C)) != both:
                return [_row(mid, "injective-coproduct", False, f"pair={fmt((acts[i], acts[j]))} parts={_yn(both)}", M)]
            checked += 1
        return [Row(mid, "injective-coproduct", PASS, f"pairs={checked} injective-acts={sum(inj)}")]


@suite("injective-dircolim")
class InjectiveDirColim:
    """Colimits of chains of injective acts are injective."""

    caps = {"max_order": 3, "max_act_size": 3}
    params = ("max_order", "max_act_size")

    @staticmethod
    def jobs(p):
        return _monoid_jobs(p["max_order"])

    @staticmethod
    def run(job, p):
        mid, M = _rebuild(job)
        inj = _injective_acts(M, p["max_act_size"])
        chains = 0
        for length in (2, 3):
            for seq in product(range(len(inj)), repeat=length):
                acts = [inj[i] for i in seq]
                steps = [[ActMap(a, b, m) for m in hom_mappings(a, b)] for a, b in zip(acts, acts[1:])]
                for maps in product(*steps):
                    cocone = colimit(chain_system(acts, list(maps)))
                    chains += 1
                    if not injective_verdict(cocone.apex):
                        return [_row(mid, "injective-dircolim", False, f"chain={fmt(acts)} maps={fmt(maps)}", M)]
        return [Row(mid, "injective-dircolim", PASS, f"chains={chains} injective-acts={len(inj)}")]


@suite("injective-cover")
class InjectiveCover:
    """Bounded search for injective covers over left reversible monoids with a left zero (evidence only)."""

    caps = {"max_order": 2}
    params = ("max_order", "family_bound")

    @staticmethod
    def jobs(p):
        return _monoid_jobs(p["max_order"]) + [("SL2",)]

    @staticmethod
    def run(job, p):
        if job[0] == "SL2":
            mid, M = "SL2", sl2()
        else:
            mid, M = _rebuild(job)
        if not _left_rev_zero(M):
            return [Row(mid, "injective-cover", SKIP, "not left reversible with left zero")]
        rows = []
        bound = min(p["family_bound"], 4)
        family = TestFamily.build(M, ClassLabel.INJECTIVE, bound)
        for inst, A in _act_ids(mid, all_acts(M, 2)):
            cert = search_cover(A, ClassLabel.INJECTIVE, bound, family)
            if cert:
                rows.append(Row(inst, "injective-cover", PASS, f"cover-from={fmt(cert.map.source)}"))
            else:
                rows.append(Row(inst, "injective-cover", INCONCLUSIVE, f"none within bound {bound} {_replay(M, A)}"))
        return rows


@suite("sigma-congruence")
class SigmaCongruence:
    """The weak torsion relation is a congruence over CRM monoids."""

    params = ("max_order", "max_act_size", "nat_max_size")

    @staticmethod
    def jobs(p):
        return _monoid_jobs(p["max_order"]) + [("nat", size) for size in range(1, p["nat_max_size"] + 1)]

    @staticmethod
    def run(job, p):
        if job[0] == "nat":
            size = job[1]
            rows = []
            for k, X in enumerate(a for a in all_natacts(size) if a.size == size):
                sig = weak_torsion_relation(X)
                ok = sig.is_congruence and sig.pairs == nat_sigma_oracle(X)
                rows.append(Row(f"N/A{size}.{k}", "sigma-congruence", PASS if ok else FAIL,
                                f"pairs={len(sig.pairs)}" + ("" if ok else f" natact={fmt(X.step)}")))
            return rows
        mid, M = _rebuild(job)
        if not monoid_property(M, "CRM"):  # pragma: no cover - every finite monoid is CRM
            return [Row(mid, "sigma-congruence", SKIP, "not CRM")]
        n = 0
        for X in all_acts(M, p["max_act_size"]):
            sig = weak_torsion_relation(X)
            diagonal = sig.pairs == frozenset((x, x) for x in X.elements)
            if not sig.is_congruence or not diagonal:
                return [_row(mid, "sigma-congruence", False, f"audit={fmt(sig.witness)} diagonal={_yn(diagonal)}", M, X)]
            n += 1
        return [Row(mid, "sigma-congruence", PASS, f"acts={n} relation=diagonal")]


def _envelope_checks(M, acts, cap):
    """Q of an injective envelope is the envelope, where one is found within the cap."""
    run = skipped = 0
    for X in acts:
        if X.size > 2 or M.order > 3:
            skipped += 1
            continue
        try:
            env = injective_envelope_bounded(X, cap)
        except BoundExceeded:
            env = None
        if env is None:
            skipped += 1
            continue
        E, _ = env
        qa = act_of_quotients(E)
        if not qa.theta.is_bijective:
            return None, (X, E)
        run += 1
    return (run, skipped), None


@suite("quotients")
class Quotients:
    """Monoid and acts of quotients: audits, Q = S, Q_X = X, and the indecomposability correspondence."""

    params = ("max_order", "max_act_size", "envelope_cap", "nat_max_size")

    @staticmethod
    def jobs(p):
        return _monoid_jobs(p["max_order"]) + [("nat",)]

    @staticmethod
    def run(job, p):
        if job[0] == "nat":
            rep = nat_prop6_verify(all_natacts(p["nat_max_size"]))
            detail = f"Q=integers group={_yn(rep.checks['is_group'])} acts={len(all_natacts(p['nat_max_size']))}"
            if rep.failures:
                return [Row("N", "quotients", FAIL, f"{detail} failures={fmt(rep.failures[:3])}")]
            return [Row("N", "quotients", PASS, detail)]
        mid, M = _rebuild(job)
        acts = all_acts(M, p["max_act_size"])
        rep = prop6_verify(M, acts)
        if rep.failures:
            return [_row(mid, "quotients", False, f"failures={fmt(rep.failures[:3])}", M)]
        env, bad = _envelope_checks(M, acts, p["envelope_cap"])
        if bad is not None:
            return [_row(mid, "quotients", False, f"envelope-quotient X={fmt(bad[0])} E={fmt(bad[1])}", M)]
        detail = (
            f"acts={len(acts)} Q=S canc-group={_yn(rep.checks['cancellative_group'])} "
            f"max-indecomposable-wtf-d={rep.max_indecomposable_size} envelope-checks={env[0]} "
            f"skipped: envelope not found within cap={env[1]}"
        )
        return [Row(mid, "quotients", PASS, detail)]


@suite("pwi-regular")
class PwiRegular:
    """The z-criterion matches principal-ideal extension; over regular monoids every act is PWI."""

    params = ("max_order", "max_act_size")

    @staticmethod
    def jobs(p):
        return _monoid_jobs(p["max_order"])

    @staticmethod
    def run(job, p):
        mid, M = _rebuild(job)
        acts = all_acts(M, p["max_act_size"])
        agree = 0
        if M.order <= 3:
            for X in acts:
                if bool(pwi_z_criterion(X)) != bool(pwi_extension_test(X)):
                    return [_row(mid, "pwi-regular", False, "z-criterion disagrees with extension test", M, X)]
                agree += 1
        regular = bool(monoid_property(M, "regular"))
        if regular:
            for X in acts:
                v = pwi_z_criterion(X)
                if not v:
                    return [_row(mid, "pwi-regular", False, f"regular monoid, act not PWI {fmt(v.witness)}", M, X)]
        return [Row(mid, "pwi-regular", PASS, f"regular={_yn(regular)} acts={len(acts)} criterion-agreement={agree}")]


@suite("example-6")
class ExampleSL2:
    """Over SL2 the acts x*1 = x, x*0 = y are indecomposable, torsion free and injective."""

    params = ("max_example_size",)

    @staticmethod
    def jobs(p):
        return [("cyclic",)] + [("size", n) for n in range(1, p["max_example_size"] + 1)]

    @staticmethod
    def run(job, p):
        M = sl2()
        if job[0] == "cyclic":
            sizes = sorted(C.size for C in cyclic_acts(M))
            return [_row("SL2/cyclic", "example-6", sizes == [1, 2], f"cyclic-act-sizes={fmt(sizes)}", M)]
        n = job[1]
        X = example_act(n)
        ind = is_indecomposable(X)
        tf = bool(act_in_class(X, ClassLabel.TORSION_FREE))
        inj = bool(injective_verdict(X))
        ok = ind and tf and inj
        return [_row(f"SL2/E{n}", "example-6", ok, f"indecomposable={_yn(ind)} TF={_yn(tf)} I={_yn(inj)}", M, X)]


ALL_SUITES = (
    "free-cover",
    "divisible-lemma",
    "divisible-cover",
    "injective-necessary",
    "injective-coproduct",
    "injective-dircolim",
    "injective-cover",
    "sigma-congruence",
    "quotients",
    "pwi-regular",
    "example-6",
)


def _run_job(args):
    name, job, params = args
    return SUITES[name].run(job, params)


def default_parallelism():
    env = os.environ.get("ACTLAB_THREADS")
    if env:
        return max(1, int(env))
    return 1


def theorem_suite(name, parallelism=None, **params):
    """Run one suite; unknown bound keys are ignored, missing ones take defaults."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(ALL_SUITES)}")
    cls = SUITES[name]
    p = dict(DEFAULTS, max_example_size=8)
    p.update({k: v for k, v in params.items() if v is not None})
    for key in ("max_order",):
        if p[key] > 4:
            raise BoundExceeded(f"{key}={p[key]} exceeds the suite cap 4")
    for key, cap in getattr(cls, "caps", {}).items():
        p[key] = min(p[key], cap)
    jobs = cls.jobs(p)
    tasks = [(name, job, p) for job in jobs]
    workers = parallelism or default_parallelism()
    if workers <= 1 or len(tasks) <= 1:
        results = [_run_job(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            results = list(pool.map(_run_job, tasks))
    rows = tuple(r for batch in results for r in batch)
    shown = tuple((k, p[k]) for k in cls.params)
    return SuiteReport(name, shown, rows)


def run_all(parallelism=None, **params):
    return [theorem_suite(name, parallelism, **params) for name in ALL_SUITES]
