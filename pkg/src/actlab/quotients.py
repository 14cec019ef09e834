"""Weak torsion, monoids of right quotients and acts of quotients.

Elements of the quotient monoid are classes of pairs (s, c) with c
cancellative, read as s c^-1. Over a finite monoid the cancellative elements
are the units and everything collapses back onto the base; the constructions
below do not assume this, they compute it. The N-act branch is where the
construction is not degenerate.
"""
from dataclasses import dataclass, field
from itertools import product

from .act import (
    ActMap,
    FiniteAct,
    act_isomorphism,
    act_map,
    indecomposable_components,
    regular_act,
    validate_act,
)
from .classes import act_in_class
from .errors import NotCRM, NotDivisible, NotWTF, ValidationError
from .monoid import cancellative_submonoid, element_property, find_isomorphism, monoid_property, validate_monoid
from .natacts import NatAct, eventual_image
from .verdict import ClassLabel


# ---------------------------------------------------------------- weak torsion

@dataclass(frozen=True)
class WeakTorsion:
    pairs: frozenset
    reflexive: bool
    symmetric: bool
    transitive: bool
    compatible: bool
    witness: object = None

    @property
    def is_congruence(self):
        return self.reflexive and self.symmetric and self.transitive and self.compatible


def _relation_audit(X, pairs, successors):
    """Congruence audit; ``successors(x)`` lists x*s over generating s."""
    n = X.size
    for x in range(n):
        if (x, x) not in pairs:
            return False, True, True, True, ("reflexive", x)
    for (x, y) in pairs:
        if (y, x) not in pairs:
            return True, False, True, True, ("symmetric", x, y)
    for (x, y) in pairs:
        for z in range(n):
            if (y, z) in pairs and (x, z) not in pairs:
                return True, True, False, True, ("transitive", x, y, z)
    for (x, y) in pairs:
        for xs, ys in zip(successors(x), successors(y)):
            if (xs, ys) not in pairs:
                return True, True, True, False, ("compatible", x, y)
    return True, True, True, True, None


def weak_torsion_relation(X):
    """sigma_X: pairs identified by some cancellative element, with a congruence audit."""
    if isinstance(X, NatAct):
        window = 2 * X.size
        pairs = frozenset((x, y) for x in X.elements for y in X.elements if any(X.act(x, n) == X.act(y, n) for n in range(window + 1)))
        audit = _relation_audit(X, pairs, lambda x: (X.step[x],))
    else:
        M = X.monoid
        canc = cancellative_submonoid(M).members
        pairs = frozenset((x, y) for x in X.elements for y in X.elements if any(X.action[x][c] == X.action[y][c] for c in canc))
        audit = _relation_audit(X, pairs, lambda x: X.action[x])
    return WeakTorsion(pairs, *audit)


def nat_sigma_oracle(X):
    """Least relation containing the diagonal and closed under (f x, f y) in R => (x, y) in R."""
    rel = {(x, x) for x in X.elements}
    changed = True
    while changed:
        changed = False
        for x, y in product(X.elements, repeat=2):
            if (x, y) not in rel and (X.step[x], X.step[y]) in rel:
                rel.add((x, y))
                changed = True
    return frozenset(rel)


# ---------------------------------------------------------------- finite construction

def _components(n, related):
    """Classes of the equivalence generated by ``related`` on range(n), labelled by least index."""
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if related[i][j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    return [find(i) for i in range(n)]


def _pair_relation(X, canc):
    """Two-sided and simplified forms of the relation on X x C."""
    M = X.monoid
    T = M.table
    cset = set(canc)
    pairs = [(x, c) for x in X.elements for c in canc]
    els = list(M.elements)
    two_sided = [[False] * len(pairs) for _ in pairs]
    simplified = [[False] * len(pairs) for _ in pairs]
    for i, (x, c) in enumerate(pairs):
        for j, (y, d) in enumerate(pairs):
            for u in els:
                xu = X.action[x][u]
                cu = T[c][u]
                for v in els:
                    if xu == X.action[y][v] and cu == T[d][v] and cu in cset:
                        two_sided[i][j] = True
                        if v in cset:
                            simplified[i][j] = True
    return pairs, two_sided, simplified


def _is_equivalence(rel):
    n = len(rel)
    if not all(rel[i][i] for i in range(n)):
        return False
    if any(rel[i][j] != rel[j][i] for i in range(n) for j in range(n)):
        return False
    return all(rel[i][k] for i in range(n) for j in range(n) if rel[i][j] for k in range(n) if rel[j][k])


def _choices(M, canc, c, s):
    """All (s1, c1) with c1 cancellative and c s1 = s c1."""
    T = M.table
    return [(s1, c1) for s1 in M.elements for c1 in canc if T[c][s1] == T[s][c1]]


@dataclass(frozen=True)
class _PairClasses:
    pairs: tuple
    label: dict
    reps: tuple
    audit: dict

    def index(self, pair):
        return self.reps.index(self.label[pair])


def _pair_classes(X, canc):
    pairs, two_sided, simplified = _pair_relation(X, canc)
    audit = {
        "equivalence": _is_equivalence(two_sided),
        "simplified_agrees": two_sided == simplified,
    }
    comp = _components(len(pairs), two_sided)
    label = {p: pairs[comp[i]] for i, p in enumerate(pairs)}
    reps = tuple(sorted(set(label.values())))
    return _PairClasses(tuple(pairs), label, reps, audit)


@dataclass(frozen=True)
class QuotientMonoid:
    base: object
    cancellative: tuple
    classes: tuple
    table: tuple
    identity: int
    embedding: tuple
    units: tuple
    audit: dict = field(compare=False)
    monoid: object = field(default=None, compare=False)

    @property
    def order(self):
        return len(self.classes)

    def as_monoid(self):
        return self.monoid

    def class_of(self, s, c):
        return self._lookup[(s, c)]


def _multiply_class(M, canc, pc, x, c, s, d, X=None):
    """Every class obtainable for (x,c)(s,d) over all admissible choices."""
    T = M.table
    act = X.action if X is not None else T
    return {pc.index((act[x][s1], T[d][c1])) for s1, c1 in _choices(M, canc, c, s)}


def quotient_monoid(M):
    """Classical monoid of right quotients of a CRM monoid by its cancellative elements."""
    if not monoid_property(M, "CRM"):
        raise NotCRM("monoid fails the common right multiple condition")
    canc = cancellative_submonoid(M).members
    S = regular_act(M)
    pc = _pair_classes(S, canc)
    nq = len(pc.reps)
    one = M.identity
    table = [[None] * nq for _ in range(nq)]
    well_defined = True
    reps_by_class = [[p for p in pc.pairs if pc.label[p] == r] for r in pc.reps]
    for i, j in product(range(nq), repeat=2):
        results = set()
        for (x, c) in reps_by_class[i]:
            for (s, d) in reps_by_class[j]:
                results |= _multiply_class(M, canc, pc, x, c, s, d)
        if len(results) != 1:
            well_defined = False
        table[i][j] = min(results)
    identity = pc.index((one, one))
    audit = dict(pc.audit)
    audit["well_defined"] = well_defined
    try:
        Qm = validate_monoid(table, identity, "Q")
        audit["monoid_axioms"] = True
    except ValidationError as exc:
        Qm = None
        audit["monoid_axioms"] = False
        audit["axiom_failure"] = (exc.axiom, exc.witness)
    audit["cc_is_identity"] = all(pc.index((c, c)) == identity for c in canc)
    embedding = tuple(pc.index((s, one)) for s in M.elements)
    units = tuple(sorted({pc.index((c, d)) for c in canc for d in canc}))
    if Qm is not None:
        audit["units_are_group_of_units"] = units == tuple(q for q in Qm.elements if element_property(Qm, q, "unit"))
        audit["embedding_hom"] = all(embedding[M.table[s][t]] == Qm.table[embedding[s]][embedding[t]] for s in M.elements for t in M.elements)
        audit["embedding_units"] = all(
            element_property(Qm, embedding[c], "unit") and Qm.table[embedding[c]][pc.index((one, c))] == identity for c in canc
        )
    audit["embedding_injective"] = len(set(embedding)) == M.order
    q = QuotientMonoid(M, canc, pc.reps, tuple(tuple(r) for r in table), identity, embedding, units, audit, Qm)
    object.__setattr__(q, "_lookup", {p: pc.index(p) for p in pc.pairs})
    return q


@dataclass(frozen=True)
class QuotientAct:
    base: object
    quotient: QuotientMonoid
    classes: tuple
    q_act: FiniteAct
    s_act: FiniteAct
    theta: ActMap
    audit: dict = field(compare=False)

    @property
    def theta_mono(self):
        return self.theta.is_injective

    def class_of(self, x, c):
        return self._lookup[(x, c)]


def act_of_quotients(X, Q=None):
    """Q_X with its Q-action, its S-action through the embedding, and theta(x) = (x,1)."""
    if isinstance(X, NatAct):
        return nat_act_of_quotients(X)
    M = X.monoid
    Q = Q or quotient_monoid(M)
    canc = Q.cancellative
    one = M.identity
    pc = _pair_classes(X, canc)
    n = len(pc.reps)
    reps_by_class = [[p for p in pc.pairs if pc.label[p] == r] for r in pc.reps]
    q_reps = {}
    for (s, d), k in Q._lookup.items():
        q_reps.setdefault(k, []).append((s, d))
    well_defined = True
    q_table = [[None] * Q.order for _ in range(n)]
    for i in range(n):
        for k in range(Q.order):
            results = set()
            for (x, c) in reps_by_class[i]:
                for (s, d) in q_reps[k]:
                    results |= _multiply_class(M, canc, pc, x, c, s, d, X)
            if len(results) != 1:
                well_defined = False
            q_table[i][k] = min(results)
    audit = dict(pc.audit)
    audit["well_defined"] = well_defined
    s_table = tuple(tuple(q_table[i][Q.embedding[s]] for s in M.elements) for i in range(n))
    direct = tuple(
        tuple(min(pc.index((X.action[x][s1], c1)) for s1, c1 in _choices(M, canc, c, s)) for s in M.elements)
        for (x, c) in pc.reps
    )
    audit["s_action_matches_embedding"] = direct == s_table
    q_act = None
    if Q.monoid is not None:
        try:
            q_act = validate_act(Q.monoid, q_table, "Q_X")
            audit["q_act_axioms"] = True
        except ValidationError as exc:
            audit["q_act_axioms"] = False
            audit["axiom_failure"] = (exc.axiom, exc.witness)
    try:
        s_act = validate_act(M, s_table, "Q_X")
        audit["s_act_axioms"] = True
    except ValidationError:
        s_act = FiniteAct(M, s_table, "Q_X")
        audit["s_act_axioms"] = False
    theta_map = tuple(pc.index((x, one)) for x in X.elements)
    try:
        theta = act_map(X, s_act, theta_map)
        audit["theta_equivariant"] = True
    except ValidationError:
        theta = ActMap(X, s_act, theta_map)
        audit["theta_equivariant"] = False
    audit["times_c_gives_x1"] = all(
        s_act.action[pc.index((x, c))][c] == pc.index((x, one)) for x in X.elements for c in canc
    )
    qa = QuotientAct(X, Q, pc.reps, q_act, s_act, theta, audit)
    object.__setattr__(qa, "_lookup", {p: pc.index(p) for p in pc.pairs})
    return qa


def splitting_map(X, qa=None):
    """phi: Q_X -> X with phi(theta(x)) = x, for weakly torsion free divisible X."""
    wtf = act_in_class(X, ClassLabel.WEAKLY_TORSION_FREE)
    if not wtf:
        raise NotWTF("act is not weakly torsion free", wtf.witness)
    div = act_in_class(X, ClassLabel.DIVISIBLE)
    if not div:
        raise NotDivisible("act is not divisible", div.witness)
    if isinstance(X, NatAct):
        qa = qa or nat_act_of_quotients(X)
        E = qa.eventual.members
        return act_map(qa.q_act, X, tuple(E))
    qa = qa or act_of_quotients(X)
    phi = [None] * len(qa.classes)
    for (x, c), k in qa._lookup.items():
        ys = [y for y in X.elements if X.action[y][c] == x]
        if len(ys) != 1:
            raise AssertionError(f"no unique y with y*{c} = {x}")
        if phi[k] is None:
            phi[k] = ys[0]
        elif phi[k] != ys[0]:
            raise AssertionError("splitting map not well defined")
    f = act_map(qa.s_act, X, tuple(phi))
    if f.compose(qa.theta).mapping != tuple(X.elements):
        raise AssertionError("phi theta is not the identity")
    return f


# ---------------------------------------------------------------- N branch

@dataclass(frozen=True)
class NatQuotientMonoid:
    """Window of pairs (s, c), 0 <= s, c <= window, with the brute-force class relation."""

    window: int
    classes: tuple
    audit: dict


def nat_quotient_monoid(window=6):
    """Q for (N, +): the class of (s, c) is determined by s - c, giving the integers."""
    W = window
    pairs = [(s, c) for s in range(W + 1) for c in range(W + 1)]
    idx = {p: i for i, p in enumerate(pairs)}
    search = range(2 * W + 1)

    def related(p, q):
        (s, c), (t, d) = p, q
        return any(s + u == t + v and c + u == d + v for u in search for v in search)

    rel = [[related(p, q) for q in pairs] for p in pairs]
    comp = _components(len(pairs), rel)
    by_diff = all((comp[idx[p]] == comp[idx[q]]) == (p[0] - p[1] == q[0] - q[1]) for p in pairs for q in pairs)
    reps = sorted({pairs[k] for k in comp})
    diffs = sorted({s - c for s, c in reps})

    def mul(p, q):
        (x, c), (s, d) = p, q
        # c + s1 = s + c1 with the least admissible s1
        s1 = max(0, s - c)
        c1 = c + s1 - s
        return (x + s1, d + c1)

    mult_ok = all(mul(p, q)[0] - mul(p, q)[1] == (p[0] - p[1]) + (q[0] - q[1]) for p in reps for q in reps)
    # (c, s) inverts (s, c)
    group = all(mul(p, (p[1], p[0]))[0] == mul(p, (p[1], p[0]))[1] for p in reps)
    audit = {
        "equivalence": _is_equivalence(rel),
        "class_is_difference": by_diff,
        "multiplication_adds_differences": mult_ok,
        "is_group": group,
        "num_classes": len(reps),
        "differences": (diffs[0], diffs[-1]),
    }
    return NatQuotientMonoid(W, tuple(reps), audit)


@dataclass(frozen=True)
class NatQuotientAct:
    base: NatAct
    eventual: object
    q_act: NatAct
    theta: ActMap
    audit: dict = field(compare=False)

    @property
    def theta_mono(self):
        return self.theta.is_injective


def nat_act_of_quotients(X):
    """Q_X for an N-act: the eventual image with the generator inverted.

    The class of (x, c) is normalised to g^-(c+K)(f^K(x)) on the eventual
    image, K = |X|; a windowed brute force over the defining relation is
    checked against this normal form.
    """
    E, g = eventual_image(X)
    members = E.members
    pos = {y: i for i, y in enumerate(members)}
    ginv = {v: k for k, v in g.items()}
    K = X.size

    def normal(x, c):
        y = X.act(x, K)
        for _ in range(c + K):
            y = ginv[y]
        return y

    q_act = NatAct(tuple(pos[g[y]] for y in members), "Q_X")
    theta = act_map(X, q_act, tuple(pos[normal(x, 0)] for x in X.elements))

    # brute-force oracle: (x,c) ~ (y,d) iff f^s x = f^t y and c + s = d + t for some s, t
    C = X.size
    S = 3 * X.size + C
    pairs = [(x, c) for x in X.elements for c in range(C + 1)]
    rel = [[any(X.act(x, s) == X.act(y, s + c - d) for s in range(max(0, d - c), S + 1)) for (y, d) in pairs] for (x, c) in pairs]
    comp = _components(len(pairs), rel)
    nf = [normal(x, c) for x, c in pairs]
    agrees = all((comp[i] == comp[j]) == (nf[i] == nf[j]) for i in range(len(pairs)) for j in range(len(pairs)))
    step_ok = all(normal(X.step[x], c) == g[normal(x, c)] for x, c in pairs)
    audit = {
        "equivalence": _is_equivalence(rel),
        "normal_form_matches_window": agrees,
        "num_classes": len(set(comp)),
        "well_defined": step_ok,
        "times_c_gives_x1": all(_nat_times(g, normal(x, c), c) == normal(x, 0) for x, c in pairs),
        "theta_equivariant": True,
    }
    return NatQuotientAct(X, E, q_act, theta, audit)


def _nat_times(g, y, n):
    for _ in range(n):
        y = g[y]
    return y


# ---------------------------------------------------------------- verification

@dataclass(frozen=True)
class Prop6Report:
    monoid: object
    checks: dict
    failures: tuple
    max_indecomposable_size: int = 0

    @property
    def ok(self):
        return not self.failures


def _check_quotient_act(X, qa, out, label):
    wtf = bool(act_in_class(X, ClassLabel.WEAKLY_TORSION_FREE))
    audit = qa.audit
    for key in ("equivalence", "well_defined", "theta_equivariant", "times_c_gives_x1"):
        if not audit.get(key, False):
            out.append((label, key))
    if qa.theta_mono != wtf:
        out.append((label, "theta_mono_iff_wtf"))
    if isinstance(X, NatAct):
        E, _ = eventual_image(X)
        sub, _ = E.as_act()
        if act_isomorphism(qa.q_act, sub) is None:
            out.append((label, "qx_iso_eventual_image"))
        if (len(indecomposable_components(X)) == 1) != (len(indecomposable_components(qa.q_act)) == 1):
            out.append((label, "indecomposable_correspondence"))
        return
    for key in ("simplified_agrees", "q_act_axioms", "s_act_axioms", "s_action_matches_embedding"):
        if not audit.get(key, False):
            out.append((label, key))
    if act_isomorphism(qa.s_act, X) is None or not qa.theta.is_bijective:
        out.append((label, "qx_iso_x"))
    if qa.q_act is not None:
        if (len(indecomposable_components(X)) == 1) != (len(indecomposable_components(qa.q_act)) == 1):
            out.append((label, "indecomposable_correspondence"))


def prop6_verify(M, acts):
    """Instance-level checks of the quotient theory over a CRM monoid and a list of its acts."""
    Q = quotient_monoid(M)
    failures = []
    canc = cancellative_submonoid(M).members
    canc_group = all(element_property(M, c, "unit") and any(M.table[c][d] == M.identity for d in canc) for c in canc)
    iso = find_isomorphism(M, Q.monoid) if Q.monoid is not None else None
    checks = {
        "cancellative_group": canc_group,
        "s_iso_q": iso is not None,
        "embedding_is_iso": Q.audit.get("embedding_injective") and len(Q.classes) == M.order,
    }
    for key, value in Q.audit.items():
        if isinstance(value, bool):
            checks[f"Q.{key}"] = value
    q_group = Q.monoid is not None and monoid_property(Q.monoid, "group").holds
    s_canc = all(element_property(M, s, "cancellative") for s in M.elements)
    checks["q_group_iff_s_cancellative"] = q_group == s_canc
    checks["five_implies_four"] = (not canc_group) or checks["s_iso_q"]
    for name, value in checks.items():
        if not value:
            failures.append(("monoid", name))
    largest = 0
    for i, X in enumerate(acts):
        qa = act_of_quotients(X, Q)
        _check_quotient_act(X, qa, failures, f"act{i}")
        if len(indecomposable_components(X)) == 1 and act_in_class(X, "WTF") and act_in_class(X, "D"):
            largest = max(largest, X.size)
    return Prop6Report(M, checks, tuple(failures), largest)


def nat_prop6_verify(acts, window=6):
    Qn = nat_quotient_monoid(window)
    failures = [("monoid", k) for k, v in Qn.audit.items() if isinstance(v, bool) and not v]
    for i, X in enumerate(acts):
        qa = nat_act_of_quotients(X)
        _check_quotient_act(X, qa, failures, f"natact{i}")
    return Prop6Report("N", dict(Qn.audit), tuple(failures))
