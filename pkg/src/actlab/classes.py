"""Membership tests for classes of acts, divisible subacts and injective envelopes."""
from functools import lru_cache

from .act import (
    ACT_ENUM_CAP,
    ActMap,
    act_isomorphism,
    all_subacts,
    cyclic_acts,
    enumerate_acts,
    enumerate_homs,
    fixed_points,
    generated_subact,
    hom_mappings,
    identity_map,
    indecomposable_components,
    regular_act,
    SubactHandle,
)
from .congruence import all_right_congruences
from .errors import BoundExceeded
from .monoid import element_property, principal_right_ideal
from .natacts import NatAct, nat_class_check
from .verdict import ClassLabel, ClassVerdict

INJECTIVITY_MONOID_CAP = 5
INJECTIVITY_SIZE_CAP = 16

EXTERNAL_NOTE = "external characterization: components isomorphic to eS, e idempotent"


def _elements_with(M, kind):
    return [c for c in M.elements if element_property(M, c, kind)]


def _torsion_scan(X, multipliers):
    for c in multipliers:
        seen = {}
        for x in X.elements:
            v = X.action[x][c]
            if v in seen:
                return ClassVerdict(False, (seen[v], x, c))
            seen[v] = x
    return ClassVerdict(True)


def _divisible_scan(X, multipliers):
    for c in multipliers:
        image = {X.action[d][c] for d in X.elements}
        for a in X.elements:
            if a not in image:
                return ClassVerdict(False, (a, c))
    return ClassVerdict(True)


@lru_cache(maxsize=None)
def _cyclic_extension_problems(M):
    """(cyclic act, proper subact members, subact) triples for the injectivity criterion."""
    out = []
    for C in cyclic_acts(M):
        for B in all_subacts(C):
            if len(B) < C.size:
                sub, _ = B.as_act()
                out.append((C, B.members, sub))
    return tuple(out)


@lru_cache(maxsize=None)
def _right_ideals(M, principal_only):
    S = regular_act(M)
    if principal_only:
        members = sorted({principal_right_ideal(M, s) for s in M.elements})
    else:
        members = [B.members for B in all_subacts(S)]
    return tuple((m, S.restrict(m)[0]) for m in members if len(m) < M.order)


def _check_caps(X):
    if X.monoid.order > INJECTIVITY_MONOID_CAP or X.size > INJECTIVITY_SIZE_CAP:
        raise BoundExceeded(f"injectivity test capped at monoid order {INJECTIVITY_MONOID_CAP}, act size {INJECTIVITY_SIZE_CAP}")


def injective_verdict(X):
    """Fixed point plus extension along every subact of every cyclic act."""
    _check_caps(X)
    if not fixed_points(X):
        return ClassVerdict(False, ("no-fixed-point",))
    for C, members, sub in _cyclic_extension_problems(X.monoid):
        extendable = {tuple(g[i] for i in members) for g in hom_mappings(C, X)}
        for f in hom_mappings(sub, X):
            if f not in extendable:
                return ClassVerdict(False, ("no-extension", C, members, f))
    return ClassVerdict(True)


def _ideal_extension_verdict(X, principal_only):
    _check_caps(X)
    S = regular_act(X.monoid)
    restrictions = [g for g in hom_mappings(S, X)]
    for members, sub in _right_ideals(X.monoid, principal_only):
        extendable = {tuple(g[i] for i in members) for g in restrictions}
        for f in hom_mappings(sub, X):
            if f not in extendable:
                return ClassVerdict(False, ("no-extension", members, f))
    return ClassVerdict(True)


def weakly_injective_verdict(X):
    return _ideal_extension_verdict(X, principal_only=False)


def pwi_extension_test(X):
    """Principal weak injectivity straight from the definition: extend along sS in S."""
    return _ideal_extension_verdict(X, principal_only=True)


def pwi_z_criterion(X):
    """For every s and every f: sS -> X some z in X has f(x) = z*x on sS."""
    M = X.monoid
    S = regular_act(M)
    for s in M.elements:
        members = principal_right_ideal(M, s)
        sub, _ = S.restrict(members)
        for f in hom_mappings(sub, X):
            if not any(all(f[i] == X.action[z][x] for i, x in enumerate(members)) for z in X.elements):
                return ClassVerdict(False, ("no-z", s, members, f))
    return ClassVerdict(True)


def _component_verdict(X, models, note=""):
    for comp in indecomposable_components(X):
        sub, _ = comp.as_act()
        if not any(sub.size == P.size and act_isomorphism(sub, P) is not None for P in models):
            return ClassVerdict(False, ("component", comp.members), note)
    return ClassVerdict(True, None, note)


def act_in_class(X, label):
    label = ClassLabel.parse(label)
    if isinstance(X, NatAct):
        return nat_class_check(X, label)
    M = X.monoid
    if label is ClassLabel.TORSION_FREE:
        return _torsion_scan(X, _elements_with(M, "right-cancellative"))
    if label is ClassLabel.WEAKLY_TORSION_FREE:
        return _torsion_scan(X, _elements_with(M, "cancellative"))
    if label is ClassLabel.DIVISIBLE:
        return _divisible_scan(X, _elements_with(M, "left-cancellative"))
    if label is ClassLabel.INJECTIVE:
        return injective_verdict(X)
    if label is ClassLabel.WEAKLY_INJECTIVE:
        return weakly_injective_verdict(X)
    if label is ClassLabel.PRINCIPALLY_WEAKLY_INJECTIVE:
        return pwi_z_criterion(X)
    if label is ClassLabel.FREE:
        return _component_verdict(X, [regular_act(M)])
    if label is ClassLabel.PROJECTIVE:
        S = regular_act(M)
        models = [S.restrict(principal_right_ideal(M, e))[0] for e in _elements_with(M, "idempotent")]
        return _component_verdict(X, models, EXTERNAL_NOTE)
    if label is ClassLabel.GENERATOR:
        found = enumerate_homs(X, regular_act(M), "epi", limit=1)
        if found:
            return ClassVerdict(True, found[0].mapping)
        return ClassVerdict(False, ("no-epi-onto-S",))
    raise ValueError(label)  # pragma: no cover


# ---------------------------------------------------------------- divisible subacts

def _multipliers(X):
    if isinstance(X, NatAct):
        return [lambda d, n=n: X.act(d, n) for n in range(1, 2 * X.size + 1)]
    return [lambda d, c=c: X.action[d][c] for c in _elements_with(X.monoid, "left-cancellative")]


def _closed_part(X, keep):
    """Largest subact inside ``keep``."""
    return {x for x in keep if set(generated_subact(X, [x]).members) <= keep}


def largest_divisible_subact(X):
    """Greatest subact on which every left cancellative element acts surjectively, or None."""
    mults = _multipliers(X)
    current = set(X.elements)
    while True:
        keep = {a for a in current if all(any(m(d) == a for d in current) for m in mults)}
        keep = _closed_part(X, keep)
        if keep == current:
            break
        current = keep
    if not current:
        return None
    return SubactHandle(X, tuple(sorted(current)))


def is_divisible_subact(X, members):
    mults = _multipliers(X)
    ms = set(members)
    return all(any(m(d) == a for d in ms) for a in ms for m in mults)


# ---------------------------------------------------------------- envelopes

def essential_extension_check(iota, congruences=None):
    """True iff every nonidentity congruence on the target identifies two points of the image."""
    B = iota.target
    for rho in congruences if congruences is not None else all_right_congruences(B):
        if rho.is_identity:
            continue
        image = iota.mapping
        if not any(rho.related(image[i], image[j]) for i in range(len(image)) for j in range(i + 1, len(image))):
            return ClassVerdict(False, rho.labels)
    return ClassVerdict(True)


def injective_envelope_bounded(X, cap):
    """Smallest injective essential extension of size <= cap, or None (inconclusive)."""
    if cap < X.size:
        raise ValueError("cap must be at least the act size")
    if injective_verdict(X):
        return X, identity_map(X)
    for m in range(X.size + 1, min(cap, ACT_ENUM_CAP) + 1):
        for B in enumerate_acts(X.monoid, m):
            if not injective_verdict(B):
                continue
            congs = all_right_congruences(B)
            for mapping in hom_mappings(X, B, mono=True):
                iota = ActMap(X, B, mapping)
                if essential_extension_check(iota, congs):
                    return B, iota
    return None
