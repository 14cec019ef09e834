"""Colimits of finite diagrams of acts, with bounded universal-property checks."""
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product

from .act import ActMap, FiniteAct, canonical_key, coproduct, cyclic_acts, hom_mappings, identity_map
from .congruence import generated_congruence, quotient_act
from .errors import BoundExceeded, MismatchedEndpoints, MismatchedSource, MixedMonoids

PROBE_CAP = 6


@dataclass(frozen=True)
class Diagram:
    """Objects and arrows ``(i, j, map)`` from object i to object j."""

    objects: tuple
    arrows: tuple


@dataclass(frozen=True)
class DirectSystem:
    """Acts indexed by a finite poset with transitions for every i <= j.

    ``leq`` is the full order relation as a set of pairs. ``transitions`` maps
    (i, j) with i < j to an ActMap; identities are implicit.
    """

    acts: tuple
    leq: frozenset
    transitions: dict = field(hash=False)

    def __post_init__(self):
        k = len(self.acts)
        for i in range(k):
            if (i, i) not in self.leq:
                raise ValueError("order relation must be reflexive")
        for (i, j) in self.leq:
            if i != j and (j, i) in self.leq:
                raise ValueError("order relation must be antisymmetric")
            for (j2, l) in self.leq:
                if j2 == j and (i, l) not in self.leq:
                    raise ValueError("order relation must be transitive")
        for (i, j) in self.leq:
            if i == j:
                continue
            phi = self.transitions.get((i, j))
            if phi is None or phi.source != self.acts[i] or phi.target != self.acts[j]:
                raise MismatchedEndpoints(f"transition {(i, j)} missing or mismatched")
        for (i, j) in self.leq:
            for (j2, l) in self.leq:
                if j2 != j or i == j or j == l:
                    continue
                if self.transition(j, l).compose(self.transition(i, j)).mapping != self.transition(i, l).mapping:
                    raise ValueError(f"transitions not functorial at {(i, j, l)}")

    def transition(self, i, j):
        if i == j:
            return identity_map(self.acts[i])
        return self.transitions[(i, j)]

    @property
    def directed(self):
        k = len(self.acts)
        return all(any((i, u) in self.leq and (j, u) in self.leq for u in range(k)) for i in range(k) for j in range(k))

    def diagram(self):
        arrows = tuple((i, j, self.transitions[(i, j)]) for (i, j) in sorted(self.leq) if i != j)
        return Diagram(tuple(self.acts), arrows)


def chain_system(acts, maps):
    """Direct system on a chain 0 < 1 < ... with consecutive transitions ``maps``."""
    k = len(acts)
    leq = frozenset((i, j) for i in range(k) for j in range(i, k))
    trans = {}
    for i in range(k):
        for j in range(i + 1, k):
            f = maps[i]
            for step in range(i + 1, j):
                f = maps[step].compose(f)
            trans[(i, j)] = f
    return DirectSystem(tuple(acts), leq, trans)


@dataclass(frozen=True)
class Cocone:
    diagram: Diagram
    apex: object
    legs: tuple

    def commutes(self):
        return all(self.legs[j].compose(a).mapping == self.legs[i].mapping for i, j, a in self.diagram.arrows)


def _diagram_colimit(D):
    objs = list(D.objects)
    M = objs[0].monoid
    if any(o.monoid != M for o in objs):
        raise MixedMonoids("diagram over different monoids")
    if all(isinstance(o, FiniteAct) for o in objs):
        C, inj = coproduct(objs)
    else:
        C, inj = _nat_coproduct(objs)
    pairs = [(inj[i](x), inj[j](a(x))) for i, j, a in D.arrows for x in range(objs[i].size)]
    rho = generated_congruence(C, pairs)
    apex, proj = quotient_act(C, rho)
    legs = tuple(proj.compose(e) for e in inj)
    return Cocone(D, apex, legs)


def _nat_coproduct(objs):
    from .natacts import NatAct

    step = []
    offs = []
    for o in objs:
        off = len(step)
        offs.append(off)
        step.extend(off + v for v in o.step)
    X = NatAct(tuple(step))
    return X, [ActMap(o, X, tuple(off + x for x in o.elements)) for o, off in zip(objs, offs)]


def colimit(system):
    """Colimiting cocone of a DirectSystem (or a bare Diagram)."""
    D = system.diagram() if isinstance(system, DirectSystem) else system
    return _diagram_colimit(D)


def coequalizer_cocone(f, g):
    if f.source != g.source or f.target != g.target:
        raise MismatchedEndpoints("coequalizer needs parallel maps")
    return _diagram_colimit(Diagram((f.source, f.target), ((0, 1, f), (0, 1, g))))


def coequalizer(f, g):
    c = coequalizer_cocone(f, g)
    return c.apex, c.legs[1]


def pushout_cocone(f, g):
    if f.source != g.source:
        raise MismatchedSource("pushout needs maps with a common source")
    return _diagram_colimit(Diagram((f.source, f.target, g.target), ((0, 1, f), (0, 2, g))))


def pushout(f, g):
    c = pushout_cocone(f, g)
    return c.apex, c.legs[1], c.legs[2]


# ---------------------------------------------------------------- universality

def probe_library(M, bound):
    """Theta, S, all cyclic acts and their coproducts, up to ``bound`` elements."""
    if bound > PROBE_CAP:
        raise BoundExceeded(f"probe bound {bound} exceeds cap {PROBE_CAP}")
    pieces = [C for C in cyclic_acts(M) if C.size <= bound]
    seen = set()
    out = []
    for r in range(1, bound + 1):
        for combo in combinations_with_replacement(range(len(pieces)), r):
            if sum(pieces[i].size for i in combo) > bound:
                continue
            T = coproduct([pieces[i] for i in combo])[0] if r > 1 else pieces[combo[0]]
            key = (T.size, canonical_key(T))
            if key not in seen:
                seen.add(key)
                out.append((key, T))
    out.sort(key=lambda kv: kv[0])
    return [T for _, T in out]


def _nat_probes(bound):
    from .natacts import all_natacts

    return all_natacts(bound)


@dataclass(frozen=True)
class UniversalReport:
    ok: bool
    probes: int
    cocones_checked: int
    failure: object = None

    def __bool__(self):
        return self.ok


def _competing_cocones(D, T):
    """Every family of maps X_i -> T commuting with the diagram arrows."""
    n = len(D.objects)
    outgoing = {i: [(j, a) for i2, j, a in D.arrows if i2 == i] for i in range(n)}
    sinks = [i for i in range(n) if not outgoing[i]]
    choices = [hom_mappings(D.objects[i], T) for i in sinks]
    for combo in product(*choices):
        legs = [None] * n
        for i, m in zip(sinks, combo):
            legs[i] = m
        changed = True
        while changed:
            changed = False
            for i in range(n):
                if legs[i] is not None:
                    continue
                for j, a in outgoing[i]:
                    if legs[j] is not None:
                        legs[i] = tuple(legs[j][v] for v in a.mapping)
                        changed = True
                        break
        if any(l is None for l in legs):  # pragma: no cover - diagrams here are acyclic
            raise ValueError("diagram has a cycle of arrows")
        if all(tuple(legs[j][v] for v in a.mapping) == legs[i] for i, j, a in D.arrows):
            yield legs


def verify_universal(cocone, probe_bound, probes=None):
    """Check that every competing cocone into a probe act factors uniquely through the apex."""
    D = cocone.diagram
    if not cocone.commutes():
        for i, j, a in D.arrows:
            if cocone.legs[j].compose(a).mapping != cocone.legs[i].mapping:
                return UniversalReport(False, 0, 0, ("not-a-cocone", i, j))
    if probes is None:
        M = cocone.apex.monoid
        probes = _nat_probes(probe_bound) if not isinstance(cocone.apex, FiniteAct) else probe_library(M, probe_bound)
    checked = 0
    apex = cocone.apex
    for T in probes:
        for legs in _competing_cocones(D, T):
            checked += 1
            forced = {}
            clash = False
            for i, leg in enumerate(cocone.legs):
                for x, p in enumerate(leg.mapping):
                    v = legs[i][x]
                    if forced.setdefault(p, v) != v:
                        clash = True
            if clash:
                return UniversalReport(False, len(probes), checked, ("no-mediator", T, tuple(legs)))
            allowed = [({forced[p]} if p in forced else set(range(T.size))) for p in range(apex.size)]
            mediators = hom_mappings(apex, T, allowed=allowed, limit=2)
            if len(mediators) != 1:
                kind = "no-mediator" if not mediators else "non-unique-mediator"
                return UniversalReport(False, len(probes), checked, (kind, T, tuple(legs)))
    return UniversalReport(True, len(probes), checked)


def jointly_epi(cocone):
    hit = set()
    for leg in cocone.legs:
        hit |= set(leg.mapping)
    return len(hit) == cocone.apex.size
