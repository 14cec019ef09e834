"""Precover, cover and unique-mapping-property certification against explicit test families.

The precover condition quantifies over a proper class, so every certificate
here is relative to a finite :class:`TestFamily` whose bounds are recorded in
the certificate. The endomorphism condition of a cover is checked exactly.
"""
from collections import defaultdict
from dataclasses import dataclass, field

from .act import (
    ActMap,
    FiniteAct,
    all_acts,
    all_subacts,
    free_act,
    hom_mappings,
)
from .classes import act_in_class, largest_divisible_subact
from .errors import BoundExceeded, ClassMembershipFails, NotEpi
from .natacts import NatAct, divisible_natacts
from .verdict import ClassLabel, ClassVerdict

FAMILY_SIZE_CAP = 6


@dataclass(frozen=True)
class TestFamily:
    label: ClassLabel
    members: tuple
    provenance: str = ""

    __test__ = False  # not a pytest class

    @classmethod
    def from_members(cls, label, members, provenance=""):
        label = ClassLabel.parse(label)
        for X in members:
            if not act_in_class(X, label):
                raise ClassMembershipFails(f"family member {X} is not in class {label.value}")
        return cls(label, tuple(members), provenance)

    @classmethod
    def build(cls, M, label, size_bound):
        """All class members of size <= size_bound over ``M`` (one per iso class)."""
        label = ClassLabel.parse(label)
        if size_bound > FAMILY_SIZE_CAP:
            raise BoundExceeded(f"family bound {size_bound} exceeds cap {FAMILY_SIZE_CAP}")
        if label is ClassLabel.FREE:
            members = [free_act(M, k)[0] for k in range(1, size_bound // M.order + 1)]
            return cls(label, tuple(members), f"free acts of rank <= {size_bound // M.order}")
        members = [X for X in all_acts(M, size_bound) if act_in_class(X, label)]
        return cls(label, tuple(members), f"{label.value} acts of size <= {size_bound}")

    @classmethod
    def build_nat(cls, size_bound):
        return cls.from_members(ClassLabel.DIVISIBLE, divisible_natacts(size_bound), f"divisible N-acts of size <= {size_bound}")


@dataclass(frozen=True)
class CoverCertificate:
    map: ActMap
    kind: str
    family: TestFamily
    audit: dict = field(hash=False, compare=False)

    ok = True

    def __bool__(self):
        return True

    def replay(self):
        """Re-verify every recorded factorization and endomorphism inverse."""
        g = self.map.mapping
        for idx, h, f in self.audit.get("factorizations", ()):
            if tuple(g[v] for v in f) != h:
                return False
        for f, inv in self.audit.get("endomorphisms", ()):
            if tuple(g[v] for v in f) != g:
                return False
            if any(f[inv[c]] != c or inv[f[c]] != c for c in range(len(g))):
                return False
        return True


@dataclass(frozen=True)
class CoverFailure:
    kind: str
    reason: str
    witness: object = None

    ok = False

    def __bool__(self):
        return False


def _check_source(g, family):
    if not act_in_class(g.source, family.label):
        raise ClassMembershipFails(f"source of g is not in class {family.label.value}")


def _precover_audit(g, family, unique):
    C, A = g.source, g.target
    gm = g.mapping
    factorizations = []
    for idx, X in enumerate(family.members):
        through = defaultdict(list)
        for f in hom_mappings(X, C):
            through[tuple(gm[v] for v in f)].append(f)
        for h in hom_mappings(X, A):
            fs = through.get(h)
            if not fs:
                return CoverFailure("precover-relative", "no-factorization", (idx, X, h))
            if unique and len(fs) > 1:
                return CoverFailure("ump-cover", "non-unique-factorization", (idx, X, h, fs[0], fs[1]))
            factorizations.append((idx, h, fs[0]))
    return factorizations


def commuting_endomorphisms(g):
    """Every endomorphism f of the source with g f = g (exact enumeration)."""
    C = g.source
    gm = g.mapping
    allowed = [{c2 for c2 in C.elements if gm[c2] == gm[c]} for c in C.elements]
    return hom_mappings(C, C, allowed=allowed)


def _endo_audit(g):
    out = []
    for f in commuting_endomorphisms(g):
        if len(set(f)) != len(f):
            return CoverFailure("cover", "non-iso-endomorphism", f)
        inv = [0] * len(f)
        for c, v in enumerate(f):
            inv[v] = c
        out.append((f, tuple(inv)))
    return out


def is_precover_rel(g, family):
    _check_source(g, family)
    fac = _precover_audit(g, family, unique=False)
    if isinstance(fac, CoverFailure):
        return fac
    return CoverCertificate(g, "precover-relative", family, {"factorizations": fac})


def is_cover(g, family):
    _check_source(g, family)
    fac = _precover_audit(g, family, unique=False)
    if isinstance(fac, CoverFailure):
        return fac
    endos = _endo_audit(g)
    if isinstance(endos, CoverFailure):
        return endos
    return CoverCertificate(g, "cover", family, {"factorizations": fac, "endomorphisms": endos})


def has_ump(g, family):
    _check_source(g, family)
    fac = _precover_audit(g, family, unique=True)
    if isinstance(fac, CoverFailure):
        return fac
    return CoverCertificate(g, "ump-precover", family, {"factorizations": fac, "unique": True})


def certify_ump_cover(g, family):
    """Precover with unique factorizations plus the exact endomorphism audit."""
    _check_source(g, family)
    fac = _precover_audit(g, family, unique=True)
    if isinstance(fac, CoverFailure):
        return fac
    endos = _endo_audit(g)
    if isinstance(endos, CoverFailure):
        return endos
    return CoverCertificate(g, "ump-cover", family, {"factorizations": fac, "endomorphisms": endos, "unique": True})


def is_coessential(g):
    """No proper subact of the source still maps onto the target."""
    if not g.is_surjective:
        raise NotEpi("coessential check needs an epimorphism")
    C = g.source
    for B in all_subacts(C):
        if len(B) < C.size and len({g.mapping[x] for x in B.members}) == g.target.size:
            return ClassVerdict(False, B.members)
    return ClassVerdict(True)


def free_precover(A):
    """Evaluation (a, s) -> a*s from the free act on the carrier of A."""
    M = A.monoid
    F, _ = free_act(M, A.size)
    m = M.order
    return ActMap(F, A, tuple(A.action[i // m][i % m] for i in range(F.size)))


def default_family(A, label, size_bound):
    if isinstance(A, NatAct):
        if ClassLabel.parse(label) is not ClassLabel.DIVISIBLE:
            raise ValueError("N-act families are divisible only")
        return TestFamily.build_nat(size_bound)
    return TestFamily.build(A.monoid, label, size_bound)


def divisible_cover(A, family=None, family_bound=4):
    """Inclusion of the largest divisible subact, certified as a UMP-cover; None if there is none."""
    D = largest_divisible_subact(A)
    if D is None:
        return None
    _, inclusion = D.as_act()
    if family is None:
        family = default_family(A, ClassLabel.DIVISIBLE, family_bound)
    return certify_ump_cover(inclusion, family)


def search_cover(A, label, size_bound, family=None):
    """First cover found among class members of size <= size_bound; None is inconclusive."""
    label = ClassLabel.parse(label)
    if label is ClassLabel.DIVISIBLE:
        return divisible_cover(A, family, size_bound)
    if not isinstance(A, FiniteAct):
        raise ValueError("N-acts support divisible covers only")
    family = family or TestFamily.build(A.monoid, label, size_bound)
    for C in sorted(family.members, key=lambda X: X.size):
        for m in hom_mappings(C, A):
            cert = is_cover(ActMap(C, A, m), family)
            if cert:
                return cert
    return None


def isomorphic_over(g1, g2):
    """An isomorphism phi between the sources with g2 phi = g1, or None."""
    C1, C2 = g1.source, g2.source
    if C1.size != C2.size:
        return None
    allowed = [{c2 for c2 in C2.elements if g2.mapping[c2] == g1.mapping[c1]} for c1 in C1.elements]
    found = hom_mappings(C1, C2, allowed=allowed, mono=True, limit=1)
    return ActMap(C1, C2, found[0]) if found else None
