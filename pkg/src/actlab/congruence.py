"""Right congruences on finite acts."""
from dataclasses import dataclass
from itertools import combinations

from . import kernels
from .act import ActMap, FiniteAct, generated_subact
from .errors import BoundExceeded

CONGRUENCE_CAP = 8


@dataclass(frozen=True)
class RightCongruence:
    """Partition of ``act``'s carrier; ``labels[x]`` is the least member of x's block."""

    act: object
    labels: tuple

    def related(self, x, y):
        return self.labels[x] == self.labels[y]

    @property
    def blocks(self):
        out = {}
        for x, r in enumerate(self.labels):
            out.setdefault(r, []).append(x)
        return [tuple(b) for _, b in sorted(out.items())]

    @property
    def num_blocks(self):
        return len(set(self.labels))

    @property
    def is_identity(self):
        return self.num_blocks == len(self.labels)

    @property
    def is_universal(self):
        return self.num_blocks == 1

    def pairs(self):
        return {(x, y) for b in self.blocks for x in b for y in b}

    def __le__(self, other):
        """Refinement: every block of self lies in a block of other."""
        return all(other.labels[x] == other.labels[self.labels[x]] for x in range(len(self.labels)))

    def meet(self, other):
        groups = {}
        labels = []
        for x in range(len(self.labels)):
            key = (self.labels[x], other.labels[x])
            labels.append(groups.setdefault(key, x))
        return RightCongruence(self.act, tuple(labels))


def _labels_from_partition(assign):
    first = {}
    return tuple(first.setdefault(b, x) for x, b in enumerate(assign))


def is_compatible(X, labels):
    k = X.hom_cols
    flat = X.hom_flat
    for x in X.elements:
        for y in X.elements:
            if x < y and labels[x] == labels[y]:
                for s in range(k):
                    if labels[flat[x * k + s]] != labels[flat[y * k + s]]:
                        return False
    return True


def identity_congruence(X):
    return RightCongruence(X, tuple(X.elements))


def universal_congruence(X):
    return RightCongruence(X, tuple(0 for _ in X.elements))


def generated_congruence(X, pairs):
    """Least congruence containing ``pairs`` (union-find saturation, FIFO)."""
    pairs = [(int(a), int(b)) for a, b in pairs]
    for a, b in pairs:
        if not (0 <= a < X.size and 0 <= b < X.size):
            raise IndexError(f"pair {(a, b)} out of range")
    labels = kernels.closure(X.hom_flat, X.size, X.hom_cols, pairs)
    return RightCongruence(X, tuple(labels))


def quotient_act(X, rho):
    """X/rho with blocks ordered by least member, and the projection."""
    reps = sorted(set(rho.labels))
    index = {r: i for i, r in enumerate(reps)}
    proj = tuple(index[rho.labels[x]] for x in X.elements)
    if isinstance(X, FiniteAct):
        Q = FiniteAct(X.monoid, tuple(tuple(proj[v] for v in X.action[r]) for r in reps))
    else:
        Q = X.from_step([proj[X.step[r]] for r in reps])
    return Q, ActMap(X, Q, proj)


def kernel(f):
    """Partition of the source by fibres of ``f``."""
    first = {}
    labels = tuple(first.setdefault(y, x) for x, y in enumerate(f.mapping))
    rho = RightCongruence(f.source, labels)
    if not is_compatible(f.source, labels):  # pragma: no cover - f equivariant
        raise AssertionError("kernel of an S-map is not compatible")
    return rho


def all_right_congruences(X, cap=CONGRUENCE_CAP):
    """Every right congruence, finest first, then by label tuple."""
    if X.size > cap:
        raise BoundExceeded(f"act of size {X.size} exceeds congruence cap {cap}")
    found = [RightCongruence(X, _labels_from_partition(r)) for r in kernels.right_congruences(X.hom_flat, X.size, X.hom_cols)]
    found.sort(key=lambda r: (-r.num_blocks, r.labels))
    return found


def spanning_pairs(rho):
    return [(b[0], y) for b in rho.blocks for y in b[1:]]


def minimal_generating_pairs(rho):
    """Inclusion-minimal generating pairs, by greedy deletion from a spanning set."""
    X = rho.act
    pairs = spanning_pairs(rho)
    i = 0
    while i < len(pairs):
        trial = pairs[:i] + pairs[i + 1:]
        if generated_congruence(X, trial).labels == rho.labels:
            pairs = trial
        else:
            i += 1
    return pairs


def lattice_height(congruences):
    """Number of members in the longest refinement chain."""
    ordered = sorted(congruences, key=lambda r: -r.num_blocks)
    best = []
    for i, r in enumerate(ordered):
        below = [best[j] for j in range(i) if ordered[j] <= r and ordered[j].labels != r.labels]
        best.append(1 + max(below, default=0))
    return max(best, default=0)


def minimal_generating_set(X):
    """A finite generating set of X, irredundant under deletion."""
    gens = []
    covered = set()
    for x in X.elements:
        if x not in covered:
            gens.append(x)
            covered |= set(generated_subact(X, [x]).members)
    i = 0
    while i < len(gens):
        rest = gens[:i] + gens[i + 1:]
        if rest and len(generated_subact(X, rest)) == X.size:
            gens = rest
        else:
            i += 1
    return gens


@dataclass(frozen=True)
class NoetherianReport:
    noetherian: bool
    num_congruences: int
    height: int
    generating_pairs: tuple
    generating_set: tuple


def noetherian_certificate(X, cap=CONGRUENCE_CAP):
    congs = all_right_congruences(X, cap)
    gens = []
    ok = True
    for rho in congs:
        pairs = minimal_generating_pairs(rho)
        ok = ok and generated_congruence(X, pairs).labels == rho.labels
        gens.append(tuple(pairs))
    return NoetherianReport(ok, len(congs), lattice_height(congs), tuple(gens), tuple(minimal_generating_set(X)))


def intersection_oracle(X, pairs, congruences=None):
    """Meet of every right congruence containing ``pairs`` (brute-force reference)."""
    congs = congruences if congruences is not None else all_right_congruences(X)
    result = universal_congruence(X)
    for rho in congs:
        if all(rho.related(a, b) for a, b in pairs):
            result = result.meet(rho)
    return result


def rgs_partitions(n):
    """All set partitions of range(n) as least-member label tuples (no compatibility filter)."""
    out = []

    def rec(k, assign, nb):
        if k == n:
            out.append(_labels_from_partition(assign))
            return
        for b in range(nb + 1):
            rec(k + 1, assign + [b], max(nb, b + 1))

    rec(0, [], 0)
    return out


def pair_subsets(X, max_pairs):
    elems = list(X.elements)
    all_pairs = [(a, b) for a, b in combinations(elems, 2)]
    for r in range(max_pairs + 1):
        yield from combinations(all_pairs, r)
