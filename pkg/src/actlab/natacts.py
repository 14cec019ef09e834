"""Finite acts over the additive monoid of natural numbers.

Such an act is a finite set with a single endofunction ``step`` (the action
of 1); n acts as the n-fold iterate and 0 acts trivially.
"""
from dataclasses import dataclass, field
from itertools import product
from math import lcm

from .act import ActMap, SubactHandle
from .errors import BoundExceeded, IndexOutOfRange
from .verdict import ClassLabel, ClassVerdict

NATACT_ENUM_CAP = 6


class NaturalNumbers:
    """Marker for (N, +); all elements are cancellative."""

    name = "N"

    def __repr__(self):
        return "N"

    def __eq__(self, other):
        return isinstance(other, NaturalNumbers)

    def __hash__(self):
        return hash("N")


NAT = NaturalNumbers()


@dataclass(frozen=True)
class NatAct:
    step: tuple
    name: str = field(default="", compare=False)

    monoid = NAT

    @property
    def size(self):
        return len(self.step)

    @property
    def elements(self):
        return range(len(self.step))

    @property
    def hom_flat(self):
        return tuple(v for x in self.elements for v in (x, self.step[x]))

    @property
    def hom_cols(self):
        return 2

    def act(self, x, n):
        for _ in range(n):
            x = self.step[x]
        return x

    def from_step(self, step):
        return NatAct(tuple(step))

    def restrict(self, members):
        members = tuple(members)
        index = {x: i for i, x in enumerate(members)}
        sub = NatAct(tuple(index[self.step[x]] for x in members))
        return sub, ActMap(sub, self, members)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<NatAct{label} step={self.step}>"


def natact(step, name=""):
    step = tuple(step)
    if not step:
        raise IndexOutOfRange("empty acts are not allowed")
    if any(not isinstance(v, int) or not 0 <= v < len(step) for v in step):
        raise IndexOutOfRange("step image out of range")
    return NatAct(step, name)


def tail_into_cycle(tail, cycle):
    """A path of ``tail`` points feeding into a ``cycle``-cycle; cycle points come last."""
    n = tail + cycle
    step = [i + 1 for i in range(tail)]
    step += [tail + (j + 1) % cycle for j in range(cycle)]
    return NatAct(tuple(step), f"tail{tail}_cycle{cycle}")


def iterate(X, x, n):
    return X.act(x, n)


def eventual_image(X):
    """The stable image of ``step`` and the bijection ``step`` induces on it."""
    current = set(X.elements)
    for _ in range(X.size + 1):
        nxt = {X.step[x] for x in current}
        if nxt == current:
            break
        current = nxt
    members = tuple(sorted(current))
    return SubactHandle(X, members), {x: X.step[x] for x in members}


def threshold_period(X):
    """Least T, P >= 1 with step^(T+P) = step^T."""
    T = 0
    cycle_lengths = set()
    for x in X.elements:
        seen = {}
        y, i = x, 0
        while y not in seen:
            seen[y] = i
            y = X.step[y]
            i += 1
        T = max(T, seen[y])
        cycle_lengths.add(i - seen[y])
    return T, lcm(*cycle_lengths)


def nat_homs(X, Y, mono=False, limit=None):
    from .act import hom_mappings

    return [ActMap(X, Y, m) for m in hom_mappings(X, Y, mono=mono, limit=limit)]


# ---------------------------------------------------------------- classes

def _window_scan(X, label):
    """Definitional scan over exponents 1..2*size (every distinct action appears there)."""
    window = 2 * X.size
    powers = [tuple(X.elements)]
    for _ in range(window):
        prev = powers[-1]
        powers.append(tuple(X.step[v] for v in prev))
    if label is ClassLabel.DIVISIBLE:
        for n in range(1, window + 1):
            image = set(powers[n])
            for a in X.elements:
                if a not in image:
                    return ClassVerdict(False, (a, n))
        return ClassVerdict(True)
    for n in range(1, window + 1):
        seen = {}
        for x in X.elements:
            v = powers[n][x]
            if v in seen:
                return ClassVerdict(False, (seen[v], x, n))
            seen[v] = x
    return ClassVerdict(True)


def nat_class_check(X, label):
    """TF/WTF iff step is injective, D iff step is surjective; cross-checked by window scan."""
    label = ClassLabel.parse(label)
    if label not in (ClassLabel.TORSION_FREE, ClassLabel.WEAKLY_TORSION_FREE, ClassLabel.DIVISIBLE):
        raise ValueError(f"N-acts support TF, WTF and D only, not {label.value}")
    # on a finite carrier, injective and surjective coincide
    direct = len(set(X.step)) == X.size
    scan = _window_scan(X, label)
    if scan.member != direct:  # pragma: no cover - the window certifies the quantifier
        raise AssertionError(f"window scan disagrees with step test on {X}")
    return scan


# ---------------------------------------------------------------- enumeration

def canonical_key(X):
    """Isomorphism invariant of the functional graph (complete: trees on cycles)."""
    preimages = [[] for _ in X.elements]
    for x in X.elements:
        preimages[X.step[x]].append(x)
    cyc, _ = eventual_image(X)
    on_cycle = set(cyc.members)
    memo = {}

    def tree(v):
        if v not in memo:
            kids = sorted(tree(u) for u in preimages[v] if u not in on_cycle)
            memo[v] = "(" + "".join(kids) + ")"
        return memo[v]

    seen = set()
    cycles = []
    for x in sorted(on_cycle):
        if x in seen:
            continue
        seq = []
        y = x
        while y not in seen:
            seen.add(y)
            seq.append(tree(y))
            y = X.step[y]
        rots = [tuple(seq[i:] + seq[:i]) for i in range(len(seq))]
        cycles.append(min(rots))
    return tuple(sorted(cycles))


_NAT_CACHE = {}


def enumerate_natacts(n, up_to_iso=True, cap=NATACT_ENUM_CAP):
    """All N-acts on n points; with ``up_to_iso`` the lexicographically first of each class."""
    if n > cap:
        raise BoundExceeded(f"N-act size {n} exceeds cap {cap}")
    key = (n, up_to_iso)
    if key not in _NAT_CACHE:
        steps = product(range(n), repeat=n)
        if up_to_iso:
            reps = {}
            for s in steps:
                reps.setdefault(canonical_key(NatAct(s)), s)
            _NAT_CACHE[key] = tuple(sorted(reps.values()))
        else:
            _NAT_CACHE[key] = tuple(steps)
    return [NatAct(s) for s in _NAT_CACHE[key]]


def all_natacts(max_size, cap=NATACT_ENUM_CAP):
    out = []
    for n in range(1, max_size + 1):
        out.extend(enumerate_natacts(n, True, cap))
    return out


def divisible_natacts(max_size):
    """N-acts with bijective step (disjoint unions of cycles), one per cycle type."""
    out = []

    def partitions(n, largest):
        if n == 0:
            yield ()
            return
        for k in range(min(n, largest), 0, -1):
            for rest in partitions(n - k, k):
                yield (k,) + rest

    for n in range(1, max_size + 1):
        for parts in partitions(n, n):
            step = []
            off = 0
            for k in parts:
                step += [off + (j + 1) % k for j in range(k)]
                off += k
            out.append(NatAct(tuple(step)))
    return out


# ---------------------------------------------------------------- adapter

def to_finite_act(X):
    """The same act over the monogenic monoid <a | a^(T+P) = a^T> of its step."""
    from .act import FiniteAct
    from .monoid import validate_monoid

    T, P = threshold_period(X)
    order = T + P

    def red(k):
        return k if k < order else T + (k - T) % P

    M = validate_monoid([[red(i + j) for j in range(order)] for i in range(order)], 0, f"C{T},{P}")
    action = tuple(tuple(X.act(x, i) for i in range(order)) for x in X.elements)
    return FiniteAct(M, action, X.name)


def adapter_class_check(X, label):
    """Class verdict computed on the finite table, with every exponent treated as cancellative."""
    label = ClassLabel.parse(label)
    F = to_finite_act(X)
    exps = range(1, F.monoid.order)
    if label is ClassLabel.DIVISIBLE:
        for i in exps:
            image = {F.action[d][i] for d in F.elements}
            for a in F.elements:
                if a not in image:
                    return ClassVerdict(False, (a, i))
        return ClassVerdict(True)
    for i in exps:
        seen = {}
        for x in F.elements:
            v = F.action[x][i]
            if v in seen:
                return ClassVerdict(False, (seen[v], x, i))
            seen[v] = x
    return ClassVerdict(True)


# ---------------------------------------------------------------- covers

def nat_divisible_cover(X, family_bound=4):
    """Inclusion of the eventual image, certified as a UMP-cover against divisible N-acts."""
    from .covers import TestFamily, certify_ump_cover

    E, _ = eventual_image(X)
    sub, inclusion = E.as_act()
    family = TestFamily.from_members(ClassLabel.DIVISIBLE, divisible_natacts(family_bound), f"divisible N-acts of size <= {family_bound}")
    return certify_ump_cover(inclusion, family)
