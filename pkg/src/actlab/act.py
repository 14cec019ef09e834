"""Finite right acts, equivariant maps and subacts."""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product

from . import kernels
from .errors import (
    ActionNotAssociative,
    BoundExceeded,
    IndexOutOfRange,
    MixedMonoids,
    NotEquivariant,
    UnitLawFails,
)
from .monoid import FiniteMonoid, sl2

ACT_ENUM_CAP = 6
HOM_FILTERS = ("all", "mono", "epi", "iso")


@dataclass(frozen=True)
class FiniteAct:
    """A right act; ``action[x][s]`` is x*s."""

    monoid: FiniteMonoid
    action: tuple
    name: str = field(default="", compare=False)

    @property
    def size(self):
        return len(self.action)

    @property
    def elements(self):
        return range(len(self.action))

    def act(self, x, s):
        return self.action[x][s]

    @cached_property
    def flat(self):
        return tuple(v for row in self.action for v in row)

    # the hom kernel propagates along these columns
    @property
    def hom_flat(self):
        return self.flat

    @property
    def hom_cols(self):
        return self.monoid.order

    def restrict(self, members):
        """The subact on ``members`` relabeled 0..k-1, plus its inclusion."""
        members = tuple(members)
        index = {x: i for i, x in enumerate(members)}
        sub = FiniteAct(self.monoid, tuple(tuple(index[self.action[x][s]] for s in self.monoid.elements) for x in members))
        return sub, ActMap(sub, self, members)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteAct{label} size={self.size} action={self.action}>"


@dataclass(frozen=True)
class ActMap:
    """Equivariant map; ``mapping[x]`` is the image of source element x."""

    source: object
    target: object
    mapping: tuple

    def __call__(self, x):
        return self.mapping[x]

    def __iter__(self):
        return iter(self.mapping)

    def compose(self, other):
        """``self`` after ``other``."""
        return ActMap(other.source, self.target, tuple(self.mapping[v] for v in other.mapping))

    @property
    def is_injective(self):
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def is_surjective(self):
        return len(set(self.mapping)) == self.target.size

    @property
    def is_bijective(self):
        return self.is_injective and self.is_surjective

    def image(self):
        return SubactHandle(self.target, tuple(sorted(set(self.mapping))))

    def inverse(self):
        inv = [0] * len(self.mapping)
        for x, y in enumerate(self.mapping):
            inv[y] = x
        return ActMap(self.target, self.source, tuple(inv))


@dataclass(frozen=True)
class SubactHandle:
    parent: object
    members: tuple

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def as_act(self):
        return self.parent.restrict(self.members)


def is_equivariant(source, target, mapping):
    k = source.hom_cols
    src, tgt = source.hom_flat, target.hom_flat
    return all(mapping[src[x * k + s]] == tgt[mapping[x] * k + s] for x in range(source.size) for s in range(k))


def act_map(source, target, mapping):
    """Checked constructor for :class:`ActMap`."""
    mapping = tuple(mapping)
    if len(mapping) != source.size or any(not 0 <= y < target.size for y in mapping):
        raise IndexOutOfRange("mapping has wrong length or out-of-range image")
    if source.monoid != target.monoid:
        raise MixedMonoids("source and target are over different monoids")
    if not is_equivariant(source, target, mapping):
        k = source.hom_cols
        for x in range(source.size):
            for s in range(k):
                if mapping[source.hom_flat[x * k + s]] != target.hom_flat[mapping[x] * k + s]:
                    raise NotEquivariant(f"f({x}*{s}) != f({x})*{s}", (x, s))
    return ActMap(source, target, mapping)


def identity_map(X):
    return ActMap(X, X, tuple(X.elements))


def validate_act(M, action, name=""):
    rows = [list(r) for r in action]
    n = len(rows)
    if n == 0:
        raise IndexOutOfRange("empty acts are not allowed")
    for x, row in enumerate(rows):
        if len(row) != M.order:
            raise IndexOutOfRange(f"row {x} has length {len(row)}, expected {M.order}", (x,))
        for s, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise IndexOutOfRange(f"entry {x}*{s}={v!r} out of range", (x, s))
    for x in range(n):
        if rows[x][M.identity] != x:
            raise UnitLawFails(f"{x}*1 != {x}", (x,))
    for x, s, t in product(range(n), M.elements, M.elements):
        if rows[rows[x][s]][t] != rows[x][M.table[s][t]]:
            raise ActionNotAssociative(f"({x}*{s})*{t} != {x}*({s}{t})", (x, s, t))
    return FiniteAct(M, tuple(tuple(r) for r in rows), name)


# ---------------------------------------------------------------- constructions

def regular_act(M):
    """M acting on itself by right multiplication."""
    return FiniteAct(M, M.table, "S")


def terminal_act(M):
    return FiniteAct(M, (tuple(0 for _ in M.elements),), "Theta")


def free_act(M, k):
    """Free act on ``k`` generators; element a*|M|+s encodes the pair (a, s)."""
    if k < 1:
        raise ValueError("rank must be positive")
    m = M.order
    action = tuple(tuple(a * m + M.table[s][t] for t in M.elements) for a in range(k) for s in M.elements)
    basis = tuple(a * m + M.identity for a in range(k))
    return FiniteAct(M, action, f"F{k}"), basis


def coproduct(parts):
    """Disjoint union with its injections; part i occupies a contiguous block."""
    parts = list(parts)
    if not parts:
        raise ValueError("coproduct of an empty list")
    M = parts[0].monoid
    if any(p.monoid != M for p in parts):
        raise MixedMonoids("coproduct parts over different monoids")
    rows = []
    offsets = []
    for p in parts:
        off = len(rows)
        offsets.append(off)
        rows.extend(tuple(off + v for v in row) for row in p.action)
    X = FiniteAct(M, tuple(rows))
    injections = [ActMap(p, X, tuple(off + x for x in p.elements)) for p, off in zip(parts, offsets)]
    return X, injections


def example_act(size, M=None):
    """The act x*1 = x, x*0 = y over SL2; the fixed point y is the last index."""
    M = M or sl2()
    y = size - 1
    return FiniteAct(M, tuple((x, y) for x in range(size)), f"example_sl2_{size}")


# ---------------------------------------------------------------- structure

def fixed_points(X):
    return tuple(x for x in X.elements if all(v == x for v in X.action[x]))


def generated_subact(X, seed):
    seen = set()
    todo = list(seed)
    for x in todo:
        if not 0 <= x < X.size:
            raise IndexOutOfRange(f"element {x} out of range", (x,))
    while todo:
        x = todo.pop()
        if x in seen:
            continue
        seen.add(x)
        todo.extend(X.action[x] if hasattr(X, "action") else (X.step[x],))
    return SubactHandle(X, tuple(sorted(seen)))


def all_subacts(X):
    """Every nonempty action-closed subset, ordered by size then members."""
    principal = {sum(1 << y for y in generated_subact(X, [x]).members) for x in X.elements}
    family = {0}
    for p in sorted(principal):
        family |= {f | p for f in family}
    family.discard(0)
    subsets = [tuple(x for x in X.elements if mask >> x & 1) for mask in family]
    subsets.sort(key=lambda m: (len(m), m))
    return [SubactHandle(X, m) for m in subsets]


def is_subact(X, members):
    ms = set(members)
    return all(v in ms for x in ms for v in X.action[x])


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def indecomposable_components(X):
    """Connected components of the links x -- x*s, as subacts ordered by least member."""
    uf = _UnionFind(X.size)
    k = X.hom_cols
    flat = X.hom_flat
    for x in X.elements:
        for s in range(k):
            uf.union(x, flat[x * k + s])
    blocks = {}
    for x in X.elements:
        blocks.setdefault(uf.find(x), []).append(x)
    return [SubactHandle(X, tuple(b)) for _, b in sorted(blocks.items())]


def is_indecomposable(X):
    return len(indecomposable_components(X)) == 1


# ---------------------------------------------------------------- homs

def hom_mappings(X, Y, allowed=None, mono=False, limit=None):
    """Raw image tuples of all equivariant maps X -> Y (lexicographic order)."""
    if X.monoid != Y.monoid:
        raise MixedMonoids("hom between acts over different monoids")
    flat_allowed = None
    if allowed is not None:
        flat_allowed = [1 if y in allowed[x] else 0 for x in range(X.size) for y in range(Y.size)]
    if mono and X.size > Y.size:
        return []
    return kernels.homs(X.hom_flat, X.size, Y.hom_flat, Y.size, X.hom_cols, flat_allowed, mono, -1 if limit is None else limit)


def enumerate_homs(X, Y, filter="all", limit=None):
    if filter not in HOM_FILTERS:
        raise ValueError(f"unknown filter {filter!r}")
    if filter == "iso" and X.size != Y.size:
        return []
    mono = filter in ("mono", "iso")
    maps = hom_mappings(X, Y, mono=mono, limit=None if filter in ("epi",) else limit)
    out = []
    for m in maps:
        f = ActMap(X, Y, m)
        if filter in ("epi", "iso") and not f.is_surjective:
            continue
        out.append(f)
        if limit is not None and len(out) >= limit:
            break
    return out


def act_isomorphism(X, Y):
    if X.size != Y.size or X.monoid != Y.monoid:
        return None
    found = hom_mappings(X, Y, mono=True, limit=1)
    return ActMap(X, Y, found[0]) if found else None


def are_isomorphic(X, Y):
    return act_isomorphism(X, Y) is not None


_PERMS = {}


def _perms(n):
    if n not in _PERMS:
        _PERMS[n] = list(permutations(range(n)))
    return _PERMS[n]


def canonical_key(X):
    """Lexicographically least relabeled action table (flat), for iso dedupe."""
    if X.size > ACT_ENUM_CAP + 2:
        raise BoundExceeded(f"act of size {X.size} too large for canonical labelling")
    return kernels.canonical_action(X.flat, X.size, X.monoid.order, _perms(X.size))


def act_from_flat(M, n, flat, name=""):
    m = M.order
    return FiniteAct(M, tuple(tuple(flat[x * m:(x + 1) * m]) for x in range(n)), name)


_ACT_CACHE = {}


def enumerate_acts(M, n, up_to_iso=True, cap=ACT_ENUM_CAP):
    """Every act of size ``n`` over ``M``; one canonical table per class when ``up_to_iso``."""
    if n < 1:
        raise ValueError("act size must be positive")
    if n > cap:
        raise BoundExceeded(f"act size {n} exceeds cap {cap}")
    key = (M.table, M.identity, n, up_to_iso)
    if key not in _ACT_CACHE:
        flats = kernels.action_tables(M.flat, M.order, M.identity, n)
        if up_to_iso:
            perms = _perms(n)
            flats = sorted({kernels.canonical_action(f, n, M.order, perms) for f in flats})
        _ACT_CACHE[key] = tuple(flats)
    return [act_from_flat(M, n, f) for f in _ACT_CACHE[key]]


def all_acts(M, max_size, cap=ACT_ENUM_CAP):
    out = []
    for n in range(1, max_size + 1):
        out.extend(enumerate_acts(M, n, True, cap))
    return out


def cyclic_acts(M):
    """Quotients of M by its right congruences, one per isomorphism class."""
    from .congruence import all_right_congruences, quotient_act

    S = regular_act(M)
    seen = set()
    out = []
    for rho in all_right_congruences(S):
        C, _ = quotient_act(S, rho)
        key = (C.size, canonical_key(C))
        if key not in seen:
            seen.add(key)
            out.append(C)
    return out
