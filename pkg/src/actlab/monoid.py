"""Finite monoids given by multiplication tables."""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product

from . import kernels
from .errors import BoundExceeded, IdentityLawFails, IndexOutOfRange, NotAssociative

MONOID_ORDER_CAP = 5

ELEMENT_KINDS = (
    "left-cancellative",
    "right-cancellative",
    "cancellative",
    "left-zero",
    "unit",
    "idempotent",
    "regular",
)
MONOID_KINDS = (
    "group",
    "right-cancellative",
    "left-cancellative",
    "left-reversible",
    "CRM",
    "divisible",
    "regular",
    "has-left-zero",
)


@dataclass(frozen=True)
class FiniteMonoid:
    """A validated monoid; ``table[s][t]`` is the product s*t.

    Build instances with :func:`validate_monoid`; the constructor does not
    re-check the axioms.
    """

    order: int
    table: tuple
    identity: int
    name: str = field(default="", compare=False)

    def mul(self, s, t):
        return self.table[s][t]

    @property
    def elements(self):
        return range(self.order)

    @cached_property
    def flat(self):
        return tuple(v for row in self.table for v in row)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteMonoid{label} order={self.order} table={self.table}>"


@dataclass(frozen=True)
class ElementSubset:
    monoid: FiniteMonoid
    members: tuple
    submonoid: bool = False

    def __contains__(self, s):
        return s in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class PropertyResult:
    """Outcome of a monoid-level predicate.

    ``witness`` falsifies the universally quantified definition when
    ``holds`` is false; when it is true it may carry the existential witnesses.
    """

    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


def validate_monoid(table, identity, name=""):
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise IndexOutOfRange("empty table")
    for s, row in enumerate(rows):
        if len(row) != n:
            raise IndexOutOfRange(f"row {s} has length {len(row)}, expected {n}", (s,))
        for t, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise IndexOutOfRange(f"entry {s}*{t}={v!r} out of range", (s, t))
    if not 0 <= identity < n:
        raise IndexOutOfRange(f"identity {identity} out of range", (identity,))
    for s in range(n):
        if rows[identity][s] != s or rows[s][identity] != s:
            raise IdentityLawFails(f"identity law fails at {s}", (s,))
    for s, t, u in product(range(n), repeat=3):
        if rows[rows[s][t]][u] != rows[s][rows[t][u]]:
            raise NotAssociative(f"({s}*{t})*{u} != {s}*({t}*{u})", (s, t, u))
    return FiniteMonoid(n, tuple(tuple(r) for r in rows), identity, name)


# ---------------------------------------------------------------- elements

def _left_cancellative(M, e):
    return len({M.table[e][s] for s in M.elements}) == M.order


def _right_cancellative(M, e):
    return len({M.table[s][e] for s in M.elements}) == M.order


def element_property(M, e, kind):
    if not 0 <= e < M.order:
        raise IndexOutOfRange(f"element {e} out of range", (e,))
    T = M.table
    one = M.identity
    if kind == "left-cancellative":
        return _left_cancellative(M, e)
    if kind == "right-cancellative":
        return _right_cancellative(M, e)
    if kind == "cancellative":
        return _left_cancellative(M, e) and _right_cancellative(M, e)
    if kind == "left-zero":
        return all(T[e][s] == e for s in M.elements)
    if kind == "unit":
        return any(T[e][t] == one and T[t][e] == one for t in M.elements)
    if kind == "idempotent":
        return T[e][e] == e
    if kind == "regular":
        return any(T[T[e][t]][e] == e for t in M.elements)
    raise ValueError(f"unknown element property {kind!r}")


def left_invertible(M, e):
    return any(M.table[t][e] == M.identity for t in M.elements)


def cancellative_submonoid(M):
    members = tuple(e for e in M.elements if element_property(M, e, "cancellative"))
    closed = M.identity in members and all(M.table[a][b] in members for a in members for b in members)
    if not closed:  # pragma: no cover - cancellative elements always form a submonoid
        raise AssertionError("cancellative elements not closed")
    return ElementSubset(M, members, submonoid=True)


def principal_right_ideal(M, s):
    return tuple(sorted({M.table[s][t] for t in M.elements}))


def monoid_property(M, kind):
    T = M.table
    els = M.elements
    if kind == "group":
        for e in els:
            if not element_property(M, e, "unit"):
                return PropertyResult(False, (e,))
        return PropertyResult(True)
    if kind in ("right-cancellative", "left-cancellative"):
        for e in els:
            if not element_property(M, e, kind):
                return PropertyResult(False, (e,))
        return PropertyResult(True)
    if kind == "left-reversible":
        for s, t in product(els, repeat=2):
            if not set(principal_right_ideal(M, s)) & set(principal_right_ideal(M, t)):
                return PropertyResult(False, (s, t))
        return PropertyResult(True)
    if kind == "CRM":
        canc = cancellative_submonoid(M).members
        found = {}
        for s in els:
            for c in canc:
                hit = next(((t, d) for d in canc for t in els if T[s][d] == T[c][t]), None)
                if hit is None:
                    return PropertyResult(False, (s, c))
                found[(s, c)] = hit
        return PropertyResult(True, found)
    if kind == "divisible":
        lc = [c for c in els if element_property(M, c, "left-cancellative")]
        for a in els:
            for c in lc:
                if not any(T[d][c] == a for d in els):
                    return PropertyResult(False, (a, c))
        return PropertyResult(True)
    if kind == "regular":
        for e in els:
            if not element_property(M, e, "regular"):
                return PropertyResult(False, (e,))
        return PropertyResult(True)
    if kind == "has-left-zero":
        for z in els:
            if element_property(M, z, "left-zero"):
                return PropertyResult(True, (z,))
        return PropertyResult(False)
    raise ValueError(f"unknown monoid property {kind!r}")


def left_zeros(M):
    return tuple(z for z in M.elements if element_property(M, z, "left-zero"))


# ---------------------------------------------------------------- enumeration

def _perms_fixing_zero(n):
    return [(0,) + p for p in permutations(range(1, n))]


def relabel(M, perm, name=None):
    """Image of ``M`` under the bijection ``perm`` (old index -> new index)."""
    n = M.order
    inv = [0] * n
    for a, b in enumerate(perm):
        inv[b] = a
    table = tuple(tuple(perm[M.table[inv[x]][inv[y]]] for y in range(n)) for x in range(n))
    return FiniteMonoid(n, table, perm[M.identity], M.name if name is None else name)


def canonical_form(M):
    """Lexicographically least relabeling with the identity at index 0."""
    n = M.order
    swap = list(range(n))
    swap[0], swap[M.identity] = M.identity, 0
    base = relabel(M, swap) if M.identity else M
    flat = kernels.canonical_table(base.flat, n, _perms_fixing_zero(n))
    return FiniteMonoid(n, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)), 0, M.name)


def enumerate_monoids(n, up_to_iso=True, cap=MONOID_ORDER_CAP):
    """Yield every monoid of order ``n`` in lexicographic table order.

    With ``up_to_iso`` each isomorphism class appears once, as its canonical
    (lexicographically least, identity 0) table. Otherwise every labelled
    table with any identity position is produced.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n > cap:
        raise BoundExceeded(f"monoid order {n} exceeds cap {cap}")
    perms = _perms_fixing_zero(n) if up_to_iso else None
    flats = kernels.monoid_tables(n, perms)
    tables = [tuple(tuple(f[i * n:(i + 1) * n]) for i in range(n)) for f in flats]
    if up_to_iso:
        for t in tables:
            yield FiniteMonoid(n, t, 0)
        return
    found = []
    for t in tables:
        base = FiniteMonoid(n, t, 0)
        for e in range(n):
            swap = list(range(n))
            swap[0], swap[e] = e, 0
            found.append(relabel(base, swap) if e else base)
    found.sort(key=lambda M: M.table)
    yield from found


def all_monoids(max_order, cap=MONOID_ORDER_CAP):
    """Canonical representatives of every monoid of order 1..max_order."""
    out = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_monoids(n, True, cap))
    return out


def find_isomorphism(M1, M2):
    """A bijection ``phi`` (tuple, index by M1 element) preserving products, or None."""
    n = M1.order
    if n != M2.order:
        return None
    T1, T2 = M1.table, M2.table
    phi = [-1] * n
    used = [False] * n
    phi[M1.identity] = M2.identity
    used[M2.identity] = True
    order = [M1.identity] + [a for a in range(n) if a != M1.identity]

    def consistent(a):
        for b in range(n):
            if phi[b] < 0:
                continue
            for p, q in ((a, b), (b, a)):
                r = T1[p][q]
                if phi[r] >= 0 and phi[r] != T2[phi[p]][phi[q]]:
                    return False
        return True

    def rec(k):
        if k == n:
            return True
        a = order[k]
        for v in range(n):
            if used[v]:
                continue
            phi[a] = v
            used[v] = True
            if consistent(a) and rec(k + 1):
                return True
            phi[a] = -1
            used[v] = False
        return False

    if not consistent(M1.identity):
        return None
    return tuple(phi) if rec(1) else None


# ---------------------------------------------------------------- named monoids

def trivial_monoid():
    return validate_monoid([[0]], 0, "T1")


def cyclic_group(n, name=None):
    return validate_monoid([[(a + b) % n for b in range(n)] for a in range(n)], 0, name or f"Z{n}")


def z2():
    return cyclic_group(2, "Z2")


def sl2():
    """The two-element semilattice {1, 0}: index 0 is the identity, index 1 the zero."""
    return validate_monoid([[0, 1], [1, 1]], 0, "SL2")


def l3():
    """{1, a, b} with a*x = a and b*x = b for x in {a, b}."""
    return validate_monoid([[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0, "L3")


def m3():
    """{1, a, 0} with a*a = 0."""
    return validate_monoid([[0, 1, 2], [1, 2, 2], [2, 2, 2]], 0, "M3")


BUILTIN_MONOIDS = {
    "T1": trivial_monoid,
    "Z2": z2,
    "Z3": lambda: cyclic_group(3),
    "SL2": sl2,
    "L3": l3,
    "M3": m3,
}
