"""Pure-Python search kernels.

Every table is passed flattened in row-major order. The compiled module
``_ckernels`` exposes the same functions with the same signatures and must
return identical results in identical order.
"""
import sys

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


def _monoid_cell_ok(T, n, i, j):
    v = T[i * n + j]
    # (i j) c
    for c in range(n):
        lhs = T[v * n + c]
        bc = T[j * n + c]
        if lhs < 0 or bc < 0:
            continue
        rhs = T[i * n + bc]
        if rhs >= 0 and lhs != rhs:
            return False
    # a (i j)
    for a in range(n):
        ab = T[a * n + i]
        rhs = T[a * n + v]
        if ab < 0 or rhs < 0:
            continue
        lhs = T[ab * n + j]
        if lhs >= 0 and lhs != rhs:
            return False
    # (a b) j with ab == i
    for a in range(n):
        for b in range(n):
            if T[a * n + b] != i:
                continue
            bc = T[b * n + j]
            if bc < 0:
                continue
            rhs = T[a * n + bc]
            if rhs >= 0 and rhs != v:
                return False
    # i (b c) with bc == j
    for b in range(n):
        for c in range(n):
            if T[b * n + c] != j:
                continue
            ab = T[i * n + b]
            if ab < 0:
                continue
            lhs = T[ab * n + c]
            if lhs >= 0 and lhs != v:
                return False
    return True


def _table_is_min(T, n, perms):
    for p in perms:
        q = [0] * n
        for a in range(n):
            q[p[a]] = a
        for x in range(n):
            done = False
            for y in range(n):
                w = p[T[q[x] * n + q[y]]]
                t = T[x * n + y]
                if w < t:
                    return False
                if w > t:
                    done = True
                    break
            if done:
                break
    return True


def monoid_tables(n, perms=None):
    """All associative n x n tables with identity 0, in lexicographic order.

    With ``perms`` (relabelings fixing 0), keep only tables that are
    lexicographically least among their relabelings.
    """
    T = [-1] * (n * n)
    for a in range(n):
        T[a] = a
        T[a * n] = a
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    out = []

    def rec(k):
        if k == len(cells):
            if perms is None or _table_is_min(T, n, perms):
                out.append(tuple(T))
            return
        i, j = cells[k]
        for v in range(n):
            T[i * n + j] = v
            if _monoid_cell_ok(T, n, i, j):
                rec(k + 1)
        T[i * n + j] = -1

    rec(0)
    return out


def canonical_table(T, n, perms):
    best = tuple(T)
    for p in perms:
        q = [0] * n
        for a in range(n):
            q[p[a]] = a
        cand = tuple(p[T[q[x] * n + q[y]]] for x in range(n) for y in range(n))
        if cand < best:
            best = cand
    return best


def _action_cell_ok(A, M, m, x, s):
    y = A[x * m + s]
    for t in range(m):
        lhs = A[y * m + t]
        rhs = A[x * m + M[s * m + t]]
        if lhs >= 0 and rhs >= 0 and lhs != rhs:
            return False
    nx = len(A) // m
    for x2 in range(nx):
        for s2 in range(m):
            if A[x2 * m + s2] != x:
                continue
            rhs = A[x2 * m + M[s2 * m + s]]
            if rhs >= 0 and rhs != y:
                return False
    for s2 in range(m):
        for t2 in range(m):
            if M[s2 * m + t2] != s:
                continue
            mid = A[x * m + s2]
            if mid < 0:
                continue
            lhs = A[mid * m + t2]
            if lhs >= 0 and lhs != y:
                return False
    return True


def action_tables(M, m, e, n):
    """All right actions of the monoid table ``M`` (identity ``e``) on n points."""
    A = [-1] * (n * m)
    for x in range(n):
        A[x * m + e] = x
    cells = [(x, s) for x in range(n) for s in range(m) if s != e]
    out = []

    def rec(k):
        if k == len(cells):
            out.append(tuple(A))
            return
        x, s = cells[k]
        for v in range(n):
            A[x * m + s] = v
            if _action_cell_ok(A, M, m, x, s):
                rec(k + 1)
        A[x * m + s] = -1

    rec(0)
    return out


def canonical_action(A, n, m, perms):
    best = tuple(A)
    for p in perms:
        q = [0] * n
        for a in range(n):
            q[p[a]] = a
        cand = tuple(p[A[q[x] * m + s]] for x in range(n) for s in range(m))
        if cand < best:
            best = cand
    return best


def homs(src, n, tgt, nt, k, allowed=None, mono=False, limit=-1):
    """Equivariant maps between two acts given by ``k`` generating columns.

    ``allowed`` is an optional flat n x nt 0/1 mask restricting images.
    Results are in lexicographic order of the image tuple.
    """
    f = [-1] * n
    used = [0] * nt
    out = []
    stack = []

    def assign(x, y, trail):
        stack.append((x, y))
        ok = True
        while stack:
            u, v = stack.pop()
            cur = f[u]
            if cur >= 0:
                if cur != v:
                    ok = False
                    break
                continue
            if allowed is not None and not allowed[u * nt + v]:
                ok = False
                break
            if mono:
                if used[v]:
                    ok = False
                    break
                used[v] = 1
            f[u] = v
            trail.append(u)
            for s in range(k):
                stack.append((src[u * k + s], tgt[v * k + s]))
        stack.clear()
        return ok

    def undo(trail):
        for u in trail:
            if mono:
                used[f[u]] = 0
            f[u] = -1

    def rec(x):
        while x < n and f[x] >= 0:
            x += 1
        if x == n:
            out.append(tuple(f))
            return limit >= 0 and len(out) >= limit
        for y in range(nt):
            trail = []
            ok = assign(x, y, trail)
            if ok and rec(x + 1):
                undo(trail)
                return True
            undo(trail)
        return False

    if n == 0:
        return [()]
    if limit == 0:
        return []
    rec(0)
    return out


def _find(parent, a):
    root = a
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        parent[a], a = root, parent[a]
    return root


def closure(A, n, m, pairs):
    """Least right congruence containing ``pairs``; labels are least members."""
    parent = list(range(n))
    queue = list(pairs)
    head = 0
    while head < len(queue):
        x, y = queue[head]
        head += 1
        rx = _find(parent, x)
        ry = _find(parent, y)
        if rx == ry:
            continue
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        for s in range(m):
            queue.append((A[x * m + s], A[y * m + s]))
    return tuple(_find(parent, x) for x in range(n))


def right_congruences(A, n, m):
    """Every compatible partition, as restricted growth strings."""
    rgs = [0] * n
    out = []

    def ok(k):
        for x in range(k + 1):
            for y in range(x + 1, k + 1):
                if rgs[x] != rgs[y]:
                    continue
                for s in range(m):
                    a = A[x * m + s]
                    b = A[y * m + s]
                    if a <= k and b <= k and rgs[a] != rgs[b]:
                        return False
        return True

    def rec(k, nblocks):
        if k == n:
            out.append(tuple(rgs))
            return
        for b in range(nblocks + 1):
            rgs[k] = b
            if ok(k):
                rec(k + 1, max(nblocks, b + 1))

    if n == 0:
        return [()]
    rec(0, 0)
    return out
