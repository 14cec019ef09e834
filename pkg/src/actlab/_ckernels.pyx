# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contract as ``_kernels_py``."""
from libc.stdlib cimport malloc, free


cdef int* _to_c(object seq, Py_ssize_t size) except NULL:
    cdef int* buf = <int*>malloc((size if size > 0 else 1) * sizeof(int))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(size):
        buf[i] = seq[i]
    return buf


cdef tuple _to_tuple(int* buf, Py_ssize_t size):
    return tuple([buf[i] for i in range(size)])


# ---------------------------------------------------------------- monoids

cdef bint _monoid_cell_ok(int* T, int n, int i, int j) nogil:
    cdef int v = T[i * n + j]
    cdef int a, b, c, lhs, rhs, ab, bc
    for c in range(n):
        lhs = T[v * n + c]
        bc = T[j * n + c]
        if lhs < 0 or bc < 0:
            continue
        rhs = T[i * n + bc]
        if rhs >= 0 and lhs != rhs:
            return False
    for a in range(n):
        ab = T[a * n + i]
        rhs = T[a * n + v]
        if ab < 0 or rhs < 0:
            continue
        lhs = T[ab * n + j]
        if lhs >= 0 and lhs != rhs:
            return False
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


cdef bint _table_is_min(int* T, int n, int* perms, int nperms, int* q) nogil:
    cdef int pi, a, x, y, w, t
    cdef int* p
    cdef bint done
    for pi in range(nperms):
        p = perms + pi * n
        for a in range(n):
            q[p[a]] = a
        done = False
        for x in range(n):
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


cdef class _MonoidSearch:
    cdef int n, ncells, nperms
    cdef int* T
    cdef int* ci
    cdef int* cj
    cdef int* perms
    cdef int* q
    cdef list out

    def __cinit__(self, int n, object perms):
        cdef int i, j, k, a
        self.n = n
        self.T = <int*>malloc(n * n * sizeof(int))
        self.ci = <int*>malloc((n * n + 1) * sizeof(int))
        self.cj = <int*>malloc((n * n + 1) * sizeof(int))
        self.q = <int*>malloc((n + 1) * sizeof(int))
        self.out = []
        if perms is None:
            self.nperms = -1
            self.perms = NULL
        else:
            self.nperms = len(perms)
            self.perms = <int*>malloc((self.nperms * n + 1) * sizeof(int))
            for k in range(self.nperms):
                for a in range(n):
                    self.perms[k * n + a] = perms[k][a]
        for i in range(n * n):
            self.T[i] = -1
        for a in range(n):
            self.T[a] = a
            self.T[a * n] = a
        k = 0
        for i in range(1, n):
            for j in range(1, n):
                self.ci[k] = i
                self.cj[k] = j
                k += 1
        self.ncells = k

    def __dealloc__(self):
        free(self.T)
        free(self.ci)
        free(self.cj)
        free(self.q)
        if self.perms != NULL:
            free(self.perms)

    cdef void rec(self, int k):
        cdef int i, j, v, n = self.n
        if k == self.ncells:
            if self.nperms < 0 or _table_is_min(self.T, n, self.perms, self.nperms, self.q):
                self.out.append(_to_tuple(self.T, n * n))
            return
        i = self.ci[k]
        j = self.cj[k]
        for v in range(n):
            self.T[i * n + j] = v
            if _monoid_cell_ok(self.T, n, i, j):
                self.rec(k + 1)
        self.T[i * n + j] = -1


def monoid_tables(int n, perms=None):
    cdef _MonoidSearch search = _MonoidSearch(n, perms)
    search.rec(0)
    return search.out


def canonical_table(T, int n, perms):
    cdef int size = n * n
    cdef int* t = _to_c(T, size)
    cdef int* best = _to_c(T, size)
    cdef int* q = <int*>malloc((n + 1) * sizeof(int))
    cdef int* p = <int*>malloc((n + 1) * sizeof(int))
    cdef int a, x, y, w, b
    cdef bint better, decided
    try:
        for perm in perms:
            for a in range(n):
                p[a] = perm[a]
                q[p[a]] = a
            better = False
            decided = False
            for x in range(n):
                for y in range(n):
                    w = p[t[q[x] * n + q[y]]]
                    b = best[x * n + y]
                    if w != b:
                        better = w < b
                        decided = True
                        break
                if decided:
                    break
            if better:
                for x in range(n):
                    for y in range(n):
                        best[x * n + y] = p[t[q[x] * n + q[y]]]
        return _to_tuple(best, size)
    finally:
        free(t)
        free(best)
        free(q)
        free(p)


# ---------------------------------------------------------------- actions

cdef bint _action_cell_ok(int* A, int* M, int m, int nx, int x, int s) nogil:
    cdef int y = A[x * m + s]
    cdef int t, lhs, rhs, x2, s2, t2, mid
    for t in range(m):
        lhs = A[y * m + t]
        rhs = A[x * m + M[s * m + t]]
        if lhs >= 0 and rhs >= 0 and lhs != rhs:
            return False
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


cdef class _ActionSearch:
    cdef int m, n, ncells
    cdef int* A
    cdef int* M
    cdef int* cx
    cdef int* cs
    cdef list out

    def __cinit__(self, M, int m, int e, int n):
        cdef int x, s, k
        self.m = m
        self.n = n
        self.M = _to_c(M, m * m)
        self.A = <int*>malloc((n * m + 1) * sizeof(int))
        self.cx = <int*>malloc((n * m + 1) * sizeof(int))
        self.cs = <int*>malloc((n * m + 1) * sizeof(int))
        self.out = []
        for x in range(n * m):
            self.A[x] = -1
        k = 0
        for x in range(n):
            self.A[x * m + e] = x
            for s in range(m):
                if s != e:
                    self.cx[k] = x
                    self.cs[k] = s
                    k += 1
        self.ncells = k

    def __dealloc__(self):
        free(self.A)
        free(self.M)
        free(self.cx)
        free(self.cs)

    cdef void rec(self, int k):
        cdef int x, s, v, m = self.m
        if k == self.ncells:
            self.out.append(_to_tuple(self.A, self.n * m))
            return
        x = self.cx[k]
        s = self.cs[k]
        for v in range(self.n):
            self.A[x * m + s] = v
            if _action_cell_ok(self.A, self.M, m, self.n, x, s):
                self.rec(k + 1)
        self.A[x * m + s] = -1


def action_tables(M, int m, int e, int n):
    cdef _ActionSearch search = _ActionSearch(M, m, e, n)
    search.rec(0)
    return search.out


def canonical_action(A, int n, int m, perms):
    cdef int size = n * m
    cdef int* t = _to_c(A, size)
    cdef int* best = _to_c(A, size)
    cdef int* q = <int*>malloc((n + 1) * sizeof(int))
    cdef int* p = <int*>malloc((n + 1) * sizeof(int))
    cdef int a, x, s, w, b
    cdef bint better, decided
    try:
        for perm in perms:
            for a in range(n):
                p[a] = perm[a]
                q[p[a]] = a
            better = False
            decided = False
            for x in range(n):
                for s in range(m):
                    w = p[t[q[x] * m + s]]
                    b = best[x * m + s]
                    if w != b:
                        better = w < b
                        decided = True
                        break
                if decided:
                    break
            if better:
                for x in range(n):
                    for s in range(m):
                        best[x * m + s] = p[t[q[x] * m + s]]
        return _to_tuple(best, size)
    finally:
        free(t)
        free(best)
        free(q)
        free(p)


# ---------------------------------------------------------------- homs

cdef class _HomSearch:
    cdef int n, nt, k, limit
    cdef bint mono
    cdef int* src
    cdef int* tgt
    cdef char* allowed
    cdef int* f
    cdef int* used
    cdef int* trail
    cdef int* stack_u
    cdef int* stack_v
    cdef int trail_len
    cdef list out

    def __cinit__(self, src, int n, tgt, int nt, int k, allowed, bint mono, int limit):
        cdef int i
        self.n = n
        self.nt = nt
        self.k = k
        self.mono = mono
        self.limit = limit
        self.src = _to_c(src, n * k)
        self.tgt = _to_c(tgt, nt * k)
        if allowed is None:
            self.allowed = NULL
        else:
            self.allowed = <char*>malloc(n * nt + 1)
            for i in range(n * nt):
                self.allowed[i] = 1 if allowed[i] else 0
        self.f = <int*>malloc((n + 1) * sizeof(int))
        self.used = <int*>malloc((nt + 1) * sizeof(int))
        self.trail = <int*>malloc((n + 1) * sizeof(int))
        # each assigned element pushes k pairs; bound the stack accordingly
        self.stack_u = <int*>malloc((n * k + 2) * sizeof(int))
        self.stack_v = <int*>malloc((n * k + 2) * sizeof(int))
        for i in range(n):
            self.f[i] = -1
        for i in range(nt):
            self.used[i] = 0
        self.trail_len = 0
        self.out = []

    def __dealloc__(self):
        free(self.src)
        free(self.tgt)
        if self.allowed != NULL:
            free(self.allowed)
        free(self.f)
        free(self.used)
        free(self.trail)
        free(self.stack_u)
        free(self.stack_v)

    cdef bint assign(self, int x, int y) nogil:
        cdef int top = 0, u, v, cur, s, k = self.k
        self.stack_u[0] = x
        self.stack_v[0] = y
        top = 1
        while top > 0:
            top -= 1
            u = self.stack_u[top]
            v = self.stack_v[top]
            cur = self.f[u]
            if cur >= 0:
                if cur != v:
                    return False
                continue
            if self.allowed != NULL and not self.allowed[u * self.nt + v]:
                return False
            if self.mono:
                if self.used[v]:
                    return False
                self.used[v] = 1
            self.f[u] = v
            self.trail[self.trail_len] = u
            self.trail_len += 1
            for s in range(k):
                self.stack_u[top] = self.src[u * k + s]
                self.stack_v[top] = self.tgt[v * k + s]
                top += 1
        return True

    cdef void undo(self, int mark) nogil:
        cdef int u
        while self.trail_len > mark:
            self.trail_len -= 1
            u = self.trail[self.trail_len]
            if self.mono:
                self.used[self.f[u]] = 0
            self.f[u] = -1

    cdef bint rec(self, int x):
        cdef int y, mark
        while x < self.n and self.f[x] >= 0:
            x += 1
        if x == self.n:
            self.out.append(_to_tuple(self.f, self.n))
            return self.limit >= 0 and len(self.out) >= self.limit
        for y in range(self.nt):
            mark = self.trail_len
            if self.assign(x, y) and self.rec(x + 1):
                self.undo(mark)
                return True
            self.undo(mark)
        return False


def homs(src, int n, tgt, int nt, int k, allowed=None, bint mono=False, int limit=-1):
    if n == 0:
        return [()]
    if limit == 0:
        return []
    cdef _HomSearch search = _HomSearch(src, n, tgt, nt, k, allowed, mono, limit)
    search.rec(0)
    return search.out


# ---------------------------------------------------------------- congruences

cdef int _find(int* parent, int a) nogil:
    cdef int root = a, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


def closure(A, int n, int m, pairs):
    cdef int* act = _to_c(A, n * m)
    cdef int* parent = <int*>malloc((n + 1) * sizeof(int))
    # every successful union pushes m pairs, at most n - 1 unions
    cdef Py_ssize_t cap = len(pairs) + (n + 1) * m + 1
    cdef int* qx = <int*>malloc(cap * sizeof(int))
    cdef int* qy = <int*>malloc(cap * sizeof(int))
    cdef Py_ssize_t head = 0, tail = 0
    cdef int i, x, y, rx, ry, s
    try:
        for i in range(n):
            parent[i] = i
        for pair in pairs:
            qx[tail] = pair[0]
            qy[tail] = pair[1]
            tail += 1
        while head < tail:
            x = qx[head]
            y = qy[head]
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
                qx[tail] = act[x * m + s]
                qy[tail] = act[y * m + s]
                tail += 1
        return tuple([_find(parent, i) for i in range(n)])
    finally:
        free(act)
        free(parent)
        free(qx)
        free(qy)


cdef class _CongruenceSearch:
    cdef int n, m
    cdef int* A
    cdef int* rgs
    cdef list out

    def __cinit__(self, A, int n, int m):
        self.n = n
        self.m = m
        self.A = _to_c(A, n * m)
        self.rgs = <int*>malloc((n + 1) * sizeof(int))
        self.out = []

    def __dealloc__(self):
        free(self.A)
        free(self.rgs)

    cdef bint ok(self, int k) nogil:
        cdef int x, y, s, a, b, m = self.m
        for x in range(k + 1):
            for y in range(x + 1, k + 1):
                if self.rgs[x] != self.rgs[y]:
                    continue
                for s in range(m):
                    a = self.A[x * m + s]
                    b = self.A[y * m + s]
                    if a <= k and b <= k and self.rgs[a] != self.rgs[b]:
                        return False
        return True

    cdef void rec(self, int k, int nblocks):
        cdef int b
        if k == self.n:
            self.out.append(_to_tuple(self.rgs, self.n))
            return
        for b in range(nblocks + 1):
            self.rgs[k] = b
            if self.ok(k):
                self.rec(k + 1, nblocks if nblocks > b + 1 else b + 1)


def right_congruences(A, int n, int m):
    if n == 0:
        return [()]
    cdef _CongruenceSearch search = _CongruenceSearch(A, n, m)
    search.rec(0, 0)
    return search.out
