# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; the pure-Python reference lives in ``_pykernels.py``."""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

import struct


cdef int* _to_c(seq, Py_ssize_t size) except NULL:
    cdef int* out = <int*> malloc(max(size, 1) * sizeof(int))
    cdef Py_ssize_t i
    if out == NULL:
        raise MemoryError()
    for i in range(size):
        out[i] = seq[i]
    return out


cdef inline int _find(int* parent, int x) noexcept nogil:
    cdef int root = x, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def residue_labels(inv, int n, colors):
    cdef int* cinv = _to_c(inv, len(inv))
    cdef int* parent = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* roots = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int v, w, a, b, c, base, count = 0
    try:
        for v in range(n):
            parent[v] = v
            roots[v] = -1
        for c in colors:
            base = c * n
            for v in range(n):
                w = cinv[base + v]
                if w > v:
                    a = _find(parent, v)
                    b = _find(parent, w)
                    if a != b:
                        if a < b:
                            parent[b] = a
                        else:
                            parent[a] = b
        labels = [0] * n
        for v in range(n):
            a = _find(parent, v)
            if roots[a] < 0:
                roots[a] = count
                count += 1
            labels[v] = roots[a]
        return count, labels
    finally:
        free(cinv)
        free(parent)
        free(roots)


cdef int _bfs_code(int* inv, int n, int seed, int* perm, int k,
                   int* best, int have_best, int* out,
                   int* newlab, int* order) noexcept nogil:
    # 1 if ``out`` is strictly smaller than ``best``, 0 if not, -1 if disconnected
    cdef int i, j, u, w, lab, nxt = 1, qlen = 1, idx = 0
    cdef int less = 0 if have_best else 1
    for i in range(n):
        newlab[i] = -1
    newlab[seed] = 0
    order[0] = seed
    for i in range(n):
        if i >= qlen:
            return -1
        u = order[i]
        for j in range(k):
            w = inv[perm[j] * n + u]
            lab = newlab[w]
            if lab < 0:
                lab = nxt
                newlab[w] = nxt
                nxt += 1
                order[qlen] = w
                qlen += 1
            if not less:
                if lab > best[idx]:
                    return 0
                if lab < best[idx]:
                    less = 1
            out[idx] = lab
            idx += 1
    return less


def canonical_code(inv, int n, seeds, perms):
    cdef int k = len(perms[0])
    cdef int size = n * k
    cdef int* cinv = _to_c(inv, len(inv))
    cdef int* best = <int*> malloc(size * sizeof(int))
    cdef int* out = <int*> malloc(size * sizeof(int))
    cdef int* newlab = <int*> malloc(n * sizeof(int))
    cdef int* order = <int*> malloc(n * sizeof(int))
    cdef int* cperm = <int*> malloc(k * sizeof(int))
    cdef int have = 0, r, s, j
    try:
        for perm in perms:
            for j in range(k):
                cperm[j] = perm[j]
            for s in seeds:
                r = _bfs_code(cinv, n, s, cperm, k, best, have, out, newlab, order)
                if r < 0:
                    raise ValueError("graph is disconnected")
                if r == 1:
                    memcpy(best, out, size * sizeof(int))
                    have = 1
        return struct.pack(">%dH" % (size + 1), n, *[best[j] for j in range(size)])
    finally:
        free(cinv)
        free(best)
        free(out)
        free(newlab)
        free(order)
        free(cperm)


cdef inline int _cycles(int* perm, int p) noexcept nogil:
    cdef unsigned long long seen = 0
    cdef int i, j, count = 0
    for i in range(p):
        if not (seen >> i) & 1:
            count += 1
            j = i
            while not (seen >> j) & 1:
                seen |= (<unsigned long long> 1) << j
                j = perm[j]
    return count


def cycle_count(perm):
    cdef int p = len(perm)
    cdef int* c = _to_c(perm, p)
    try:
        return _cycles(c, p)
    finally:
        free(c)


cdef struct Ctx:
    int p
    int k
    int* sig[5]
    int* inv[5]
    int* cand[5]
    int* cand_inv[5]
    int ncand[5]
    int* pair_t
    int* triple_t
    int* tmp
    int* tmp2
    int* parent


cdef inline int _orbits(Ctx* cx, int* g1, int* g2) noexcept nogil:
    cdef int p = cx.p, i, a, b, count = p
    cdef int* parent = cx.parent
    for i in range(p):
        parent[i] = i
    for i in range(p):
        a = _find(parent, i)
        b = _find(parent, g1[i])
        if a != b:
            parent[a] = b
            count -= 1
    for i in range(p):
        a = _find(parent, i)
        b = _find(parent, g2[i])
        if a != b:
            parent[a] = b
            count -= 1
    return count


cdef int _consistent(Ctx* cx, int c) noexcept nogil:
    cdef int p = cx.p, d, x, y, i
    cdef int* sc = cx.sig[c]
    cdef int* ic = cx.inv[c]
    cdef int* sx
    cdef int* iy
    for d in range(1, c):
        iy = cx.inv[d]
        for i in range(p):
            cx.tmp[i] = iy[sc[i]]
        if _cycles(cx.tmp, p) != cx.pair_t[d * 5 + c]:
            return 0
    for x in range(c):
        sx = cx.sig[x]
        for y in range(x + 1, c):
            iy = cx.inv[y]
            for i in range(p):
                cx.tmp[i] = iy[sx[i]]
                cx.tmp2[i] = ic[sx[i]]
            if _orbits(cx, cx.tmp, cx.tmp2) != cx.triple_t[x * 25 + y * 5 + c]:
                return 0
    return 1


cdef int _rec(Ctx* cx, int c, list out, int limit) except -1:
    cdef int idx, p = cx.p, i, j
    cdef list tail, row
    if c == 5:
        tail = []
        for j in range(cx.k + 1, 5):
            row = [0] * p
            for i in range(p):
                row[i] = cx.sig[j][i]
            tail.append(tuple(row))
        out.append(tuple(tail))
        return 1 if (limit > 0 and len(out) >= limit) else 0
    for idx in range(cx.ncand[c]):
        cx.sig[c] = cx.cand[c] + idx * p
        cx.inv[c] = cx.cand_inv[c] + idx * p
        if _consistent(cx, c):
            if _rec(cx, c + 1, out, limit):
                return 1
    return 0


def search_tail(int p, prefix, cands, pair_t, triple_t, int limit=0):
    cdef Ctx cx
    cdef int k = len(prefix), c, i, j
    cdef list owned = []
    cdef int* buf
    cdef list out = []
    if p > 64:
        raise ValueError("search kernel supports at most 64 vertices per class")
    cx.p = p
    cx.k = k
    cx.pair_t = _to_c(pair_t, 25)
    cx.triple_t = _to_c(triple_t, 125)
    cx.tmp = <int*> malloc(p * sizeof(int))
    cx.tmp2 = <int*> malloc(p * sizeof(int))
    cx.parent = <int*> malloc(p * sizeof(int))
    try:
        for c in range(5):
            cx.ncand[c] = 0
            cx.cand[c] = NULL
            cx.cand_inv[c] = NULL
        ident = list(range(p))
        rows = [ident] + [list(s) for s in prefix]
        for c in range(k + 1):
            buf = _to_c(rows[c], p)
            owned.append(<size_t> buf)
            cx.sig[c] = buf
            inverse = [0] * p
            for i in range(p):
                inverse[rows[c][i]] = i
            buf = _to_c(inverse, p)
            owned.append(<size_t> buf)
            cx.inv[c] = buf
        for c in range(k + 1, 5):
            lst = cands[c - k - 1]
            cx.ncand[c] = len(lst)
            flat = []
            flat_inv = []
            for perm in lst:
                flat.extend(perm)
                inverse = [0] * p
                for i in range(p):
                    inverse[perm[i]] = i
                flat_inv.extend(inverse)
            buf = _to_c(flat, len(flat))
            owned.append(<size_t> buf)
            cx.cand[c] = buf
            buf = _to_c(flat_inv, len(flat_inv))
            owned.append(<size_t> buf)
            cx.cand_inv[c] = buf
        _rec(&cx, k + 1, out, limit)
        return out
    finally:
        for addr in owned:
            free(<int*> <size_t> addr)
        free(cx.pair_t)
        free(cx.triple_t)
        free(cx.tmp)
        free(cx.tmp2)
        free(cx.parent)
