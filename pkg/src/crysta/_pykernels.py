"""Pure-Python kernels.

Reference twin of ``_ckernels.pyx``: same signatures, same outputs.  Used
when the compiled extension is unavailable or when ``CRYSTA_PURE=1``.

Graphs are passed as a flat involution table ``inv`` with
``inv[c * n + v]`` the color-``c`` partner of vertex ``v``.
"""
from __future__ import annotations

import struct


def residue_labels(inv, n, colors):
    """Union-find over the edges of the given colors.

    Returns ``(count, labels)``; components are numbered in order of their
    smallest vertex.
    """
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for c in colors:
        base = c * n
        for v in range(n):
            w = inv[base + v]
            if w > v:
                a, b = find(v), find(w)
                if a != b:
                    if a < b:
                        parent[b] = a
                    else:
                        parent[a] = b
    labels = [-1] * n
    roots = {}
    count = 0
    for v in range(n):
        r = find(v)
        lab = roots.get(r)
        if lab is None:
            lab = roots[r] = count
            count += 1
        labels[v] = lab
    return count, labels


def _bfs_code(inv, n, seed, perm, best):
    newlab = [-1] * n
    order = [seed]
    newlab[seed] = 0
    nxt = 1
    out = []
    less = best is None
    idx = 0
    for i in range(n):
        if i >= len(order):
            raise ValueError("graph is disconnected")
        u = order[i]
        for c in perm:
            w = inv[c * n + u]
            lab = newlab[w]
            if lab < 0:
                lab = newlab[w] = nxt
                nxt += 1
                order.append(w)
            if not less:
                b = best[idx]
                if lab > b:
                    return None
                if lab < b:
                    less = True
            out.append(lab)
            idx += 1
    return out if less else None


def canonical_code(inv, n, seeds, perms):
    """Lexicographically least BFS code over all (seed, color order) pairs."""
    best = None
    for s in seeds:
        for perm in perms:
            code = _bfs_code(inv, n, s, perm, best)
            if code is not None:
                best = code
    return struct.pack(">%dH" % (len(best) + 1), n, *best)


def cycle_count(perm):
    p = len(perm)
    seen = [False] * p
    count = 0
    for i in range(p):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return count


def _inverse(perm):
    out = [0] * len(perm)
    for i, x in enumerate(perm):
        out[x] = i
    return out


def _orbit_count(p, gens):
    parent = list(range(p))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = p
    for g in gens:
        for i in range(p):
            a, b = find(i), find(g[i])
            if a != b:
                parent[a] = b
                count -= 1
    return count


def _pair_ok(sig, invs, d, c, p, target):
    # cycles of sigma_d^-1 sigma_c
    sc = sig[c]
    idd = invs[d]
    return cycle_count([idd[sc[i]] for i in range(p)]) == target


def _triple_ok(sig, invs, x, y, z, p, target):
    sx = sig[x]
    iy, iz = invs[y], invs[z]
    g1 = [iy[sx[i]] for i in range(p)]
    g2 = [iz[sx[i]] for i in range(p)]
    return _orbit_count(p, (g1, g2)) == target


def search_tail(p, prefix, cands, pair_t, triple_t, limit=0):
    """Extend ``(id, *prefix)`` to five permutations meeting the targets.

    ``prefix`` holds sigma_1..sigma_k (already consistent), ``cands[i]`` the
    candidate permutations for color ``k + 1 + i``.  ``pair_t[a*5+b]`` is the
    required cycle count of sigma_b^-1 sigma_a and ``triple_t[a*25+b*5+c]``
    the required orbit count of the {a,b,c} residue.  Returns the list of
    completing tails; stops after ``limit`` tails when ``limit > 0``.
    """
    ident = list(range(p))
    sig = [ident] + [list(s) for s in prefix] + [None] * (4 - len(prefix))
    invs = [ident] + [_inverse(s) for s in prefix] + [None] * (4 - len(prefix))
    k = len(prefix)
    out = []

    def rec(c):
        if c == 5:
            out.append(tuple(tuple(sig[i]) for i in range(k + 1, 5)))
            return limit > 0 and len(out) >= limit
        for cand in cands[c - k - 1]:
            sig[c] = cand
            invs[c] = _inverse(cand)
            ok = True
            for d in range(1, c):
                if not _pair_ok(sig, invs, d, c, p, pair_t[d * 5 + c]):
                    ok = False
                    break
            if ok:
                for x in range(c):
                    for y in range(x + 1, c):
                        if not _triple_ok(sig, invs, x, y, c, p, triple_t[x * 25 + y * 5 + c]):
                            ok = False
                            break
                    if not ok:
                        break
            if ok and rec(c + 1):
                return True
        sig[c] = None
        return False

    rec(k + 1)
    return out
