"""Invariant factors of integer matrices by elimination on minimal pivots."""
from __future__ import annotations

SAFE_LIMIT = 2**63 - 1


class OverflowGuard(ArithmeticError):
    """An intermediate entry left the signed 64-bit range."""


def _check(row, limit):
    for x in row:
        if x > limit or -x > limit:
            raise OverflowGuard(f"entry {x} exceeds {limit}")


def invariant_factors(matrix, limit=SAFE_LIMIT):
    """Nonzero diagonal of the Smith normal form, each dividing the next.

    ``matrix`` is a list of integer rows; it is not modified.
    """
    a = [list(r) for r in matrix if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    diag = []
    t = 0
    while True:
        piv = _min_entry(a, t, ncols)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, len(a)):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, ncols):
                            ri[j] -= q * rt[j]
                        _check(ri, limit)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a[t:]:
                            row[j] -= q * row[t]
                        for row in a[t:]:
                            if row[j] > limit or -row[j] > limit:
                                raise OverflowGuard(f"entry {row[j]} exceeds {limit}")
                    if a[t][j]:
                        done = False
            if done:
                bad = _non_multiple(a, t, ncols, p)
                if bad is None:
                    break
                rt, rb = a[t], a[bad]
                for j in range(t, ncols):
                    rt[j] += rb[j]
                _check(rt, limit)
                continue
            piv = _min_entry_cross(a, t, ncols)
            i, j = piv
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
        if t >= len(a) or t >= ncols:
            break
    return diag


def _min_entry(a, t, ncols):
    best = None
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, ncols):
            x = row[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return i, j
    return None if best is None else best[1:]


def _min_entry_cross(a, t, ncols):
    # smallest nonzero in row t or column t
    best = (abs(a[t][t]), t, t)
    for i in range(t + 1, len(a)):
        x = a[i][t]
        if x and abs(x) < best[0]:
            best = (abs(x), i, t)
    for j in range(t + 1, ncols):
        x = a[t][j]
        if x and abs(x) < best[0]:
            best = (abs(x), t, j)
    return best[1:]


def _non_multiple(a, t, ncols, p):
    for i in range(t + 1, len(a)):
        row = a[i]
        for j in range(t + 1, ncols):
            if row[j] % p:
                return i
    return None


def rank(matrix):
    return len(invariant_factors(matrix))
