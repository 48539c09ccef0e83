"""Hot loops over bitmask operation tables.

A table is an ``(n, n)`` int64 array whose cell ``[x, y]`` is the bitmask of
``x * y``.  Every kernel exists twice: a loop version that numba compiles, and a
numpy version (vectorised where the problem allows it, otherwise the loop run
by the interpreter).  ``HG_NUMBA=0`` selects the second set.

Violation kernels return the lexicographically first witness tuple, or a tuple
of ``-1`` when there is none.
"""
import numpy as np

from ._accel import USE_NUMBA, njit

NONE3 = (-1, -1, -1)


# ----------------------------------------------------------------------------
# loop versions


def _assoc_loop(table):
    n = table.shape[0]
    for x in range(n):
        for y in range(n):
            xy = table[x, y]
            for z in range(n):
                left = 0
                for t in range(n):
                    if (xy >> t) & 1:
                        left |= table[t, z]
                yz = table[y, z]
                right = 0
                for w in range(n):
                    if (yz >> w) & 1:
                        right |= table[x, w]
                if left != right:
                    return (x, y, z)
    return (-1, -1, -1)


def _reversibility_loop(table, inv):
    n = table.shape[0]
    for x in range(n):
        for y in range(n):
            m = table[x, y]
            for z in range(n):
                if (m >> z) & 1:
                    if not (table[z, inv[y]] >> x) & 1:
                        return (x, y, z)
                    if not (table[inv[x], z] >> y) & 1:
                        return (x, y, z)
    return (-1, -1, -1)


def _morphism_loop(dom, cod, fmap):
    n = dom.shape[0]
    for a in range(n):
        for b in range(n):
            m = dom[a, b]
            target = cod[fmap[a], fmap[b]]
            for c in range(n):
                if (m >> c) & 1:
                    if not (target >> fmap[c]) & 1:
                        return (a, b, c)
    return (-1, -1, -1)


def _fullness_loop(dom, cod, fmap):
    n = dom.shape[0]
    for a in range(n):
        for b in range(n):
            m = dom[a, b]
            img = 0
            for c in range(n):
                if (m >> c) & 1:
                    img |= 1 << fmap[c]
            if img != cod[fmap[a], fmap[b]]:
                return (a, b)
    return (-1, -1)


def _canonical_loop(table, perms):
    n = table.shape[0]
    k = perms.shape[0]
    best = np.empty(n * n, np.int64)
    cur = np.empty(n * n, np.int64)
    pinv = np.empty(n, np.int64)
    best_idx = -1
    for p in range(k):
        for x in range(n):
            pinv[perms[p, x]] = x
        for i in range(n):
            for j in range(n):
                m = table[pinv[i], pinv[j]]
                out = 0
                for t in range(n):
                    if (m >> t) & 1:
                        out |= 1 << perms[p, t]
                cur[i * n + j] = out
        if best_idx < 0:
            best[:] = cur
            best_idx = p
            continue
        for q in range(n * n):
            if cur[q] < best[q]:
                best[:] = cur
                best_idx = p
                break
            if cur[q] > best[q]:
                break
    return best, best_idx


def _hom_search_loop(dt, dinv, ct, cinv):
    n = dt.shape[0]
    m = ct.shape[0]
    fmap = np.full(n, -1, np.int64)
    fmap[0] = 0
    cap = 16
    out = np.empty((cap, n), np.int64)
    count = 0

    npos = 0
    pos = np.empty(n, np.int64)
    for x in range(1, n):
        if x <= dinv[x]:
            pos[npos] = x
            npos += 1
    if npos == 0:
        out[0, 0] = 0
        return out[:1]

    vals = np.full(npos, -1, np.int64)
    level = 0
    while level >= 0:
        x = pos[level]
        p = dinv[x]
        fmap[x] = -1
        fmap[p] = -1
        vals[level] += 1
        if vals[level] >= m:
            vals[level] = -1
            level -= 1
            continue
        v = vals[level]
        w = cinv[v]
        if p == x and w != v:
            continue
        fmap[x] = v
        fmap[p] = w
        ok = True
        for a in range(n):
            if fmap[a] < 0:
                continue
            for b in range(n):
                if fmap[b] < 0:
                    continue
                mm = dt[a, b]
                target = ct[fmap[a], fmap[b]]
                touch_ab = a == x or a == p or b == x or b == p
                for c in range(n):
                    if (mm >> c) & 1 and fmap[c] >= 0:
                        if touch_ab or c == x or c == p:
                            if not (target >> fmap[c]) & 1:
                                ok = False
                                break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            continue
        if level == npos - 1:
            if count == out.shape[0]:
                grown = np.empty((2 * out.shape[0], n), np.int64)
                grown[:count] = out[:count]
                out = grown
            out[count] = fmap
            count += 1
            continue
        level += 1
    return out[:count]


def _enumerate_loop(base, orb_start, orb_tri, cell_last):
    """Backtrack over orbit variables of an axiom-i-closed triple relation.

    ``base`` holds the forced bits; orbit ``k`` owns triples
    ``orb_tri[orb_start[k]:orb_start[k+1]]``; a cell is complete once every
    orbit touching it has been decided, i.e. at level ``cell_last[x, y]``.
    """
    n = base.shape[0]
    nvar = orb_start.shape[0] - 1
    table = base.copy()
    checked = np.zeros((n, n, n), np.int64)
    cap = 16
    out = np.empty((cap, n, n), np.int64)
    count = 0
    if nvar == 0:
        out[0] = table
        return out[:1]

    vals = np.full(nvar, -1, np.int64)
    level = 0
    while level >= 0:
        # undo this level
        if vals[level] == 1:
            for q in range(orb_start[level], orb_start[level + 1]):
                x = orb_tri[q, 0]
                y = orb_tri[q, 1]
                z = orb_tri[q, 2]
                table[x, y] &= ~(1 << z)
        if vals[level] >= 0:
            for x in range(n):
                for y in range(n):
                    for z in range(n):
                        if checked[x, y, z] == level + 1:
                            checked[x, y, z] = 0
        vals[level] += 1
        if vals[level] > 1:
            vals[level] = -1
            level -= 1
            continue
        if vals[level] == 1:
            for q in range(orb_start[level], orb_start[level + 1]):
                x = orb_tri[q, 0]
                y = orb_tri[q, 1]
                z = orb_tri[q, 2]
                table[x, y] |= 1 << z

        ok = True
        for x in range(1, n):
            for y in range(1, n):
                if cell_last[x, y] == level and table[x, y] == 0:
                    ok = False
        if ok:
            for x in range(1, n):
                if not ok:
                    break
                for y in range(1, n):
                    if not ok:
                        break
                    if cell_last[x, y] > level:
                        continue
                    xy = table[x, y]
                    for z in range(1, n):
                        if checked[x, y, z] != 0 or cell_last[y, z] > level:
                            continue
                        yz = table[y, z]
                        ready = True
                        for t in range(n):
                            if (xy >> t) & 1 and cell_last[t, z] > level:
                                ready = False
                                break
                        if not ready:
                            continue
                        for w in range(n):
                            if (yz >> w) & 1 and cell_last[x, w] > level:
                                ready = False
                                break
                        if not ready:
                            continue
                        left = 0
                        for t in range(n):
                            if (xy >> t) & 1:
                                left |= table[t, z]
                        right = 0
                        for w in range(n):
                            if (yz >> w) & 1:
                                right |= table[x, w]
                        if left != right:
                            ok = False
                            break
                        checked[x, y, z] = level + 1
        if not ok:
            continue
        if level == nvar - 1:
            if count == out.shape[0]:
                grown = np.empty((2 * out.shape[0], n, n), np.int64)
                grown[:count] = out[:count]
                out = grown
            out[count] = table
            count += 1
            continue
        level += 1
    return out[:count]


# ----------------------------------------------------------------------------
# numpy versions


def _bits(table):
    n = table.shape[0]
    return ((table[..., None] >> np.arange(n)) & 1).astype(bool)


def _first(mask):
    hit = np.argwhere(mask)
    if hit.size == 0:
        return None
    return tuple(int(v) for v in hit[0])


def _assoc_np(table):
    B = _bits(table)  # B[x, y, t]
    picked = np.where(B[:, :, :, None], table[None, None, :, :], 0)
    left = np.bitwise_or.reduce(picked, axis=2)  # [x, y, z]
    picked = np.where(B[None, :, :, :], table[:, None, None, :], 0)
    right = np.bitwise_or.reduce(picked, axis=3)  # [x, y, z]
    return _first(left != right) or NONE3


def _reversibility_np(table, inv):
    n = table.shape[0]
    B = _bits(table)
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    first = B[z, inv[y], x]
    second = B[inv[x], z, y]
    return _first(B & ~(first & second)) or NONE3


def _morphism_np(dom, cod, fmap):
    B = _bits(dom)
    target = cod[fmap[:, None], fmap[None, :]]
    hit = ((target[:, :, None] >> fmap[None, None, :]) & 1).astype(bool)
    return _first(B & ~hit) or NONE3


def _fullness_np(dom, cod, fmap):
    B = _bits(dom)
    img = np.bitwise_or.reduce(np.where(B, np.left_shift(1, fmap)[None, None, :], 0), axis=2)
    return _first(img != cod[fmap[:, None], fmap[None, :]]) or (-1, -1)


def _canonical_np(table, perms):
    n = table.shape[0]
    pinv = np.argsort(perms, axis=1)
    gathered = table[pinv[:, :, None], pinv[:, None, :]]  # [p, i, j]
    bits = (gathered[..., None] >> np.arange(n)) & 1
    shifted = np.left_shift(bits, perms[:, None, None, :])
    flat = shifted.sum(axis=3).reshape(perms.shape[0], n * n)
    order = np.lexsort(flat.T[::-1])
    return flat[order[0]].copy(), int(order[0])


# ----------------------------------------------------------------------------
# dispatch

LOOP = {
    "assoc": _assoc_loop,
    "reversibility": _reversibility_loop,
    "morphism": _morphism_loop,
    "fullness": _fullness_loop,
    "canonical": _canonical_loop,
    "hom_search": _hom_search_loop,
    "enumerate": _enumerate_loop,
}

NUMPY = {
    "assoc": _assoc_np,
    "reversibility": _reversibility_np,
    "morphism": _morphism_np,
    "fullness": _fullness_np,
    "canonical": _canonical_np,
    "hom_search": _hom_search_loop,
    "enumerate": _enumerate_loop,
}

JIT = {name: njit(fn) for name, fn in LOOP.items()}

ACTIVE = JIT if USE_NUMBA else NUMPY


def backend():
    return "numba" if USE_NUMBA else "numpy"


def first_assoc_violation(table):
    return tuple(int(v) for v in ACTIVE["assoc"](table))


def first_reversibility_violation(table, inv):
    return tuple(int(v) for v in ACTIVE["reversibility"](table, inv))


def first_morphism_violation(dom, cod, fmap):
    return tuple(int(v) for v in ACTIVE["morphism"](dom, cod, fmap))


def first_fullness_violation(dom, cod, fmap):
    return tuple(int(v) for v in ACTIVE["fullness"](dom, cod, fmap))


def canonical_table(table, perms):
    flat, idx = ACTIVE["canonical"](table, perms)
    return flat, int(idx)


def hom_search(dt, dinv, ct, cinv):
    return ACTIVE["hom_search"](dt, dinv, ct, cinv)


def enumerate_tables(base, orb_start, orb_tri, cell_last):
    return ACTIVE["enumerate"](base, orb_start, orb_tri, cell_last)
