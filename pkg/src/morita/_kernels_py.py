"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Same signatures and results; used when the extension is not built.
"""

from math import gcd


def rref_mod_p(a, p):
    """Reduce the list-of-lists ``a`` to RREF mod ``p`` in place; return pivot columns."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    for row in a:
        for j in range(ncols):
            row[j] %= p
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i][c] % p:
                piv = i
                break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        row = a[r]
        inv = pow(row[c] % p, -1, p)
        for j in range(c, ncols):
            row[j] = row[j] * inv % p
        for i in range(nrows):
            if i != r:
                other = a[i]
                f = other[c] % p
                if f:
                    for j in range(c, ncols):
                        if row[j]:
                            other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_mod_p(a, p):
    """Rank mod ``p`` of a list-of-lists matrix (copied, not modified)."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    m = [[x % p for x in row] for row in a]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], -1, p)
        for i in range(r + 1, nrows):
            other = m[i]
            f = other[c]
            if f:
                f = f * inv % p
                for j in range(c, ncols):
                    if row[j]:
                        other[j] = (other[j] - f * row[j]) % p
        r += 1
    return r


def rank_int(a):
    """Rank over Q of an integer list-of-lists matrix by fraction-free elimination.

    Returns -1 if an intermediate entry leaves the int64-safe range, matching
    the compiled kernel (the caller then falls back to the sparse route).
    """
    bound = 1 << 31
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    m = [list(row) for row in a]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                if piv < 0 or abs(m[i][c]) < abs(m[piv][c]):
                    piv = i
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        a0 = row[c]
        for i in range(r + 1, nrows):
            other = m[i]
            b0 = other[c]
            if b0:
                g = 0
                for j in range(c, ncols):
                    x = a0 * other[j] - b0 * row[j]
                    other[j] = x
                    if x:
                        g = gcd(g, x)
                if g > 1:
                    for j in range(c, ncols):
                        other[j] //= g
                for j in range(c, ncols):
                    if abs(other[j]) >= bound:
                        return -1
        r += 1
    return r


def sparse_rank(vectors, ncoords, p, split=0):
    """Echelon rank of sparse ``(cols, vals)`` vectors; see the compiled kernel.

    Python integers never overflow, so ``None`` is never returned here.
    """
    piv = {}
    rnk = below = 0
    for cols, vals in vectors:
        if p:
            cur = [(c, v % p) for c, v in zip(cols, vals) if v % p]
        else:
            cur = [(c, v) for c, v in zip(cols, vals) if v]
        while cur:
            c = cur[0][0]
            prow = piv.get(c)
            if prow is None:
                if p:
                    inv = pow(cur[0][1], -1, p)
                    cur = [(k, v * inv % p) for k, v in cur]
                else:
                    g = gcd(*[v for _, v in cur])
                    if cur[0][1] < 0:
                        g = -g
                    cur = [(k, v // g) for k, v in cur]
                piv[c] = cur
                rnk += 1
                if c < split:
                    below += 1
                break
            if p:
                a, b = 1, cur[0][1]
            else:
                a, b = prow[0][1], cur[0][1]
                g = gcd(a, b)
                a //= g
                b //= g
            out = []
            i, k = 1, 1
            n1, n2 = len(cur), len(prow)
            while i < n1 or k < n2:
                if k >= n2 or (i < n1 and cur[i][0] < prow[k][0]):
                    col, x = cur[i][0], a * cur[i][1]
                    i += 1
                elif i >= n1 or prow[k][0] < cur[i][0]:
                    col, x = prow[k][0], -b * prow[k][1]
                    k += 1
                else:
                    col, x = cur[i][0], a * cur[i][1] - b * prow[k][1]
                    i += 1
                    k += 1
                if p:
                    x %= p
                if x:
                    out.append((col, x))
            if not p and out:
                g = gcd(*[x for _, x in out])
                if g > 1:
                    out = [(col, x // g) for col, x in out]
            cur = out
    return rnk, below
