# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense elimination kernels.

Mirrors ``_kernels_py``; ``morita.kernels`` picks whichever is importable.
Inputs are Python lists of lists; work happens on a C int64 buffer.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


cdef int64_t _inv_mod(int64_t a, int64_t p):
    cdef int64_t t = 0, newt = 1, r = p, newr = a % p, q, tmp
    if newr < 0:
        newr += p
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int64_t* _load(a, Py_ssize_t nrows, Py_ssize_t ncols, int64_t p) except NULL:
    cdef int64_t* m = <int64_t*> malloc(max(nrows * ncols, 1) * sizeof(int64_t))
    cdef Py_ssize_t i, j
    cdef int64_t x
    if m == NULL:
        raise MemoryError()
    for i in range(nrows):
        row = a[i]
        for j in range(ncols):
            if p:
                x = row[j] % p
            else:
                x = row[j]
            m[i * ncols + j] = x
    return m


def rref_mod_p(a, long long p):
    """Reduce ``a`` to RREF mod ``p`` in place; return pivot columns."""
    cdef Py_ssize_t nrows = len(a)
    cdef Py_ssize_t ncols = len(a[0]) if nrows else 0
    cdef int64_t* m = _load(a, nrows, ncols, p)
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    pivots = []
    try:
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    tmp = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = tmp
            inv = _inv_mod(m[r * ncols + c], p)
            for j in range(c, ncols):
                m[r * ncols + j] = m[r * ncols + j] * inv % p
            for i in range(nrows):
                if i != r:
                    f = m[i * ncols + c]
                    if f != 0:
                        for j in range(c, ncols):
                            m[i * ncols + j] = (m[i * ncols + j] - f * m[r * ncols + j]) % p
                            if m[i * ncols + j] < 0:
                                m[i * ncols + j] += p
            pivots.append(c)
            r += 1
        for i in range(nrows):
            row = a[i]
            for j in range(ncols):
                row[j] = m[i * ncols + j]
    finally:
        free(m)
    return pivots


def rank_mod_p(a, long long p):
    """Rank mod ``p`` of a list-of-lists matrix."""
    cdef Py_ssize_t nrows = len(a)
    cdef Py_ssize_t ncols = len(a[0]) if nrows else 0
    cdef int64_t* m = _load(a, nrows, ncols, p)
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    try:
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, ncols):
                    tmp = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = tmp
            inv = _inv_mod(m[r * ncols + c], p)
            for i in range(r + 1, nrows):
                f = m[i * ncols + c]
                if f != 0:
                    f = f * inv % p
                    for j in range(c, ncols):
                        m[i * ncols + j] = (m[i * ncols + j] - f * m[r * ncols + j]) % p
                        if m[i * ncols + j] < 0:
                            m[i * ncols + j] += p
            r += 1
    finally:
        free(m)
    return r


cdef int64_t _gcd(int64_t a, int64_t b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def rank_int(a):
    """Fraction-free rank over Q of an integer matrix; -1 if entries outgrow 2**31."""
    cdef Py_ssize_t nrows = len(a)
    cdef Py_ssize_t ncols = len(a[0]) if nrows else 0
    cdef int64_t bound = 1
    bound <<= 31
    cdef int64_t* m
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t a0, b0, g, x, tmp
    for row in a:
        for entry in row:
            if entry >= bound or entry <= -bound:
                return -1
    m = _load(a, nrows, ncols, 0)
    try:
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                x = m[i * ncols + c]
                if x != 0:
                    if piv < 0 or (x if x > 0 else -x) < \
                            (m[piv * ncols + c] if m[piv * ncols + c] > 0 else -m[piv * ncols + c]):
                        piv = i
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, ncols):
                    tmp = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = tmp
            a0 = m[r * ncols + c]
            for i in range(r + 1, nrows):
                b0 = m[i * ncols + c]
                if b0 != 0:
                    g = 0
                    for j in range(c, ncols):
                        x = a0 * m[i * ncols + j] - b0 * m[r * ncols + j]
                        m[i * ncols + j] = x
                        if x != 0:
                            g = _gcd(g, x)
                    if g > 1:
                        for j in range(c, ncols):
                            m[i * ncols + j] //= g
                    for j in range(c, ncols):
                        x = m[i * ncols + j]
                        if x >= bound or x <= -bound:
                            return -1
            r += 1
    finally:
        free(m)
    return r


# ---------------------------------------------------------------------------
# sparse echelon rank

cdef struct SVec:
    Py_ssize_t n
    int* cols
    int64_t* vals


cdef inline int64_t _abs64(int64_t x):
    return -x if x < 0 else x


def sparse_rank(vectors, Py_ssize_t ncoords, long long p, Py_ssize_t split=0):
    """Echelon rank of sparse vectors by leading-coordinate elimination.

    ``vectors`` is a list of ``(cols, vals)`` with ``cols`` strictly
    increasing.  Over Q (``p == 0``) values are integers and the
    elimination is fraction-free with content removal; ``None`` is returned
    if an entry outgrows 2**31.  Returns ``(rank, leads_below_split)``.
    """
    cdef SVec* piv = <SVec*> malloc(max(ncoords, 1) * sizeof(SVec))
    cdef int* acols = <int*> malloc(max(ncoords, 1) * sizeof(int))
    cdef int64_t* avals = <int64_t*> malloc(max(ncoords, 1) * sizeof(int64_t))
    cdef int* bcols = <int*> malloc(max(ncoords, 1) * sizeof(int))
    cdef int64_t* bvals = <int64_t*> malloc(max(ncoords, 1) * sizeof(int64_t))
    cdef int* tcols
    cdef int64_t* tvals
    cdef Py_ssize_t i, j, k, an, bn, c, rnk = 0, below = 0
    cdef int64_t a, b, g, x, f, inv
    cdef int64_t bound = (<int64_t> 1) << 31
    cdef SVec* pv
    cdef bint overflow = False
    if piv == NULL or acols == NULL or avals == NULL or bcols == NULL or bvals == NULL:
        raise MemoryError()
    for i in range(ncoords):
        piv[i].n = 0
    try:
        for vec in vectors:
            cols, vals = vec
            an = 0
            for j in range(len(cols)):
                if p:
                    x = vals[j] % p
                else:
                    if vals[j] >= bound or vals[j] <= -bound:
                        overflow = True
                        break
                    x = vals[j]
                if x != 0:
                    acols[an] = cols[j]
                    avals[an] = x
                    an += 1
            if overflow:
                break
            while an > 0:
                c = acols[0]
                pv = &piv[c]
                if pv.n == 0:
                    pv.cols = <int*> malloc(an * sizeof(int))
                    pv.vals = <int64_t*> malloc(an * sizeof(int64_t))
                    if pv.cols == NULL or pv.vals == NULL:
                        raise MemoryError()
                    if p:
                        inv = _inv_mod(avals[0], p)
                        for j in range(an):
                            pv.cols[j] = acols[j]
                            pv.vals[j] = avals[j] * inv % p
                    else:
                        g = 0
                        for j in range(an):
                            g = _gcd(g, avals[j])
                        if avals[0] < 0:
                            g = -g
                        for j in range(an):
                            pv.cols[j] = acols[j]
                            pv.vals[j] = avals[j] // g
                    pv.n = an
                    rnk += 1
                    if c < split:
                        below += 1
                    break
                # eliminate the leading coordinate against the pivot
                if p:
                    f = avals[0]
                    a = 1
                    b = f
                else:
                    a = pv.vals[0]
                    b = avals[0]
                    g = _gcd(a, b)
                    a //= g
                    b //= g
                i = 1
                k = 1
                bn = 0
                g = 0
                while i < an or k < pv.n:
                    if k >= pv.n or (i < an and acols[i] < pv.cols[k]):
                        c = acols[i]
                        x = a * avals[i]
                        i += 1
                    elif i >= an or pv.cols[k] < acols[i]:
                        c = pv.cols[k]
                        x = -b * pv.vals[k]
                        k += 1
                    else:
                        c = acols[i]
                        x = a * avals[i] - b * pv.vals[k]
                        i += 1
                        k += 1
                    if p:
                        x %= p
                        if x < 0:
                            x += p
                    if x != 0:
                        bcols[bn] = c
                        bvals[bn] = x
                        bn += 1
                        if not p:
                            g = _gcd(g, x)
                if not p and g > 1:
                    for j in range(bn):
                        bvals[j] //= g
                if not p:
                    for j in range(bn):
                        if bvals[j] >= bound or bvals[j] <= -bound:
                            overflow = True
                            break
                    if overflow:
                        break
                tcols = acols
                acols = bcols
                bcols = tcols
                tvals = avals
                avals = bvals
                bvals = tvals
                an = bn
            if overflow:
                break
    finally:
        for i in range(ncoords):
            if piv[i].n:
                free(piv[i].cols)
                free(piv[i].vals)
        free(piv)
        free(acols)
        free(avals)
        free(bcols)
        free(bvals)
    if overflow:
        return None
    return rnk, below
