# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled scalar kernel: rational functions in q over the integers.

Twin of qore._kernel.polyz_py (see there for the data layout).  Coefficients
are arbitrary-precision Python ints; the speedup comes from compiled loop and
call overhead, which dominates at the small degrees this library works at.
"""

from math import gcd

KERNEL_NAME = "cython"

RQ_ZERO = (0, (), (1,))
RQ_ONE = (0, (1,), (1,))


cpdef tuple p_trim(c):
    cdef Py_ssize_t n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


cpdef tuple p_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    cdef Py_ssize_t i
    for i in range(len(b)):
        out[i] = out[i] + b[i]
    return p_trim(out)


cpdef tuple p_neg(a):
    cdef list out = []
    for x in a:
        out.append(-x)
    return tuple(out)


cpdef tuple p_sub(a, b):
    return p_add(a, p_neg(b))


cpdef tuple p_mul(a, b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    if la == 0 or lb == 0:
        return ()
    cdef list out = [0] * (la + lb - 1)
    for i in range(la):
        x = a[i]
        if x:
            for j in range(lb):
                out[i + j] = out[i + j] + x * b[j]
    return p_trim(out)


cpdef tuple p_mul_int(a, n):
    if n == 0:
        return ()
    cdef list out = []
    for x in a:
        out.append(x * n)
    return tuple(out)


cpdef p_content(a):
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


cpdef tuple p_div_int(a, n):
    cdef list out = []
    for x in a:
        out.append(x // n)
    return tuple(out)


cpdef tuple p_primitive(a):
    if len(a) == 0:
        return ()
    c = p_content(a)
    if a[len(a) - 1] < 0:
        c = -c
    if c != 1:
        a = p_div_int(a, c)
    return a


cpdef tuple p_divexact(a, b):
    cdef Py_ssize_t da, db, k, j
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) == 0:
        return ()
    da = len(a) - 1
    db = len(b) - 1
    if da < db:
        raise ArithmeticError("inexact polynomial division")
    cdef list rem = list(a)
    lead = b[db]
    cdef list quot = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        top = rem[k + db]
        if top == 0:
            continue
        c, r = divmod(top, lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[k] = c
        for j in range(db + 1):
            rem[k + j] = rem[k + j] - c * b[j]
    for j in range(da + 1):
        if rem[j]:
            raise ArithmeticError("inexact polynomial division")
    return p_trim(quot)


cdef tuple _pseudo_rem(a, b):
    cdef Py_ssize_t da = len(a) - 1, db = len(b) - 1, k, j
    cdef list rem = list(a)
    lead = b[db]
    for k in range(da - db, -1, -1):
        top = rem[k + db]
        if top == 0:
            continue
        for j in range(k + db):
            rem[j] = rem[j] * lead
        for j in range(db):
            rem[k + j] = rem[k + j] - top * b[j]
        rem[k + db] = 0
        g = 0
        for j in range(k + db):
            g = gcd(g, rem[j])
            if g == 1:
                break
        if g > 1:
            for j in range(k + db):
                rem[j] = rem[j] // g
    return p_trim(rem[:da])


cpdef tuple p_gcd(a, b):
    a = p_primitive(a)
    b = p_primitive(b)
    if len(a) == 0:
        return b
    if len(b) == 0:
        return a
    if len(a) < len(b):
        a, b = b, a
    while len(b):
        if len(b) == 1:
            return (1,)
        r = p_primitive(_pseudo_rem(a, b))
        a, b = b, r
        if len(a) < len(b):
            a, b = b, a
    return a


cdef tuple _strip_low(tuple c):
    cdef Py_ssize_t k = 0
    while c[k] == 0:
        k += 1
    if k:
        return k, c[k:]
    return 0, c


cpdef tuple rq_norm(off, num, den):
    num = p_trim(num)
    den = p_trim(den)
    if len(den) == 0:
        raise ZeroDivisionError("scalar with zero denominator")
    if len(num) == 0:
        return RQ_ZERO
    k, num = _strip_low(num)
    off = off + k
    k, den = _strip_low(den)
    off = off - k
    cn = p_content(num)
    cd = p_content(den)
    g = gcd(cn, cd)
    if g > 1:
        num = p_div_int(num, g)
        den = p_div_int(den, g)
    if len(den) == 1:
        if den[0] < 0:
            num = p_neg(num)
            den = (-den[0],)
        return (off, num, den)
    pg = p_gcd(num, den)
    if len(pg) > 1:
        num = p_divexact(num, pg)
        den = p_divexact(den, pg)
    if den[len(den) - 1] < 0:
        num = p_neg(num)
        den = p_neg(den)
    return (off, num, den)


cpdef tuple rq_add(x, y):
    ox, nx, dx = x
    oy, ny, dy = y
    if len(nx) == 0:
        return y
    if len(ny) == 0:
        return x
    cdef tuple a, b, s
    if dx == dy:
        o = ox if ox <= oy else oy
        a = ((0,) * (ox - o) + nx) if ox > o else nx
        b = ((0,) * (oy - o) + ny) if oy > o else ny
        s = p_add(a, b)
        if len(s) == 0:
            return RQ_ZERO
        if dx == (1,):
            k, s = _strip_low(s)
            return (o + k, s, (1,))
        return rq_norm(o, s, dx)
    o = ox if ox <= oy else oy
    a = p_mul(nx, dy)
    b = p_mul(ny, dx)
    if ox > o:
        a = (0,) * (ox - o) + a
    if oy > o:
        b = (0,) * (oy - o) + b
    return rq_norm(o, p_add(a, b), p_mul(dx, dy))


cdef tuple _reduce_pair(n, d):
    cn = p_content(n)
    cd = p_content(d)
    g = gcd(cn, cd)
    if g > 1:
        n = p_div_int(n, g)
        d = p_div_int(d, g)
    if len(n) > 1 and len(d) > 1:
        pg = p_gcd(n, d)
        if len(pg) > 1:
            n = p_divexact(n, pg)
            d = p_divexact(d, pg)
    return n, d


cpdef tuple rq_mul(x, y):
    ox, nx, dx = x
    oy, ny, dy = y
    if len(nx) == 0 or len(ny) == 0:
        return RQ_ZERO
    nx, dy = _reduce_pair(nx, dy)
    ny, dx = _reduce_pair(ny, dx)
    num = p_mul(nx, ny)
    den = p_mul(dx, dy)
    if den[len(den) - 1] < 0:
        num = p_neg(num)
        den = p_neg(den)
    return (ox + oy, num, den)


cpdef tuple rq_neg(x):
    o, n, d = x
    if len(n) == 0:
        return RQ_ZERO
    return (o, p_neg(n), d)


cpdef tuple rq_inv(x):
    o, n, d = x
    if len(n) == 0:
        raise ZeroDivisionError("inverse of zero scalar")
    if n[len(n) - 1] < 0:
        return (-o, p_neg(d), p_neg(n))
    return (-o, d, n)


cpdef tuple rq_from_int(k):
    if k == 0:
        return RQ_ZERO
    return (0, (k,), (1,))


cpdef tuple rq_qpow(e):
    return (e, (1,), (1,))
