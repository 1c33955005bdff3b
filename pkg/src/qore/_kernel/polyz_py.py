"""Pure-Python scalar kernel: rational functions in q over the integers.

A polynomial in q with integer coefficients is a tuple of ints in ascending
powers, trailing coefficient nonzero; () is the zero polynomial.  A scalar
(element of Q(q)) is a triple (off, num, den) standing for

    q**off * num(q) / den(q)

in canonical form: num[0] != 0 and den[0] != 0 (all q-powers live in off),
den[-1] > 0, and num/den fully reduced (coprime integer contents and coprime
primitive parts).  The zero scalar is (0, (), (1,)).

This module is the reference implementation; qore._kernel selects the
compiled twin (_polyz) when it is available.  Both expose the same functions
and must produce identical triples.
"""

from math import gcd

KERNEL_NAME = "python"

RQ_ZERO = (0, (), (1,))
RQ_ONE = (0, (1,), (1,))


def p_trim(c):
    """Drop trailing zero coefficients."""
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def p_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return p_trim(out)


def p_neg(a):
    return tuple(-x for x in a)


def p_sub(a, b):
    return p_add(a, p_neg(b))


def p_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return p_trim(out)


def p_mul_int(a, n):
    if n == 0:
        return ()
    return tuple(x * n for x in a)


def p_content(a):
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


def p_div_int(a, n):
    return tuple(x // n for x in a)


def p_primitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    c = p_content(a)
    if a[-1] < 0:
        c = -c
    if c != 1:
        a = tuple(x // c for x in a)
    return a


def p_divexact(a, b):
    """Exact quotient a // b; raises ArithmeticError when not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        raise ArithmeticError("inexact polynomial division")
    rem = list(a)
    lead = b[-1]
    quot = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        top = rem[k + db]
        if top == 0:
            continue
        c, r = divmod(top, lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[k] = c
        for j in range(db + 1):
            rem[k + j] -= c * b[j]
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return p_trim(quot)


def _pseudo_rem(a, b):
    """Pseudo-remainder of a by b (deg a >= deg b > ...), over Z."""
    da, db = len(a) - 1, len(b) - 1
    rem = list(a)
    lead = b[-1]
    for k in range(da - db, -1, -1):
        top = rem[k + db]
        if top == 0:
            continue
        for j in range(k + db):
            rem[j] *= lead
        for j in range(db):
            rem[k + j] -= top * b[j]
        rem[k + db] = 0
        g = 0
        for j in range(k + db):
            g = gcd(g, rem[j])
            if g == 1:
                break
        if g > 1:
            for j in range(k + db):
                rem[j] //= g
    return p_trim(rem[:da])


def p_gcd(a, b):
    """Gcd of primitive parts: primitive, positive leading coefficient."""
    a = p_primitive(a)
    b = p_primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return (1,)
        r = p_primitive(_pseudo_rem(a, b))
        a, b = b, r
        if len(a) < len(b):
            a, b = b, a
    return a


def _strip_low(c):
    """Split off the q-power dividing c; returns (shift, stripped)."""
    k = 0
    while c[k] == 0:
        k += 1
    if k:
        return k, c[k:]
    return 0, c


def rq_norm(off, num, den):
    """Canonicalize a raw (off, num, den) triple."""
    num = p_trim(num)
    den = p_trim(den)
    if not den:
        raise ZeroDivisionError("scalar with zero denominator")
    if not num:
        return RQ_ZERO
    k, num = _strip_low(num)
    off += k
    k, den = _strip_low(den)
    off -= k
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
    if den[-1] < 0:
        num = p_neg(num)
        den = p_neg(den)
    return (off, num, den)


def rq_add(x, y):
    ox, nx, dx = x
    oy, ny, dy = y
    if not nx:
        return y
    if not ny:
        return x
    if dx == dy:
        o = ox if ox <= oy else oy
        a = ((0,) * (ox - o) + nx) if ox > o else nx
        b = ((0,) * (oy - o) + ny) if oy > o else ny
        s = p_add(a, b)
        if not s:
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


def _reduce_pair(n, d):
    """Remove factors shared by a numerator and a foreign denominator."""
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


def rq_mul(x, y):
    ox, nx, dx = x
    oy, ny, dy = y
    if not nx or not ny:
        return RQ_ZERO
    nx, dy = _reduce_pair(nx, dy)
    ny, dx = _reduce_pair(ny, dx)
    num = p_mul(nx, ny)
    den = p_mul(dx, dy)
    if den[-1] < 0:
        num = p_neg(num)
        den = p_neg(den)
    return (ox + oy, num, den)


def rq_neg(x):
    o, n, d = x
    if not n:
        return RQ_ZERO
    return (o, p_neg(n), d)


def rq_inv(x):
    o, n, d = x
    if not n:
        raise ZeroDivisionError("inverse of zero scalar")
    if n[-1] < 0:
        return (-o, p_neg(d), p_neg(n))
    return (-o, d, n)


def rq_from_int(k):
    if k == 0:
        return RQ_ZERO
    return (0, (k,), (1,))


def rq_qpow(e):
    return (e, (1,), (1,))
