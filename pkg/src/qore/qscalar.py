"""Exact arithmetic in Q(q) together with the q-combinatorics used everywhere.

q is a formal parameter and is never specialized to a number; equality is
decided on canonical forms (reduced fraction of integer polynomials with a
split-off q-power).  Values are immutable and hashable.
"""

from __future__ import annotations

from . import _kernel as K


class RatQ:
    """A rational function in q over Q, in canonical reduced form."""

    __slots__ = ("t",)

    def __init__(self, t=K.RQ_ZERO):
        self.t = t

    @staticmethod
    def from_int(k: int) -> "RatQ":
        return RatQ(K.rq_from_int(k))

    @staticmethod
    def q_power(e: int) -> "RatQ":
        return RatQ(K.rq_qpow(e))

    @staticmethod
    def from_fraction(num: int, den: int) -> "RatQ":
        return RatQ(K.rq_norm(0, (num,), (den,)))

    @property
    def is_zero(self) -> bool:
        return not self.t[1]

    def __bool__(self):
        return bool(self.t[1])

    def __add__(self, other):
        return RatQ(K.rq_add(self.t, _coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RatQ(K.rq_add(self.t, K.rq_neg(_coerce(other))))

    def __rsub__(self, other):
        return RatQ(K.rq_add(_coerce(other), K.rq_neg(self.t)))

    def __mul__(self, other):
        return RatQ(K.rq_mul(self.t, _coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return RatQ(K.rq_mul(self.t, K.rq_inv(_coerce(other))))

    def __rtruediv__(self, other):
        return RatQ(K.rq_mul(_coerce(other), K.rq_inv(self.t)))

    def __neg__(self):
        return RatQ(K.rq_neg(self.t))

    def inv(self) -> "RatQ":
        return RatQ(K.rq_inv(self.t))

    def __pow__(self, e: int):
        if e == 0:
            return ONE
        base = self.t if e > 0 else K.rq_inv(self.t)
        n = abs(e)
        acc = K.RQ_ONE
        while n:
            if n & 1:
                acc = K.rq_mul(acc, base)
            base = K.rq_mul(base, base)
            n >>= 1
        return RatQ(acc)

    def __eq__(self, other):
        if isinstance(other, RatQ):
            return self.t == other.t
        if isinstance(other, int):
            return self.t == K.rq_from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.t)

    @property
    def is_laurent(self) -> bool:
        return self.t[2] == (1,)

    def q_monomial_exponent(self):
        """The e with self = q**e, or None when self is not such a monomial."""
        o, n, d = self.t
        if n == (1,) and d == (1,):
            return o
        return None

    def subs_one(self):
        """Evaluate at q = 1 (used only by test oracles)."""
        o, n, d = self.t
        dv = sum(d)
        if dv == 0:
            raise ZeroDivisionError("pole at q = 1")
        from fractions import Fraction

        return Fraction(sum(n), dv)

    def __repr__(self):
        return f"RatQ({self})"

    def __str__(self):
        return render(self)


def _coerce(x):
    if isinstance(x, RatQ):
        return x.t
    if isinstance(x, int):
        return K.rq_from_int(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to RatQ")


ZERO = RatQ(K.RQ_ZERO)
ONE = RatQ(K.RQ_ONE)
Q = RatQ.q_power(1)


def _render_poly(coeffs, off):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        e = i + off
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            head = "" if a == 1 else str(a)
            body = f"{head}q" if e == 1 else f"{head}q^{e}"
        terms.append((sign, body))
    if not terms:
        return "0"
    sign0, body0 = terms[0]
    out = ("-" if sign0 == "-" else "") + body0
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def render(x: RatQ) -> str:
    """Stable textual form, e.g. 'q + q^-1' or 'q/(q^2 - 1)'."""
    o, n, d = x.t
    if not n:
        return "0"
    num = _render_poly(n, o)
    if d == (1,):
        return num
    den = _render_poly(d, 0)
    if len([c for c in n if c]) > 1:
        num = f"({num})"
    if len([c for c in d if c]) > 1:
        den = f"({den})"
    return f"{num}/{den}"


def qint(n: int, d: int = 1) -> RatQ:
    """The balanced q-integer [n] in q^d: (q^{dn} - q^{-dn})/(q^d - q^{-d})."""
    if d <= 0:
        raise ValueError("symmetrizer exponent must be positive")
    if n < 0:
        return -qint(-n, d)
    if n == 0:
        return ZERO
    # q^{d(n-1)} + q^{d(n-3)} + ... + q^{-d(n-1)}
    acc = K.RQ_ZERO
    for k in range(n):
        acc = K.rq_add(acc, K.rq_qpow(d * (n - 1 - 2 * k)))
    return RatQ(acc)


def qfact(n: int, d: int = 1) -> RatQ:
    """The q-factorial [n]! in q^d; [0]! = 1."""
    if n < 0:
        raise ValueError("q-factorial of a negative integer")
    acc = ONE
    for k in range(2, n + 1):
        acc = acc * qint(k, d)
    return acc


def qbinom(n: int, k: int, d: int = 1) -> RatQ:
    """Balanced Gaussian binomial [n choose k] in q^d (a Laurent polynomial)."""
    if k < 0 or k > n:
        return ZERO
    num = ONE
    for s in range(1, k + 1):
        num = num * qint(n - k + s, d)
    return num / qfact(k, d)
