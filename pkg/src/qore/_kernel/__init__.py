"""Scalar kernel selection.

Prefers the compiled kernel (qore._kernel._polyz) and falls back to the
pure-Python twin.  Set QORE_PURE_KERNEL=1 to force the fallback, e.g. for
benchmarking or debugging.
"""

import os

from . import polyz_py

if os.environ.get("QORE_PURE_KERNEL"):
    impl = polyz_py
else:
    try:
        from . import _polyz as impl  # type: ignore[no-redef]
    except ImportError:
        impl = polyz_py

KERNEL_NAME = impl.KERNEL_NAME

RQ_ZERO = impl.RQ_ZERO
RQ_ONE = impl.RQ_ONE

p_trim = impl.p_trim
p_add = impl.p_add
p_neg = impl.p_neg
p_sub = impl.p_sub
p_mul = impl.p_mul
p_mul_int = impl.p_mul_int
p_content = impl.p_content
p_primitive = impl.p_primitive
p_divexact = impl.p_divexact
p_gcd = impl.p_gcd
rq_norm = impl.rq_norm
rq_add = impl.rq_add
rq_mul = impl.rq_mul
rq_neg = impl.rq_neg
rq_inv = impl.rq_inv
rq_from_int = impl.rq_from_int
rq_qpow = impl.rq_qpow
