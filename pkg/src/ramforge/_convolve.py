"""Dense truncated convolution kernels over Z/m.

Residue vectors are plain lists of ints in [0, m).  The numpy int64 path
is used only when the worst-case accumulator provably fits; otherwise we
fall back to exact Python integers, so results are identical either way.
"""

from __future__ import annotations

import numpy as np

_INT64_SAFE = 2**62


def conv_mod(a, b, n, mod):
    """Truncated product: first n coefficients of a*b with entries mod m."""
    la = min(len(a), n)
    lb = min(len(b), n)
    if la == 0 or lb == 0 or n == 0:
        return [0] * n
    # reduce first: callers may hand residues from a larger modulus, and
    # the int64 bound below assumes entries below mod
    a = [x % mod for x in a[:la]]
    b = [x % mod for x in b[:lb]]
    if (mod - 1) * (mod - 1) * min(la, lb) < _INT64_SAFE:
        full = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = (full[:n] % mod).tolist()
    else:
        out = [0] * min(n, la + lb - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            top = min(lb, n - i)
            for j in range(top):
                out[i + j] = (out[i + j] + ai * b[j]) % mod
    if len(out) < n:
        out.extend([0] * (n - len(out)))
    return out


def compose_mod(outer, inner, n, mod):
    """First n coefficients of outer(inner(X)) by Horner; inner[0] must be 0."""
    if n == 0:
        return []
    outer = outer[:n]
    acc = [outer[-1] % mod]
    for c in reversed(outer[:-1]):
        acc = conv_mod(acc, inner, n, mod)
        acc[0] = (acc[0] + c) % mod
    if len(acc) < n:
        acc.extend([0] * (n - len(acc)))
    return acc


def recip_mod(a, n, mod):
    """First n coefficients of 1/a where a[0] is a unit mod m."""
    inv0 = pow(a[0], -1, mod)
    out = [inv0] + [0] * (n - 1)
    la = len(a)
    for k in range(1, n):
        s = 0
        for j in range(1, min(k, la - 1) + 1):
            s += a[j] * out[k - j]
        out[k] = (-inv0 * s) % mod
    return out
