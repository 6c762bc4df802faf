"""Flat F_p[x] kernels on numpy uint64 arrays, for the cyclotomic hot loop.

Coefficients ascending, arrays always trimmed. Exactness of np.convolve and
the reduction fold needs n*(p-1)^2 < 2^64; asserted, not assumed.
"""

from __future__ import annotations

import numpy as np

_WORD = 1 << 64


def _check(n: int, p: int) -> None:
    assert n * (p - 1) ** 2 < _WORD, "uint64 accumulator would overflow"


def ztrim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def zmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    _check(min(len(a), len(b)), p)
    return ztrim(np.convolve(a, b) % p)


def zdivmod(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    b = ztrim(b)
    if len(b) == 0:
        raise ZeroDivisionError("division by zero polynomial")
    a = ztrim(a).copy()
    db = len(b) - 1
    if len(a) - 1 < db:
        return a[:0], a
    binv = pow(int(b[-1]), -1, p)
    q = np.zeros(len(a) - db, dtype=np.uint64)
    for i in range(len(a) - db - 1, -1, -1):
        c = int(a[i + db])
        if c:
            f = (c * binv) % p
            q[i] = f
            a[i : i + db + 1] = (a[i : i + db + 1] + (p - 1) * p - f * b) % p
    return ztrim(q), ztrim(a[:db])


def zgcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a, b = ztrim(a), ztrim(b)
    while len(b):
        a, b = b, zdivmod(a, b, p)[1]
    if len(a) and int(a[-1]) != 1:
        a = (a * pow(int(a[-1]), -1, p)) % p
    return a


class ModulusCtx:
    """Reduction context mod a monic f: precomputed rows x^(n+j) mod f."""

    def __init__(self, f, p: int):
        f = ztrim(np.asarray(f, dtype=np.uint64) % p)
        assert len(f) >= 2 and int(f[-1]) == 1, "modulus must be monic, degree >= 1"
        self.p = p
        self.f = f
        self.n = n = len(f) - 1
        _check(n, p)
        rows = np.zeros((max(n - 1, 0), n), dtype=np.uint64)
        if n >= 2:
            # unsigned negate: -f would wrap mod 2^64 first
            top = (p - f[:n]) % p
            rows[0] = top
            for j in range(1, n - 1):
                prev = rows[j - 1]
                cur = np.concatenate(([np.uint64(0)], prev[:-1]))
                if prev[-1]:
                    cur = (cur + prev[-1] * top) % p
                rows[j] = cur
        self._rows = rows

    def reduce(self, c: np.ndarray) -> np.ndarray:
        n, p = self.n, self.p
        c = ztrim(np.asarray(c, dtype=np.uint64))
        if len(c) <= n:
            out = np.zeros(n, dtype=np.uint64)
            out[: len(c)] = c
            return out
        assert len(c) <= 2 * n - 1, "reduce expects a single product tail"
        high = c[n:]
        out = (c[:n] + (high[:, None] * self._rows[: len(high)]).sum(axis=0)) % p
        return out.astype(np.uint64)

    def mulmod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if len(ztrim(a)) == 0 or len(ztrim(b)) == 0:
            return np.zeros(self.n, dtype=np.uint64)
        return self.reduce(np.convolve(a, b) % self.p)

    def modexp(self, a: np.ndarray, e: int) -> np.ndarray:
        out = np.zeros(self.n, dtype=np.uint64)
        out[0] = 1
        a = self.reduce(a)
        while e:
            if e & 1:
                out = self.mulmod(out, a)
            a = self.mulmod(a, a)
            e >>= 1
        return out


def matvec(M: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    _check(M.shape[1], p)
    return (M @ v) % p
