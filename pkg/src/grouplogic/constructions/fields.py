"""Finite fields GF(p^e) as lookup tables, and a little linear algebra over them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ..errors import NotPrime


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, e)`` with ``q = p^e``, or ``None``."""
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            return (p, e) if q == 1 else None
    return None


@dataclass(eq=False)
class Fq:
    """GF(p^e); element ``k`` has base-``p`` digits = coefficients of 1, t, t^2, ..."""

    p: int
    e: int
    modulus: tuple  # monic, low degree first, length e + 1
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)  # inv[0] = 0 by convention

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def basis(self) -> list[int]:
        """F_p-basis 1, t, ..., t^(e-1)."""
        return [self.p**i for i in range(self.e)]

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime field."""
        return n % self.p

    def poly_text(self) -> str:
        terms = []
        for i in range(self.e, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
            terms.append(mono if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}{mono}"))
        return " + ".join(terms)


def _digits(q: int, p: int, e: int) -> np.ndarray:
    k = np.arange(q)
    return np.stack([(k // p**i) % p for i in range(e)], axis=1)


def _mul_table(p: int, e: int, modulus) -> np.ndarray:
    q = p**e
    d = _digits(q, p, e)
    prod = np.zeros((q, q, 2 * e - 1), dtype=np.int64)
    for i in range(e):
        for j in range(e):
            prod[:, :, i + j] += d[:, None, i] * d[None, :, j]
    prod %= p
    for k in range(2 * e - 2, e - 1, -1):
        c = prod[:, :, k].copy()
        for i in range(e + 1):
            prod[:, :, k - e + i] -= c * modulus[i]
        prod %= p
    weights = p ** np.arange(e)
    return (prod[:, :, :e] @ weights).astype(np.int64)


def gf(p: int, e: int = 1) -> Fq:
    """GF(p^e) with the lexicographically least monic irreducible modulus.

    Candidates ``t^e + c_{e-1} t^{e-1} + ... + c_0`` are ordered by the
    coefficient list read from ``c_{e-1}`` down to ``c_0``; irreducibility is
    tested by the absence of zero divisors in the resulting ring.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ValueError("exponent must be at least 1")
    q = p**e
    d = _digits(q, p, e)
    weights = p ** np.arange(e)
    add = (((d[:, None, :] + d[None, :, :]) % p) @ weights).astype(np.int64)
    neg = (((-d) % p) @ weights).astype(np.int64)
    if e == 1:
        modulus = (0, 1)
        mul = (np.arange(p)[:, None] * np.arange(p)[None, :]) % p
    else:
        for high_first in product(range(p), repeat=e):
            modulus = tuple(reversed(high_first)) + (1,)
            if modulus[0] == 0:
                continue
            mul = _mul_table(p, e, modulus)
            if not (mul[1:, 1:] == 0).any():
                break
    inv = np.zeros(q, dtype=np.int64)
    rows, cols = np.nonzero(mul == 1)
    inv[rows] = cols
    return Fq(p, e, tuple(int(c) for c in modulus), add, mul.astype(np.int64), neg, inv)


# ------------------------------------------------------------ linear algebra


def matmul(F: Fq, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix product over ``F`` (leading batch axes on ``A`` allowed)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    out = np.zeros(A.shape[:-1] + (B.shape[1],), dtype=np.int64)
    for j in range(A.shape[-1]):
        out = F.add[out, F.mul[A[..., j, None], B[j]]]
    return out


def rref(F: Fq, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = np.array(M, dtype=np.int64, copy=True)
    rows, cols = R.shape if R.ndim == 2 else (0, 0)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        R[[r, k]] = R[[k, r]]
        R[r] = F.mul[F.inv[R[r, c]], R[r]]
        for i in range(rows):
            if i != r and R[i, c]:
                R[i] = F.sub(R[i], F.mul[R[i, c], R[r]])
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: Fq, M: np.ndarray) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def row_space(F: Fq, M: np.ndarray, width: int) -> np.ndarray:
    """Basis (rows) of the row space."""
    M = np.asarray(M, dtype=np.int64).reshape(-1, width)
    if M.shape[0] == 0:
        return M
    R, piv = rref(F, M)
    return R[: len(piv)]


def null_space(F: Fq, M: np.ndarray) -> np.ndarray:
    """Basis (rows) of ``{v : M v = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    R, piv = rref(F, M)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = F.neg[R[i, f]]
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(-1, n)


def solve_left(F: Fq, B: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Coordinates ``C`` with ``C @ B = W`` for an invertible square ``B``."""
    n = B.shape[0]
    aug = np.concatenate([B.T, W.T], axis=1)
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        raise ValueError("basis matrix is singular")
    return R[:n, n:].T
