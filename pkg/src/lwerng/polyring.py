"""Arithmetic in R_q = Z_q[X]/(X^degree + 1).

Polynomials are plain lists of ints, every coefficient reduced into [0, q).
Multiplication runs through the negacyclic number-theoretic transform; a
schoolbook routine is kept as the independent slow path.

Serialization is normative and bit-exact: word i of the output is
coefficient i, packed as a little-endian word of `word_bits` bits, so bit
32*i+j of the string is bit j of coefficient i.
"""

import struct
from functools import lru_cache

from .errors import CoefficientOutOfRange, DimensionMismatch
from .params import Params

Poly = list  # list[int] of length params.degree


@lru_cache(maxsize=None)
def _tables(q: int, degree: int, psi: int):
    """Transform tables: zetas[i] = psi^bitrev(i) mod q, plus degree^-1."""
    bits = degree.bit_length() - 1
    zetas = []
    for i in range(degree):
        r = 0
        x = i
        for _ in range(bits):
            r = (r << 1) | (x & 1)
            x >>= 1
        zetas.append(pow(psi, r, q))
    return tuple(zetas), pow(degree, -1, q)


def zero(p: Params) -> Poly:
    return [0] * p.degree


def one(p: Params) -> Poly:
    f = [0] * p.degree
    f[0] = 1
    return f


def monomial(p: Params, k: int, c: int = 1) -> Poly:
    """c * X^k as a ring element (k reduced with the sign flip of X^degree = -1)."""
    f = [0] * p.degree
    if k // p.degree % 2:
        c = -c
    f[k % p.degree] = c % p.q
    return f


def add(a: Poly, b: Poly, p: Params) -> Poly:
    return [(x + y) % p.q for x, y in zip(a, b)]


def sub(a: Poly, b: Poly, p: Params) -> Poly:
    return [(x - y) % p.q for x, y in zip(a, b)]


def neg(a: Poly, p: Params) -> Poly:
    return [-x % p.q for x in a]


def scale(a: Poly, c: int, p: Params) -> Poly:
    return [x * c % p.q for x in a]


def ntt(a: Poly, p: Params) -> Poly:
    """Forward negacyclic transform (bijection on R_q)."""
    q = p.q
    zetas, _ = _tables(q, p.degree, p.psi)
    f = list(a)
    half = p.degree // 2
    wi = 0
    while half > 0:
        for start in range(0, p.degree, 2 * half):
            wi += 1
            z = zetas[wi]
            for j in range(start, start + half):
                x = f[j]
                y = f[j + half] * z % q
                f[j] = (x + y) % q
                f[j + half] = (x - y) % q
        half >>= 1
    return f


def inv_ntt(a: Poly, p: Params) -> Poly:
    """Inverse of ntt(); inv_ntt(ntt(x)) == x."""
    q = p.q
    zetas, ninv = _tables(q, p.degree, p.psi)
    f = list(a)
    half = 1
    wi = p.degree
    while half < p.degree:
        for start in range(0, p.degree, 2 * half):
            wi -= 1
            z = zetas[wi]
            for j in range(start, start + half):
                x = f[j]
                y = f[j + half]
                f[j] = (x + y) % q
                f[j + half] = z * (y - x) % q
        half <<= 1
    return [v * ninv % q for v in f]


def pointwise(a: Poly, b: Poly, p: Params) -> Poly:
    return [x * y % p.q for x, y in zip(a, b)]


def mul(a: Poly, b: Poly, p: Params) -> Poly:
    """Product in R_q via ntt/pointwise/inv_ntt; equals schoolbook_mul exactly."""
    return inv_ntt(pointwise(ntt(a, p), ntt(b, p), p), p)


def schoolbook_mul(a: Poly, b: Poly, p: Params) -> Poly:
    """O(degree^2) negacyclic product, the slow reference path."""
    d = p.degree
    acc = [0] * (2 * d)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            acc[i + j] += ai * bj
    return [(acc[i] - acc[i + d]) % p.q for i in range(d)]


def mat_vec_mul(mat: list, vec: list, p: Params) -> list:
    """Matrix-vector product over R_q: entry i is sum_j mat[i][j] * vec[j]."""
    if any(len(row) != len(vec) for row in mat):
        raise DimensionMismatch(
            f"matrix rows of width {[len(r) for r in mat]} vs vector of {len(vec)}"
        )
    vec_hat = [ntt(s, p) for s in vec]
    out = []
    for row in mat:
        acc = [0] * p.degree
        for a_ij, s_hat in zip((ntt(e, p) for e in row), vec_hat):
            for idx in range(p.degree):
                acc[idx] = (acc[idx] + a_ij[idx] * s_hat[idx]) % p.q
        out.append(inv_ntt(acc, p))
    return out


def serialize(a: Poly, p: Params) -> bytes:
    """Pack the polynomial into degree * word_bits bits (little-endian words)."""
    if p.word_bits == 32:
        return struct.pack("<%dI" % p.degree, *a)
    acc = 0
    for i, c in enumerate(a):
        acc |= c << (i * p.word_bits)
    return acc.to_bytes(p.degree * p.word_bits // 8, "little")


def deserialize(raw: bytes, p: Params) -> Poly:
    """Inverse of serialize(); every decoded word must be < q."""
    nbytes = p.degree * p.word_bits // 8
    if len(raw) != nbytes:
        raise CoefficientOutOfRange(f"expected {nbytes} bytes, got {len(raw)}")
    if p.word_bits == 32:
        coeffs = list(struct.unpack("<%dI" % p.degree, raw))
    else:
        acc = int.from_bytes(raw, "little")
        w = (1 << p.word_bits) - 1
        coeffs = [(acc >> (i * p.word_bits)) & w for i in range(p.degree)]
    for i, c in enumerate(coeffs):
        if c >= p.q:
            raise CoefficientOutOfRange(f"word {i} = {c} >= q = {p.q}")
    return coeffs
