"""Vectorized ring arithmetic on int64 coefficient arrays.

Same transform tables and values as polyring, applied to whole batches of
polynomials at once; used where per-sample Python arithmetic would be too
slow (the distinguishing experiment).  All arithmetic is exact: products
stay below 2^46 for q < 2^23 and the float-reciprocal reduction is exact
for |t| <= 2^52.
"""

from functools import lru_cache

import numpy as np

from . import polyring
from .params import Params


def reduce_mod(t: np.ndarray, q: int) -> np.ndarray:
    """Exact t mod q for int64 t with |t| <= 2^52 (avoids int64 division)."""
    quot = (t * (1.0 / q)).astype(np.int64)
    r = t - quot * q
    r += q * (r < 0)
    r -= q * (r >= q)
    return r


@lru_cache(maxsize=None)
def _stage_tables(q: int, degree: int, psi: int):
    zetas, ninv = polyring._tables(q, degree, psi)
    fwd = []
    half = degree // 2
    wi = 0
    while half > 0:
        nb = degree // (2 * half)
        zs = np.array(zetas[wi + 1 : wi + 1 + nb], dtype=np.int64).reshape(nb, 1)
        wi += nb
        fwd.append((half, nb, zs))
        half >>= 1
    inv = []
    half = 1
    wi = degree
    while half < degree:
        nb = degree // (2 * half)
        zs = np.array(
            [zetas[wi - 1 - b] for b in range(nb)], dtype=np.int64
        ).reshape(nb, 1)
        wi -= nb
        inv.append((half, nb, zs))
        half <<= 1
    return fwd, inv, ninv


def ntt_batch(a: np.ndarray, p: Params) -> np.ndarray:
    """Forward transform of a (batch, degree) int64 array; rows independent."""
    fwd, _, _ = _stage_tables(p.q, p.degree, p.psi)
    q = p.q
    out = np.array(a, dtype=np.int64)
    batch = out.shape[0]
    for half, nb, zs in fwd:
        x = out.reshape(batch, nb, 2, half)
        f0 = x[:, :, 0, :].copy()
        t = reduce_mod(x[:, :, 1, :] * zs, q)
        hi = f0 + t
        hi -= q * (hi >= q)
        lo = f0 - t
        lo += q * (lo < 0)
        x[:, :, 0, :] = hi
        x[:, :, 1, :] = lo
    return out


def intt_batch(a: np.ndarray, p: Params) -> np.ndarray:
    """Inverse of ntt_batch."""
    _, inv, ninv = _stage_tables(p.q, p.degree, p.psi)
    q = p.q
    out = np.array(a, dtype=np.int64)
    batch = out.shape[0]
    for half, nb, zs in inv:
        x = out.reshape(batch, nb, 2, half)
        f0 = x[:, :, 0, :].copy()
        f1 = x[:, :, 1, :]
        s = f0 + f1
        s -= q * (s >= q)
        x[:, :, 0, :] = s
        x[:, :, 1, :] = reduce_mod((f1 - f0) * zs, q)
    return reduce_mod(out * ninv, q)
