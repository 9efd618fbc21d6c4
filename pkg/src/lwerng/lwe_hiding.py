"""Seed concealment: b = A*s + e + r*floor(q/2) over R_q^m, plus the oracle
pair behind the concealment hardness claim and an empirical distinguishing
experiment with a falsifiable positive control.

The payload bits r are recoverable only with the secret; in normal use the
transcript (A, s, e, r) is discarded and only b leaves this module.
"""

import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import polyring, vecring
from .errors import DimensionMismatch, InsufficientTrials
from .params import Params, default_params
from .sampling import (
    EntropyInput,
    expand_matrix,
    sample_error,
    sample_secret,
    seed_payload,
)


@dataclass
class Transcript:
    """Hiding internals, retained only when explicitly requested (tests)."""

    matrix: list
    secret: list
    error: list
    payload: list


@dataclass
class HiddenSeed:
    """The concealed seed b (m ring elements) and the parameter set used."""

    b: list
    params: Params
    transcript: Optional[Transcript] = None


def hide(
    ent: EntropyInput,
    p: Params = None,
    keep_transcript: bool = False,
    _secret=None,
    _error=None,
    _payload=None,
) -> HiddenSeed:
    """Conceal the payload derived from `ent` under the lattice sample.

    Deterministic in `ent`: matrix, secret, error (nonce 0) and payload all
    expand from it under their domain labels.  The underscore keywords
    override individual components for tests; production callers leave them
    unset.
    """
    p = p or default_params()
    mat = expand_matrix(ent, p)
    s = _secret if _secret is not None else sample_secret(ent, p)
    e = _error if _error is not None else sample_error(ent, p, nonce=0)
    r = _payload if _payload is not None else seed_payload(ent, p)
    b = _combine(mat, s, e, r, p)
    transcript = Transcript(mat, s, e, r) if keep_transcript else None
    return HiddenSeed(b=b, params=p, transcript=transcript)


def _combine(mat, s, e, r, p: Params) -> list:
    if len(e) != len(mat) or len(r) != len(mat):
        raise DimensionMismatch("error/payload length differs from matrix rows")
    prod = polyring.mat_vec_mul(mat, s, p)
    half_q = p.q // 2
    return [
        polyring.add(polyring.add(prod_i, e_i, p), polyring.scale(r_i, half_q, p), p)
        for prod_i, e_i, r_i in zip(prod, e, r)
    ]


def oracle_hiding(mat, s, rng: random.Random, p: Params = None, _error=None, _payload=None):
    """One concealed sample (A, s, b) with fresh error and fresh uniform payload."""
    p = p or default_params()
    e = _error if _error is not None else _fresh_error(rng, p)
    r = _payload if _payload is not None else _fresh_payload(rng, p)
    return mat, s, _combine(mat, s, e, r, p)


def oracle_plain(mat, s, rng: random.Random, p: Params = None, _error=None):
    """One plain sample (A, s, b = A*s + e) with fresh error."""
    p = p or default_params()
    e = _error if _error is not None else _fresh_error(rng, p)
    zero_r = [[0] * p.degree for _ in range(p.m)]
    return mat, s, _combine(mat, s, e, zero_r, p)


def _fresh_error(rng: random.Random, p: Params) -> list:
    out = []
    for _ in range(p.m):
        coeffs = []
        for _ in range(p.degree):
            a = bin(rng.getrandbits(p.eta)).count("1")
            b = bin(rng.getrandbits(p.eta)).count("1")
            coeffs.append((a - b) % p.q)
        out.append(coeffs)
    return out


def _fresh_payload(rng: random.Random, p: Params) -> list:
    return [[rng.getrandbits(1) for _ in range(p.degree)] for _ in range(p.m)]


# --- distinguishing experiment -------------------------------------------

MODES = ("hiding_vs_uniform", "uniform_vs_uniform", "positive_control")

# median of the chi-square distribution with 15 degrees of freedom; the
# threshold only has to be applied identically to both arms
_CHI2_15_MEDIAN = 14.3389


@dataclass
class DistinguisherResult:
    name: str
    hit_rate_a: float
    hit_rate_b: float
    advantage: float
    sigma: float


@dataclass
class AdvantageReport:
    mode: str
    trials: int
    results: list

    def to_text(self) -> str:
        lines = [f"mode={self.mode} trials={self.trials}"]
        for r in self.results:
            lines.append(
                f"{r.name:<16} advantage={r.advantage:.6f} "
                f"ci3s=±{3 * r.sigma:.6f} hits_a={r.hit_rate_a:.4f} "
                f"hits_b={r.hit_rate_b:.4f}"
            )
        return "\n".join(lines)


def distinguishing_experiment(
    trials: int,
    p: Params = None,
    mode: str = "hiding_vs_uniform",
    seed: int = 0,
    chunk: int = 2048,
) -> AdvantageReport:
    """Empirical advantage of a fixed distinguisher battery between two arms.

    Modes:
        hiding_vs_uniform: concealed samples (fresh uniform A, fresh secret,
            fresh error and payload per trial) against uniform Z_q^m samples.
        uniform_vs_uniform: null control, both arms uniform.
        positive_control: the oracle pair on deliberately degenerate inputs
            (zero matrix, zero secret, error forced to zero, payload all
            ones); the high-bit distinguisher must separate these.

    Each distinguisher maps one sample (m*degree coefficients) to {0, 1};
    the advantage is |hit_rate_a - hit_rate_b| with a binomial sigma.
    """
    p = p or default_params()
    if trials < 1000:
        raise InsufficientTrials(f"trials={trials} < 1000")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")

    if mode == "positive_control":
        hits_a, hits_b = _positive_control_hits(trials, p, seed)
    else:
        hits_a, hits_b = _battery_hits(trials, p, mode, seed, chunk)

    results = []
    for name in _DISTINGUISHER_NAMES:
        ra = hits_a[name] / trials
        rb = hits_b[name] / trials
        sigma = (ra * (1 - ra) / trials + rb * (1 - rb) / trials) ** 0.5
        results.append(DistinguisherResult(name, ra, rb, abs(ra - rb), sigma))
    return AdvantageReport(mode=mode, trials=trials, results=results)


_DISTINGUISHER_NAMES = ("coef_chi2", "serial_corr", "high_bit_weight")


def _distinguisher_hits(samples: np.ndarray, q: int) -> dict:
    """Vectorized battery over samples of shape (T, coeffs); returns hit counts."""
    t_count, width = samples.shape
    # chi-square of the coefficients against uniform over 16 equal bins
    bins = samples * 16 // q
    flat = (np.arange(t_count, dtype=np.int64)[:, None] * 16 + bins).ravel()
    counts = np.bincount(flat, minlength=t_count * 16).reshape(t_count, 16)
    expected = width / 16
    chi2 = ((counts - expected) ** 2 / expected).sum(axis=1)
    chi2_hits = chi2 > _CHI2_15_MEDIAN

    # sign of the lag-1 serial correlation of centered coefficients
    centered = samples.astype(np.float64) - (q - 1) / 2.0
    corr_num = (centered[:, :-1] * centered[:, 1:]).sum(axis=1)
    corr_hits = corr_num > 0

    # Hamming weight of the per-coefficient high bit (1 iff q/4 < c < 3q/4)
    high = (4 * samples > q) & (4 * samples < 3 * q)
    hb_hits = high.mean(axis=1) > 0.5

    return {
        "coef_chi2": int(chi2_hits.sum()),
        "serial_corr": int(corr_hits.sum()),
        "high_bit_weight": int(hb_hits.sum()),
    }


def _battery_hits(trials, p: Params, mode, seed, chunk):
    rng = np.random.default_rng(seed)
    q = p.q
    width = p.m * p.degree
    hits_a = dict.fromkeys(_DISTINGUISHER_NAMES, 0)
    hits_b = dict.fromkeys(_DISTINGUISHER_NAMES, 0)
    done = 0
    while done < trials:
        t = min(chunk, trials - done)
        if mode == "hiding_vs_uniform":
            arm_a = _hiding_batch(rng, t, p)
        else:
            arm_a = rng.integers(0, q, size=(t, width), dtype=np.int64)
        arm_b = rng.integers(0, q, size=(t, width), dtype=np.int64)
        for name, c in _distinguisher_hits(arm_a, q).items():
            hits_a[name] += c
        for name, c in _distinguisher_hits(arm_b, q).items():
            hits_b[name] += c
        done += t
    return hits_a, hits_b


def _hiding_batch(rng, t: int, p: Params) -> np.ndarray:
    """t concealed samples, vectorized.

    The uniform matrix is drawn directly in the transform domain (the
    transform is a bijection, so the distribution is identical), the ternary
    secret is transformed, and the product comes back through the inverse.
    """
    q = p.q
    d = p.degree
    s = (rng.integers(0, 2 * p.eta + 1, size=(t * p.n, d), dtype=np.int64) - p.eta) % q
    s_hat = vecring.ntt_batch(s, p).reshape(t, p.n, d)
    b_hat = np.zeros((t, p.m, d), dtype=np.int64)
    for i in range(p.m):
        acc = np.zeros((t, d), dtype=np.int64)
        for j in range(p.n):
            a_ij = rng.integers(0, q, size=(t, d), dtype=np.int64)
            acc += vecring.reduce_mod(a_ij * s_hat[:, j, :], q)
        b_hat[:, i, :] = vecring.reduce_mod(acc, q)
    b = vecring.intt_batch(b_hat.reshape(t * p.m, d), p)
    e = rng.integers(0, 2, size=(t * p.m, d), dtype=np.int64) - rng.integers(
        0, 2, size=(t * p.m, d), dtype=np.int64
    )
    r = rng.integers(0, 2, size=(t * p.m, d), dtype=np.int64)
    b = (b + e + r * (q // 2)) % q
    return b.reshape(t, p.m * d)


def _positive_control_hits(trials, p: Params, seed):
    rng = random.Random(seed)
    zero_mat = [[[0] * p.degree for _ in range(p.n)] for _ in range(p.m)]
    zero_s = [[0] * p.degree for _ in range(p.n)]
    zero_e = [[0] * p.degree for _ in range(p.m)]
    ones_r = [[1] * p.degree for _ in range(p.m)]
    hits_a = dict.fromkeys(_DISTINGUISHER_NAMES, 0)
    hits_b = dict.fromkeys(_DISTINGUISHER_NAMES, 0)
    for _ in range(trials):
        _, _, b_hiding = oracle_hiding(zero_mat, zero_s, rng, p, _error=zero_e, _payload=ones_r)
        _, _, b_plain = oracle_plain(zero_mat, zero_s, rng, p, _error=zero_e)
        sample_a = np.array(b_hiding, dtype=np.int64).reshape(1, -1)
        sample_b = np.array(b_plain, dtype=np.int64).reshape(1, -1)
        for name, c in _distinguisher_hits(sample_a, p.q).items():
            hits_a[name] += c
        for name, c in _distinguisher_hits(sample_b, p.q).items():
            hits_b[name] += c
    return hits_a, hits_b
