"""Built-in randomness battery, raw dump for external suites, and the
3-bit scatter-index export.

The battery is a desk-scale screen: monobit frequency, block frequency
(block 128), runs, overlapping 2-bit serial, byte chi-square (256 bins) and
64-bit word lag-1 serial correlation.  Verdict thresholds follow the usual
external-suite convention: fail below 1e-6, weak below 0.005.

The raw dump is a headerless byte file of the generator output, bit-exact
under the LSB-first packing, suitable for `dieharder -g 201 -f <file>`.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaincc

from .errors import InsufficientBits

FAIL_P = 1e-6
WEAK_P = 0.005

MIN_BATTERY_BITS = 1_000_000


@dataclass
class TestReport:
    __test__ = False  # the name collides with pytest's collector otherwise

    test_name: str
    statistic: float
    p_value: float
    verdict: str

    @staticmethod
    def from_p(name: str, statistic: float, p: float) -> "TestReport":
        p = min(max(p, 0.0), 1.0)
        verdict = "fail" if p < FAIL_P else ("weak" if p < WEAK_P else "pass")
        return TestReport(name, statistic, p, verdict)

    def line(self) -> str:
        return (
            f"{self.test_name:<20} statistic={self.statistic:14.4f} "
            f"p={self.p_value:.6g} {self.verdict.upper()}"
        )


def _take_bytes(source, nbytes: int) -> bytes:
    """Materialize nbytes from a bytes-like buffer or a generator object."""
    if isinstance(source, (bytes, bytearray, memoryview)):
        if len(source) < nbytes:
            raise InsufficientBits(f"buffer holds {len(source)} bytes, need {nbytes}")
        return bytes(source[:nbytes])
    return source.next_bytes(nbytes)


def run_battery(source, nbits: int) -> list:
    """Run all six tests over the first nbits of the source."""
    if nbits < MIN_BATTERY_BITS:
        raise InsufficientBits(f"battery needs >= {MIN_BATTERY_BITS} bits, got {nbits}")
    data = _take_bytes(source, (nbits + 7) // 8)
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")[:nbits]
    return [
        TestReport.from_p("monobit", *_monobit(bits)),
        TestReport.from_p("block_frequency", *_block_frequency(bits, 128)),
        TestReport.from_p("runs", *_runs(bits)),
        TestReport.from_p("serial_2bit", *_serial_2bit(bits)),
        TestReport.from_p("byte_chi_square", *_byte_chi_square(data, nbits)),
        TestReport.from_p("serial_corr_64", *_serial_corr_64(data, nbits)),
    ]


def _monobit(bits):
    n = bits.size
    s = abs(2 * int(bits.sum()) - n)
    return float(s) / math.sqrt(n), math.erfc(s / math.sqrt(2 * n))


def _block_frequency(bits, block):
    nblocks = bits.size // block
    props = bits[: nblocks * block].reshape(nblocks, block).mean(axis=1)
    chi2 = 4.0 * block * float(((props - 0.5) ** 2).sum())
    return chi2, float(gammaincc(nblocks / 2.0, chi2 / 2.0))


def _runs(bits):
    n = bits.size
    pi = float(bits.mean())
    if abs(pi - 0.5) >= 2.0 / math.sqrt(n):  # frequency precondition
        return float("inf"), 0.0
    v = int(np.count_nonzero(bits[1:] != bits[:-1])) + 1
    num = abs(v - 2.0 * n * pi * (1 - pi))
    den = 2.0 * math.sqrt(2.0 * n) * pi * (1 - pi)
    return num / den, math.erfc(num / den / math.sqrt(2))


def _serial_2bit(bits):
    """Overlapping serial test with pattern length 2 (cyclic extension)."""
    n = bits.size
    ext = np.concatenate([bits, bits[:1]])
    pairs = 2 * ext[:-1].astype(np.int64) + ext[1:]
    c2 = np.bincount(pairs, minlength=4).astype(np.float64)
    c1 = np.bincount(bits, minlength=2).astype(np.float64)
    psi2 = (4.0 / n) * float((c2**2).sum()) - n
    psi1 = (2.0 / n) * float((c1**2).sum()) - n
    delta = psi2 - psi1
    return delta, float(gammaincc(1.0, delta / 2.0))


def _byte_chi_square(data, nbits):
    nbytes = nbits // 8
    counts = np.bincount(np.frombuffer(data[:nbytes], dtype=np.uint8), minlength=256)
    expected = nbytes / 256.0
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    return chi2, float(gammaincc(255 / 2.0, chi2 / 2.0))


def _serial_corr_64(data, nbits):
    """Lag-1 serial correlation of consecutive 64-bit words (normal approx)."""
    nwords = nbits // 64
    w = np.frombuffer(data[: nwords * 8], dtype="<u8").astype(np.float64)
    n = w.size
    mean = w.mean()
    num = float(((w[:-1] - mean) * (w[1:] - mean)).sum())
    den = float(((w - mean) ** 2).sum())
    r = num / den if den else 0.0
    mu = -1.0 / (n - 1)
    sigma = math.sqrt(n * (n - 3.0) / ((n + 1.0) * (n - 1.0) ** 2))
    z = abs(r - mu) / sigma
    return r, math.erfc(z / math.sqrt(2))


def dump_raw(source, nbytes: int, sink) -> None:
    """Write exactly nbytes of raw stream output to a path or file object."""
    if hasattr(sink, "write"):
        _dump_to(source, nbytes, sink)
    else:
        with open(sink, "wb") as fh:
            _dump_to(source, nbytes, fh)


def _dump_to(source, nbytes, fh, chunk=1 << 20):
    left = nbytes
    while left > 0:
        take = min(chunk, left)
        fh.write(_take_bytes(source, take))
        left -= take


def scatter_indexes(source, count: int) -> np.ndarray:
    """3-bit indexes in [0, 7], LSB-first: the first bit consumed is the LSB."""
    if count < 1:
        raise ValueError("count must be >= 1")
    data = _take_bytes(source, (3 * count + 7) // 8)
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    bits = bits[: 3 * count].reshape(count, 3).astype(np.uint8)
    return bits[:, 0] | (bits[:, 1] << 1) | (bits[:, 2] << 2)


def write_scatter_csv(indexes, sink) -> None:
    """`position,index` rows for external plotting."""
    if hasattr(sink, "write"):
        _scatter_to(indexes, sink)
    else:
        with open(sink, "w") as fh:
            _scatter_to(indexes, fh)


def _scatter_to(indexes, fh):
    fh.write("position,index\n")
    for pos, ix in enumerate(indexes):
        fh.write(f"{pos},{ix}\n")
