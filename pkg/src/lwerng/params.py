"""Parameter sets: ring/lattice constants, their validity conditions and derived values.

The default set is q = 8380417, m = n = 4, degree-256 polynomials with 32-bit
coefficient words.  The 8192 serialized bits of one polynomial split into
1024 register-fill bits (4 registers x 256 bits) and 7168 whitening-mask bits.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import InconsistentLayout, InvalidModulus


@dataclass(frozen=True)
class Params:
    """Ring, sampling and register-layout constants.

    Attributes:
        q: coefficient modulus; must satisfy q odd and q = 1 (mod 2*degree).
        n: secret vector dimension.
        m: sample vector dimension.
        degree: polynomial degree (power of two).
        word_bits: serialized width of one coefficient.
        eta: bound of the secret/error coefficients (support {-eta..eta}).
        lfsr_count: number of shift registers (the machine is defined for 4).
        lfsr_bits: width of one register.
        state_bits: bits of the hidden seed consumed by the registers.
        mask_bits: bits of the hidden seed used as the whitening mask.
    """

    q: int = 8380417
    n: int = 4
    m: int = 4
    degree: int = 256
    word_bits: int = 32
    eta: int = 1
    lfsr_count: int = 4
    lfsr_bits: int = 256
    state_bits: int = 1024
    mask_bits: int = 7168

    @cached_property
    def k(self) -> int:
        """Integer k with q = k * degree + 1."""
        return (self.q - 1) // self.degree

    @cached_property
    def psi(self) -> int:
        """Smallest primitive 2*degree-th root of unity mod q.

        Defined as the smallest x in [2, q) with x^degree = -1 (mod q),
        which forces x^(2*degree) = 1.  Derivation is a linear scan, cheap
        for prime moduli where a root exists.
        """
        return _smallest_negacyclic_root(self.q, self.degree)


@lru_cache(maxsize=None)
def _smallest_negacyclic_root(q: int, degree: int) -> int:
    for x in range(2, q):
        if pow(x, degree, q) == q - 1:
            return x
    raise InvalidModulus(f"no element of order {2 * degree} mod {q}")


@lru_cache(maxsize=1)
def default_params() -> Params:
    p = Params()
    validate(p)
    return p


def validate(p: Params) -> None:
    """Check every parameter invariant; raise on the first violation.

    Raises:
        InvalidModulus: q fails oddness, q = 1 (mod 2*degree), the word-width
            bound q < 2^word_bits, or no 2*degree-th root exists.
        InconsistentLayout: register/mask/word bit budgets do not add up.
    """
    if p.q < 2 or p.q % 2 == 0:
        raise InvalidModulus(f"q={p.q} must be an odd integer >= 3")
    if p.degree < 2 or p.degree & (p.degree - 1):
        raise InvalidModulus(f"degree={p.degree} must be a power of two >= 2")
    if (p.q - 1) % (2 * p.degree) != 0:
        raise InvalidModulus(f"q={p.q} is not 1 mod {2 * p.degree}")
    if p.q >= 1 << p.word_bits:
        raise InvalidModulus(f"q={p.q} does not fit a {p.word_bits}-bit word")
    if p.k * p.degree + 1 != p.q:
        raise InvalidModulus("k * degree + 1 != q")
    # existence of the root (guaranteed for prime q, not for composite)
    psi = p.psi
    if pow(psi, p.degree, p.q) != p.q - 1 or pow(psi, 2 * p.degree, p.q) != 1:
        raise InvalidModulus(f"derived root {psi} is not a primitive 2*degree-th root")
    if p.n < 1 or p.m < 1 or p.eta < 1:
        raise InconsistentLayout("n, m and eta must be positive")
    if p.lfsr_count * p.lfsr_bits != p.state_bits:
        raise InconsistentLayout(
            f"{p.lfsr_count} x {p.lfsr_bits} != state_bits={p.state_bits}"
        )
    if p.state_bits + p.mask_bits != p.degree * p.word_bits:
        raise InconsistentLayout(
            f"state {p.state_bits} + mask {p.mask_bits} != "
            f"{p.degree * p.word_bits} serialized bits"
        )
