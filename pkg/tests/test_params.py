import pytest

from lwerng.errors import InconsistentLayout, InvalidModulus
from lwerng.params import Params, default_params, validate


def test_default_constants(params):
    assert (params.q, params.n, params.m, params.degree) == (8380417, 4, 4, 256)
    assert params.word_bits == 32 and params.eta == 1


def test_k_matches_integer_division(params):
    # independent route: plain integer division of q-1 by the degree
    assert (params.q - 1) // 256 == 32736
    assert params.k == 32736
    assert params.k * params.degree + 1 == params.q


def _scan_smallest_root(q, degree):
    for x in range(2, q):
        if pow(x, degree, q) == q - 1 and pow(x, 2 * degree, q) == 1:
            return x
    return None


@pytest.mark.parametrize("q,degree", [(8380417, 256), (257, 4), (17, 4), (7681, 256)])
def test_psi_is_smallest_negacyclic_root(q, degree):
    expected = _scan_smallest_root(q, degree)
    p = Params(q=q, degree=degree, lfsr_bits=degree, state_bits=4 * degree,
               mask_bits=degree * 32 - 4 * degree)
    assert p.psi == expected
    assert pow(p.psi, degree, q) == q - 1
    assert pow(p.psi, 2 * degree, q) == 1


def test_defaults_validate(params):
    validate(params)


def test_even_modulus_rejected():
    with pytest.raises(InvalidModulus):
        validate(Params(q=8380416))


def test_modulus_not_1_mod_2n_rejected():
    # 3329 - 1 = 3328 = 256 (mod 512), so no degree-256 negacyclic transform
    assert 3328 % 512 != 0
    with pytest.raises(InvalidModulus):
        validate(Params(q=3329))


def test_modulus_7681_is_accepted():
    # 7680 = 15 * 512, i.e. 7681 = 1 (mod 512): a valid transform modulus
    assert 7680 % 512 == 0
    validate(Params(q=7681))


def test_oversized_modulus_rejected():
    with pytest.raises(InvalidModulus):
        validate(Params(q=(1 << 33) + 513 * 512 + 1 - ((1 << 33) % 512)))


def test_word_width_bound():
    # q just over the 8-bit word bound with otherwise consistent layout
    with pytest.raises(InvalidModulus):
        validate(Params(q=257, degree=4, word_bits=8, lfsr_bits=8,
                        state_bits=32, mask_bits=0))


def test_layout_identities_enforced():
    with pytest.raises(InconsistentLayout):
        validate(Params(state_bits=2048))  # 4 x 256 != 2048
    with pytest.raises(InconsistentLayout):
        validate(Params(mask_bits=7167))  # 1024 + 7167 != 8192


def test_budget_identity(params):
    assert params.degree * params.word_bits == 8192
    assert params.state_bits + params.mask_bits == 8192
    assert params.lfsr_count * params.lfsr_bits == params.state_bits


def test_default_params_cached():
    assert default_params() is default_params()
