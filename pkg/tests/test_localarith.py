import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from dihedral_parity.localarith import (
    TWO_ADIC_SQUARE_CLASS_REPS,
    RamifiedQuadratic,
    UnramifiedQuadratic,
    is_local_square,
    is_prime,
    is_square_in_quadratic_ext,
    is_squarefree,
    kronecker_symbol,
    local_square_class,
    padic_valuation,
    prime_factors,
    quadratic_character_type,
    smallest_nonresidue,
    squarefree_part,
    unramified_generator,
)

ODD_PRIMES_50 = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(-3, 50):
        assert is_prime(n) == (n in primes)


@given(st.integers(min_value=-10_000, max_value=10_000).filter(lambda n: n != 0))
def test_squarefree_part_properties(n):
    sf = squarefree_part(n)
    assert is_squarefree(sf)
    q, r = divmod(n, sf)
    assert r == 0
    assert q > 0 and math.isqrt(q) ** 2 == q
    assert (n > 0) == (sf > 0)


@given(st.fractions(min_value=-1000, max_value=1000).filter(lambda x: x != 0),
       st.sampled_from([2, 3, 5, 7, 11]))
def test_padic_valuation_multiplicative(x, ell):
    assert padic_valuation(x * x, ell) == 2 * padic_valuation(x, ell)
    assert padic_valuation(x * ell, ell) == padic_valuation(x, ell) + 1


def test_kronecker_vs_euler():
    for ell in ODD_PRIMES_50:
        residues = {(x * x) % ell for x in range(1, ell)}
        for a in range(-60, 60):
            expected = 0 if a % ell == 0 else (1 if a % ell in residues else -1)
            assert kronecker_symbol(a, ell) == expected, (a, ell)


def test_smallest_nonresidue():
    for ell in ODD_PRIMES_50:
        r = smallest_nonresidue(ell)
        residues = {(x * x) % ell for x in range(1, ell)}
        assert r not in residues
        assert all(s in residues for s in range(1, r))


def test_local_square_class_odd_vs_enumeration():
    """Exhaustive oracle: squares in Q_ell decided modulo ell^3 for v <= 2."""
    for ell in ODD_PRIMES_50:
        for unit in range(1, 201):
            if unit % ell == 0:
                continue
            for v in (0, 1, 2):
                for sign in (1, -1):
                    z = sign * unit * ell ** v
                    verdict = local_square_class(z, ell)
                    assert verdict.is_square == oracles.odd_local_square(z, ell)
                    assert verdict.valuation_parity == v % 2
                    assert is_local_square(z, ell) == verdict.is_square


def test_two_adic_square_classes():
    # the eight classes: units are squares iff = 1 mod 8
    for z in TWO_ADIC_SQUARE_CLASS_REPS:
        assert is_local_square(z, 2) == (z == 1)
    # every odd integer lands in the class of its residue mod 8 (sign included)
    for unit in range(-199, 200, 2):
        expected = unit % 8 == 1
        assert is_local_square(unit, 2) == expected
        assert is_local_square(4 * unit, 2) == expected
        assert not is_local_square(2 * unit, 2)


def test_local_square_class_rational_inputs():
    assert is_local_square(Fraction(1, 9), 3)
    assert not is_local_square(Fraction(1, 3), 3)
    assert is_local_square(Fraction(49, 4), 2)


def test_unramified_ext_vs_F49_squares():
    """z a unit is a square in the unramified quadratic extension of Q_7 iff
    its residue is a square in F_49; exhaustive check of field squares."""
    squares = oracles.gf_squares(7)
    ext = UnramifiedQuadratic()
    for unit in range(1, 201):
        if unit % 7 == 0:
            continue
        for sign in (1, -1):
            z = sign * unit
            assert is_square_in_quadratic_ext(z, 7, ext) == (
                ((z % 7), 0) in squares), z
    # odd valuation never becomes a square in an unramified extension
    for unit in (1, 3, -1, 10):
        if unit % 7:
            assert not is_square_in_quadratic_ext(7 * unit, 7, ext)


def test_ramified_ext_square_rule():
    # in Q_ell(sqrt(ell u)): z is a square iff z or z*(ell u) is one in Q_ell
    ext = RamifiedQuadratic(7)  # Q_7(sqrt 7)
    assert is_square_in_quadratic_ext(7, 7, ext)
    assert is_square_in_quadratic_ext(7 * 2, 7, ext)  # 2 is a square mod 7
    assert not is_square_in_quadratic_ext(7 * 3, 7, ext)  # 3 is not


def test_quadratic_character_type_over_Q_ell():
    g = unramified_generator(7)
    assert quadratic_character_type(2, 7, None) == "trivial"  # 2 = 3^2 mod 7
    assert quadratic_character_type(g, 7, None) == "unramified"
    assert quadratic_character_type(7, 7, None) == "ramified"
    assert quadratic_character_type(5, 2, None) == "unramified"
    assert quadratic_character_type(2, 2, None) == "ramified"


def test_quadratic_character_type_over_inert_Kv():
    # over the unramified quadratic extension, every rational nonsquare of
    # even valuation that stays nonsquare generates the ramified quadratic
    ext = UnramifiedQuadratic()
    assert quadratic_character_type(unramified_generator(7), 7, ext) == "trivial"
    assert quadratic_character_type(7, 7, ext) == "ramified"


def test_prime_factors():
    assert prime_factors(-161051) == [11]
    assert prime_factors(432) == [2, 3]
    assert prime_factors(1) == []


@pytest.mark.parametrize("bad", [0])
def test_padic_valuation_zero_rejected(bad):
    with pytest.raises(ValueError):
        padic_valuation(bad, 5)
