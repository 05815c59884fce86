import cmath

import numpy as np
import pytest

from algebra.errors import RejectedInputError
from algebra.zmod import (
    AdditiveCharacter,
    char_eval,
    crt_idempotents,
    is_square_unit,
    jacobi,
    p_adic_valuation,
    ring_new,
    ring_sign,
    ring_sign_by_cycles,
)


class TestRing:
    def test_half_inverts_two(self):
        for m in (3, 5, 9, 15, 27, 99):
            ring = ring_new(m)
            assert (2 * ring.half) % m == 1

    @pytest.mark.parametrize("m", [0, 1, 2, 4, 10, -3])
    def test_rejects_even_or_small(self, m):
        with pytest.raises(RejectedInputError):
            ring_new(m)

    def test_rejects_non_integer(self):
        with pytest.raises(RejectedInputError):
            ring_new(3.0)

    def test_units_and_inverse(self):
        ring = ring_new(15)
        assert ring.units() == [1, 2, 4, 7, 8, 11, 13, 14]
        assert (7 * ring.inverse(7)) % 15 == 1
        with pytest.raises(RejectedInputError):
            ring.inverse(5)

    def test_primes(self):
        assert ring_new(45).primes() == [3, 5]


class TestCharacter:
    def test_values(self):
        chi = AdditiveCharacter(ring_new(3))
        assert abs(char_eval(chi, 1) - cmath.exp(2j * cmath.pi / 3)) < 1e-12
        assert abs(chi(0) - 1) < 1e-12

    def test_homomorphism(self):
        chi = AdditiveCharacter(ring_new(9), 4)
        for r in range(9):
            for t in range(9):
                assert abs(chi(r + t) - chi(r) * chi(t)) < 1e-12

    def test_primitive(self):
        ring = ring_new(15)
        chi = AdditiveCharacter(ring, 2)
        for d in (3, 5):
            assert any(abs(chi(r) - 1) > 1e-9 for r in range(0, 15, d))

    def test_non_unit_twist_rejected(self):
        with pytest.raises(RejectedInputError):
            AdditiveCharacter(ring_new(9), 3)

    def test_vectorised_values_match(self):
        chi = AdditiveCharacter(ring_new(5), 2)
        values = chi.values(np.arange(5))
        assert np.allclose(values, [chi(r) for r in range(5)])

    def test_scaled_and_squared(self):
        chi = AdditiveCharacter(ring_new(7), 3)
        assert chi.scaled(2).s == 6
        assert chi.squared() == chi.scaled(2)


class TestSigns:
    def test_jacobi_examples(self):
        assert jacobi(2, 3) == -1
        assert jacobi(2, 9) == 1
        assert jacobi(3, 15) == 0
        assert jacobi(-1, 5) == 1
        assert jacobi(5, 1) == 1

    def test_jacobi_rejects_even_modulus(self):
        with pytest.raises(RejectedInputError):
            jacobi(1, 4)

    @pytest.mark.parametrize("m", [3, 5, 7, 9, 15, 21, 25, 27, 45, 99])
    def test_zolotarev(self, m):
        ring = ring_new(m)
        for a in ring.units():
            assert ring_sign(ring, a) == ring_sign_by_cycles(ring, a) == jacobi(a, m)

    def test_ring_sign_needs_unit(self):
        with pytest.raises(RejectedInputError):
            ring_sign(ring_new(9), 6)

    def test_square_units(self):
        ring = ring_new(9)
        squares = {(x * x) % 9 for x in ring.units()}
        for s in ring.units():
            assert is_square_unit(ring, s) == (s in squares)

    def test_square_units_composite(self):
        ring = ring_new(15)
        squares = {(x * x) % 15 for x in ring.units()}
        assert [s for s in ring.units() if is_square_unit(ring, s)] == sorted(squares)


def test_p_adic_valuation():
    assert p_adic_valuation(18, 3, 5) == 2
    assert p_adic_valuation(0, 3, 4) == 4
    assert p_adic_valuation(7, 3, 4) == 0


def test_crt_idempotents():
    ring = ring_new(45)
    e = crt_idempotents(ring)
    assert e[3] % 9 == 1 and e[3] % 5 == 0
    assert e[5] % 5 == 1 and e[5] % 9 == 0
    assert (e[3] + e[5]) % 45 == 1
