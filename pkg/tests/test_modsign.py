import numpy as np
import pytest

from algebra.bforms import form_direct_sum, form_from_gram
from algebra.errors import RejectedInputError, SizeGuardError
from algebra.finmod import FinModule, ModuleHom, Submodule, hom_identity, hom_scalar, kernel
from algebra.modsign import half_set_sign, perm_sign_direct, perm_sign_fast, scalar_sign, sign_ratio
from algebra.zmod import jacobi, ring_new
from config import Config


def _random_automorphism(module, rng):
    while True:
        rows = tuple(
            tuple(int(rng.integers(0, c)) * (c // np.gcd(d, c)) for c in module.divisors)
            for d in module.divisors
        )
        hom = ModuleHom(module, module, rows)
        if kernel(hom).is_trivial:
            return hom


class TestDirectSign:
    def test_identity(self):
        module = FinModule(ring_new(3), (3, 3))
        assert perm_sign_direct(hom_identity(module)) == 1

    def test_transposition(self):
        module = FinModule(ring_new(3), (3,))
        assert perm_sign_direct(hom_scalar(module, 2)) == -1

    def test_quarter_turn(self):
        module = FinModule(ring_new(3), (3, 3))
        assert perm_sign_direct(ModuleHom(module, module, ((0, 1), (2, 0)))) == 1

    def test_singular_rejected(self):
        module = FinModule(ring_new(9), (9,))
        with pytest.raises(RejectedInputError):
            perm_sign_direct(hom_scalar(module, 3))

    def test_guard(self, monkeypatch):
        monkeypatch.setattr(Config, "MAX_DIRECT_SIGN", 5)
        module = FinModule(ring_new(3), (3, 3))
        with pytest.raises(SizeGuardError):
            perm_sign_direct(hom_identity(module))


class TestFastSign:
    def test_scalar_on_free_module(self):
        module = FinModule(ring_new(9), (9, 9))
        for s in ring_new(9).units():
            assert perm_sign_fast(hom_scalar(module, s)) == jacobi(s * s, 9) == 1

    def test_determinant_law(self):
        module = FinModule(ring_new(3), (3, 3))
        alpha = ModuleHom(module, module, ((2, 0), (0, 1)))
        assert perm_sign_fast(alpha) == -1 == jacobi(2, 3)

    @pytest.mark.parametrize(
        "m, divisors",
        [(3, (3, 3)), (9, (9, 9)), (9, (3, 9)), (9, (3, 3, 9)), (15, (15, 15)), (15, (3, 15)), (45, (9, 15))],
    )
    def test_matches_direct(self, m, divisors):
        module = FinModule(ring_new(m), divisors)
        rng = np.random.default_rng(m + len(divisors))
        for _ in range(30):
            alpha = _random_automorphism(module, rng)
            assert perm_sign_fast(alpha) == perm_sign_direct(alpha)

    def test_on_submodule(self):
        module = FinModule(ring_new(9), (9, 9))
        x = Submodule.generated_by(module, [(3, 0), (0, 1)])
        alpha = hom_scalar(module, 2)
        assert perm_sign_fast(alpha, x) == perm_sign_direct(alpha, x)

    @pytest.mark.parametrize("m, divisors", [(3, (3, 3)), (9, (9, 3)), (5, (5, 5)), (15, (15,)), (27, (27,)), (45, (9, 15))])
    def test_half_set_sign(self, m, divisors):
        module = FinModule(ring_new(m), divisors)
        rng = np.random.default_rng(m)
        for _ in range(10):
            alpha = _random_automorphism(module, rng)
            assert half_set_sign(alpha) == perm_sign_direct(alpha)


class TestScalarAndRatio:
    def test_scalar_sign_examples(self):
        ring = ring_new(3)
        line = Submodule.whole(FinModule(ring, (3,)))
        plane = Submodule.whole(FinModule(ring, (3, 3)))
        assert scalar_sign(line, 1) == 1
        assert scalar_sign(line, 2) == -1
        assert scalar_sign(plane, 2) == 1

    def test_scalar_sign_needs_unit(self):
        line = Submodule.whole(FinModule(ring_new(9), (9,)))
        with pytest.raises(RejectedInputError):
            scalar_sign(line, 3)

    def test_sign_ratio(self):
        module = FinModule(ring_new(3), (3,))
        q = form_from_gram(module, [[1]])
        assert sign_ratio(q, q) == 1
        assert sign_ratio(q, q.negated()) == -1

    def test_sign_ratio_blocks(self):
        module = FinModule(ring_new(5), (5,))
        q1, b1 = form_from_gram(module, [[1]]), form_from_gram(module, [[2]])
        q2, b2 = form_from_gram(module, [[3]]), form_from_gram(module, [[3]])
        whole = sign_ratio(form_direct_sum(q1, q2), form_direct_sum(b1, b2))
        assert whole == sign_ratio(q1, b1) * sign_ratio(q2, b2)
