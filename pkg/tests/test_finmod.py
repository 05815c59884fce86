from math import gcd, prod

import numpy as np
import pytest

from algebra.errors import DegenerateFormError, NoPreimageError, RejectedInputError, SizeGuardError
from algebra.bforms import form_from_gram
from algebra.finmod import (
    FinModule,
    ModuleHom,
    Submodule,
    hom_compose,
    hom_identity,
    hom_power,
    hom_scalar,
    hom_sub,
    image,
    kernel,
    perp,
    restrict_hom,
    section,
    smith_structure,
)
from algebra.spgroup import sp_random
from algebra.zmod import ring_new
from config import Config


@pytest.fixture
def z9():
    return ring_new(9)


class TestFinModule:
    def test_divisors_must_divide_m(self, z9):
        with pytest.raises(RejectedInputError):
            FinModule(z9, (3, 5))
        with pytest.raises(RejectedInputError):
            FinModule(z9, (1,))

    def test_order_rank_and_indexing(self, z9):
        module = FinModule(z9, (3, 9))
        assert module.order == 27 and module.rank == 2
        for idx in range(module.order):
            assert module.index(module.element(idx)) == idx
        assert list(module.elements())[5] == module.element(5)

    def test_element_order(self, z9):
        module = FinModule(z9, (3, 9))
        assert module.element_order((1, 3)) == 3
        assert module.element_order((0, 1)) == 9
        assert module.element_order((0, 0)) == 1

    def test_check_rejects_out_of_range(self, z9):
        module = FinModule(z9, (3, 9))
        with pytest.raises(RejectedInputError):
            module.check((3, 0))
        with pytest.raises(RejectedInputError):
            module.check((1,))

    def test_enumeration_guard(self, z9, monkeypatch):
        monkeypatch.setattr(Config, "MAX_ENUMERATION", 10)
        with pytest.raises(SizeGuardError):
            FinModule(z9, (9, 9)).element_array()


class TestHomomorphisms:
    def test_entries_must_be_well_defined(self, z9):
        small = FinModule(z9, (3,))
        big = FinModule(z9, (9,))
        with pytest.raises(RejectedInputError):
            ModuleHom(small, big, ((1,),))
        assert ModuleHom(small, big, ((3,),))((2,)) == (6,)
        assert ModuleHom(big, small, ((1,),))((5,)) == (2,)

    def test_compose_applies_first_argument_first(self, z9):
        module = FinModule(z9, (9, 9))
        f = ModuleHom(module, module, ((1, 1), (0, 1)))
        g = ModuleHom(module, module, ((2, 0), (0, 5)))
        v = (3, 4)
        assert hom_compose(f, g)(v) == g(f(v))

    def test_power(self, z9):
        module = FinModule(z9, (9,))
        h = hom_scalar(module, 2)
        assert hom_power(h, 6).matrix == ((1,),)
        assert hom_power(h, 0).matrix == hom_identity(module).matrix

    def test_kernel_and_image_orders(self, z9):
        module = FinModule(z9, (9, 9))
        h = ModuleHom(module, module, ((3, 0), (0, 1)))
        assert kernel(h).order == 3
        assert image(h).order == 27
        assert kernel(h).order * image(h).order == module.order

    def test_section(self, z9):
        module = FinModule(z9, (9, 9))
        h = ModuleHom(module, module, ((3, 0), (0, 1)))
        for x in [(3, 4), (6, 0), (0, 8)]:
            assert h(section(h, x)) == x
        with pytest.raises(NoPreimageError):
            section(h, (1, 0))

    def test_restrict_hom(self, z9):
        module = FinModule(z9, (9, 9))
        h = ModuleHom(module, module, ((2, 0), (0, 5)))
        x = Submodule.generated_by(module, [(3, 0)])
        restricted = restrict_hom(h, x)
        assert restricted.dom.divisors == (3,)
        assert x.element_from_coordinates(restricted((1,))) == h(x.basis[0])

    def test_restrict_hom_needs_invariance(self, z9):
        module = FinModule(z9, (9, 9))
        h = ModuleHom(module, module, ((0, 1), (1, 0)))
        x = Submodule.generated_by(module, [(1, 0)])
        with pytest.raises(RejectedInputError):
            restrict_hom(h, x)


class TestSubmodule:
    def test_generated_structure(self, z9):
        module = FinModule(z9, (9, 9))
        x = Submodule.generated_by(module, [(3, 0), (0, 3), (3, 3)])
        assert sorted(x.orders) == [3, 3]
        assert x.contains((6, 3)) and not x.contains((1, 0))

    def test_coordinates_roundtrip(self, z9):
        module = FinModule(z9, (3, 9))
        x = Submodule.generated_by(module, [(1, 3), (0, 6)])
        for v in x.elements():
            assert x.element_from_coordinates(x.coordinates(v)) == v
        assert len(set(x.elements())) == x.order

    def test_sum_and_intersection(self, z9):
        module = FinModule(z9, (9, 9))
        a = Submodule.generated_by(module, [(1, 0), (0, 3)])
        b = Submodule.generated_by(module, [(0, 1)])
        assert a.intersection(b).order == 3
        assert a.sum(b).equals(Submodule.whole(module))
        assert a.sum(b).order * a.intersection(b).order == a.order * b.order

    def test_zero_and_whole(self, z9):
        module = FinModule(z9, (3, 9))
        assert Submodule.zero(module).is_trivial
        assert Submodule.whole(module).order == 27
        assert list(Submodule.zero(module).elements()) == [(0, 0)]


class TestPerp:
    def test_perp_sizes(self, z9):
        module = FinModule(z9, (9, 9))
        omega = form_from_gram(module, [[0, 1], [-1, 0]])
        x = Submodule.generated_by(module, [(3, 0)])
        right = perp(x, omega, "right")
        assert right.order == 27
        assert all(omega.evaluate(x.basis[0], w) == 0 for w in right.elements())

    def test_left_and_right_differ_for_asymmetric_forms(self, z9):
        module = FinModule(z9, (9, 9))
        form = form_from_gram(module, [[0, 1], [0, 0]])
        x = Submodule.generated_by(module, [(1, 0)])
        assert not perp(x, form, "right", check=False).contains((0, 1))
        assert perp(x, form, "left", check=False).contains((0, 1))

    def test_degenerate_form_flagged(self, z9):
        module = FinModule(z9, (9, 9))
        form = form_from_gram(module, [[0, 3], [-3, 0]])
        with pytest.raises(DegenerateFormError):
            perp(Submodule.generated_by(module, [(1, 0)]), form)

    def test_unknown_side(self, z9):
        module = FinModule(z9, (9,))
        form = form_from_gram(module, [[1]])
        with pytest.raises(RejectedInputError):
            perp(Submodule.whole(module), form, "middle")


def _random_hom(rng, dom, cod):
    rows = []
    for d in dom.divisors:
        row = []
        for c in cod.divisors:
            step = c // gcd(d, c)
            row.append(int(rng.integers(0, c // step)) * step)
        rows.append(tuple(row))
    return ModuleHom(dom, cod, tuple(rows))


def _random_submodule(rng, module):
    count = int(rng.integers(1, 3))
    return Submodule.generated_by(module, [tuple(int(rng.integers(0, d)) for d in module.divisors) for _ in range(count)])


class TestStructureInvariants:
    @pytest.mark.parametrize(
        "m, divisors",
        [(3, (3, 3)), (9, (3, 9, 9)), (9, (9, 9)), (15, (5, 15)), (15, (3, 15))],
    )
    def test_kernel_times_image(self, m, divisors):
        rng = np.random.default_rng(m)
        ring = ring_new(m)
        module = FinModule(ring, divisors)
        for _ in range(20):
            h = _random_hom(rng, module, module)
            assert kernel(h).order * image(h).order == module.order
            other = FinModule(ring, divisors[:1])
            h = _random_hom(rng, module, other)
            assert kernel(h).order * image(h).order == module.order

    def test_smith_structure(self, z9):
        module = FinModule(z9, (9, 9))
        x = Submodule.generated_by(module, [(3, 6), (0, 3), (6, 0)])
        basis, orders = smith_structure(x)
        assert sorted(orders) == [3, 3]
        assert prod(orders) == x.order
        for b, e in zip(basis, orders):
            assert module.element_order(b) == e
        assert Submodule.generated_by(module, list(basis)).equals(x)


class TestPerpInvariants:
    def test_isotropic_line_is_its_own_perp(self, z3):
        line = Submodule.generated_by(z3.module, [(1, 0)])
        assert perp(line, z3.omega).equals(line)
        assert sorted(perp(line, z3.omega).elements()) == [(0, 0), (1, 0), (2, 0)]

    def test_double_perp(self, any_space):
        rng = np.random.default_rng(3)
        for _ in range(10):
            x = _random_submodule(rng, any_space.module)
            once = perp(x, any_space.omega)
            assert x.order * once.order == any_space.order
            assert perp(once, any_space.omega).equals(x)

    def test_perp_of_sum(self, any_space):
        rng = np.random.default_rng(4)
        omega = any_space.omega
        for _ in range(10):
            x = _random_submodule(rng, any_space.module)
            y = _random_submodule(rng, any_space.module)
            assert perp(x.sum(y), omega).equals(perp(x, omega).intersection(perp(y, omega)))

    def test_fixed_points_are_perp_of_displacement(self, any_space):
        rng = np.random.default_rng(5)
        identity = hom_identity(any_space.module)
        for _ in range(10):
            g = sp_random(any_space, rng=rng)
            one_minus = hom_sub(identity, g.hom)
            assert kernel(one_minus).equals(perp(image(one_minus), any_space.omega))
            assert kernel(one_minus).equals(perp(image(one_minus), any_space.omega, "left"))
