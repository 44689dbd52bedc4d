import itertools
from fractions import Fraction

import numpy as np
import pytest

from grasspack import certify
from grasspack.clifford import (
    ExactMatrix,
    ExactSubspace,
    ExtraspecialElement,
    bilin_form,
    clifford_order,
    exact_min_chordal_sq,
    exact_spectrum,
    extraspecial_elements,
    frame_x,
    frame_y,
    generated_order,
    group_generators,
    hadamard,
    identify_extraspecial,
    identity,
    orbit,
    orthoplex_family_count,
    quad_form,
    seventy_exact,
    singular_subspace_count,
    theorem3_count,
    theorem3_exact,
    theorem3_packing,
    x_gate,
    y_gate,
)
from grasspack.core import min_distance, principal_angles
from grasspack.errors import BadParams, OrbitOverflow, TooLarge


def dot(a, b):
    return bin(a & b).count("1") & 1


class TestGates:
    def test_x_zero_is_identity(self):
        assert x_gate(2, 0) == identity(4)

    def test_involutions(self):
        for a in range(4):
            assert x_gate(2, a) @ x_gate(2, a) == identity(4)
            assert y_gate(2, a) @ y_gate(2, a) == identity(4)

    def test_commutation(self):
        for a, b in itertools.product(range(4), repeat=2):
            lhs = y_gate(2, b) @ x_gate(2, a)
            rhs = x_gate(2, a) @ y_gate(2, b)
            assert lhs == (-rhs if dot(a, b) else rhs)

    def test_product_rule_exhaustive(self):
        els = extraspecial_elements(2)
        assert len(els) == 32
        for g, h in itertools.product(els, repeat=2):
            assert (g * h).matrix() == g.matrix() @ h.matrix()

    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_generators_orthogonal(self, i):
        for _, g in group_generators(i):
            assert g.is_orthogonal()

    @pytest.mark.parametrize("i", [1, 2, 3, 4])
    def test_hadamard_square(self, i):
        H = hadamard(i)
        assert H.T == H and H @ H == identity(1 << i)

    def test_hadamard_swaps_x_and_y(self):
        H = hadamard(2)
        for a in range(4):
            img = identify_extraspecial(2, H @ x_gate(2, a) @ H)
            assert img is not None and (img.a, img.b) == (0, a)

    def test_normalises_e_exhaustive_i2(self):
        for _, g in group_generators(2):
            for el in extraspecial_elements(2):
                assert identify_extraspecial(2, g @ el.matrix() @ g.T) is not None

    def test_normalises_e_sampled_i3(self):
        rng = np.random.default_rng(0)
        els = extraspecial_elements(3)
        for _, g in group_generators(3):
            for k in rng.choice(len(els), 16, replace=False):
                assert identify_extraspecial(3, g @ els[k].matrix() @ g.T) is not None

    def test_non_member(self):
        assert identify_extraspecial(2, hadamard(2)) is None


class TestForms:
    def test_quad_on_x(self):
        assert all(quad_form(2, a, 0) == 0 for a in range(4))

    def test_alternating(self):
        for a, b in itertools.product(range(4), repeat=2):
            assert bilin_form(2, (a, b), (a, b)) == 0

    def test_polarisation_exhaustive(self):
        vecs = list(itertools.product(range(4), repeat=2))
        for (a, b), (c, d) in itertools.product(vecs, repeat=2):
            q = quad_form(2, a ^ c, b ^ d) ^ quad_form(2, a, b) ^ quad_form(2, c, d)
            assert bilin_form(2, (a, b), (c, d)) == q


class TestCounts:
    def test_orders(self):
        assert clifford_order(3) == 5160960
        assert clifford_order(2) == 2304
        assert clifford_order(1) == 16

    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_generated_order(self, i):
        assert generated_order(i) == clifford_order(i)

    def test_theorem_counts(self):
        assert theorem3_count(2, 1) == 18
        assert theorem3_count(3, 2) == 70
        assert theorem3_count(3, 0) == 240

    @pytest.mark.parametrize("i", range(2, 7))
    def test_orthoplex_family(self, i):
        assert orthoplex_family_count(i) == theorem3_count(i, i - 1)

    @pytest.mark.parametrize("i,d,expect", [(3, 1, 35), (2, 1, 9), (3, 3, 30)])
    def test_singular_counts(self, i, d, expect):
        assert singular_subspace_count(i, d) == expect

    def test_bad_params(self):
        with pytest.raises(BadParams):
            theorem3_count(2, 2)
        with pytest.raises(TooLarge):
            theorem3_exact(4, 1)


class TestOrbits:
    @pytest.mark.parametrize("i,k,d2", [(1, 0, Fraction(1, 2)), (2, 0, Fraction(1, 2)), (2, 1, 1), (3, 1, 1)])
    def test_sizes_and_exact_minimum(self, i, k, d2):
        spaces = theorem3_exact(i, k)
        assert len(spaces) == theorem3_count(i, k)
        assert exact_min_chordal_sq(spaces) == d2 == Fraction(2 ** k, 2)

    def test_lines_at_quarter_turn(self):
        pk = theorem3_packing(2, 0)
        d, _ = min_distance(pk, "maxangle")
        assert d == pytest.approx(np.pi / 4, abs=1e-12)

    def test_orbit_closure(self):
        spaces = theorem3_exact(2, 1)
        keys = {s.key for s in spaces}
        for _, g in group_generators(2):
            assert {s.image(g).key for s in spaces} == keys

    def test_planes_certified(self):
        assert certify(theorem3_packing(2, 1), 1e-9).applicable == "orthoplex"
        assert certify(theorem3_packing(2, 1), 1e-9).is_attained

    def test_overflow(self):
        with pytest.raises(OrbitOverflow):
            orbit([ExactSubspace.coordinate(4, [0])], [g for _, g in group_generators(2)], cap=5)

    def test_frames_exchanged_by_h(self):
        i = 2
        H, X, Y = hadamard(i), frame_x(i), frame_y(i)
        assert H @ Y == X
        cols = X.to_float()
        for v in range(4):
            expect = np.array([(-1) ** dot(u, v) for u in range(4)]) / 2.0
            assert np.allclose(cols[:, v], expect)

    def test_projection_validation(self):
        with pytest.raises(ValueError):
            ExactSubspace(ExactMatrix([[1, 1], [0, 0]]))


@pytest.fixture(scope="module")
def spaces():
    return seventy_exact()


class TestSeventy:
    def test_size_and_minimum(self, spaces):
        assert len(spaces) == 70
        assert exact_min_chordal_sq(spaces) == 2

    def test_angle_multisets(self, spaces):
        q, h = np.pi / 4, np.pi / 2
        allowed = [np.array(x) for x in ([0, 0, h, h], [q, q, q, q], [h, h, h, h])]
        subs = [s.to_subspace() for s in spaces[:20]]
        for a in range(len(subs)):
            for b in range(a + 1, len(subs)):
                ang = principal_angles(subs[a], subs[b]).angles
                assert any(np.abs(ang - x).max() <= 1e-9 for x in allowed)

    def test_elementary_extraspecial(self):
        g = ExtraspecialElement(3, 5, 3, 1)
        assert (g * g).matrix() == (identity(8) if dot(5, 3) == 0 else -identity(8))
