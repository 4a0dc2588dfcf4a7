from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from quantum_clifford import braiding as br
from quantum_clifford.exceptions import IndexOutOfRange
from quantum_clifford.modules import simple_module, tensor
from quantum_clifford.roots import build_root_system
from quantum_clifford.utils import linalg

SMALL_MODULES = [
    ("A", 1, (1,)),
    ("A", 1, (2,)),
    ("A", 1, (3,)),
    ("A", 2, (1, 0)),
    ("A", 2, (0, 1)),
]


def _module(root_type, rank, weight):
    return simple_module(build_root_system(root_type, rank), weight)


class TestBraidingMatrix:
    def test_quantum_plane(self, sl2_vector):
        """Test R_hat on V (x) V for sl2 in the basis v_i (x) v_j, u = q^(1/2)."""
        s = sl2_vector.scalars
        u = s.u
        expected = linalg.from_entries(
            {(0, 0): u, (1, 1): u - u**-3, (1, 2): u**-1, (2, 1): u**-1, (3, 3): u},
            (4, 4),
            s.domain,
        )
        assert linalg.equal(br.braiding(sl2_vector, sl2_vector).matrix, expected)

    @pytest.mark.parametrize("root_type, rank, weight", SMALL_MODULES)
    def test_braiding_is_module_map(self, root_type, rank, weight):
        """Test that R_hat intertwines the coproduct actions."""
        module = _module(root_type, rank, weight)
        assert br.braiding(module, module).is_module_map()

    def test_braiding_between_different_modules(self, sl2, sl2_vector):
        """Test R_hat: V(1) (x) V(2) -> V(2) (x) V(1) is a module map."""
        other = simple_module(sl2, (2,))
        assert br.braiding(sl2_vector, other).is_module_map()
        assert br.braiding(other, sl2_vector).is_module_map()

    def test_double_braiding_eigendata(self, sl2_vector):
        """Test the eigenvalues q and q^-3 of the double braiding on V (x) V."""
        data = br.double_braiding_eigendata(sl2_vector, sl2_vector)
        assert {(d.weight, d.exponent) for d in data} == {((2,), Fraction(1)), ((0,), Fraction(-3))}


class TestYangBaxter:
    @settings(max_examples=6, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.sampled_from(SMALL_MODULES))
    def test_yang_baxter(self, datum):
        """Test the braid relation of R_hat on V^(x3)."""
        assert br.yang_baxter_holds(_module(*datum))


class TestCommutor:
    def test_quantum_plane(self, sl2_vector):
        """Test sigma on V (x) V for sl2."""
        s = sl2_vector.scalars
        q = s.q_power(1)
        a = (q**2 - 1) / (q**2 + 1)
        b = 2 * q / (q**2 + 1)
        expected = linalg.from_entries(
            {(0, 0): s.one, (1, 1): a, (1, 2): b, (2, 1): b, (2, 2): -a, (3, 3): s.one},
            (4, 4),
            s.domain,
        )
        assert linalg.equal(br.commutor(sl2_vector, sl2_vector).matrix, expected)

    @pytest.mark.parametrize("root_type, rank, weight", SMALL_MODULES)
    def test_commutor_properties(self, root_type, rank, weight):
        """Test that sigma is an involutive module map with classical limit the flip."""
        module = _module(root_type, rank, weight)
        sigma = br.commutor(module, module)
        assert sigma.is_module_map()
        assert br.symmetry_holds(module, module)
        assert br.classical_limit_is_flip(module, module)
        assert br.correction_squares_to_inverse(module, module)

    def test_symmetry_for_distinct_modules(self, sl2, sl2_vector):
        """Test sigma_{WV} sigma_{VW} = id for V(1) and V(2)."""
        assert br.symmetry_holds(sl2_vector, simple_module(sl2, (2,)))

    def test_eigenvalues_are_signs(self, sl2_vector):
        """Test that sigma_VV has eigenvalue -1 once and +1 three times."""
        signs = br.eigenvalue_signs(sl2_vector, 2.0)
        assert signs == pytest.approx([-1.0, 1.0, 1.0, 1.0])

    def test_transpose_compatible(self, sl2_vector):
        """Test sigma^T = sigma on the duals, up to the flips."""
        assert br.transpose_compatible(sl2_vector, sl2_vector)

    def test_cactus_axiom(self, sl2_vector):
        """Test the hexagon-type axiom on V (x) V (x) V."""
        assert br.cactus_axiom_holds(sl2_vector, sl2_vector, sl2_vector)


class TestCactusAction:
    def test_cactus_relations_n3(self, sl2_vector):
        """Test the cactus relations on V^(x3)."""
        assert br.cactus_relations(sl2_vector, 3) == {
            "involutive": True,
            "disjoint": True,
            "nested": True,
        }

    @pytest.mark.slow
    def test_cactus_relations_n4(self, sl2_vector):
        """Test the cactus relations on V^(x4), where disjoint generators appear."""
        assert all(br.cactus_relations(sl2_vector, 4).values())

    def test_adjacent_generator_is_commutor(self, sl2_vector):
        """Test s_{1,2} = sigma_VV (x) 1 on V^(x3)."""
        s12 = br.cactus_generator(sl2_vector, 3, 1, 2)
        expected = linalg.kron(
            br.commutor(sl2_vector, sl2_vector).matrix, linalg.identity(2, sl2_vector.domain)
        )
        assert linalg.equal(s12.matrix, expected)

    @pytest.mark.parametrize("p, r, t", [(2, 1, 3), (1, 3, 3), (0, 1, 2), (1, 2, 4)])
    def test_invalid_interval(self, sl2_vector, p, r, t):
        """Test that slots must satisfy 1 <= p <= r < t <= n."""
        with pytest.raises(IndexOutOfRange):
            br.cactus_sigma(sl2_vector, 3, p, r, t)

    def test_permutation_action_at_q_one(self, sl2_vector):
        """Test that the longest cactus generator specializes to the reversal."""
        s13 = br.cactus_generator(sl2_vector, 3, 1, 3)
        reversal = br.permutation_action(sl2_vector, 3, (3, 2, 1))
        scalars = sl2_vector.scalars
        at_one = scalars.specialize_matrix(s13.matrix, 1)
        assert at_one == pytest.approx(scalars.specialize_matrix(reversal, 1))

    def test_source_is_tensor_power(self, sl2_vector):
        """Test that generators act on the n-fold tensor power."""
        s23 = br.cactus_generator(sl2_vector, 3, 2, 3)
        assert s23.source.dim == 8
        assert s23.source.weights == tensor(tensor(sl2_vector, sl2_vector), sl2_vector).weights
