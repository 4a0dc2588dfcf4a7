import pytest

from quantum_clifford import quadratic as qa
from quantum_clifford.exceptions import DegreeTooLarge
from quantum_clifford.modules import GrothendieckElement, direct_sum, dual, simple_module


@pytest.fixture
def plane(sl2_vector):
    return qa.symmetric_algebra(sl2_vector)


class TestQuadraticSquares:
    def test_square_dimensions(self, sl2_vector, sl3_vector):
        """Test dim S^2_q V and dim Lambda^2_q V for the vector representations."""
        assert qa.sym_square(sl2_vector).shape == (4, 3)
        assert qa.ext_square(sl2_vector).shape == (4, 1)
        assert qa.sym_square(sl3_vector).shape[1] == 6
        assert qa.ext_square(sl3_vector).shape[1] == 3

    def test_cubes(self, sl3_vector):
        """Test dim S^3_q V = 10 and dim Lambda^3_q V = 1 for sl3."""
        assert qa.symmetric_tensors(sl3_vector, 3).shape[1] == 10
        assert qa.antisymmetric_tensors(sl3_vector, 3).shape[1] == 1

    @pytest.mark.parametrize("n", [0, 1])
    def test_symmetric_tensors_need_two_slots(self, sl2_vector, n):
        """Test that symmetric tensors are defined from degree two on."""
        with pytest.raises(ValueError):
            qa.symmetric_tensors(sl2_vector, n)

    def test_power_weights(self, sl2_vector):
        """Test the weights of the product basis of V (x) V."""
        assert qa.power_weights(sl2_vector, 2) == [(2,), (0,), (0,), (-2,)]
        assert qa.power_weights(sl2_vector, 0) == [(0,)]

    def test_tensor_submodule(self, sl2_vector):
        """Test that S^2_q V is the three-dimensional simple module."""
        module = qa.tensor_submodule(sl2_vector, 2, qa.sym_square(sl2_vector))
        module.verify_relations()
        assert module.dim == 3


class TestQuantumPlane:
    def test_rewriting(self, plane):
        """Test x2 x1 = q^-1 x1 x2 in S_q(V) for sl2."""
        scalars = plane.module.scalars
        rules = plane.rewrite_to_ordered()
        assert len(rules) == 1
        assert rules[(1, 0)] == {(0, 1): scalars.q_power(-1)}

    def test_render(self, plane):
        """Test the human-readable relation."""
        rules = plane.rewrite_to_ordered()
        assert rules.render(plane.module.scalars) == ["x2*x1 = q^-1*x1*x2"]

    def test_relation_vectors_span_relations(self, plane):
        """Test that the rewriting rules span the relation space."""
        rules = plane.rewrite_to_ordered()
        assert qa.same_span(rules.relation_vectors(plane.module.domain), plane.relations)

    def test_exterior_rewriting(self, sl2_vector):
        """Test x1^2 = x2^2 = 0 and x2 x1 = -q x1 x2 in Lambda_q(V)."""
        algebra = qa.exterior_algebra(sl2_vector)
        scalars = sl2_vector.scalars
        rules = algebra.rewrite_to_ordered()
        assert rules[(0, 0)] == {}
        assert rules[(1, 1)] == {}
        assert rules[(1, 0)] == {(0, 1): -scalars.q_power(1)}


class TestHilbertSeries:
    def test_symmetric_sl2(self, plane):
        """Test h_n = n + 1 for the quantum plane."""
        series = plane.hilbert_series(4)
        assert series.dimensions == (1, 2, 3, 4, 5)
        assert str(plane.hilbert_series(2)) == "1 + 2z + 3z^2"

    def test_exterior_sl2(self, sl2_vector):
        """Test that Lambda_q(V) stops after degree two."""
        assert qa.exterior_algebra(sl2_vector).hilbert_series(3).dimensions == (1, 2, 1, 0)

    @pytest.mark.parametrize("kind", ["symmetric", "exterior"])
    def test_flat_sl3(self, sl3_vector, kind):
        """Test that S_q(V) and Lambda_q(V) are flat for the sl3 vector representation."""
        builder = qa.symmetric_algebra if kind == "symmetric" else qa.exterior_algebra
        report = builder(sl3_vector).is_flat(3)
        assert report.flat
        assert report.witness_degree is None
        assert report.quantum == report.classical
        assert report.pbw_certified

    def test_classical_dimension(self, plane, sl2_vector):
        """Test binomial dimensions of the classical algebras."""
        assert plane.classical_dimension(3) == 4
        assert qa.exterior_algebra(sl2_vector).classical_dimension(2) == 1

    def test_degree_guard(self, sl2_vector):
        """Test that a degree beyond the tensor guard is refused."""
        algebra = qa.symmetric_algebra(sl2_vector, max_tensor_dim=10)
        assert algebra.graded_dimension(3) == 4
        with pytest.raises(DegreeTooLarge):
            algebra.graded_dimension(4)


class TestNonFlat:
    @pytest.fixture
    def doubled(self, sl2_vector):
        return direct_sum(sl2_vector, sl2_vector)

    def test_cubic_deficit(self, doubled):
        """Test that S_q(V + V) has h3 = 16 against the classical 20."""
        algebra = qa.symmetric_algebra(doubled)
        assert algebra.hilbert_series(3)[3] == 16
        assert algebra.classical_dimension(3) == 20

    def test_extra_cubic_relation(self, doubled):
        """Test that x1^2 y2 - q x1 x2 y1 lies in the ideal while x1^3 does not."""
        algebra = qa.symmetric_algebra(doubled)
        q = doubled.scalars.q_power(1)
        witness = qa.monomial_vector({(0, 0, 3): 1, (0, 1, 2): -q}, doubled)
        assert algebra.in_ideal(witness)
        assert not algebra.in_ideal(qa.monomial_vector({(0, 0, 0): 1}, doubled))


class TestDuality:
    def test_quadratic_dual_of_symmetric(self, plane):
        """Test that S_q(V)^! has the relations of Lambda_q(V*)."""
        dual_algebra = plane.quadratic_dual()
        assert dual_algebra.kind == "exterior"
        assert qa.same_span(dual_algebra.relations, qa.sym_square(dual_algebra.module))

    def test_annihilator_dimension(self, sl3_vector):
        """Test dim R + dim R° = (dim V)^2."""
        relations = qa.ext_square(sl3_vector)
        assert qa.annihilator(relations, 3).shape[1] == 9 - relations.shape[1]

    def test_same_span(self, sl3_vector):
        """Test that different subspaces are told apart."""
        assert not qa.same_span(qa.sym_square(sl3_vector), qa.ext_square(sl3_vector))

    @pytest.mark.parametrize("side", ["sl2", "sl3"])
    def test_koszul_numerical_defect(self, sl2_vector, sl3_vector, side):
        """Test a3 - a2 b1 + a1 b2 - b3 = 0 for the vector representations."""
        module = sl2_vector if side == "sl2" else sl3_vector
        assert qa.koszul_numerical_defect(module) == 0


class TestDegreeThreeCollapse:
    @pytest.mark.parametrize("side", ["sl2", "sl3"])
    def test_collapse(self, sl2_vector, sl3_vector, side):
        """Test [S^3_q] - [Lambda^3_q] = [S^3] - [Lambda^3] and the dimension difference."""
        module = sl2_vector if side == "sl2" else sl3_vector
        report = qa.collapse_deficit_degree3(module)
        assert report.equal
        assert report.symmetric_dimension - report.exterior_dimension == module.dim**2

    def test_classical_cubes_sl2(self, sl2_vector):
        """Test S^3 V = V(3) and Lambda^3 V = 0 for sl2."""
        sym, ext = qa.classical_cubes(sl2_vector)
        assert sym == GrothendieckElement({(3,): 1})
        assert ext == GrothendieckElement()

    def test_low_cubes_sl2(self, sl2_vector):
        """Test the low cubes V(3) and 0 against the quantum cubes."""
        report = qa.low_cubes(sl2_vector)
        assert report.meet == GrothendieckElement({(1,): 1})
        assert report.symmetric_low == GrothendieckElement({(3,): 1})
        assert report.matches

    def test_dual_module_collapse(self, sl3_vector):
        """Test the collapse on V* for sl3."""
        assert qa.collapse_deficit_degree3(dual(sl3_vector)).equal

    def test_collapse_for_spin_three_halves(self, sl2):
        """Test dim S^3_q V - dim Lambda^3_q V = 16 for V = V(3) of sl2."""
        module = simple_module(sl2, (3,))
        report = qa.collapse_deficit_degree3(module)
        assert report.equal
        assert report.symmetric_dimension - report.exterior_dimension == 16
