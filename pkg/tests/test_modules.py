import pytest

from quantum_clifford.exceptions import (
    ContextMismatch,
    NoInvariantPairing,
    PairingNotUnique,
    ProbeMismatch,
    UnreachableWeight,
    UnsupportedType,
    VerificationFailed,
)
from quantum_clifford.modules import (
    GrothendieckElement,
    adjoint_module,
    cyclic_span,
    decompose,
    direct_sum,
    dual,
    evaluation_pairing,
    fundamental_module,
    grothendieck_product,
    highest_weight_vectors,
    intertwiners,
    invariant_inner_product,
    invariant_pairing,
    is_invariant_inner_product,
    is_invariant_pairing,
    is_positive_definite,
    isotypic_components,
    probe_family,
    probe_solve,
    seed_module,
    simple_module,
    submodule,
    summands,
    tensor,
    tensor_power,
)
from quantum_clifford.roots import build_root_system
from quantum_clifford.utils import linalg


class TestSimpleModules:
    @pytest.mark.parametrize(
        "root_type, rank, weight, dimension",
        [
            ("A", 1, (3,), 4),
            ("A", 2, (1, 1), 8),
            ("A", 2, (2, 0), 6),
            ("A", 3, (0, 1, 0), 6),
            ("B", 2, (1, 0), 5),
            ("C", 2, (0, 1), 5),
            ("C", 2, (1, 0), 4),
            ("D", 4, (0, 1, 0, 0), 28),
        ],
    )
    def test_dimension_and_relations(self, root_type, rank, weight, dimension):
        """Test that V(lambda) has the Weyl dimension and satisfies U_q."""
        rs = build_root_system(root_type, rank)
        module = simple_module(rs, weight)
        assert module.dim == dimension
        assert decompose(module) == GrothendieckElement({weight: 1})
        module.verify_relations()

    def test_trivial_weight(self, sl3):
        """Test V(0) is one-dimensional."""
        module = simple_module(sl3, (0, 0))
        assert module.dim == 1
        assert module.weights == ((0, 0),)

    def test_adjoint_module(self, sl3):
        """Test the adjoint module of sl3 and its two-dimensional zero weight space."""
        module = adjoint_module(sl3)
        assert module.dim == 8
        assert len(module.weight_spaces[(0, 0)]) == 2

    def test_non_dominant_weight(self, sl3):
        """Test that V(lambda) needs a dominant lambda."""
        with pytest.raises(ValueError):
            simple_module(sl3, (1, -1))

    @pytest.mark.parametrize("root_type, rank, node", [("B", 3, 2), ("D", 4, 2), ("D", 4, 3)])
    def test_spin_weights_are_unreachable(self, root_type, rank, node):
        """Test that spin fundamental weights are reported, not guessed."""
        rs = build_root_system(root_type, rank)
        with pytest.raises(UnreachableWeight):
            fundamental_module(rs, rs.scalars(), node)

    def test_exceptional_seed(self):
        """Test that exceptional types have no vector representation seed."""
        with pytest.raises(UnsupportedType):
            seed_module(build_root_system("G", 2))


class TestConstructions:
    def test_tensor_square_decomposition(self, sl3_vector):
        """Test V (x) V = V(2 w1) + V(w2) for sl3."""
        square = tensor(sl3_vector, sl3_vector)
        square.verify_relations()
        assert decompose(square) == GrothendieckElement({(2, 0): 1, (0, 1): 1})

    def test_tensor_power(self, sl2_vector):
        """Test V^(x3) = V(3) + 2 V(1) for sl2."""
        cube = tensor_power(sl2_vector, 3)
        assert cube.dim == 8
        assert decompose(cube) == GrothendieckElement({(3,): 1, (1,): 2})
        assert tensor_power(sl2_vector, 0).dim == 1

    def test_direct_sum(self, sl2_vector):
        """Test the basis order and the class of V (+) V."""
        doubled = direct_sum(sl2_vector, sl2_vector)
        assert doubled.weights == ((1,), (-1,), (1,), (-1,))
        assert decompose(doubled) == GrothendieckElement({(1,): 2})

    def test_context_mismatch(self, sl2_vector, sl3_vector):
        """Test that modules over different algebras cannot be tensored."""
        with pytest.raises(ContextMismatch):
            tensor(sl2_vector, sl3_vector)

    @pytest.mark.parametrize("side", ["left", "right"])
    def test_dual(self, sl3_vector, side):
        """Test that both duals are modules with negated weights."""
        other = dual(sl3_vector, side)
        other.verify_relations()
        assert other.weights == tuple(sl3_vector.root_system.negate(w) for w in sl3_vector.weights)
        assert decompose(other) == GrothendieckElement({(0, 1): 1})

    def test_submodule_must_be_invariant(self, sl2_vector):
        """Test that v0 (x) v1 alone does not span a submodule."""
        square = tensor(sl2_vector, sl2_vector)
        basis = linalg.from_columns([{1: sl2_vector.scalars.one}], 4, sl2_vector.domain)
        with pytest.raises(VerificationFailed):
            submodule(square, basis)

    def test_cyclic_span_of_lowest_vector(self, sl2_vector):
        """Test that v1 (x) v1 generates the three-dimensional summand."""
        square = tensor(sl2_vector, sl2_vector)
        basis = cyclic_span(square, [{3: sl2_vector.scalars.one}])
        assert basis.shape == (4, 3)
        submodule(square, basis).verify_relations()

    def test_highest_weight_vectors(self, sl2_vector):
        """Test one highest weight vector of weight 0 in V (x) V."""
        square = tensor(sl2_vector, sl2_vector)
        assert highest_weight_vectors(square, (0,)).shape == (4, 1)
        assert highest_weight_vectors(square, (2,)).shape == (4, 1)
        assert highest_weight_vectors(square, (4,)).shape == (4, 0)

    def test_summands_span(self, sl3_vector):
        """Test that isotypic components and summands cover V (x) V."""
        square = tensor(sl3_vector, sl3_vector)
        components = isotypic_components(square)
        assert {w: m.shape[1] for w, m in components.items()} == {(2, 0): 6, (0, 1): 3}
        assert sum(basis.shape[1] for _, basis in summands(square)) == 9


class TestGrothendieckRing:
    def test_arithmetic(self):
        """Test sums, differences and the partial order of classes."""
        a = GrothendieckElement({(2,): 1, (0,): 1})
        b = GrothendieckElement({(0,): 1})
        assert a - b == GrothendieckElement({(2,): 1})
        assert b <= a
        assert not a <= b
        assert str(a) == "V(0) + V(2)"
        assert str(a + a) == "V(0)^2 + V(2)^2"
        assert str(GrothendieckElement()) == "0"

    def test_inf_and_sup(self):
        """Test componentwise min and max."""
        a = GrothendieckElement({(2,): 2, (0,): 1})
        b = GrothendieckElement({(2,): 1, (4,): 1})
        assert a.inf(b) == GrothendieckElement({(2,): 1})
        assert a.sup(b) == GrothendieckElement({(2,): 2, (0,): 1, (4,): 1})

    def test_dimension(self, sl3):
        """Test the dimension of a virtual class."""
        element = GrothendieckElement({(2, 0): 1, (0, 1): -1})
        assert element.dimension(sl3) == 3
        assert not element.is_positive

    def test_product(self, sl2):
        """Test [V(1)]^2 = [V(2)] + [V(0)] by tensoring and decomposing."""
        v = GrothendieckElement({(1,): 1})
        assert grothendieck_product(sl2, v, v) == GrothendieckElement({(2,): 1, (0,): 1})


class TestInvariantForms:
    def test_evaluation_pairing_is_invariant(self, sl3_vector):
        """Test that evaluation V* x V -> 1 is a module map for both duals."""
        for side in ("left", "right"):
            first, second, pairing = evaluation_pairing(sl3_vector, side)
            assert is_invariant_pairing(first, second, pairing)

    def test_pairing_is_unique(self, sl3_vector):
        """Test that the invariant pairing of V* and V is the evaluation up to scale."""
        left_dual = dual(sl3_vector)
        pairing = invariant_pairing(left_dual, sl3_vector, normalize_at=(0, 0))
        assert linalg.equal(pairing, linalg.identity(3, sl3_vector.domain))

    def test_no_pairing(self, sl3_vector):
        """Test that V and V have no invariant pairing for sl3."""
        with pytest.raises(NoInvariantPairing):
            invariant_pairing(sl3_vector, sl3_vector)

    def test_pairing_not_unique(self, sl2_vector):
        """Test that two copies of the trivial constituent make the pairing ambiguous."""
        doubled = direct_sum(sl2_vector, sl2_vector)
        with pytest.raises(PairingNotUnique):
            invariant_pairing(doubled, doubled)

    def test_self_dual_sl2(self, sl2_vector):
        """Test the invariant pairing of V with itself for sl2."""
        pairing = invariant_pairing(sl2_vector, sl2_vector)
        assert is_invariant_pairing(sl2_vector, sl2_vector, pairing)
        assert linalg.entry(pairing, 0, 0) == sl2_vector.scalars.zero

    def test_intertwiners(self, sl2_vector):
        """Test that End(V (x) V) is two-dimensional."""
        square = tensor(sl2_vector, sl2_vector)
        maps = intertwiners(square, square)
        assert len(maps) == 2

    @pytest.mark.parametrize("power", [1, 2])
    def test_inner_product(self, sl2_vector, power):
        """Test an invariant positive inner product on V and V (x) V."""
        module = tensor_power(sl2_vector, power)
        gram = invariant_inner_product(module)
        assert is_invariant_inner_product(module, gram)
        assert is_positive_definite(gram, module.scalars)

    def test_inner_product_scales(self, sl3_vector):
        """Test that the highest weight vector has the requested norm."""
        scalars = sl3_vector.scalars
        gram = invariant_inner_product(sl3_vector, {(1, 0): scalars.qnum(2)})
        assert linalg.entry(gram, 0, 0) == scalars.qnum(2)


class TestProbes:
    def test_probe_family_sizes(self, sl3):
        """Test fundamental probes and their pairwise tensor products."""
        scalars = sl3.scalars()
        assert len(probe_family(sl3, scalars, 1)) == 2
        assert len(probe_family(sl3, scalars, 2)) == 5

    def test_probe_solve(self, sl3):
        """Test recovering coefficients of a linear combination on the probes."""
        scalars = sl3.scalars()
        probes = probe_family(sl3, scalars, 1)
        group = probes[0].group
        q = scalars.q_power(1)
        target = group.E(0) * group.E(1) * q - group.E(1) * group.E(0)
        candidates = [group.E(0) * group.E(1), group.E(1) * group.E(0)]
        coefficients = probe_solve(target, candidates, probes)
        assert coefficients == [q, -scalars.one]

    def test_probe_mismatch(self, sl3):
        """Test that an element outside the span is reported."""
        scalars = sl3.scalars()
        probes = probe_family(sl3, scalars, 1)
        group = probes[0].group
        with pytest.raises(ProbeMismatch):
            probe_solve(group.E(0), [group.E(1)], probes)
