import pytest

from quantum_clifford.exceptions import InvalidType, NotAPositiveRoot, NotReduced
from quantum_clifford.roots import ParabolicDatum, abelian_radical, build_root_system

CLASSIFICATION = [
    ("A", 1), ("A", 3), ("B", 3), ("C", 3), ("D", 4), ("D", 5),
    ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2),
]  # fmt: skip


class TestClassification:
    @pytest.mark.parametrize("root_type, rank", [("H", 3), ("E", 5), ("D", 3), ("G", 3), ("B", 1)])
    def test_invalid_type(self, root_type, rank):
        """Test that pairs outside the Cartan classification are rejected."""
        with pytest.raises(InvalidType):
            build_root_system(root_type, rank)

    def test_invalid_type_is_value_error(self):
        """Test that callers can catch the error as a ValueError."""
        with pytest.raises(ValueError):
            build_root_system("H", 3)

    def test_lower_case_type(self):
        """Test that the type letter is case-insensitive."""
        assert str(build_root_system("c", 3)) == "C3"

    @pytest.mark.parametrize(
        "root_type, rank, count",
        [
            ("A", 3, 6), ("B", 3, 9), ("C", 3, 9), ("D", 4, 12), ("E", 6, 36),
            ("E", 7, 63), ("E", 8, 120), ("F", 4, 24), ("G", 2, 6),
        ],
    )  # fmt: skip
    def test_positive_root_count(self, root_type, rank, count):
        """Test |Phi+| for each type."""
        assert len(build_root_system(root_type, rank).positive_roots) == count

    @pytest.mark.parametrize(
        "root_type, rank, highest",
        [
            ("A", 2, (1, 1)),
            ("B", 3, (1, 2, 2)),
            ("C", 3, (2, 2, 1)),
            ("G", 2, (3, 2)),
            ("F", 4, (2, 3, 4, 2)),
            ("E", 6, (1, 2, 2, 3, 2, 1)),
        ],
    )
    def test_highest_root(self, root_type, rank, highest):
        """Test the highest root in simple-root coordinates."""
        assert build_root_system(root_type, rank).highest_root == highest

    @pytest.mark.parametrize(
        "root_type, rank, count",
        [
            ("A", 1, 1), ("A", 4, 4), ("B", 3, 1), ("C", 3, 1), ("D", 4, 3),
            ("D", 6, 3), ("E", 6, 2), ("E", 7, 1), ("E", 8, 0), ("F", 4, 0), ("G", 2, 0),
        ],
    )  # fmt: skip
    def test_cominuscule_census(self, root_type, rank, count):
        """Test the number of cominuscule nodes of each type."""
        assert len(build_root_system(root_type, rank).cominuscule_nodes) == count

    def test_cominuscule_nodes_of_b_and_c(self):
        """Test that B_n uses the first node and C_n the last."""
        assert build_root_system("B", 4).cominuscule_nodes == (0,)
        assert build_root_system("C", 4).cominuscule_nodes == (3,)

    def test_g2_cartan_matrix(self):
        """Test a_12 = -3 and a_21 = -1 with the first root short."""
        assert build_root_system("G", 2).cartan == ((2, -3), (-1, 2))

    @pytest.mark.parametrize(
        "root_type, rank, denominator", [("A", 1, 2), ("A", 2, 3), ("G", 2, 1)]
    )
    def test_denominator(self, root_type, rank, denominator):
        """Test the least D with (P, P) in (1/D)Z."""
        assert build_root_system(root_type, rank).denominator == denominator


class TestWeylGroup:
    @pytest.mark.parametrize("root_type, rank", CLASSIFICATION)
    def test_longest_word(self, root_type, rank):
        """Test that the longest word is reduced of length |Phi+|."""
        rs = build_root_system(root_type, rank)
        word = rs.longest_word()
        assert len(word) == len(rs.positive_roots)
        assert rs.is_reduced(word)
        assert sorted(rs.inversion_roots(word)) == sorted(rs.positive_roots)

    def test_not_reduced(self, sl3):
        """Test that s1 s1 is rejected."""
        assert not sl3.is_reduced((0, 0))
        with pytest.raises(NotReduced):
            sl3.check_reduced((0, 0))

    def test_reduced_word_recovers_element(self, sl3):
        """Test that reduced_word inverts word_matrix."""
        word = sl3.longest_word()
        rebuilt = sl3.reduced_word(sl3.word_matrix(word))
        assert (sl3.word_matrix(rebuilt) == sl3.word_matrix(word)).all()

    def test_positive_root_chain(self, sl3):
        """Test a chain of simple roots for alpha_1 + alpha_2."""
        chain = sl3.positive_root_chain((1, 1))
        assert sorted(chain) == [0, 1]
        with pytest.raises(NotAPositiveRoot):
            sl3.positive_root_chain((1, -1))


class TestWeights:
    @pytest.mark.parametrize(
        "root_type, rank, weight, dimension",
        [
            ("A", 2, (1, 0), 3),
            ("A", 2, (1, 1), 8),
            ("A", 2, (3, 0), 10),
            ("B", 2, (1, 0), 5),
            ("B", 2, (0, 1), 4),
            ("G", 2, (1, 0), 7),
            ("G", 2, (0, 1), 14),
            ("F", 4, (0, 0, 0, 1), 26),
            ("E", 6, (1, 0, 0, 0, 0, 0), 27),
            ("E", 7, (0, 0, 0, 0, 0, 0, 1), 56),
        ],
    )
    def test_weyl_dimension(self, root_type, rank, weight, dimension):
        """Test the Weyl dimension formula."""
        assert build_root_system(root_type, rank).weyl_dimension(weight) == dimension

    def test_adjoint_character(self, sl3):
        """Test that the zero weight of the adjoint module has multiplicity 2."""
        character = sl3.weight_multiplicities((1, 1))
        assert character[(0, 0)] == 2
        assert sum(character.values()) == 8

    def test_tensor_decomposition(self, sl3):
        """Test V(w1) (x) V(w1) = V(2 w1) + V(w2)."""
        assert sl3.tensor_decomposition((1, 0), (1, 0)) == {(2, 0): 1, (0, 1): 1}

    def test_dominance_order(self, sl3):
        """Test 0 <= theta and w1 not <= w2."""
        assert sl3.precedes((0, 0), (1, 1))
        assert not sl3.precedes((0, 1), (1, 0))

    def test_non_dominant_character(self, sl3):
        """Test that characters need a dominant weight."""
        with pytest.raises(ValueError):
            sl3.weight_multiplicities((1, -1))


class TestParabolic:
    @pytest.mark.parametrize(
        "root_type, rank, node, n",
        [("A", 2, 0, 2), ("A", 3, 1, 4), ("C", 2, 1, 3), ("D", 4, 0, 6), ("E", 6, 0, 16)],
    )
    def test_radical_dimension(self, root_type, rank, node, n):
        """Test N = dim u_+ for cominuscule parabolics."""
        pd = ParabolicDatum(build_root_system(root_type, rank), node)
        pd.verify()
        assert pd.N == n
        assert pd.is_cominuscule
        assert abelian_radical(pd)

    def test_levi_and_radical_words(self, sl3):
        """Test w0 = w_{0,l} w_l with additive lengths."""
        pd = ParabolicDatum(sl3, 0)
        assert pd.levi_word == (1,)
        assert len(pd.word) == 3
        assert pd.radical_roots == ((1, 1), (1, 0))

    def test_non_cominuscule_radical(self):
        """Test that B3 at the second node has a non-abelian radical."""
        pd = ParabolicDatum(build_root_system("B", 3), 1)
        assert not pd.is_cominuscule
        assert not abelian_radical(pd)

    def test_node_out_of_range(self, sl3):
        """Test that the node must be an index of the root system."""
        with pytest.raises(ValueError):
            ParabolicDatum(sl3, 2)

    def test_u_minus_marks(self, sl3):
        """Test that u_- has highest weight -alpha_s."""
        assert ParabolicDatum(sl3, 0).u_minus_marks() == (-2, 1)
