"""
Root data for the finite-type simple Lie algebras.

Conventions (Humphreys numbering throughout):

- roots are integer tuples in simple-root coordinates;
- weights are integer tuples in fundamental-weight coordinates;
- the form is normalized so that short roots have (a, a) = 2, and
  a_ij = 2 (a_i, a_j) / (a_i, a_i), so column j of the Cartan matrix is the
  weight of the simple root a_j.
"""

import logging
import math
from collections import Counter, deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
from sympy import Matrix

from quantum_clifford.exceptions import InvalidType, NotAPositiveRoot, NotReduced
from quantum_clifford.scalars import ScalarContext

logger = logging.getLogger(__name__)

Root = tuple[int, ...]
Weight = tuple[int, ...]

ROOT_TYPES = "ABCDEFG"


def _dynkin_data(root_type: str, rank: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Squared lengths of the simple roots and the edges of the diagram (0-based)."""
    chain = [(i, i + 1) for i in range(rank - 1)]
    match root_type:
        case "A":
            return [2] * rank, chain
        case "B":
            return [4] * (rank - 1) + [2], chain
        case "C":
            return [2] * (rank - 1) + [4], chain
        case "D":
            return [2] * rank, [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
        case "E":
            # 1 - 3 - 4 - 5 - ..., with 2 attached to 4
            edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, rank - 1)]
            return [2] * rank, edges
        case "F":
            return [4, 4, 2, 2], chain
        case "G":
            return [2, 6], chain
    raise InvalidType(f"unknown root system type {root_type!r}", {"type": root_type})


def _check_type(root_type: str, rank: int) -> None:
    valid = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if root_type not in valid or not valid[root_type]:
        raise InvalidType(
            f"{root_type}{rank} is not a simple root system",
            {"type": root_type, "rank": rank},
        )


@dataclass(frozen=True)
class RootSystem:
    """
    Cartan data, roots and weights of a simple Lie algebra of type X_r.

    Attributes:
        root_type: one of A-G
        rank: number of simple roots
    """

    root_type: str
    rank: int

    def __post_init__(self):
        _check_type(self.root_type, self.rank)

    def __str__(self):
        return f"{self.root_type}{self.rank}"

    @property
    def indices(self) -> range:
        return range(self.rank)

    @cached_property
    def norms(self) -> tuple[int, ...]:
        """(a_i, a_i) for each simple root."""
        return tuple(_dynkin_data(self.root_type, self.rank)[0])

    @cached_property
    def symmetrizers(self) -> tuple[int, ...]:
        """d_i = (a_i, a_i) / 2."""
        return tuple(n // 2 for n in self.norms)

    @cached_property
    def simple_form(self) -> tuple[tuple[int, ...], ...]:
        """B_ij = (a_i, a_j)."""
        norms, edges = _dynkin_data(self.root_type, self.rank)
        form = [[0] * self.rank for _ in self.indices]
        for i in self.indices:
            form[i][i] = norms[i]
        for i, j in edges:
            form[i][j] = form[j][i] = -max(norms[i], norms[j]) // 2
        return tuple(tuple(row) for row in form)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """a_ij = <a_i^vee, a_j>."""
        b = self.simple_form
        return tuple(
            tuple(2 * b[i][j] // self.norms[i] for j in self.indices) for i in self.indices
        )

    @cached_property
    def weight_form(self) -> tuple[tuple[Fraction, ...], ...]:
        """(w_i, w_j) for the fundamental weights."""
        inverse = Matrix(self.simple_form).inv()
        d = self.symmetrizers
        return tuple(
            tuple(Fraction(str(inverse[j, i])) * d[i] * d[j] for j in self.indices)
            for i in self.indices
        )

    @cached_property
    def denominator(self) -> int:
        """Least D with (P, P) contained in (1/D)Z."""
        return math.lcm(*(value.denominator for row in self.weight_form for value in row))

    def scalars(self, D: int | None = None) -> ScalarContext:
        """The scalar field for computations over this root system."""
        return ScalarContext(D or self.denominator)

    # weights

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    def fundamental_weight(self, i: int) -> Weight:
        return tuple(int(j == i) for j in self.indices)

    def form(self, left: Sequence[int | Fraction], right: Sequence[int | Fraction]) -> Fraction:
        """(lambda, mu) for weights in fundamental-weight coordinates."""
        g = self.weight_form
        return sum(
            (Fraction(left[i]) * g[i][j] * right[j] for i in self.indices for j in self.indices),
            Fraction(0),
        )

    def root_form(self, left: Root, right: Root) -> int:
        """(beta, gamma) for roots in simple-root coordinates."""
        b = self.simple_form
        return sum(left[i] * b[i][j] * right[j] for i in self.indices for j in self.indices)

    def casimir(self, weight: Weight) -> Fraction:
        """(lambda, lambda + 2 rho)."""
        shifted = tuple(w + 2 * r for w, r in zip(weight, self.rho, strict=True))
        return self.form(weight, shifted)

    def root_weight(self, root: Root) -> Weight:
        """The weight of a root element of the root lattice."""
        a = self.cartan
        return tuple(sum(a[i][j] * root[j] for j in self.indices) for i in self.indices)

    def simple_root_weight(self, i: int) -> Weight:
        return tuple(self.cartan[j][i] for j in self.indices)

    def root_coordinates(self, weight: Sequence[int]) -> tuple[Fraction, ...]:
        """Coordinates of a weight in the basis of simple roots."""
        coords = Matrix(self.cartan).inv() * Matrix(list(weight))
        return tuple(Fraction(str(c)) for c in coords)

    def add(self, *weights: Sequence[int]) -> Weight:
        return tuple(sum(w[i] for w in weights) for i in self.indices)

    def sub(self, left: Sequence[int], right: Sequence[int]) -> Weight:
        return tuple(a - b for a, b in zip(left, right, strict=True))

    def negate(self, weight: Sequence[int]) -> Weight:
        return tuple(-w for w in weight)

    def scale(self, c: int, weight: Sequence[int]) -> Weight:
        return tuple(c * w for w in weight)

    def is_dominant(self, weight: Sequence[int]) -> bool:
        return all(w >= 0 for w in weight)

    def precedes(self, lower: Sequence[int], upper: Sequence[int]) -> bool:
        """lower <= upper in the dominance order (upper - lower in Q+)."""
        diff = self.root_coordinates(self.sub(upper, lower))
        return all(c.denominator == 1 and c >= 0 for c in diff)

    def height(self, root: Root) -> int:
        return sum(root)

    # reflections and words

    def coroot_pairing(self, root: Root, i: int) -> int:
        """<beta, a_i^vee> for a root lattice element in root coordinates."""
        return sum(self.cartan[i][j] * root[j] for j in self.indices)

    def reflect_root(self, root: Root, i: int) -> Root:
        c = self.coroot_pairing(root, i)
        return tuple(r - c * (j == i) for j, r in enumerate(root))

    def reflect_weight(self, weight: Weight, i: int) -> Weight:
        c = weight[i]
        return tuple(w - c * self.cartan[j][i] for j, w in enumerate(weight))

    def apply_word(self, word: Sequence[int], weight: Weight) -> Weight:
        """s_{i1} ... s_{ik} (weight), the rightmost reflection first."""
        for i in reversed(word):
            weight = self.reflect_weight(weight, i)
        return weight

    def apply_word_root(self, word: Sequence[int], root: Root) -> Root:
        for i in reversed(word):
            root = self.reflect_root(root, i)
        return root

    def simple_root(self, i: int) -> Root:
        return tuple(int(j == i) for j in self.indices)

    def is_positive(self, root: Root) -> bool:
        return any(root) and all(c >= 0 for c in root)

    def inversion_roots(self, word: Sequence[int]) -> list[Root]:
        """beta_k = s_{i1} ... s_{i(k-1)}(a_{ik}) for k = 1..len(word)."""
        return [self.apply_word_root(word[:k], self.simple_root(i)) for k, i in enumerate(word)]

    def is_reduced(self, word: Sequence[int]) -> bool:
        return all(self.is_positive(beta) for beta in self.inversion_roots(word))

    def check_reduced(self, word: Sequence[int]) -> None:
        if not self.is_reduced(word):
            raise NotReduced(f"word {tuple(word)} is not reduced", {"word": tuple(word)})

    def _reflection_matrix(self, i: int) -> np.ndarray:
        matrix = np.eye(self.rank, dtype=int)
        matrix[i, :] -= np.array(self.cartan[i])
        return matrix

    def word_matrix(self, word: Sequence[int]) -> np.ndarray:
        """Matrix of s_{i1} ... s_{ik} acting on root coordinates."""
        result = np.eye(self.rank, dtype=int)
        for i in word:
            result = result @ self._reflection_matrix(i)
        return result

    def reduced_word(self, matrix: np.ndarray) -> tuple[int, ...]:
        """A reduced word for the Weyl group element with the given root-coordinate matrix."""
        word: list[int] = []
        current = matrix.copy()
        while True:
            descent = next((i for i in self.indices if current[:, i].sum() < 0), None)
            if descent is None:
                break
            word.append(descent)
            current = current @ self._reflection_matrix(descent)
        return tuple(reversed(word))

    def longest_word(self, subset: Iterable[int] | None = None) -> tuple[int, ...]:
        """Reduced word of the longest element of the parabolic subgroup W_J (J = subset)."""
        subset = sorted(self.indices if subset is None else subset)
        word: list[int] = []
        v = self.rho
        while True:
            i = next((i for i in subset if v[i] > 0), None)
            if i is None:
                break
            v = self.reflect_weight(v, i)
            word.append(i)
        return tuple(reversed(word))

    # roots

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        """All positive roots, ordered by height then coordinates."""
        found = {self.simple_root(i) for i in self.indices}
        queue = deque(found)
        while queue:
            beta = queue.popleft()
            for i in self.indices:
                gamma = self.reflect_root(beta, i)
                if self.is_positive(gamma) and gamma not in found:
                    found.add(gamma)
                    queue.append(gamma)
        return tuple(sorted(found, key=lambda r: (self.height(r), r)))

    @cached_property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=self.height)

    def positive_root_chain(self, root: Root) -> tuple[int, ...]:
        """
        Simple-root indices summing to root, each left partial sum a positive root.

        Raises:
            NotAPositiveRoot: if root is not in the positive system
        """
        root = tuple(root)
        if root not in self.positive_roots:
            raise NotAPositiveRoot(f"{root} is not a positive root", {"root": root})
        if self.height(root) == 1:
            return (root.index(1),)
        roots = set(self.positive_roots)
        for i in self.indices:
            shorter = tuple(c - (j == i) for j, c in enumerate(root))
            if shorter in roots:
                return (*self.positive_root_chain(shorter), i)
        raise NotAPositiveRoot(f"no chain found for {root}", {"root": root})

    def subsystem_roots(self, subset: Iterable[int]) -> tuple[Root, ...]:
        """Positive roots supported on the given simple roots."""
        allowed = set(subset)
        return tuple(
            r for r in self.positive_roots if all(c == 0 or i in allowed for i, c in enumerate(r))
        )

    @cached_property
    def cominuscule_nodes(self) -> tuple[int, ...]:
        """Nodes with coefficient 1 in the highest root."""
        return tuple(i for i, c in enumerate(self.highest_root) if c == 1)

    # representation theory of the classical limit

    def weyl_dimension(self, weight: Weight, subset: Iterable[int] | None = None) -> int:
        """dim V(lambda) by the Weyl dimension formula (of the Levi for a subset)."""
        roots = self.positive_roots if subset is None else self.subsystem_roots(subset)
        shifted = self.add(weight, self.rho)
        result = Fraction(1)
        for beta in roots:
            coroot = self.root_weight(beta)
            result *= self.form(shifted, coroot) / self.form(self.rho, coroot)
        if result.denominator != 1:
            raise ValueError(f"{weight} is not an integral weight")
        return int(result)

    def weight_multiplicities(self, weight: Weight) -> dict[Weight, int]:
        """Character of V(lambda) by Freudenthal's formula."""
        if not self.is_dominant(weight):
            raise ValueError(f"{weight} is not dominant")
        top = self.add(weight, self.rho)
        top_norm = self.form(top, top)
        positive = [(self.root_weight(beta), self.height(beta)) for beta in self.positive_roots]
        multiplicities: dict[Weight, int] = {tuple(weight): 1}
        layer = [tuple(weight)]
        depth = 0
        while layer:
            depth += 1
            candidates = sorted(
                {self.sub(mu, self.simple_root_weight(j)) for mu in layer for j in self.indices}
            )
            layer = []
            for mu in candidates:
                shifted = self.add(mu, self.rho)
                gap = top_norm - self.form(shifted, shifted)
                if gap == 0:
                    continue
                total = Fraction(0)
                for beta, h in positive:
                    nu = mu
                    for _ in range(depth // h):
                        nu = self.add(nu, beta)
                        total += self.form(nu, beta) * multiplicities.get(nu, 0)
                m = 2 * total / gap
                if m:
                    multiplicities[mu] = int(m)
                    layer.append(mu)
        return multiplicities

    def character_decomposition(self, character: Counter) -> dict[Weight, int]:
        """
        Peel a W-invariant character into highest weights.

        Multiplicities may come out negative for virtual characters.
        """
        remaining = Counter({w: m for w, m in character.items() if m})
        result: dict[Weight, int] = {}
        while remaining:
            top = max(remaining, key=lambda w: (self.form(w, self.rho), w))
            count = remaining[top]
            if not self.is_dominant(top):
                raise ValueError(f"character is not Weyl invariant at {top}")
            result[top] = result.get(top, 0) + count
            for mu, m in self.weight_multiplicities(top).items():
                remaining[mu] -= count * m
                if not remaining[mu]:
                    del remaining[mu]
        return result

    def tensor_decomposition(self, left: Weight, right: Weight) -> dict[Weight, int]:
        """Classical multiplicities of V(mu) in V(left) (x) V(right)."""
        product: Counter = Counter()
        right_character = self.weight_multiplicities(right)
        for mu, m in self.weight_multiplicities(left).items():
            for nu, n in right_character.items():
                product[self.add(mu, nu)] += m * n
        return self.character_decomposition(product)


def build_root_system(root_type: str, rank: int) -> RootSystem:
    """
    Raises:
        InvalidType: for a pair outside the classification (e.g. G with rank 3)
    """
    rs = RootSystem(root_type.upper(), rank)
    logger.debug("built %s with %d positive roots", rs, len(rs.positive_roots))
    return rs


@dataclass(frozen=True)
class ParabolicDatum:
    """
    The maximal parabolic obtained by removing the simple root s.

    The Levi factor has simple roots J = all indices but s, and the longest word
    factors as w0 = w_{0,l} w_l with additive lengths.
    """

    root_system: RootSystem
    node: int

    def __post_init__(self):
        if self.node not in self.root_system.indices:
            raise ValueError(f"node {self.node} out of range for {self.root_system}")

    @property
    def levi_indices(self) -> tuple[int, ...]:
        return tuple(i for i in self.root_system.indices if i != self.node)

    @cached_property
    def levi_word(self) -> tuple[int, ...]:
        return self.root_system.longest_word(self.levi_indices)

    @cached_property
    def radical_word(self) -> tuple[int, ...]:
        """Reduced word of w_l = w_{0,l} w0."""
        rs = self.root_system
        matrix = rs.word_matrix(self.levi_word) @ rs.word_matrix(rs.longest_word())
        return rs.reduced_word(matrix)

    @property
    def word(self) -> tuple[int, ...]:
        return self.levi_word + self.radical_word

    @cached_property
    def levi_roots(self) -> tuple[Root, ...]:
        return self.root_system.subsystem_roots(self.levi_indices)

    @cached_property
    def radical_roots(self) -> tuple[Root, ...]:
        """xi_1 ... xi_N in the order of the reduced word."""
        return tuple(self.root_system.inversion_roots(self.word)[len(self.levi_word) :])

    @property
    def N(self) -> int:
        return len(self.radical_roots)

    @property
    def is_cominuscule(self) -> bool:
        return self.node in self.root_system.cominuscule_nodes

    def u_minus_marks(self) -> Weight:
        """Highest weight -a_s of u_- in fundamental-weight coordinates."""
        return self.root_system.negate(self.root_system.simple_root_weight(self.node))

    def verify(self) -> None:
        """Length additivity and the radical-root invariants."""
        rs = self.root_system
        rs.check_reduced(self.word)
        if len(self.word) != len(rs.positive_roots):
            raise NotReduced(
                "parabolic factorization does not give the longest word",
                {"type": rs, "node": self.node},
            )
        upper = {r for r in rs.positive_roots if r[self.node] > 0}
        if set(self.radical_roots) != upper:
            raise NotReduced("radical roots do not match Phi(u_+)", {"node": self.node})


def abelian_radical(pd: ParabolicDatum) -> bool:
    """True if no two radical roots sum to a root."""
    roots = set(pd.root_system.positive_roots)
    xi = pd.radical_roots
    return not any(
        tuple(a + b for a, b in zip(x, y, strict=True)) in roots for x in xi for y in xi
    )
