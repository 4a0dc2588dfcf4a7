"""
Quantum symmetric and exterior algebras.

S_q(V) = T(V) / <ker(sigma + 1)> and Lambda_q(V) = T(V) / <ker(sigma - 1)>, with
sigma the commutor of V with itself. Every space handled here is spanned by
weight vectors, so kernels and ranks are computed one weight space at a time.
"""

import logging
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from math import comb

from sympy.polys.matrices import DomainMatrix

from quantum_clifford.braiding import commutor, flip_matrix
from quantum_clifford.exceptions import DegreeTooLarge, NonGeneric
from quantum_clifford.modules import (
    GrothendieckElement,
    WeightModule,
    decompose,
    dual,
    submodule,
    tensor_power,
)
from quantum_clifford.roots import Weight
from quantum_clifford.scalars import FieldElement
from quantum_clifford.utils import linalg

logger = logging.getLogger(__name__)

DEFAULT_MAX_TENSOR_DIM = 20000

Monomial = tuple[int, ...]


def power_weights(module: WeightModule, n: int) -> list[Weight]:
    """Weights of the product basis of V^(x n), first factor major."""
    rs = module.root_system
    if n == 0:
        return [(0,) * rs.rank]
    return [rs.add(*combo) for combo in cartesian(module.weights, repeat=n)]


def _weight_groups(weights: Sequence[Weight]) -> dict[Weight, list[int]]:
    groups: dict[Weight, list[int]] = {}
    for index, w in enumerate(weights):
        groups.setdefault(w, []).append(index)
    return groups


def weight_kernel(
    operators: Sequence[DomainMatrix], weights: Sequence[Weight], domain
) -> DomainMatrix:
    """Joint kernel (columns) of weight-preserving operators, solved per weight space."""
    n = len(weights)
    basis: list[dict[int, FieldElement]] = []
    for indices in _weight_groups(weights).values():
        blocks = [op.extract(indices, indices) for op in operators]
        stacked = linalg.vstack(blocks, len(indices), domain)
        for col in linalg.columns(linalg.nullspace(stacked)):
            basis.append({indices[r]: v for r, v in col.items()})
    return linalg.from_columns(basis, n, domain)


def weight_rank(columns: DomainMatrix, weights: Sequence[Weight]) -> int:
    """Rank of a set of weight-vector columns, summed over weight spaces."""
    groups: dict[Weight, list[dict[int, FieldElement]]] = {}
    for col in linalg.columns(columns):
        if col:
            groups.setdefault(weights[min(col)], []).append(col)
    total = 0
    for w, cols in groups.items():
        rows = [b for b, mu in enumerate(weights) if mu == w]
        position = {b: r for r, b in enumerate(rows)}
        local = [{position[b]: v for b, v in c.items()} for c in cols]
        total += linalg.rank(linalg.from_columns(local, len(rows), columns.domain))
    return total


def _slot_operator(sigma: DomainMatrix, d: int, n: int, j: int) -> DomainMatrix:
    """sigma acting on slots j, j+1 (0-based) of V^(x n)."""
    domain = sigma.domain
    return linalg.kron(
        linalg.identity(d**j, domain), linalg.kron(sigma, linalg.identity(d ** (n - j - 2), domain))
    )


def _eigenspace(module: WeightModule, n: int, sign: int) -> DomainMatrix:
    sigma = commutor(module, module).matrix
    d = module.dim
    shift = linalg.scale(linalg.identity(d**n, module.domain), sign * module.scalars.one)
    operators = [linalg.sub(_slot_operator(sigma, d, n, j), shift) for j in range(n - 1)]
    return weight_kernel(operators, power_weights(module, n), module.domain)


def sym_square(module: WeightModule) -> DomainMatrix:
    """S^2_q V = ker(sigma - 1) in V (x) V."""
    return _eigenspace(module, 2, 1)


def ext_square(module: WeightModule) -> DomainMatrix:
    """Lambda^2_q V = ker(sigma + 1) in V (x) V."""
    return _eigenspace(module, 2, -1)


def symmetric_tensors(module: WeightModule, n: int) -> DomainMatrix:
    """S^n_q V: tensors symmetric in every pair of adjacent slots."""
    if n < 2:
        raise ValueError(f"symmetric tensors need n >= 2, got {n}")
    return _eigenspace(module, n, 1)


def antisymmetric_tensors(module: WeightModule, n: int) -> DomainMatrix:
    if n < 2:
        raise ValueError(f"antisymmetric tensors need n >= 2, got {n}")
    return _eigenspace(module, n, -1)


def tensor_submodule(module: WeightModule, n: int, basis: DomainMatrix) -> WeightModule:
    """The U_q-submodule of V^(x n) spanned by the given columns."""
    return submodule(tensor_power(module, n), basis)


def annihilator(relations: DomainMatrix, d: int) -> DomainMatrix:
    """
    R° in V* (x) V* under <f (x) g, u (x) v> = g(u) f(v).

    In the dual product basis the pairing is F^T tau X with tau the flip.
    """
    domain = relations.domain
    paired = linalg.matmul(flip_matrix(d, d, domain), relations).transpose()
    if paired.shape[0] == 0:
        return linalg.identity(d * d, domain)
    return linalg.nullspace(paired)


def same_span(first: DomainMatrix, second: DomainMatrix) -> bool:
    r1, r2 = linalg.rank(first), linalg.rank(second)
    if r1 != r2:
        return False
    both = linalg.hstack([first, second], first.shape[0], first.domain)
    return linalg.rank(both) == r1


def monomial_vector(terms: Mapping[Monomial, object], module: WeightModule) -> DomainMatrix:
    """Column vector of sum c * x_i1 (x) ... (x) x_in (0-based indices)."""
    d = module.dim
    n = len(next(iter(terms))) if terms else 0
    values = {}
    for word, coeff in terms.items():
        index = 0
        for i in word:
            index = index * d + i
        values[index] = module.scalars.element(coeff)
    return linalg.vector(values, d**n, module.domain)


@dataclass(frozen=True)
class HilbertSeries:
    dimensions: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.dimensions[n]

    def __len__(self):
        return len(self.dimensions)

    def __str__(self):
        pieces = []
        for n, h in enumerate(self.dimensions):
            if h:
                pieces.append(str(h) if n == 0 else f"{h}z" if n == 1 else f"{h}z^{n}")
        return " + ".join(pieces) or "0"


@dataclass(frozen=True)
class FlatnessReport:
    flat: bool
    witness_degree: int | None
    quantum: tuple[int, ...]
    classical: tuple[int, ...]
    pbw_certified: bool


class RewritingTable:
    """Disordered quadratic monomials expressed through ordered ones."""

    def __init__(
        self, d: int, rules: Mapping[tuple[int, int], Mapping[tuple[int, int], FieldElement]]
    ):
        self.d = d
        self.rules = {k: dict(v) for k, v in rules.items()}

    def __getitem__(self, monomial: tuple[int, int]) -> dict[tuple[int, int], FieldElement]:
        return self.rules[monomial]

    def __len__(self):
        return len(self.rules)

    def relation_vectors(self, domain) -> DomainMatrix:
        """Columns x_dis - sum c x_ord, one per rule."""
        columns = []
        for (a, b), image in self.rules.items():
            column = {a * self.d + b: domain.one}
            for (c, e), coeff in image.items():
                column[c * self.d + e] = -coeff
            columns.append(column)
        return linalg.from_columns(columns, self.d * self.d, domain)

    def render(self, scalars, names: Sequence[str] | None = None) -> list[str]:
        names = names or [f"x{i + 1}" for i in range(self.d)]
        lines = []
        for (a, b), image in sorted(self.rules.items()):
            terms = []
            for (c, e), coeff in sorted(image.items()):
                scalar = scalars.render_q(coeff)
                monomial = f"{names[c]}*{names[e]}"
                if scalar == "1":
                    terms.append(monomial)
                elif scalar == "-1":
                    terms.append(f"-{monomial}")
                else:
                    terms.append(f"{scalar}*{monomial}")
            lines.append(f"{names[a]}*{names[b]} = {' + '.join(terms) or '0'}")
        return lines


class QuadraticAlgebra:
    """
    T(V) / <R> for a subspace R of V (x) V.

    Attributes:
        module: the generating module V
        relations: basis (columns) of R
        kind: "symmetric" or "exterior" for S_q(V) and Lambda_q(V), else None
    """

    def __init__(
        self,
        module: WeightModule,
        relations: DomainMatrix,
        kind: str | None = None,
        max_tensor_dim: int = DEFAULT_MAX_TENSOR_DIM,
    ):
        self.module = module
        self.relations = relations
        self.kind = kind
        self.max_tensor_dim = max_tensor_dim
        self._ideal: dict[int, DomainMatrix] = {}

    def __str__(self):
        name = {"symmetric": "S_q", "exterior": "Lambda_q"}.get(self.kind, "T/<R>")
        return f"{name}({self.module})"

    @property
    def dim(self) -> int:
        return self.module.dim

    def _guard(self, n: int) -> None:
        if self.dim**n > self.max_tensor_dim:
            raise DegreeTooLarge(
                f"V^(x{n}) has dimension {self.dim**n} > {self.max_tensor_dim}",
                {"degree": n, "dim": self.dim, "max_tensor_dim": self.max_tensor_dim},
            )

    def ideal_component(self, n: int) -> DomainMatrix:
        """Spanning columns of J_n = sum_j V^(j-1) (x) R (x) V^(n-j-1)."""
        if n not in self._ideal:
            self._guard(n)
            d, domain = self.dim, self.module.domain
            pieces = [
                linalg.kron(
                    linalg.identity(d**j, domain),
                    linalg.kron(self.relations, linalg.identity(d ** (n - j - 2), domain)),
                )
                for j in range(n - 1)
            ]
            self._ideal[n] = linalg.hstack(pieces, d**n, domain)
        return self._ideal[n]

    def graded_dimension(self, n: int) -> int:
        """
        Raises:
            DegreeTooLarge: if V^(x n) exceeds the memory guard
        """
        if n == 0:
            return 1
        if n == 1:
            return self.dim
        ideal = self.ideal_component(n)
        dimension = self.dim**n - weight_rank(ideal, power_weights(self.module, n))
        logger.debug("%s: degree %d has dimension %d", self, n, dimension)
        return dimension

    def hilbert_series(self, degree: int) -> HilbertSeries:
        return HilbertSeries(tuple(self.graded_dimension(n) for n in range(degree + 1)))

    def classical_dimension(self, n: int) -> int:
        if self.kind == "symmetric":
            return comb(self.dim + n - 1, n)
        if self.kind == "exterior":
            return comb(self.dim, n)
        raise ValueError("classical dimensions are defined for symmetric and exterior algebras")

    def is_flat(self, degree: int = 3) -> FlatnessReport:
        """
        Compare graded dimensions with the classical ones up to degree.

        Raises:
            NonGeneric: if the ordered monomials do not span in degree 2
        """
        self.rewrite_to_ordered()
        quantum = self.hilbert_series(degree).dimensions
        classical = tuple(self.classical_dimension(n) for n in range(degree + 1))
        witness = next((n for n in range(degree + 1) if quantum[n] != classical[n]), None)
        flat = witness is None
        report = FlatnessReport(flat, witness, quantum, classical, flat and degree >= 3)
        logger.info("%s flat up to degree %d: %s", self, degree, flat)
        return report

    @cached_property
    def _strict(self) -> bool:
        """Exterior-type ordering: x_i x_i is disordered too."""
        if self.kind is not None:
            return self.kind == "exterior"
        return self.relations.shape[1] == comb(self.dim + 1, 2)

    def rewrite_to_ordered(self) -> RewritingTable:
        """
        Solve the relations for the disordered monomials x_a x_b (a > b, or
        a >= b for exterior type) in terms of the ordered ones.

        Raises:
            NonGeneric: if the relations do not determine every disordered monomial
        """
        d = self.dim
        pairs = [(a, b) for a in range(d) for b in range(d)]
        disordered = [(a, b) for a, b in pairs if a > b or (self._strict and a == b)]
        ordered = [pair for pair in pairs if pair not in set(disordered)]
        order = disordered + ordered
        rows = linalg.columns(self.relations)
        position = {a * d + b: k for k, (a, b) in enumerate(order)}
        permuted = linalg.from_columns(
            [{position[i]: v for i, v in row.items()} for row in rows], d * d, self.module.domain
        ).transpose()
        reduced, pivots = linalg.rref(permuted)
        if pivots != list(range(len(disordered))):
            raise NonGeneric(
                f"relations of {self} do not rewrite disordered monomials",
                {"pivots": pivots, "disordered": len(disordered), "relations": len(rows)},
            )
        rules = {}
        for r, monomial in enumerate(disordered):
            row = reduced.rep.get(r, {})
            rules[monomial] = {order[c]: -v for c, v in row.items() if c >= len(disordered) and v}
        return RewritingTable(d, rules)

    def in_ideal(self, vector: DomainMatrix) -> bool:
        """Whether a degree-n tensor (column) lies in the ideal component J_n."""
        n = 0
        size = vector.shape[0]
        while self.dim**n < size:
            n += 1
        if n < 2:
            return linalg.is_zero(vector)
        ideal = self.ideal_component(n)
        weights = power_weights(self.module, n)
        parts: dict[Weight, dict[int, FieldElement]] = {}
        for b, value in linalg.column(vector, 0).items():
            parts.setdefault(weights[b], {})[b] = value
        components = linalg.from_columns(list(parts.values()), size, self.module.domain)
        extended = linalg.hstack([ideal, components], size, self.module.domain)
        return weight_rank(extended, weights) == weight_rank(ideal, weights)

    def quadratic_dual(self) -> "QuadraticAlgebra":
        """A^! on the left dual V*, with relations the annihilator of R."""
        kind = {"symmetric": "exterior", "exterior": "symmetric"}.get(self.kind)
        return QuadraticAlgebra(
            dual(self.module), annihilator(self.relations, self.dim), kind, self.max_tensor_dim
        )


def symmetric_algebra(
    module: WeightModule, max_tensor_dim: int = DEFAULT_MAX_TENSOR_DIM
) -> QuadraticAlgebra:
    return QuadraticAlgebra(module, ext_square(module), "symmetric", max_tensor_dim)


def exterior_algebra(
    module: WeightModule, max_tensor_dim: int = DEFAULT_MAX_TENSOR_DIM
) -> QuadraticAlgebra:
    return QuadraticAlgebra(module, sym_square(module), "exterior", max_tensor_dim)


# Grothendieck-ring comparisons in degree three


def _power_sum(module: WeightModule, k: int) -> Counter:
    rs = module.root_system
    return Counter(rs.scale(k, mu) for mu in module.weights)


def _multiply(*characters: Counter, rs) -> Counter:
    result: Counter = Counter({(0,) * rs.rank: 1})
    for character in characters:
        product: Counter = Counter()
        for mu, m in result.items():
            for nu, n in character.items():
                product[rs.add(mu, nu)] += m * n
        result = product
    return result


def _combine(rs, terms: Iterable[tuple[int, Counter]], divisor: int) -> GrothendieckElement:
    total: Counter = Counter()
    for coeff, character in terms:
        for mu, m in character.items():
            total[mu] += coeff * m
    return GrothendieckElement(
        rs.character_decomposition(Counter({mu: m // divisor for mu, m in total.items() if m}))
    )


def classical_cubes(module: WeightModule) -> tuple[GrothendieckElement, GrothendieckElement]:
    """[S^3 V] and [Lambda^3 V] from power sums: (p1^3 +- 3 p1 p2 + 2 p3) / 6."""
    rs = module.root_system
    p1, p2, p3 = (_power_sum(module, k) for k in (1, 2, 3))
    cube = _multiply(p1, p1, p1, rs=rs)
    mixed = _multiply(p1, p2, rs=rs)
    sym = _combine(rs, [(1, cube), (3, mixed), (2, p3)], 6)
    ext = _combine(rs, [(1, cube), (-3, mixed), (2, p3)], 6)
    return sym, ext


def classical_squares_times_v(
    module: WeightModule,
) -> tuple[GrothendieckElement, GrothendieckElement]:
    """[S^2 V (x) V] and [Lambda^2 V (x) V]."""
    rs = module.root_system
    p1, p2 = _power_sum(module, 1), _power_sum(module, 2)
    cube = _multiply(p1, p1, p1, rs=rs)
    mixed = _multiply(p2, p1, rs=rs)
    return (
        _combine(rs, [(1, cube), (1, mixed)], 2),
        _combine(rs, [(1, cube), (-1, mixed)], 2),
    )


@dataclass(frozen=True)
class CollapseReport:
    quantum_symmetric: GrothendieckElement
    quantum_exterior: GrothendieckElement
    classical_symmetric: GrothendieckElement
    classical_exterior: GrothendieckElement
    symmetric_dimension: int
    exterior_dimension: int

    @property
    def quantum(self) -> GrothendieckElement:
        return self.quantum_symmetric - self.quantum_exterior

    @property
    def classical(self) -> GrothendieckElement:
        return self.classical_symmetric - self.classical_exterior

    @property
    def equal(self) -> bool:
        return self.quantum == self.classical


def collapse_deficit_degree3(module: WeightModule) -> CollapseReport:
    """[S^3_q V] - [Lambda^3_q V] against [S^3 V] - [Lambda^3 V]."""
    sym_basis = symmetric_tensors(module, 3)
    ext_basis = antisymmetric_tensors(module, 3)
    cube = tensor_power(module, 3)
    quantum_sym, quantum_ext = (
        decompose(submodule(cube, basis)) if basis.shape[1] else GrothendieckElement()
        for basis in (sym_basis, ext_basis)
    )
    classical_sym, classical_ext = classical_cubes(module)
    report = CollapseReport(
        quantum_sym,
        quantum_ext,
        classical_sym,
        classical_ext,
        sym_basis.shape[1],
        ext_basis.shape[1],
    )
    logger.info(
        "degree-3 collapse for %s: dim S3_q = %d, dim L3_q = %d, equal = %s",
        module,
        report.symmetric_dimension,
        report.exterior_dimension,
        report.equal,
    )
    return report


def koszul_numerical_defect(module: WeightModule) -> int:
    """a3 - a2 b1 + a1 b2 - b3 for a = dims of S_q(V), b = dims of Lambda_q(V*)."""
    a = symmetric_algebra(module).hilbert_series(3)
    b = exterior_algebra(dual(module)).hilbert_series(3)
    return a[3] - a[2] * b[1] + a[1] * b[2] - b[3]


@dataclass(frozen=True)
class LowCubeReport:
    meet: GrothendieckElement
    symmetric_low: GrothendieckElement
    exterior_low: GrothendieckElement
    quantum_symmetric: GrothendieckElement
    quantum_exterior: GrothendieckElement

    @property
    def matches(self) -> bool:
        return (
            self.symmetric_low == self.quantum_symmetric
            and self.exterior_low == self.quantum_exterior
        )


def low_cubes(module: WeightModule) -> LowCubeReport:
    """S3_low = [S2 V (x) V] - X and L3_low = [L2 V (x) V] - X, X their meet."""
    sym_v, ext_v = classical_squares_times_v(module)
    meet = sym_v.inf(ext_v)
    collapse = collapse_deficit_degree3(module)
    return LowCubeReport(
        meet, sym_v - meet, ext_v - meet, collapse.quantum_symmetric, collapse.quantum_exterior
    )
