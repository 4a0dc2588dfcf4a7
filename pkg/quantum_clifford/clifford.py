"""
The quantum Clifford algebra of a cominuscule pair (g, s).

u_+ is the Levi submodule of the adjoint representation through the highest
root vector, with basis x_k (weight xi_k) reached from x_1 by F-paths; u_- is
its left dual with the dual basis y_k, so that <y_i, x_j> = delta_ij is
U_q(l)-invariant. The quantum exterior algebras of u_+ and u_- act on
Lambda_q(u_+) by creation (left multiplication) and annihilation (transpose of
right multiplication under the exterior pairing).
"""

import logging
import random
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import comb

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from quantum_clifford.braiding import LinearMap
from quantum_clifford.exceptions import (
    IndexOutOfRange,
    NonGeneric,
    NotCominuscule,
    NotFrobenius,
    ProbeMismatch,
    RankDeficient,
    SingularGram,
    SingularPairing,
    VerificationFailed,
)
from quantum_clifford.modules import (
    WeightModule,
    adjoint_module,
    direct_sum,
    dual,
    highest_weight_vectors,
    intertwiners,
    invariant_inner_product,
    is_positive_definite,
    probe_family,
    probe_solve,
    submodule,
    tensor_power,
    trivial_module,
)
from quantum_clifford.quadratic import (
    DEFAULT_MAX_TENSOR_DIM,
    RewritingTable,
    antisymmetric_tensors,
    exterior_algebra as quadratic_exterior_algebra,
    power_weights,
)
from quantum_clifford.roots import ParabolicDatum, Root, RootSystem, Weight, build_root_system
from quantum_clifford.scalars import FieldElement, ScalarContext
from quantum_clifford.uq import AlgebraElement, QuantumGroup
from quantum_clifford.utils import linalg

logger = logging.getLogger(__name__)

Subset = tuple[int, ...]
Element = Mapping[Subset, FieldElement]

# Exhaustive associativity checks up to this many generators, sampled above.
_EXHAUSTIVE_RANK = 4


def subsets(n: int) -> list[Subset]:
    """Increasing index tuples of range(n), by degree then lexicographically."""
    return [s for k in range(n + 1) for s in combinations(range(n), k)]


def _word(index: int, n: int, k: int) -> tuple[int, ...]:
    return tuple((index // n ** (k - 1 - p)) % n for p in range(k))


def _index(word: Sequence[int], n: int) -> int:
    result = 0
    for i in word:
        result = result * n + i
    return result


class ExteriorAlgebraRep:
    """
    Lambda_q(U) = T(U) / <S^2_q U> with its ordered basis of increasing monomials.

    Attributes:
        module: the generating U_q(l)-module U
        symbol: generator name prefix ("x" for u_+, "y" for u_-)
        basis: the increasing monomials, degree 0 first
    """

    def __init__(
        self, module: WeightModule, symbol: str = "x", max_tensor_dim: int = DEFAULT_MAX_TENSOR_DIM
    ):
        self.module = module
        self.symbol = symbol
        self.quadratic = quadratic_exterior_algebra(module, max_tensor_dim)
        self.basis = subsets(module.dim)
        self.index = {s: k for k, s in enumerate(self.basis)}
        self._normal_forms: dict[int, dict[tuple[int, ...], dict[Subset, FieldElement]]] = {}
        self._lifts: dict[int, DomainMatrix] = {}

    def __str__(self):
        return f"Lambda_q over {self.symbol}1..{self.symbol}{self.rank}"

    @property
    def rank(self) -> int:
        return self.module.dim

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def scalars(self) -> ScalarContext:
        return self.module.scalars

    @property
    def domain(self):
        return self.module.domain

    @property
    def top(self) -> Subset:
        return tuple(range(self.rank))

    def degree_slice(self, k: int) -> list[int]:
        return [self.index[s] for s in combinations(range(self.rank), k)]

    def name(self, monomial: Subset) -> str:
        if not monomial:
            return "1"
        return "*".join(f"{self.symbol}{i + 1}" for i in monomial)

    def relations(self) -> RewritingTable:
        return self.quadratic.rewrite_to_ordered()

    def render_relations(self) -> list[str]:
        names = [f"{self.symbol}{i + 1}" for i in range(self.rank)]
        return self.relations().render(self.scalars, names)

    def normal_forms(self, k: int) -> dict[tuple[int, ...], dict[Subset, FieldElement]]:
        """
        Every word of length k in the increasing-monomial basis.

        Raises:
            NonGeneric: if the increasing monomials do not form a basis in degree k
        """
        if k in self._normal_forms:
            return self._normal_forms[k]
        n, one = self.rank, self.scalars.one
        if k > n:
            forms: dict[tuple[int, ...], dict[Subset, FieldElement]] = {}
        elif k < 2:
            forms = {w: {w: one} for w in product(range(n), repeat=k)}
        else:
            forms = self._solve_normal_forms(k)
        self._normal_forms[k] = forms
        return forms

    def _solve_normal_forms(self, k: int) -> dict[tuple[int, ...], dict[Subset, FieldElement]]:
        n, domain, one = self.rank, self.domain, self.scalars.one
        weights = power_weights(self.module, k)
        ideal = linalg.columns(self.quadratic.ideal_component(k))
        rows_by_weight: dict[Weight, list[int]] = {}
        for b, w in enumerate(weights):
            rows_by_weight.setdefault(w, []).append(b)
        ideal_by_weight: dict[Weight, list[dict[int, FieldElement]]] = {}
        for column in ideal:
            if column:
                ideal_by_weight.setdefault(weights[min(column)], []).append(column)
        forms = {}
        for w, rows in rows_by_weight.items():
            position = {b: r for r, b in enumerate(rows)}
            local = [{position[b]: v for b, v in c.items()} for c in ideal_by_weight.get(w, [])]
            spanning = linalg.from_columns(local, len(rows), domain)
            relations = linalg.column_basis(spanning) if local else spanning
            ordered = [b for b in rows if list(_word(b, n, k)) == sorted(set(_word(b, n, k)))]
            if relations.shape[1] + len(ordered) != len(rows):
                raise NonGeneric(
                    f"{self} is not flat in degree {k}",
                    {
                        "degree": k,
                        "weight": w,
                        "relations": relations.shape[1],
                        "ordered": len(ordered),
                    },
                )
            units = linalg.from_columns([{position[b]: one} for b in ordered], len(rows), domain)
            try:
                inverse = linalg.inverse(linalg.hstack([relations, units], len(rows), domain))
            except DMNonInvertibleMatrixError as e:
                raise NonGeneric(
                    f"increasing monomials of {self} are dependent in degree {k}", {"degree": k}
                ) from e
            offset = relations.shape[1]
            for r, coords in enumerate(linalg.columns(inverse)):
                forms[_word(rows[r], n, k)] = {
                    _word(ordered[c - offset], n, k): v for c, v in coords.items() if c >= offset
                }
        logger.debug("%s: normal forms of %d words in degree %d", self, len(forms), k)
        return forms

    def product(self, left: Subset, right: Subset) -> dict[Subset, FieldElement]:
        return dict(self.normal_forms(len(left) + len(right)).get(left + right, {}))

    def multiply(self, left: Element, right: Element) -> dict[Subset, FieldElement]:
        result: dict[Subset, FieldElement] = {}
        for a, x in left.items():
            for b, y in right.items():
                for c, z in self.product(a, b).items():
                    value = result.get(c, self.scalars.zero) + x * y * z
                    if value:
                        result[c] = value
                    else:
                        result.pop(c, None)
        return result

    def vector(self, element: Element) -> DomainMatrix:
        return linalg.vector({self.index[s]: v for s, v in element.items()}, self.dim, self.domain)

    def element(self, vector: DomainMatrix) -> dict[Subset, FieldElement]:
        return {self.basis[i]: v for i, v in linalg.column(vector, 0).items()}

    def left_multiplication(self, element: Element) -> DomainMatrix:
        columns = [self.multiply(element, {s: self.scalars.one}) for s in self.basis]
        return linalg.from_columns(
            [{self.index[s]: v for s, v in c.items()} for c in columns], self.dim, self.domain
        )

    def right_multiplication(self, element: Element) -> DomainMatrix:
        columns = [self.multiply({s: self.scalars.one}, element) for s in self.basis]
        return linalg.from_columns(
            [{self.index[s]: v for s, v in c.items()} for c in columns], self.dim, self.domain
        )

    def graded_dimensions(self) -> tuple[int, ...]:
        return self.quadratic.hilbert_series(self.rank + 1).dimensions

    def is_flat(self) -> bool:
        expected = tuple(comb(self.rank, k) for k in range(self.rank + 2))
        return self.graded_dimensions() == expected

    def is_associative(self, samples: int = 200, seed: int = 0) -> bool:
        """(ab)c = a(bc) on basis triples, exhaustively for small ranks."""
        if self.rank <= _EXHAUSTIVE_RANK:
            triples: Iterable[tuple[Subset, Subset, Subset]] = product(self.basis, repeat=3)
        else:
            rng = random.Random(seed)
            triples = [tuple(rng.choice(self.basis) for _ in range(3)) for _ in range(samples)]
        one = self.scalars.one
        for a, b, c in triples:
            left = self.multiply(self.multiply({a: one}, {b: one}), {c: one})
            right = self.multiply({a: one}, self.multiply({b: one}, {c: one}))
            if left != right:
                logger.warning("associativity fails on %s, %s, %s", a, b, c)
                return False
        return True

    def lifts(self, k: int) -> DomainMatrix:
        """
        Columns a_J in Lambda^k_q U (antisymmetric tensors) mapping to the
        monomials x_J of degree k under the quotient map.
        """
        if k in self._lifts:
            return self._lifts[k]
        n, domain = self.rank, self.domain
        if k == 0:
            lifts = linalg.identity(1, domain)
        elif k == 1:
            lifts = linalg.identity(n, domain)
        else:
            tensors = antisymmetric_tensors(self.module, k)
            forms = self.normal_forms(k)
            degree = list(combinations(range(n), k))
            position = {s: r for r, s in enumerate(degree)}
            images = []
            for column in linalg.columns(tensors):
                image: dict[int, FieldElement] = {}
                for b, v in column.items():
                    for s, c in forms[_word(b, n, k)].items():
                        image[position[s]] = image.get(position[s], self.scalars.zero) + v * c
                images.append(image)
            projection = linalg.from_columns(images, len(degree), domain)
            try:
                lifts = linalg.matmul(tensors, linalg.inverse(projection))
            except DMNonInvertibleMatrixError as e:
                raise NonGeneric(
                    f"antisymmetric tensors of {self} do not map onto degree {k}", {"degree": k}
                ) from e
        self._lifts[k] = lifts
        return lifts

    def degree_module(self, k: int) -> WeightModule:
        """Lambda^k_q(U) as a U_q(l)-module in the monomial basis."""
        m = self.module
        if k == 0:
            return trivial_module(m.root_system, m.scalars, m.active)
        if k == 1:
            return m
        return submodule(tensor_power(m, k), self.lifts(k), label=("exterior", k))

    @cached_property
    def total_module(self) -> WeightModule:
        result = self.degree_module(0)
        for k in range(1, self.rank + 1):
            result = direct_sum(result, self.degree_module(k))
        return result

    def frobenius_functional(self, element: Element) -> FieldElement:
        """psi: coefficient of the top monomial."""
        return element.get(self.top, self.scalars.zero)

    def left_ideal_criterion(self) -> bool:
        """Every basis monomial a has some b with b a a nonzero multiple of the top."""
        one = self.scalars.one
        for a in self.basis:
            if not any(
                self.frobenius_functional(self.multiply({b: one}, {a: one}))
                for b in self.basis
                if len(a) + len(b) == self.rank
            ):
                return False
        return True


@dataclass(frozen=True)
class SchubertRelation:
    """E_l E_k - q^exponent E_k E_l = sum c_ij E_i E_j (0-based radical indices)."""

    k: int
    l: int
    exponent: Fraction
    coefficients: dict[tuple[int, int], FieldElement] = field(default_factory=dict)


def _u_plus(parabolic: ParabolicDatum, scalars: ScalarContext) -> WeightModule:
    rs = parabolic.root_system
    ambient = adjoint_module(rs, scalars).restrict(parabolic.levi_indices)
    theta = rs.root_weight(rs.highest_root)
    top = ambient.weight_indices(theta)[0]
    by_weight: dict[Weight, dict[int, FieldElement]] = {theta: {top: scalars.one}}
    queue = deque([theta])
    while queue:
        v = by_weight[queue.popleft()]
        for i in ambient.active:
            image = ambient.apply("F", i, v)
            if image:
                w = ambient.vector_weight(image)
                if w not in by_weight:
                    by_weight[w] = image
                    queue.append(w)
    order = [rs.root_weight(xi) for xi in parabolic.radical_roots]
    if set(order) != set(by_weight):
        raise VerificationFailed(
            "Levi submodule through the highest root is not u_+",
            {"type": rs, "node": parabolic.node},
        )
    basis = linalg.from_columns([by_weight[w] for w in order], ambient.dim, scalars.domain)
    return submodule(ambient, basis, label="u+")


class CominusculeContext:
    """
    Everything attached to (g, s): u_+, u_-, the Schubert generators E_xi_k and
    the exterior algebras with their pairing.
    """

    def __init__(
        self,
        parabolic: ParabolicDatum,
        scalars: ScalarContext,
        u_plus: WeightModule,
        probe_degree: int = 2,
        max_tensor_dim: int = DEFAULT_MAX_TENSOR_DIM,
    ):
        self.parabolic = parabolic
        self.scalars = scalars
        self.u_plus = u_plus
        self.u_minus = dual(u_plus, "left")
        self.probe_degree = probe_degree
        self.max_tensor_dim = max_tensor_dim
        self.group = QuantumGroup(parabolic.root_system, scalars)
        vectors = self.group.root_vectors(parabolic.word, "E")
        self.schubert: tuple[AlgebraElement, ...] = tuple(vectors[len(parabolic.levi_word) :])

    def __str__(self):
        return f"({self.root_system}, s={self.node + 1}), N={self.N}"

    @property
    def root_system(self) -> RootSystem:
        return self.parabolic.root_system

    @property
    def node(self) -> int:
        return self.parabolic.node

    @property
    def N(self) -> int:
        return self.parabolic.N

    @property
    def radical_roots(self) -> tuple[Root, ...]:
        return self.parabolic.radical_roots

    @property
    def levi(self) -> QuantumGroup:
        return self.u_plus.group

    @cached_property
    def probes(self) -> tuple[WeightModule, ...]:
        return probe_family(self.root_system, self.scalars, self.probe_degree)

    @cached_property
    def plus(self) -> ExteriorAlgebraRep:
        return ExteriorAlgebraRep(self.u_plus, "x", self.max_tensor_dim)

    @cached_property
    def minus(self) -> ExteriorAlgebraRep:
        return ExteriorAlgebraRep(self.u_minus, "y", self.max_tensor_dim)

    def exterior_algebra(self, sign: str) -> ExteriorAlgebraRep:
        if sign not in ("+", "-"):
            raise ValueError(f"sign must be '+' or '-', got {sign!r}")
        return self.plus if sign == "+" else self.minus

    @cached_property
    def pairing(self) -> "ExteriorPairing":
        return exterior_pairing(self)

    @cached_property
    def gamma(self) -> "GammaFactorization":
        return gamma_factorization(self)

    @cached_property
    def adjoint_matrices(self) -> dict[tuple[str, int], dict[tuple[int, int], FieldElement]]:
        """
        X |> E_xi_k = sum_l m_lk E_xi_l for X = E_i, F_i of the Levi factor,
        probe-certified.

        Raises:
            ProbeMismatch: if the span of the Schubert generators is not ad-invariant
        """
        rs = self.root_system
        weights = {rs.root_weight(xi): l for l, xi in enumerate(self.radical_roots)}
        matrices = {}
        for i in self.parabolic.levi_indices:
            alpha = rs.simple_root_weight(i)
            for kind, sign in (("E", 1), ("F", -1)):
                generator = self.group.E(i) if kind == "E" else self.group.F(i)
                entries = {}
                for k, xi in enumerate(self.radical_roots):
                    image = self.group.adjoint_action(generator, self.schubert[k])
                    shifted = rs.add(rs.root_weight(xi), rs.scale(sign, alpha))
                    if shifted in weights:
                        l = weights[shifted]
                        (c,) = probe_solve(image, [self.schubert[l]], self.probes)
                        if c:
                            entries[(l, k)] = c
                    else:
                        probe_solve(image, [], self.probes)
                matrices[(kind, i)] = entries
        return matrices

    @cached_property
    def schubert_scales(self) -> tuple[FieldElement, ...]:
        """
        c_k with x_k -> c_k E_xi_k a U_q(l)-module isomorphism onto the Schubert span.

        Raises:
            ProbeMismatch: if no such rescaling exists
        """
        rs = self.root_system
        theta = rs.highest_root
        start = self.radical_roots.index(theta)
        scales: dict[int, FieldElement] = {start: self.scalars.one}
        queue = deque([start])
        abstract = {
            key: {(b, a): v for b, a, v in linalg.entries(self.u_plus.generator(*key))}
            for key in self.adjoint_matrices
        }
        while queue:
            a = queue.popleft()
            for key, adjoint in self.adjoint_matrices.items():
                for (b, source), value in adjoint.items():
                    if source != a or b in scales:
                        continue
                    m = abstract[key].get((b, a))
                    if not m:
                        raise ProbeMismatch("adjoint action does not match u_+", {"generator": key})
                    scales[b] = scales[a] * value / m
                    queue.append(b)
        if len(scales) != self.N:
            raise ProbeMismatch("Schubert span is not generated by the highest root vector", {})
        for key, adjoint in self.adjoint_matrices.items():
            pairs = set(adjoint) | set(abstract[key])
            for b, a in pairs:
                lhs = abstract[key].get((b, a), self.scalars.zero) * scales[b]
                rhs = scales[a] * adjoint.get((b, a), self.scalars.zero)
                if lhs != rhs:
                    raise ProbeMismatch(
                        "adjoint action does not match u_+", {"generator": key, "entry": (b, a)}
                    )
        return tuple(scales[k] for k in range(self.N))

    def verify(self) -> None:
        """
        Raises:
            VerificationFailed: if an invariant of u_+ or u_- fails
            ProbeMismatch: if the Schubert span does not realize u_+
        """
        rs = self.root_system
        context = {"context": str(self)}
        for module in (self.u_plus, self.u_minus):
            module.verify_relations()
        expected = [rs.root_weight(xi) for xi in self.radical_roots]
        if list(self.u_plus.weights) != expected or len(set(expected)) != self.N:
            raise VerificationFailed("weights of u_+ are not the radical roots", context)
        if list(self.u_minus.weights) != [rs.negate(w) for w in expected]:
            raise VerificationFailed("weights of u_- are not -Phi(u_+)", context)
        omega = rs.fundamental_weight(self.node)
        d_s = rs.symmetrizers[self.node]
        if any(rs.form(omega, w) != d_s for w in self.u_plus.weights):
            raise VerificationFailed("K_omega_s is not the scalar q^d_s on u_+", context)
        lowest = rs.negate(rs.simple_root_weight(self.node))
        if highest_weight_vectors(self.u_minus, lowest).shape[1] != 1:
            raise VerificationFailed("u_- does not have highest weight -alpha_s", context)
        scales = self.schubert_scales
        if len(scales) != self.N or not all(scales):
            raise VerificationFailed(
                "x_k -> c_k E_xi_k is not an isomorphism onto the Schubert span", context
            )
        logger.info("verified cominuscule context %s", self)


def build_context(
    root_type: str,
    rank: int,
    node: int,
    *,
    denominator: int | None = None,
    probe_degree: int = 2,
    max_tensor_dim: int = DEFAULT_MAX_TENSOR_DIM,
    verify: bool = True,
) -> CominusculeContext:
    """
    The context of (g, s) for a 0-based node s.

    Raises:
        NotCominuscule: if s has coefficient other than 1 in the highest root
        ProbeMismatch: if the adjoint realization of u_+ fails
    """
    rs = build_root_system(root_type, rank)
    if node not in rs.cominuscule_nodes:
        raise NotCominuscule(
            f"node {node + 1} of {rs} is not cominuscule",
            {
                "type": str(rs),
                "node": node + 1,
                "cominuscule": [i + 1 for i in rs.cominuscule_nodes],
            },
        )
    parabolic = ParabolicDatum(rs, node)
    parabolic.verify()
    scalars = rs.scalars(denominator)
    u_plus = _u_plus(parabolic, scalars)
    context = CominusculeContext(parabolic, scalars, u_plus, probe_degree, max_tensor_dim)
    if verify:
        context.verify()
    logger.info("built cominuscule context %s", context)
    return context


def verify_schubert_quadratic(ctx: CominusculeContext) -> list[SchubertRelation]:
    """
    E_l E_k - q^-(xi_k, xi_l) E_k E_l = sum c_ij E_i E_j over k < i <= j < l.

    Raises:
        ProbeUnderdetermined: if the probe family cannot separate the candidates
        ProbeMismatch: if the difference is outside the span of the candidates
    """
    rs, scalars = ctx.root_system, ctx.scalars
    xi, E = ctx.radical_roots, ctx.schubert
    relations = []
    for k, l in combinations(range(ctx.N), 2):
        exponent = -Fraction(rs.root_form(xi[k], xi[l]))
        target = E[l] * E[k] - scalars.q_power(exponent) * (E[k] * E[l])
        total = tuple(a + b for a, b in zip(xi[k], xi[l], strict=True))
        pairs = [
            (i, j)
            for i in range(k + 1, l)
            for j in range(i, l)
            if tuple(a + b for a, b in zip(xi[i], xi[j], strict=True)) == total
        ]
        coefficients = probe_solve(target, [E[i] * E[j] for i, j in pairs], ctx.probes)
        middle = {p: c for p, c in zip(pairs, coefficients, strict=True) if c}
        relations.append(SchubertRelation(k, l, exponent, middle))
        logger.debug("Schubert relation for (%d, %d): %d middle terms", k + 1, l + 1, len(pairs))
    return relations


def exterior_algebra(ctx: CominusculeContext, sign: str) -> ExteriorAlgebraRep:
    """
    Lambda_q(u_+) for sign "+", Lambda_q(u_-) for "-", after the flatness and
    associativity audits.

    Raises:
        NonGeneric: if ordered monomials do not form a basis
        VerificationFailed: if the graded dimensions or associativity fail
    """
    algebra = ctx.exterior_algebra(sign)
    algebra.relations()
    dimensions = [len(algebra.degree_slice(k)) for k in range(algebra.rank + 1)]
    for k in range(2, algebra.rank + 1):
        if len(algebra.normal_forms(k)) != algebra.rank**k:
            raise VerificationFailed(
                f"{algebra} has incomplete normal forms in degree {k}", {"degree": k}
            )
    if not algebra.is_associative():
        raise VerificationFailed(
            f"{algebra} is not associative", {"context": str(ctx), "sign": sign}
        )
    logger.info("exterior algebra %s with graded dimensions %s", algebra, dimensions)
    return algebra


def leading_term_law(ctx: CominusculeContext, sign: str) -> bool:
    """
    The rewriting of the disordered pair l > k has leading coefficient
    -q^(-(xi_k, xi_l)) on u_- and -q^(xi_k, xi_l) on u_+.
    """
    algebra = ctx.exterior_algebra(sign)
    table = algebra.relations()
    rs = ctx.root_system
    direction = -1 if sign == "-" else 1
    for k, l in combinations(range(ctx.N), 2):
        form = rs.root_form(ctx.radical_roots[k], ctx.radical_roots[l])
        expected = -ctx.scalars.q_power(direction * form)
        if table[(l, k)].get((k, l), ctx.scalars.zero) != expected:
            return False
    return True


# pairing, creation and annihilation


def _reversal(n: int, k: int, domain) -> DomainMatrix:
    """R[a, b] = 1 when the word a is the reverse of the word b."""
    size = n**k
    return linalg.from_entries(
        {(_index(tuple(reversed(_word(b, n, k))), n), b): domain.one for b in range(size)},
        (size, size),
        domain,
    )


@dataclass(frozen=True)
class ExteriorPairing:
    """<y_I, x_J>; rows index Lambda_q(u_-), columns Lambda_q(u_+), both by increasing monomials."""

    basis: tuple[Subset, ...]
    blocks: dict[int, DomainMatrix]
    matrix: DomainMatrix

    def __call__(self, left: Subset, right: Subset) -> FieldElement:
        index = {s: k for k, s in enumerate(self.basis)}
        return linalg.entry(self.matrix, index[tuple(left)], index[tuple(right)])

    @cached_property
    def inverse(self) -> DomainMatrix:
        n = len(self.basis)
        entries = {}
        offset = 0
        for k in sorted(self.blocks):
            block = self.blocks[k]
            for i, j, v in linalg.entries(linalg.inverse(block)):
                entries[(offset + i, offset + j)] = v
            offset += block.shape[0]
        return linalg.from_entries(entries, (n, n), self.matrix.domain)


def exterior_pairing(ctx: CominusculeContext) -> ExteriorPairing:
    """
    Degree k block: lifts of y_I and x_J paired by
    <y_k ... y_1, x_1 ... x_k> = <y_1, x_1> ... <y_k, x_k>.

    Raises:
        SingularPairing: if some block is singular
    """
    n, domain = ctx.N, ctx.scalars.domain
    blocks = {}
    entries = {}
    for k in range(n + 1):
        reversed_minus = linalg.matmul(ctx.minus.lifts(k).transpose(), _reversal(n, k, domain))
        block = linalg.matmul(reversed_minus, ctx.plus.lifts(k))
        if linalg.rank(block) != block.shape[0]:
            raise SingularPairing(
                f"pairing of degree {k} is singular", {"context": str(ctx), "degree": k}
            )
        blocks[k] = block
        rows, cols = ctx.minus.degree_slice(k), ctx.plus.degree_slice(k)
        for i, j, v in linalg.entries(block):
            entries[(rows[i], cols[j])] = v
    size = ctx.plus.dim
    logger.debug("exterior pairing of %s assembled from %d blocks", ctx, len(blocks))
    matrix = linalg.from_entries(entries, (size, size), domain)
    return ExteriorPairing(tuple(ctx.plus.basis), blocks, matrix)


def _as_element(algebra: ExteriorAlgebraRep, value: Element | int) -> dict[Subset, FieldElement]:
    if isinstance(value, int):
        if not 0 <= value < algebra.rank:
            raise IndexOutOfRange(
                f"generator index {value + 1} outside 1..{algebra.rank}", {"index": value + 1}
            )
        return {(value,): algebra.scalars.one}
    return {tuple(s): algebra.scalars.element(v) for s, v in value.items()}


def creation(ctx: CominusculeContext, x: Element | int) -> LinearMap:
    """gamma_+(x): left multiplication by x on Lambda_q(u_+)."""
    module = ctx.plus.total_module
    return LinearMap(module, module, ctx.plus.left_multiplication(_as_element(ctx.plus, x)))


def annihilation(ctx: CominusculeContext, y: Element | int) -> LinearMap:
    """gamma_-(y), determined by <w, gamma_-(y) x> = <w y, x>."""
    pairing = ctx.pairing
    right = ctx.minus.right_multiplication(_as_element(ctx.minus, y))
    matrix = linalg.matmul(linalg.matmul(pairing.inverse, right.transpose()), pairing.matrix)
    module = ctx.plus.total_module
    return LinearMap(module, module, matrix)


def gamma(ctx: CominusculeContext, sign: str, value: Element | int) -> LinearMap:
    return creation(ctx, value) if sign == "+" else annihilation(ctx, value)


def is_gamma_homomorphism(ctx: CominusculeContext, sign: str) -> bool:
    """gamma_+- (a b) = gamma_+-(a) gamma_+-(b) on all pairs of basis monomials."""
    algebra = ctx.exterior_algebra(sign)
    one = ctx.scalars.one
    images = {s: gamma(ctx, sign, {s: one}).matrix for s in algebra.basis}
    for a, b in product(algebra.basis, repeat=2):
        expected = linalg.linear_combination(
            ((c, images[s]) for s, c in algebra.product(a, b).items()),
            images[()].shape,
            ctx.scalars.domain,
        )
        if not linalg.equal(linalg.matmul(images[a], images[b]), expected):
            logger.warning("gamma_%s fails to be multiplicative on %s, %s", sign, a, b)
            return False
    return True


# the factorization Lambda_q(u_-) (x) Lambda_q(u_+) -> End(Lambda_q(u_+))

Term = tuple[Subset, Subset]


@dataclass(frozen=True)
class GammaFactorization:
    """
    Columns vec(gamma_-(y_I) gamma_+(x_J)), row-major, for all pairs (I, J).

    Attributes:
        keys: the pairs (I, J) in column order
        matrix: the 4^N x 4^N matrix
        rank: its exact rank
    """

    keys: tuple[Term, ...]
    matrix: DomainMatrix
    rank: int
    size: int

    @property
    def is_isomorphism(self) -> bool:
        return self.rank == len(self.keys)

    def expand(self, operator: DomainMatrix) -> dict[Term, FieldElement]:
        """Coefficients of an operator on Lambda_q(u_+) in the y_I x_J basis."""
        values = {r * self.size + c: v for r, c, v in linalg.entries(operator)}
        rhs = linalg.vector(values, self.size * self.size, self.matrix.domain)
        solution = linalg.column(linalg.solve(self.matrix, rhs), 0)
        return {self.keys[k]: v for k, v in sorted(solution.items())}


def gamma_factorization(ctx: CominusculeContext) -> GammaFactorization:
    """
    Raises:
        RankDeficient: if the products gamma_-(y_I) gamma_+(x_J) are dependent
    """
    one = ctx.scalars.one
    size = ctx.plus.dim
    minus = {s: annihilation(ctx, {s: one}).matrix for s in ctx.minus.basis}
    plus = {s: creation(ctx, {s: one}).matrix for s in ctx.plus.basis}
    keys, cols = [], []
    for left in ctx.minus.basis:
        for right in ctx.plus.basis:
            keys.append((left, right))
            operator = linalg.matmul(minus[left], plus[right])
            cols.append({r * size + c: v for r, c, v in linalg.entries(operator)})
    matrix = linalg.from_columns(cols, size * size, ctx.scalars.domain)
    rank = linalg.rank(matrix)
    if rank != len(keys):
        raise RankDeficient(
            f"gamma factorization of {ctx} has rank {rank} < {len(keys)}",
            {"context": str(ctx), "rank": rank, "expected": len(keys)},
        )
    logger.info("gamma factorization of %s has full rank %d", ctx, rank)
    return GammaFactorization(tuple(keys), matrix, rank, size)


def expansion_degree(expansion: Mapping[Term, FieldElement]) -> int:
    return max((len(a) + len(b) for a, b in expansion), default=0)


def render_expansion(ctx: CominusculeContext, expansion: Mapping[Term, FieldElement]) -> str:
    """'1 + (q + q^-1)*y1*y2*x1*x2' style rendering, gamma symbols omitted."""
    if not expansion:
        return "0"
    parts = []
    for (left, right), value in expansion.items():
        names = [f"y{i + 1}" for i in left] + [f"x{i + 1}" for i in right]
        coefficient = ctx.scalars.render_q(value)
        if not names:
            parts.append(coefficient)
        elif coefficient == "1":
            parts.append("*".join(names))
        elif coefficient == "-1":
            parts.append("-" + "*".join(names))
        else:
            parts.append(f"{coefficient}*" + "*".join(names))
    return " + ".join(parts).replace("+ -", "- ")


def commutation_relations(ctx: CominusculeContext, i: int, j: int) -> dict[Term, FieldElement]:
    """gamma_+(x_i) gamma_-(y_j) expanded in the gamma_-(y_I) gamma_+(x_J) basis (0-based i, j)."""
    operator = linalg.matmul(creation(ctx, i).matrix, annihilation(ctx, j).matrix)
    return ctx.gamma.expand(operator)


def all_commutation_relations(
    ctx: CominusculeContext,
) -> dict[tuple[int, int], dict[Term, FieldElement]]:
    return {(i, j): commutation_relations(ctx, i, j) for i in range(ctx.N) for j in range(ctx.N)}


# Frobenius structure


def frobenius_dual_basis(
    ctx: CominusculeContext, sign: str = "+"
) -> dict[Subset, dict[Subset, FieldElement]]:
    """
    The unique z_J with x_I z_J = delta_IJ x_top whenever |I| = |J|.

    Raises:
        NotFrobenius: if the top-degree pairing of complementary degrees is singular
    """
    algebra = ctx.exterior_algebra(sign)
    n, domain = algebra.rank, algebra.domain
    one = algebra.scalars.one
    dual_basis: dict[Subset, dict[Subset, FieldElement]] = {}
    for k in range(n + 1):
        degree = list(combinations(range(n), k))
        complement = list(combinations(range(n), n - k))
        entries = {}
        for r, left in enumerate(degree):
            for c, right in enumerate(complement):
                entries[(r, c)] = algebra.frobenius_functional(algebra.product(left, right))
        matrix = linalg.from_entries(entries, (len(degree), len(complement)), domain)
        try:
            inverse = linalg.inverse(matrix)
        except DMNonInvertibleMatrixError as e:
            raise NotFrobenius(
                f"{algebra}: pairing of degrees {k} and {n - k} is singular", {"degree": k}
            ) from e
        for j, target in enumerate(degree):
            dual_basis[target] = {complement[c]: v for c, v in linalg.column(inverse, j).items()}
    for left in algebra.basis:
        for target, z in dual_basis.items():
            if len(left) != len(target):
                continue
            expected = {algebra.top: one} if left == target else {}
            if algebra.multiply({left: one}, z) != expected:
                raise NotFrobenius(
                    "dual basis does not satisfy x_I z_J = delta_IJ x_top", {"I": left, "J": target}
                )
    return dual_basis


# inner products and star structures

# alpha = q^exponent on the highest root vector of u_+
STAR_PRESETS: dict[str, Fraction] = {"standard": Fraction(0), "rescaled": Fraction(-1)}


def preset_alpha(scalars: ScalarContext, preset: str) -> FieldElement:
    if preset not in STAR_PRESETS:
        raise ValueError(f"unknown star preset {preset!r}; expected one of {sorted(STAR_PRESETS)}")
    return scalars.q_power(STAR_PRESETS[preset])


def _kron_power(matrix: DomainMatrix, k: int) -> DomainMatrix:
    result = linalg.identity(1, matrix.domain)
    for _ in range(k):
        result = linalg.kron(result, matrix)
    return result


def base_gram(ctx: CominusculeContext, alpha: FieldElement) -> DomainMatrix:
    """The invariant inner product on u_+ with (x_theta, x_theta) = alpha."""
    gram = invariant_inner_product(ctx.u_plus)
    top = ctx.radical_roots.index(ctx.root_system.highest_root)
    return linalg.scale(gram, alpha * ctx.scalars.inverse(linalg.entry(gram, top, top)))


def clifford_gram(
    ctx: CominusculeContext,
    alpha: FieldElement | None = None,
    degree_scales: Mapping[int, Mapping[Weight, FieldElement]] | None = None,
) -> DomainMatrix:
    """
    Gram matrix of Lambda_q(u_+) in the monomial basis.

    Degrees are orthogonal and (1, 1) = 1. Degree k carries the form induced
    from the k-th tensor power of the base form on u_+, unless degree_scales[k]
    is given, in which case each simple summand of Lambda^k_q(u_+) gets the
    invariant form with the listed value on its highest weight vector.
    """
    alpha = ctx.scalars.one if alpha is None else ctx.scalars.element(alpha)
    degree_scales = degree_scales or {}
    base = base_gram(ctx, alpha)
    size = ctx.plus.dim
    entries = {}
    for k in range(ctx.N + 1):
        if k in degree_scales:
            block = invariant_inner_product(ctx.plus.degree_module(k), degree_scales[k])
        else:
            lifts = ctx.plus.lifts(k)
            block = linalg.matmul(linalg.matmul(lifts.transpose(), _kron_power(base, k)), lifts)
        positions = ctx.plus.degree_slice(k)
        for i, j, v in linalg.entries(block):
            entries[(positions[i], positions[j])] = v
    return linalg.from_entries(entries, (size, size), ctx.scalars.domain)


@dataclass(frozen=True)
class CliffordStar:
    """T* = M^-1 T^T M for the Gram matrix M."""

    gram: DomainMatrix
    inverse: DomainMatrix
    alpha: FieldElement

    def __call__(self, operator: DomainMatrix) -> DomainMatrix:
        return linalg.matmul(linalg.matmul(self.inverse, operator.transpose()), self.gram)

    def is_involution(self, operator: DomainMatrix) -> bool:
        return linalg.equal(self(self(operator)), operator)


def clifford_star(
    ctx: CominusculeContext,
    preset: str = "standard",
    *,
    alpha: FieldElement | None = None,
    degree_scales: Mapping[int, Mapping[Weight, FieldElement]] | None = None,
) -> CliffordStar:
    """
    Raises:
        SingularGram: if the Gram matrix is not invertible
    """
    alpha = preset_alpha(ctx.scalars, preset) if alpha is None else ctx.scalars.element(alpha)
    gram = clifford_gram(ctx, alpha, degree_scales)
    try:
        inverse = linalg.inverse(gram)
    except DMNonInvertibleMatrixError as e:
        raise SingularGram(
            f"Gram matrix of {ctx} is singular", {"context": str(ctx), "alpha": str(alpha)}
        ) from e
    if not is_positive_definite(gram, ctx.scalars):
        logger.warning("Gram matrix of %s is not positive definite at the sampled q", ctx)
    return CliffordStar(gram, inverse, alpha)


def levi_generators(ctx: CominusculeContext) -> list[tuple[str, AlgebraElement]]:
    """E_i, F_i of the Levi factor and K_i for every simple root."""
    group = ctx.levi
    generators = []
    for i in ctx.parabolic.levi_indices:
        generators += [(f"E{i + 1}", group.E(i)), (f"F{i + 1}", group.F(i))]
    generators += [(f"K{i + 1}", group.K_simple(i)) for i in ctx.root_system.indices]
    return generators


def hopf_action(module: WeightModule, x: AlgebraElement, operator: DomainMatrix) -> DomainMatrix:
    """x |> T = x_(1) T S(x_(2)) for an operator T on the module."""
    group = x.group
    result = linalg.zeros(module.dim, module.dim, module.domain)
    for (left, right), coeff in group.coproduct(x).terms.items():
        first = module.act(AlgebraElement(group, {left: coeff}))
        second = module.act(group.antipode(AlgebraElement(group, {right: group.scalars.one})))
        result = linalg.add(result, linalg.matmul(linalg.matmul(first, operator), second))
    return result


def is_star_compatible(ctx: CominusculeContext, star: CliffordStar) -> bool:
    """(X |> a)* = S(X)* |> a* for the Levi generators X and a = gamma_+(x_k)."""
    group = ctx.levi
    module = ctx.plus.total_module
    for label, x in levi_generators(ctx):
        partner = group.star(group.antipode(x))
        for k in range(ctx.N):
            a = creation(ctx, k).matrix
            left = star(hopf_action(module, x, a))
            if not linalg.equal(left, hopf_action(module, partner, star(a))):
                logger.warning("star compatibility fails for %s on x%d", label, k + 1)
                return False
    return True


def is_gamma_equivariant(ctx: CominusculeContext, sign: str) -> bool:
    """X |> gamma(e_k) = gamma(X e_k) for the Levi generators X."""
    source = ctx.u_plus if sign == "+" else ctx.u_minus
    module = ctx.plus.total_module
    images = [gamma(ctx, sign, k).matrix for k in range(ctx.N)]
    for label, x in levi_generators(ctx):
        action = source.act(x)
        for k in range(ctx.N):
            expected = linalg.linear_combination(
                ((v, images[b]) for b, v in linalg.column(action, k).items()),
                images[k].shape,
                ctx.scalars.domain,
            )
            if not linalg.equal(hopf_action(module, x, images[k]), expected):
                logger.warning(
                    "gamma_%s is not equivariant for %s on generator %d", sign, label, k + 1
                )
                return False
    return True


@dataclass(frozen=True)
class SweepPoint:
    alpha: FieldElement
    degree: int
    relations: dict[tuple[int, int], dict[Term, FieldElement]]


def star_sweep(ctx: CominusculeContext, alphas: Iterable[FieldElement]) -> list[SweepPoint]:
    """
    For each base scale alpha, gamma_+(x_i) gamma_+(x_j)* in the y_I x_J basis
    and the largest degree appearing.
    """
    points = []
    creations = [creation(ctx, k).matrix for k in range(ctx.N)]
    for alpha in alphas:
        star = clifford_star(ctx, alpha=alpha)
        relations = {
            (i, j): ctx.gamma.expand(linalg.matmul(creations[i], star(creations[j])))
            for i in range(ctx.N)
            for j in range(ctx.N)
        }
        degree = max((expansion_degree(e) for e in relations.values()), default=0)
        points.append(SweepPoint(star.alpha, degree, relations))
        rendered = ctx.scalars.render_q(star.alpha)
        logger.info("star sweep on %s: alpha = %s gives degree %d", ctx, rendered, degree)
    return points


def semisimple_isomorphism(ctx: CominusculeContext) -> DomainMatrix:
    """
    The isomorphism u_- -> u_+ of modules over the semisimple part of the Levi
    factor, sending the highest weight vector of u_- to x_theta.

    Raises:
        VerificationFailed: if the intertwiner is not unique or misses x_theta
    """
    maps = intertwiners(ctx.u_minus, ctx.u_plus, ctx.parabolic.levi_indices)
    if len(maps) != 1:
        raise VerificationFailed(
            f"{len(maps)}-dimensional space of intertwiners u_- -> u_+", {"context": str(ctx)}
        )
    rs = ctx.root_system
    source = ctx.u_minus.weight_indices(rs.negate(rs.simple_root_weight(ctx.node)))[0]
    target = ctx.radical_roots.index(rs.highest_root)
    pivot = linalg.entry(maps[0], target, source)
    if not pivot:
        raise VerificationFailed("intertwiner does not reach x_theta", {"context": str(ctx)})
    return linalg.scale(maps[0], ctx.scalars.inverse(pivot))
