"""
Finite-dimensional Type-1 modules given by generator matrices over Q(u).

A WeightModule stores a weight per basis vector and the matrices of E_i and
F_i; K_lambda acts diagonally by q^(lambda, wt). Simple modules are built as
cyclic submodules of tensor products of fundamental modules, which in turn sit
inside tensor powers of the q-deformed vector representation.
"""

import logging
from collections import Counter, deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce

import numpy as np
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from quantum_clifford.exceptions import (
    ContextMismatch,
    InconsistentDecomposition,
    NoInvariantForm,
    NoInvariantPairing,
    PairingNotUnique,
    ProbeMismatch,
    ProbeUnderdetermined,
    UnreachableWeight,
    UnsupportedType,
    VerificationFailed,
)
from quantum_clifford.roots import RootSystem, Weight
from quantum_clifford.scalars import FieldElement, ScalarContext
from quantum_clifford.uq import AlgebraElement, QuantumGroup, representation
from quantum_clifford.utils import linalg

logger = logging.getLogger(__name__)

Vector = dict[int, FieldElement]


class WeightModule:
    """
    A weight module of U_q(g) or of a Levi subalgebra U_q(l).

    Attributes:
        root_system: root data of g (weights are always g-weights)
        scalars: the scalar field
        weights: weight of each basis vector, in fundamental-weight coordinates
        active: indices i for which E_i, F_i act
        label: highest weight for simple modules, free text otherwise
    """

    def __init__(
        self,
        root_system: RootSystem,
        scalars: ScalarContext,
        weights: Sequence[Weight],
        E: Mapping[int, DomainMatrix],
        F: Mapping[int, DomainMatrix],
        active: Sequence[int] | None = None,
        label: object = None,
    ):
        self.root_system = root_system
        self.scalars = scalars
        self.weights = tuple(tuple(w) for w in weights)
        self.active = tuple(root_system.indices if active is None else active)
        self._E = {i: E[i].to_sparse() for i in self.active}
        self._F = {i: F[i].to_sparse() for i in self.active}
        self.label = label

    def __str__(self):
        name = f"V{self.label}" if self.label is not None else "module"
        return f"{name} of dim {self.dim} over {self.group}"

    __repr__ = __str__

    @property
    def dim(self) -> int:
        return len(self.weights)

    @cached_property
    def group(self) -> QuantumGroup:
        return QuantumGroup(self.root_system, self.scalars, self.active)

    @property
    def domain(self):
        return self.scalars.domain

    def generator(self, kind: str, i: int) -> DomainMatrix:
        return (self._E if kind == "E" else self._F)[i]

    def E(self, i: int) -> DomainMatrix:
        return self._E[i]

    def F(self, i: int) -> DomainMatrix:
        return self._F[i]

    def K(self, weight: Sequence[int]) -> DomainMatrix:
        values = [self.scalars.q_power(self.root_system.form(weight, mu)) for mu in self.weights]
        return linalg.diagonal(values, self.domain)

    def K_simple(self, i: int, power: int = 1) -> DomainMatrix:
        rs = self.root_system
        return self.K(rs.scale(power, rs.simple_root_weight(i)))

    def act(self, x: AlgebraElement) -> DomainMatrix:
        return representation(x, self)

    @cached_property
    def _columns(self) -> dict[tuple[str, int], list[Vector]]:
        return {
            (kind, i): linalg.columns(self.generator(kind, i)) for kind in "EF" for i in self.active
        }

    def apply(self, kind: str, i: int, vector: Mapping[int, FieldElement]) -> Vector:
        """E_i or F_i applied to a sparse vector."""
        return linalg.apply_sparse(self._columns[(kind, i)], vector, self.domain)

    def weight_indices(self, weight: Sequence[int]) -> list[int]:
        weight = tuple(weight)
        return [b for b, mu in enumerate(self.weights) if mu == weight]

    @cached_property
    def weight_spaces(self) -> dict[Weight, list[int]]:
        spaces: dict[Weight, list[int]] = {}
        for b, mu in enumerate(self.weights):
            spaces.setdefault(mu, []).append(b)
        return spaces

    def vector_weight(self, vector: Mapping[int, object]) -> Weight:
        found = {self.weights[b] for b, v in vector.items() if v}
        if len(found) != 1:
            raise ValueError(f"vector is not a weight vector (weights {sorted(found)})")
        return found.pop()

    def compatible(self, other: "WeightModule") -> None:
        if (
            self.root_system != other.root_system
            or self.scalars != other.scalars
            or self.active != other.active
        ):
            raise ContextMismatch(
                "modules are defined over different algebras",
                {"left": self.group, "right": other.group},
            )

    def verify_relations(self) -> None:
        """
        Raises:
            VerificationFailed: if a defining relation of U_q does not act as zero
        """
        for label, relation in self.group.defining_relations():
            if not linalg.is_zero(self.act(relation)):
                raise VerificationFailed(
                    f"relation {label} fails on {self}", {"relation": label, "module": self}
                )
        for i in self.active:
            alpha = self.root_system.simple_root_weight(i)
            for kind, sign in (("E", 1), ("F", -1)):
                for b, a, _ in linalg.entries(self.generator(kind, i)):
                    expected = tuple(
                        w + sign * x for w, x in zip(self.weights[a], alpha, strict=True)
                    )
                    if self.weights[b] != expected:
                        raise VerificationFailed(
                            f"{kind}{i + 1} does not shift weights by {sign} alpha",
                            {"generator": f"{kind}{i + 1}", "source": self.weights[a]},
                        )

    def restrict(self, indices: Iterable[int]) -> "WeightModule":
        """Restriction to the Levi subalgebra with the given E/F indices."""
        indices = tuple(sorted(indices))
        return WeightModule(
            self.root_system, self.scalars, self.weights, self._E, self._F, indices, self.label
        )


# construction


def _seed_data(rs: RootSystem) -> tuple[list[Weight], list[tuple[int, int, int, int, int]]]:
    """
    Weights and generator pattern of the q-deformed vector representation.

    Each edge (i, source, target, e, f) means E_i v_source = c_e v_target and
    F_i v_target = c_f v_source, with c_1 = 1 and c_2 = [2]_{q_i}.
    """
    n = rs.rank
    match rs.root_type:
        case "A":
            eps = [tuple(int(j == k) for j in range(n + 1)) for k in range(n + 1)]
            alphas = [tuple(int(j == i) - int(j == i + 1) for j in range(n + 1)) for i in range(n)]
            inner = 1
            edges = [(i, i + 1, i, 1, 1) for i in range(n)]
        case "B" | "C" | "D":
            unit = [tuple(int(j == k) for j in range(n)) for k in range(n)]
            zero = [(0,) * n] if rs.root_type == "B" else []
            eps = unit + zero + [tuple(-c for c in v) for v in reversed(unit)]
            position = {v: p for p, v in enumerate(eps)}

            def plus(k: int) -> int:
                return position[unit[k]]

            def minus(k: int) -> int:
                return position[tuple(-c for c in unit[k])]

            alphas = [
                tuple(a - b for a, b in zip(unit[i], unit[i + 1], strict=True))
                for i in range(n - 1)
            ]
            edges = []
            for i in range(n - 1):
                edges.append((i, plus(i + 1), plus(i), 1, 1))
                edges.append((i, minus(i), minus(i + 1), 1, 1))
            last = n - 1
            if rs.root_type == "B":
                inner = 2
                alphas.append(unit[last])
                middle = position[(0,) * n]
                edges.append((last, middle, plus(last), 2, 1))
                edges.append((last, minus(last), middle, 1, 2))
            elif rs.root_type == "C":
                inner = 1
                alphas.append(tuple(2 * c for c in unit[last]))
                edges.append((last, minus(last), plus(last), 1, 1))
            else:
                inner = 1
                alphas.append(tuple(a + b for a, b in zip(unit[n - 2], unit[last], strict=True)))
                edges.append((last, minus(last), plus(n - 2), 1, 1))
                edges.append((last, minus(n - 2), plus(last), 1, 1))
        case _:
            raise UnsupportedType(
                f"no vector representation seed for type {rs.root_type}",
                {"type": rs.root_type, "rank": rs.rank},
            )
    norms = [inner * sum(c * c for c in a) for a in alphas]
    if tuple(norms) != rs.norms:
        raise VerificationFailed(f"seed normalization mismatch for {rs}", {"type": rs})
    weights = [
        tuple(
            2 * inner * sum(a * b for a, b in zip(e, alphas[i], strict=True)) // norms[i]
            for i in range(n)
        )
        for e in eps
    ]
    return weights, edges


def seed_module(rs: RootSystem, scalars: ScalarContext | None = None) -> WeightModule:
    """
    The q-deformed vector representation (types A-D).

    Raises:
        UnsupportedType: for exceptional types
    """
    scalars = scalars or rs.scalars()
    weights, edges = _seed_data(rs)
    dim = len(weights)
    e_entries: dict[int, dict[tuple[int, int], FieldElement]] = {i: {} for i in rs.indices}
    f_entries: dict[int, dict[tuple[int, int], FieldElement]] = {i: {} for i in rs.indices}
    for i, source, target, e, f in edges:
        e_entries[i][(target, source)] = scalars.qnum(e, rs.symmetrizers[i])
        f_entries[i][(source, target)] = scalars.qnum(f, rs.symmetrizers[i])
    E = {i: linalg.from_entries(e_entries[i], (dim, dim), scalars.domain) for i in rs.indices}
    F = {i: linalg.from_entries(f_entries[i], (dim, dim), scalars.domain) for i in rs.indices}
    return WeightModule(rs, scalars, weights, E, F, label="vector")


def trivial_module(
    rs: RootSystem, scalars: ScalarContext | None = None, active=None
) -> WeightModule:
    scalars = scalars or rs.scalars()
    active = tuple(rs.indices if active is None else active)
    zero = linalg.zeros(1, 1, scalars.domain)
    return WeightModule(
        rs,
        scalars,
        [(0,) * rs.rank],
        dict.fromkeys(active, zero),
        dict.fromkeys(active, zero),
        active,
        (0,) * rs.rank,
    )


def tensor(left: WeightModule, right: WeightModule) -> WeightModule:
    """
    U tensor V with the action through the coproduct; basis index u * dim V + v.

    Raises:
        ContextMismatch: if the modules live over different algebras
    """
    left.compatible(right)
    domain = left.domain
    id_left = linalg.identity(left.dim, domain)
    id_right = linalg.identity(right.dim, domain)
    E, F = {}, {}
    for i in left.active:
        E[i] = linalg.add(
            linalg.kron(left.E(i), id_right), linalg.kron(left.K_simple(i), right.E(i))
        )
        F[i] = linalg.add(
            linalg.kron(left.F(i), right.K_simple(i, -1)), linalg.kron(id_left, right.F(i))
        )
    weights = [left.root_system.add(a, b) for a in left.weights for b in right.weights]
    return WeightModule(left.root_system, left.scalars, weights, E, F, left.active, label=None)


def tensor_power(module: WeightModule, n: int) -> WeightModule:
    if n < 1:
        return trivial_module(module.root_system, module.scalars, module.active)
    return reduce(tensor, [module] * n)


def direct_sum(left: WeightModule, right: WeightModule) -> WeightModule:
    """U (+) V with the basis of U first."""
    left.compatible(right)
    n, m = left.dim, right.dim
    domain = left.domain

    def block(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
        entries = {(i, j): v for i, j, v in linalg.entries(a)}
        entries.update({(n + i, n + j): v for i, j, v in linalg.entries(b)})
        return linalg.from_entries(entries, (n + m, n + m), domain)

    E = {i: block(left.E(i), right.E(i)) for i in left.active}
    F = {i: block(left.F(i), right.F(i)) for i in left.active}
    return WeightModule(
        left.root_system, left.scalars, left.weights + right.weights, E, F, left.active
    )


def dual(module: WeightModule, side: str = "left") -> WeightModule:
    """
    Left dual (a.f)(v) = f(S(a) v), or right dual using S^-1.

    Basis: the dual basis; matrices are rho(S(a))^T (resp. S^-1).
    """
    group = module.group
    antipode = group.antipode if side == "left" else group.antipode_inverse
    E = {i: module.act(antipode(group.E(i))).transpose() for i in module.active}
    F = {i: module.act(antipode(group.F(i))).transpose() for i in module.active}
    weights = [module.root_system.negate(mu) for mu in module.weights]
    label = None if module.label is None else ("dual", module.label)
    return WeightModule(module.root_system, module.scalars, weights, E, F, module.active, label)


def submodule(module: WeightModule, basis: DomainMatrix, label: object = None) -> WeightModule:
    """
    The module structure on an invariant subspace spanned by weight vectors.

    Raises:
        VerificationFailed: if the span is not invariant
    """
    cols = linalg.columns(basis)
    weights = [module.vector_weight(c) for c in cols]
    groups: dict[Weight, list[int]] = {}
    for k, w in enumerate(weights):
        groups.setdefault(w, []).append(k)
    # per weight space: pivot rows and the inverse of the square block
    solvers: dict[Weight, tuple[list[int], list[int], DomainMatrix]] = {}
    for w, members in groups.items():
        block = linalg.from_columns([cols[k] for k in members], module.dim, module.domain)
        _, pivot_rows = linalg.rref(block.transpose())
        square = block.extract(pivot_rows, list(range(len(members))))
        solvers[w] = (members, pivot_rows, linalg.inverse(square))
    E, F = {}, {}
    dim = len(cols)
    for kind, target in (("E", E), ("F", F)):
        for i in module.active:
            entries: dict[tuple[int, int], FieldElement] = {}
            for k, c in enumerate(cols):
                image = module.apply(kind, i, c)
                if not image:
                    continue
                w = module.vector_weight(image)
                if w not in solvers:
                    raise VerificationFailed(
                        "subspace is not invariant", {"generator": f"{kind}{i + 1}"}
                    )
                members, rows, inverse = solvers[w]
                known = {r: image[row] for r, row in enumerate(rows) if row in image}
                rhs = linalg.vector(known, len(rows), module.domain)
                coords = linalg.column(linalg.matmul(inverse, rhs), 0)
                rebuilt: Vector = {}
                for r, value in coords.items():
                    for b, x in cols[members[r]].items():
                        rebuilt[b] = rebuilt.get(b, module.scalars.zero) + value * x
                if {b: x for b, x in rebuilt.items() if x} != image:
                    raise VerificationFailed(
                        "subspace is not invariant", {"generator": f"{kind}{i + 1}"}
                    )
                for r, value in coords.items():
                    entries[(members[r], k)] = value
            target[i] = linalg.from_entries(entries, (dim, dim), module.domain)
    return WeightModule(module.root_system, module.scalars, weights, E, F, module.active, label)


def weight_components(module: WeightModule, vector: Mapping[int, FieldElement]) -> list[Vector]:
    parts: dict[Weight, Vector] = {}
    for b, x in vector.items():
        if x:
            parts.setdefault(module.weights[b], {})[b] = x
    return list(parts.values())


def cyclic_span(
    module: WeightModule, generators: Iterable[Mapping[int, FieldElement]]
) -> DomainMatrix:
    """
    Basis (columns) of the submodule generated by the given vectors.

    Breadth-first over F- then E-words; a vector is kept when it enlarges its
    weight space.
    """
    spaces: dict[Weight, linalg.EchelonBasis] = {}
    kept: list[Vector] = []
    queue: deque[Vector] = deque()
    for g in generators:
        queue.extend(weight_components(module, g))
    while queue:
        v = queue.popleft()
        w = module.vector_weight(v)
        space = spaces.setdefault(w, linalg.EchelonBasis(module.domain))
        if not space.add(v):
            continue
        kept.append(v)
        for kind in "FE":
            for i in module.active:
                image = module.apply(kind, i, v)
                if image:
                    queue.append(image)
    return linalg.from_columns(kept, module.dim, module.domain)


def cyclic_submodule(
    module: WeightModule, vector: Mapping[int, FieldElement], label: object = None
) -> tuple[WeightModule, DomainMatrix]:
    """The submodule generated by a vector, with its basis in the ambient module."""
    basis = cyclic_span(module, [vector])
    return submodule(module, basis, label), basis


def highest_weight_vectors(module: WeightModule, weight: Sequence[int]) -> DomainMatrix:
    """Basis (columns, ambient coordinates) of the weight vectors killed by every E_i."""
    indices = module.weight_indices(weight)
    if not indices:
        return linalg.zeros(module.dim, 0, module.domain)
    rows = list(range(module.dim))
    blocks = [module.E(i).extract(rows, indices) for i in module.active]
    stacked = linalg.vstack(blocks, len(indices), module.domain)
    kernel = linalg.nullspace(stacked) if blocks else linalg.identity(len(indices), module.domain)
    lifted = [{indices[r]: x for r, x in col.items()} for col in linalg.columns(kernel)]
    return linalg.from_columns(lifted, module.dim, module.domain)


def is_dominant_for(module: WeightModule, weight: Weight) -> bool:
    return all(weight[i] >= 0 for i in module.active)


@dataclass(frozen=True)
class GrothendieckElement:
    """An integer combination of classes [V(lambda)]."""

    multiplicities: Mapping[Weight, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(w): m for w, m in self.multiplicities.items() if m}
        object.__setattr__(self, "multiplicities", dict(sorted(clean.items())))

    def __getitem__(self, weight: Sequence[int]) -> int:
        return self.multiplicities.get(tuple(weight), 0)

    def __add__(self, other: "GrothendieckElement") -> "GrothendieckElement":
        total = Counter(self.multiplicities)
        total.update(other.multiplicities)
        return GrothendieckElement(total)

    def __neg__(self) -> "GrothendieckElement":
        return GrothendieckElement({w: -m for w, m in self.multiplicities.items()})

    def __sub__(self, other: "GrothendieckElement") -> "GrothendieckElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrothendieckElement):
            return NotImplemented
        return self.multiplicities == other.multiplicities

    def __hash__(self):
        return hash(tuple(self.multiplicities.items()))

    def __le__(self, other: "GrothendieckElement") -> bool:
        return (other - self).is_positive

    @property
    def is_positive(self) -> bool:
        return all(m >= 0 for m in self.multiplicities.values())

    def inf(self, other: "GrothendieckElement") -> "GrothendieckElement":
        keys = set(self.multiplicities) | set(other.multiplicities)
        return GrothendieckElement({w: min(self[w], other[w]) for w in keys})

    def sup(self, other: "GrothendieckElement") -> "GrothendieckElement":
        keys = set(self.multiplicities) | set(other.multiplicities)
        return GrothendieckElement({w: max(self[w], other[w]) for w in keys})

    def dimension(self, rs: RootSystem, subset: Iterable[int] | None = None) -> int:
        subset = None if subset is None else tuple(subset)
        return sum(m * rs.weyl_dimension(w, subset) for w, m in self.multiplicities.items())

    def character(self, rs: RootSystem) -> Counter:
        total: Counter = Counter()
        for w, m in self.multiplicities.items():
            for mu, k in rs.weight_multiplicities(w).items():
                total[mu] += m * k
        return total

    def __str__(self):
        pieces = []
        for w, m in self.multiplicities.items():
            name = f"V({','.join(str(c) for c in w)})"
            pieces.append(name if m == 1 else f"{name}^{m}")
        return " + ".join(pieces) if pieces else "0"


def decompose(module: WeightModule) -> GrothendieckElement:
    """
    Multiplicities by highest-weight-vector counting.

    Raises:
        InconsistentDecomposition: if the Weyl dimension audit fails
    """
    rs = module.root_system
    counts: dict[Weight, int] = {}
    for weight in module.weight_spaces:
        if not is_dominant_for(module, weight):
            continue
        m = highest_weight_vectors(module, weight).shape[1]
        if m:
            counts[weight] = m
    result = GrothendieckElement(counts)
    subset = None if len(module.active) == rs.rank else module.active
    total = result.dimension(rs, subset)
    if total != module.dim:
        raise InconsistentDecomposition(
            f"decomposition {result} has dimension {total}, module has {module.dim}",
            {"module": module, "decomposition": result},
        )
    logger.debug("decomposed %s: %s", module, result)
    return result


def isotypic_components(module: WeightModule) -> dict[Weight, DomainMatrix]:
    """Basis (columns) of each isotypic component, keyed by highest weight."""
    components = {}
    for weight in decompose(module).multiplicities:
        hw = highest_weight_vectors(module, weight)
        components[weight] = cyclic_span(module, linalg.columns(hw))
    return components


def summands(module: WeightModule) -> list[tuple[Weight, DomainMatrix]]:
    """Simple summands: cyclic submodules of a basis of highest weight vectors."""
    result = []
    for weight in decompose(module).multiplicities:
        for hw in linalg.columns(highest_weight_vectors(module, weight)):
            result.append((weight, cyclic_span(module, [hw])))
    return result


# fundamental and simple modules


def _spin_nodes(rs: RootSystem) -> set[int]:
    if rs.root_type == "B":
        return {rs.rank - 1}
    if rs.root_type == "D":
        return {rs.rank - 2, rs.rank - 1}
    return set()


@lru_cache(maxsize=64)
def fundamental_module(rs: RootSystem, scalars: ScalarContext, i: int) -> WeightModule:
    """
    V(w_i) inside the (i+1)-th tensor power of the vector representation.

    Raises:
        UnsupportedType: for exceptional types
        UnreachableWeight: for spin weights of types B and D
    """
    omega = rs.fundamental_weight(i)
    if i in _spin_nodes(rs):
        raise UnreachableWeight(
            f"{omega} is a spin weight, not reachable from the vector representation",
            {"type": rs, "weight": omega},
        )
    seed = seed_module(rs, scalars)
    ambient = tensor_power(seed, i + 1) if i else seed
    hw = highest_weight_vectors(ambient, omega)
    if hw.shape[1] == 0:
        raise UnreachableWeight(f"no highest weight vector of weight {omega}", {"weight": omega})
    module, _ = cyclic_submodule(ambient, linalg.column(hw, 0), label=omega)
    logger.info("built fundamental module V(w%d) of %s, dim %d", i + 1, rs, module.dim)
    return module


def simple_module(
    rs: RootSystem, weight: Sequence[int], scalars: ScalarContext | None = None
) -> WeightModule:
    """
    V(lambda) as the cyclic submodule of the tensor product of fundamental
    modules generated by the tensor product of their highest weight vectors.

    Raises:
        ValueError: if lambda is not dominant
        UnreachableWeight: if lambda involves an unreachable fundamental weight
    """
    scalars = scalars or rs.scalars()
    weight = tuple(weight)
    if not rs.is_dominant(weight):
        raise ValueError(f"{weight} is not dominant")
    factors = [fundamental_module(rs, scalars, i) for i in rs.indices for _ in range(weight[i])]
    if not factors:
        return trivial_module(rs, scalars)
    if len(factors) == 1:
        return factors[0]
    ambient = reduce(tensor, factors)
    top = ambient.weight_indices(weight)
    module, _ = cyclic_submodule(ambient, {top[0]: scalars.one}, label=weight)
    expected = rs.weyl_dimension(weight)
    if module.dim != expected:
        raise InconsistentDecomposition(
            f"V{weight} has dimension {module.dim}, expected {expected}",
            {"weight": weight},
        )
    logger.info("built V%s of %s, dim %d", weight, rs, module.dim)
    return module


def adjoint_module(rs: RootSystem, scalars: ScalarContext | None = None) -> WeightModule:
    """V(theta)."""
    return simple_module(rs, rs.root_weight(rs.highest_root), scalars)


def grothendieck_product(
    rs: RootSystem,
    left: GrothendieckElement,
    right: GrothendieckElement,
    scalars: ScalarContext | None = None,
) -> GrothendieckElement:
    """[U][V] by tensoring simple modules and decomposing."""
    scalars = scalars or rs.scalars()
    total = GrothendieckElement()
    for lam, m in left.multiplicities.items():
        for mu, n in right.multiplicities.items():
            factors = simple_module(rs, lam, scalars), simple_module(rs, mu, scalars)
            product = decompose(tensor(*factors))
            total = total + GrothendieckElement(
                {w: k * m * n for w, k in product.multiplicities.items()}
            )
    return total


# invariant forms

# A term (L, R, c) of a linear condition sum_t c_t L_t^T X R_t = 0 on an unknown
# matrix X; L or R may be None for the identity.
FormTerm = tuple[DomainMatrix | None, DomainMatrix | None, FieldElement]


def _rows(matrix: DomainMatrix | None) -> dict[int, dict[int, FieldElement]] | None:
    return None if matrix is None else matrix.to_sparse().rep


def _solve_form(
    unknowns: Sequence[tuple[int, int]],
    conditions: Sequence[Sequence[FormTerm]],
    scalars: ScalarContext,
) -> list[dict[tuple[int, int], FieldElement]]:
    """Basis of the matrices supported on the unknown entries satisfying every condition."""
    one = scalars.one
    equations: dict[tuple[int, int, int], int] = {}
    entries: dict[tuple[int, int], FieldElement] = {}
    for k, (a, b) in enumerate(unknowns):
        for label, terms in enumerate(conditions):
            for left, right, coeff in terms:
                left_row = {a: one} if left is None else _rows(left).get(a, {})
                right_row = {b: one} if right is None else _rows(right).get(b, {})
                for c, x in left_row.items():
                    for d, y in right_row.items():
                        row = equations.setdefault((label, c, d), len(equations))
                        entries[(row, k)] = entries.get((row, k), scalars.zero) + coeff * x * y
    system = linalg.from_entries(entries, (len(equations), len(unknowns)), scalars.domain)
    kernel = linalg.nullspace(system)
    logger.debug(
        "form system: %d unknowns, %d equations, kernel %d",
        len(unknowns),
        len(equations),
        kernel.shape[1],
    )
    return [{unknowns[k]: v for k, v in col.items()} for col in linalg.columns(kernel)]


def _pairing_conditions(left: WeightModule, right: WeightModule) -> list[list[FormTerm]]:
    one = left.scalars.one
    conditions = []
    for i in left.active:
        # <E a, b> + <K a, E b> = 0 and <F a, K^-1 b> + <a, F b> = 0
        conditions.append([(left.E(i), None, one), (left.K_simple(i), right.E(i), one)])
        conditions.append([(left.F(i), right.K_simple(i, -1), one), (None, right.F(i), one)])
    return conditions


def invariant_pairing(
    left: WeightModule, right: WeightModule, normalize_at: tuple[int, int] | None = None
) -> DomainMatrix:
    """
    The U_q-invariant bilinear pairing left x right -> trivial, as a dim(left) x dim(right) matrix.

    The pairing is unique up to a scalar; it is scaled to 1 at normalize_at, by
    default the first nonzero entry in row-major order.

    Raises:
        NoInvariantPairing: if no nonzero invariant pairing exists
        PairingNotUnique: if the solution space has dimension > 1
    """
    left.compatible(right)
    rs = left.root_system
    unknowns = [
        (a, b) for a, mu in enumerate(left.weights) for b in right.weight_indices(rs.negate(mu))
    ]
    solutions = _solve_form(unknowns, _pairing_conditions(left, right), left.scalars)
    inputs = {"left": left, "right": right}
    if not solutions:
        raise NoInvariantPairing(f"no invariant pairing between {left} and {right}", inputs)
    if len(solutions) > 1:
        raise PairingNotUnique(
            f"{len(solutions)}-dimensional space of invariant pairings", inputs
        )
    (solution,) = solutions
    key = normalize_at if normalize_at is not None else min(solution)
    pivot = solution.get(key)
    if not pivot:
        raise NoInvariantPairing(f"invariant pairing vanishes at {key}", inputs)
    scale = left.scalars.inverse(pivot)
    return linalg.from_entries(
        {k: v * scale for k, v in solution.items()}, (left.dim, right.dim), left.domain
    )


def is_invariant_pairing(left: WeightModule, right: WeightModule, pairing: DomainMatrix) -> bool:
    """Check the module-map equations, including every K_{w_k}."""
    rs = left.root_system
    for terms in _pairing_conditions(left, right):
        total = linalg.zeros(left.dim, right.dim, left.domain)
        for L, R, coeff in terms:
            piece = pairing if L is None else linalg.matmul(L.transpose(), pairing)
            piece = piece if R is None else linalg.matmul(piece, R)
            total = linalg.add(total, linalg.scale(piece, coeff))
        if not linalg.is_zero(total):
            return False
    for k in rs.indices:
        omega = rs.fundamental_weight(k)
        conjugated = linalg.matmul(linalg.matmul(left.K(omega), pairing), right.K(omega))
        if not linalg.equal(conjugated, pairing):
            return False
    return True


def intertwiners(
    source: WeightModule, target: WeightModule, indices: Sequence[int] | None = None
) -> list[DomainMatrix]:
    """
    Basis of the maps X with X E_i = E_i X and X F_i = F_i X for the given indices.

    Only the E/F generators are imposed, so for a proper subset of indices the
    maps intertwine the semisimple part of a Levi subalgebra. Weights are
    matched on the coroots of those indices.
    """
    indices = tuple(source.active if indices is None else indices)
    one = source.scalars.one
    unknowns = [
        (b, a)
        for b, nu in enumerate(target.weights)
        for a, mu in enumerate(source.weights)
        if all(nu[i] == mu[i] for i in indices)
    ]
    conditions = []
    for i in indices:
        for kind in "EF":
            # rho_target(x) X - X rho_source(x) = 0
            conditions.append(
                [
                    (target.generator(kind, i).transpose(), None, one),
                    (None, source.generator(kind, i), -one),
                ]
            )
    solutions = _solve_form(unknowns, conditions, source.scalars)
    shape = (target.dim, source.dim)
    return [linalg.from_entries(solution, shape, source.domain) for solution in solutions]


def evaluation_pairing(
    module: WeightModule, side: str = "left"
) -> tuple[WeightModule, WeightModule, DomainMatrix]:
    """
    The evaluation map as a pairing: V* x V for the left dual, V x *V for the right dual.

    Returns:
        (first factor, second factor, pairing matrix); the matrix is the identity
        in the dual basis
    """
    other = dual(module, side)
    identity = linalg.identity(module.dim, module.domain)
    if side == "left":
        return other, module, identity
    return module, other, identity


def _inner_product_conditions(module: WeightModule) -> list[list[FormTerm]]:
    group = module.group
    minus_one = -module.scalars.one
    conditions = []
    for i in module.active:
        for x in (group.E(i), group.F(i)):
            # rho(x)^T G = G rho(x*)
            conditions.append(
                [
                    (module.act(x), None, module.scalars.one),
                    (None, module.act(group.star(x)), minus_one),
                ]
            )
    return conditions


def _simple_inner_product(module: WeightModule, scale: FieldElement) -> DomainMatrix:
    """Invariant form on a simple module with <v0, v0> = scale for the first basis vector."""
    unknowns = [
        (a, b) for a, mu in enumerate(module.weights) for b in module.weight_indices(mu)
    ]
    solutions = _solve_form(unknowns, _inner_product_conditions(module), module.scalars)
    if len(solutions) != 1:
        raise NoInvariantForm(
            f"{len(solutions)}-dimensional space of invariant forms on {module}",
            {"module": module},
        )
    (solution,) = solutions
    pivot = solution.get((0, 0))
    if not pivot:
        raise NoInvariantForm(
            "invariant form vanishes on the highest weight vector", {"module": module}
        )
    factor = scale * module.scalars.inverse(pivot)
    return linalg.from_entries(
        {k: v * factor for k, v in solution.items()}, (module.dim, module.dim), module.domain
    )


def invariant_inner_product(
    module: WeightModule, scales: Mapping[Weight, FieldElement] | None = None
) -> DomainMatrix:
    """
    Gram matrix G of an inner product with <a v, w> = <v, a* w>.

    Simple summands are taken mutually orthogonal; the summand with highest
    weight lambda has <v_lambda, v_lambda> = scales[lambda] (default 1) on its
    highest weight vector.

    Raises:
        NoInvariantForm: if some summand carries no invariant form
    """
    scales = scales or {}
    scalars = module.scalars
    parts = summands(module)
    blocks = []
    for weight, basis in parts:
        simple = submodule(module, basis, label=weight)
        blocks.append(_simple_inner_product(simple, scalars.element(scales.get(weight, 1))))
    change = linalg.hstack([basis for _, basis in parts], module.dim, module.domain)
    try:
        inverse = linalg.inverse(change)
    except DMNonInvertibleMatrixError as e:
        raise NoInvariantForm("simple summands do not span the module", {"module": module}) from e
    block_entries: dict[tuple[int, int], FieldElement] = {}
    offset = 0
    for block in blocks:
        for i, j, v in linalg.entries(block):
            block_entries[(offset + i, offset + j)] = v
        offset += block.shape[0]
    blockdiag = linalg.from_entries(block_entries, (module.dim, module.dim), module.domain)
    gram = linalg.matmul(linalg.matmul(inverse.transpose(), blockdiag), inverse)
    logger.debug("invariant inner product on %s from %d summands", module, len(parts))
    return gram


def is_invariant_inner_product(module: WeightModule, gram: DomainMatrix) -> bool:
    for terms in _inner_product_conditions(module):
        (x, _, _), (_, y, _) = terms
        if not linalg.equal(linalg.matmul(x.transpose(), gram), linalg.matmul(gram, y)):
            return False
    return linalg.equal(gram, gram.transpose())


def is_positive_definite(
    gram: DomainMatrix, scalars: ScalarContext, q_values: Iterable[float] = (0.5, 2.0)
) -> bool:
    """Numeric positivity at each sampled q (symmetric part, smallest eigenvalue > 0)."""
    for q0 in q_values:
        matrix = scalars.specialize_matrix(gram, q0)
        if not np.allclose(matrix, matrix.T, atol=1e-10):
            logger.warning("Gram matrix is not symmetric at q = %s", q0)
            return False
        threshold = 1e-12 * max(1.0, np.abs(matrix).max(initial=0.0))
        if matrix.size and np.linalg.eigvalsh(matrix).min() <= threshold:
            return False
    return True


# probe families


@lru_cache(maxsize=16)
def probe_family(
    rs: RootSystem, scalars: ScalarContext, degree: int = 2
) -> tuple[WeightModule, ...]:
    """
    Fundamental modules reachable from the vector representation, plus their
    pairwise tensor products when degree is 2.
    """
    fundamentals = []
    for i in rs.indices:
        try:
            fundamentals.append(fundamental_module(rs, scalars, i))
        except UnreachableWeight:
            logger.debug("probe family of %s skips w%d", rs, i + 1)
    probes = list(fundamentals)
    if degree >= 2:
        probes += [
            tensor(a, b) for k, a in enumerate(fundamentals) for b in fundamentals[k:]
        ]
    logger.info("probe family of %s: %d modules", rs, len(probes))
    return tuple(probes)


def _probe_vector(x: AlgebraElement, probes: Sequence[WeightModule]) -> Vector:
    """All probe matrices of x, flattened into one sparse vector."""
    values: Vector = {}
    offset = 0
    for module in probes:
        for i, j, v in linalg.entries(module.act(x)):
            values[offset + i * module.dim + j] = v
        offset += module.dim * module.dim
    return values


def probe_equal(x: AlgebraElement, y: AlgebraElement, probes: Sequence[WeightModule]) -> bool:
    """x and y act identically on every probe module."""
    return all(linalg.is_zero(module.act(x - y)) for module in probes)


def probe_solve(
    target: AlgebraElement,
    candidates: Sequence[AlgebraElement],
    probes: Sequence[WeightModule],
) -> list[FieldElement]:
    """
    Coefficients c with target = sum c_k candidates_k on the probes.

    Raises:
        ProbeUnderdetermined: if the candidates are dependent on the probes
        ProbeMismatch: if target is not in their span on the probes
    """
    scalars = target.group.scalars
    size = sum(m.dim * m.dim for m in probes)
    if not candidates:
        if _probe_vector(target, probes):
            raise ProbeMismatch("element does not vanish on the probes", {"target": str(target)})
        return []
    columns = [_probe_vector(c, probes) for c in candidates]
    matrix = linalg.from_columns(columns, size, scalars.domain)
    if linalg.rank(matrix) < len(candidates):
        raise ProbeUnderdetermined(
            "candidates are linearly dependent on the probe family",
            {"candidates": [str(c) for c in candidates], "probes": len(probes)},
        )
    rhs = linalg.vector(_probe_vector(target, probes), size, scalars.domain)
    try:
        solution = linalg.solve(matrix, rhs)
    except ValueError as e:
        raise ProbeMismatch(
            "element is not in the span of the candidates on the probes", {"target": str(target)}
        ) from e
    coefficients = linalg.column(solution, 0)
    return [coefficients.get(k, scalars.zero) for k in range(len(candidates))]
