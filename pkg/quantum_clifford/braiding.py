"""
Braidings and coboundary commutors of Type-1 modules.

The braiding is R_hat = flip . B . R, where R is the product over the positive
roots (in the order of a fixed reduced word for w0, last root leftmost) of the
series sum_t c_t F_beta^t (x) E_beta^t, and B multiplies u (x) v by
q^(wt u, wt v). The commutor is R_hat . A with A a polynomial in the double
braiding that acts on each isotypic component V(mu) of V(lambda) (x) V(lambda')
by q^((c(lambda) + c(lambda') - c(mu)) / 2), c the Casimir value.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from quantum_clifford.exceptions import (
    DimensionMismatch,
    EigenvalueCollision,
    IndexOutOfRange,
)
from quantum_clifford.modules import (
    WeightModule,
    decompose,
    dual,
    submodule,
    summands,
    tensor,
    tensor_power,
)
from quantum_clifford.roots import Root, RootSystem, Weight
from quantum_clifford.scalars import FieldElement, ScalarContext
from quantum_clifford.uq import AlgebraElement, QuantumGroup
from quantum_clifford.utils import linalg

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearMap:
    """A linear map between modules; matrix is dim(target) x dim(source)."""

    source: WeightModule
    target: WeightModule
    matrix: DomainMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f"matrix of shape {self.matrix.shape} for a map of dimension "
                f"{self.source.dim} -> {self.target.dim}",
                {"shape": self.matrix.shape, "source": self.source.dim, "target": self.target.dim},
            )

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """Composition self . other."""
        return LinearMap(other.source, self.target, linalg.matmul(self.matrix, other.matrix))

    def is_module_map(self) -> bool:
        for i in self.source.active:
            for kind in "EF":
                left = linalg.matmul(self.target.generator(kind, i), self.matrix)
                right = linalg.matmul(self.matrix, self.source.generator(kind, i))
                if not linalg.equal(left, right):
                    return False
        source, target = self.source.weights, self.target.weights
        return all(target[b] == source[a] for b, a, _ in linalg.entries(self.matrix))

    def is_identity(self) -> bool:
        return linalg.equal(self.matrix, linalg.identity(self.source.dim, self.source.domain))


def identity_map(module: WeightModule) -> LinearMap:
    return LinearMap(module, module, linalg.identity(module.dim, module.domain))


def flip_matrix(m: int, n: int, domain) -> DomainMatrix:
    """The tensor flip C^m (x) C^n -> C^n (x) C^m."""
    entries = {(j * m + i, i * n + j): domain.one for i in range(m) for j in range(n)}
    return linalg.from_entries(entries, (m * n, m * n), domain)


@lru_cache(maxsize=16)
def root_vector_data(
    rs: RootSystem, scalars: ScalarContext, active: tuple[int, ...] | None = None
) -> tuple[tuple[Root, AlgebraElement, AlgebraElement], ...]:
    """
    (beta_k, E_beta_k, F_beta_k) along the fixed reduced word for w0, or for
    the longest element of the Levi subgroup on the active indices.
    """
    group = QuantumGroup(rs, scalars, active)
    word = rs.longest_word(active)
    roots = rs.inversion_roots(word)
    es = group.root_vectors(word, "E")
    fs = group.root_vectors(word, "F")
    logger.debug("root vectors of %s along %s", group, word)
    return tuple(zip(roots, es, fs, strict=True))


def _series_coefficient(scalars: ScalarContext, d: int, t: int) -> FieldElement:
    """(1 - q_b^-2)^t q_b^(t(t+1)/2) / [t]_{q_b}!  with q_b = q^d."""
    base = scalars.one - scalars.q_power(-2 * d)
    return base**t * scalars.q_power(d * t * (t + 1) // 2) / scalars.qfact(t, d)


def _root_factor(
    scalars: ScalarContext, d: int, f_left: DomainMatrix, e_right: DomainMatrix
) -> DomainMatrix:
    n = f_left.shape[0] * e_right.shape[0]
    domain = scalars.domain
    total = linalg.identity(n, domain)
    f_power, e_power = f_left, e_right
    t = 1
    while not (linalg.is_zero(f_power) or linalg.is_zero(e_power)):
        term = linalg.kron(f_power, e_power)
        total = linalg.add(total, linalg.scale(term, _series_coefficient(scalars, d, t)))
        f_power = linalg.matmul(f_power, f_left)
        e_power = linalg.matmul(e_power, e_right)
        t += 1
    return total


def weight_factor(left: WeightModule, right: WeightModule) -> DomainMatrix:
    """B: u (x) v -> q^(wt u, wt v) u (x) v."""
    rs, scalars = left.root_system, left.scalars
    values = [scalars.q_power(rs.form(mu, nu)) for mu in left.weights for nu in right.weights]
    return linalg.diagonal(values, scalars.domain)


def braiding(left: WeightModule, right: WeightModule) -> LinearMap:
    """
    R_hat: left (x) right -> right (x) left.

    Raises:
        ContextMismatch: for modules over different algebras
    """
    left.compatible(right)
    rs, scalars = left.root_system, left.scalars
    n = left.dim * right.dim
    universal = linalg.identity(n, scalars.domain)
    for beta, e_beta, f_beta in root_vector_data(rs, scalars, left.active):
        d = rs.root_form(beta, beta) // 2
        factor = _root_factor(scalars, d, left.act(f_beta), right.act(e_beta))
        # later roots multiply on the left
        universal = linalg.matmul(factor, universal)
    matrix = linalg.matmul(
        flip_matrix(left.dim, right.dim, scalars.domain),
        linalg.matmul(weight_factor(left, right), universal),
    )
    logger.debug(
        "braiding %s (x) %s: %d nonzero entries", left, right, len(list(linalg.entries(matrix)))
    )
    return LinearMap(tensor(left, right), tensor(right, left), matrix)


def double_braiding(left: WeightModule, right: WeightModule) -> LinearMap:
    """R_hat_{VU} R_hat_{UV} on U (x) V."""
    return braiding(right, left) @ braiding(left, right)


class Eigendatum(NamedTuple):
    weight: Weight
    exponent: Fraction
    scalar: FieldElement


def _exponent(rs: RootSystem, left: Weight, right: Weight, mu: Weight) -> Fraction:
    return rs.casimir(mu) - rs.casimir(left) - rs.casimir(right)


def _constituents(
    left: WeightModule, right: WeightModule
) -> list[tuple[Weight, Weight, list[Weight]]]:
    """(lambda, lambda', [mu ...]) for the simple summands of both factors."""
    rs = left.root_system
    if len(left.active) == rs.rank:
        return [
            (lam, lam2, list(rs.tensor_decomposition(lam, lam2)))
            for lam in decompose(left).multiplicities
            for lam2 in decompose(right).multiplicities
        ]
    # Levi modules: decompose products of concrete simple summands
    first = dict(summands(left))
    second = dict(summands(right))
    result = []
    for lam, basis in first.items():
        for lam2, basis2 in second.items():
            product = tensor(submodule(left, basis), submodule(right, basis2))
            result.append((lam, lam2, list(decompose(product).multiplicities)))
    return result


def double_braiding_eigendata(left: WeightModule, right: WeightModule) -> list[Eigendatum]:
    """
    (mu, e_mu, q^e_mu) for each constituent V(mu) of V(lambda) (x) V(lambda').

    Reducible inputs are decomposed first; one entry per (lambda, lambda', mu).

    Raises:
        EigenvalueCollision: if two distinct constituents of one product of
            simple summands share an eigenvalue
    """
    rs, scalars = left.root_system, left.scalars
    data = []
    for lam, lam2, constituents in _constituents(left, right):
        seen: dict[Fraction, Weight] = {}
        for mu in constituents:
            e = _exponent(rs, lam, lam2, mu)
            if e in seen:
                raise EigenvalueCollision(
                    f"V{seen[e]} and V{mu} share the double braiding eigenvalue q^{e}",
                    {"left": lam, "right": lam2, "weights": [seen[e], mu], "exponent": str(e)},
                )
            seen[e] = mu
            data.append(Eigendatum(mu, e, scalars.q_power(e)))
    return data


def _correction(left: WeightModule, right: WeightModule, square: DomainMatrix) -> DomainMatrix:
    """A = f(double braiding) with f(q^e) = q^(-e/2), by Lagrange interpolation."""
    rs, scalars = left.root_system, left.scalars
    exponents = sorted(
        {
            _exponent(rs, lam, lam2, mu)
            for lam, lam2, constituents in _constituents(left, right)
            for mu in constituents
        }
    )
    n = square.shape[0]
    domain = scalars.domain
    identity = linalg.identity(n, domain)
    result = linalg.zeros(n, n, domain)
    for e in exponents:
        projector = identity
        for other in exponents:
            if other == e:
                continue
            shifted = linalg.sub(square, linalg.scale(identity, scalars.q_power(other)))
            denominator = scalars.q_power(e) - scalars.q_power(other)
            projector = linalg.scale(
                linalg.matmul(projector, shifted), scalars.inverse(denominator)
            )
        result = linalg.add(result, linalg.scale(projector, scalars.q_power(-e / 2)))
    logger.debug("commutor correction from %d eigenvalues", len(exponents))
    return result


def commutor(left: WeightModule, right: WeightModule) -> LinearMap:
    """sigma: left (x) right -> right (x) left, with sigma_{VU} sigma_{UV} = id."""
    r_hat = braiding(left, right)
    square = braiding(right, left) @ r_hat
    correction = _correction(left, right, square.matrix)
    return LinearMap(r_hat.source, r_hat.target, linalg.matmul(r_hat.matrix, correction))


def correction_squares_to_inverse(left: WeightModule, right: WeightModule) -> bool:
    """A^2 (R_hat_{VU} R_hat_{UV}) = id, relating the commutor to the braiding."""
    square = double_braiding(left, right).matrix
    correction = _correction(left, right, square)
    product = linalg.matmul(linalg.matmul(correction, correction), square)
    return linalg.equal(product, linalg.identity(square.shape[0], left.domain))


def transpose_compatible(left: WeightModule, right: WeightModule) -> bool:
    """
    sigma_{VW}^T = sigma_{V*W*} under (W (x) V)* = V* (x) W*, (V (x) W)* = W* (x) V*.
    """
    sigma = commutor(left, right).matrix
    sigma_dual = commutor(dual(left), dual(right)).matrix
    flip = flip_matrix(left.dim, right.dim, left.domain)
    expected = linalg.matmul(linalg.matmul(flip, sigma.transpose()), flip)
    return linalg.equal(expected, sigma_dual)


def yang_baxter_holds(module: WeightModule) -> bool:
    """(R x 1)(1 x R)(R x 1) = (1 x R)(R x 1)(1 x R) on V^(x3)."""
    r = braiding(module, module).matrix
    one = linalg.identity(module.dim, module.domain)
    first = linalg.kron(r, one)
    second = linalg.kron(one, r)
    left = linalg.product([first, second, first], first.shape[0], module.domain)
    right = linalg.product([second, first, second], first.shape[0], module.domain)
    return linalg.equal(left, right)


def classical_limit_is_flip(left: WeightModule, right: WeightModule) -> bool:
    """The commutor at q = 1 is the tensor flip."""
    sigma = commutor(left, right).matrix
    at_one = left.scalars.specialize_matrix(sigma, 1)
    flip = left.scalars.specialize_matrix(flip_matrix(left.dim, right.dim, left.domain), 1)
    return bool(np.allclose(at_one, flip, atol=1e-12))


# cactus group action on tensor powers


def _check_interval(n: int, *bounds: int) -> None:
    in_range = all(1 <= b <= n for b in bounds)
    if not in_range or list(bounds) != sorted(bounds) or bounds[-2] == bounds[-1]:
        raise IndexOutOfRange(
            f"invalid slot interval {bounds} for n = {n}", {"n": n, "slots": bounds}
        )


def cactus_sigma(module: WeightModule, n: int, p: int, r: int, t: int) -> LinearMap:
    """
    sigma_{p,r,t}: the commutor of the blocks p..r and r+1..t of V^(x n) (slots 1-based).

    Raises:
        IndexOutOfRange: unless 1 <= p <= r < t <= n
    """
    _check_interval(n, p, r, t)
    block = commutor(tensor_power(module, r - p + 1), tensor_power(module, t - r)).matrix
    domain = module.domain
    before = linalg.identity(module.dim ** (p - 1), domain)
    after = linalg.identity(module.dim ** (n - t), domain)
    matrix = linalg.kron(before, linalg.kron(block, after))
    power = tensor_power(module, n)
    return LinearMap(power, power, matrix)


def cactus_generator(module: WeightModule, n: int, p: int, t: int) -> LinearMap:
    """
    s_{p,t} on V^(x n): s_{p,p+1} = sigma_{p,p,p+1}, s_{p,t} = sigma_{p,p,t} s_{p+1,t}.

    Raises:
        IndexOutOfRange: unless 1 <= p < t <= n
    """
    _check_interval(n, p, t)
    if t == p + 1:
        return cactus_sigma(module, n, p, p, t)
    return cactus_sigma(module, n, p, p, t) @ cactus_generator(module, n, p + 1, t)


def cactus_relations(module: WeightModule, n: int) -> dict[str, bool]:
    """Check the three families of cactus relations on V^(x n)."""
    generators = {
        (p, t): cactus_generator(module, n, p, t) for p in range(1, n) for t in range(p + 1, n + 1)
    }
    involutive = all(
        linalg.equal(
            linalg.matmul(s.matrix, s.matrix), linalg.identity(s.source.dim, module.domain)
        )
        for s in generators.values()
    )
    disjoint = True
    nested = True
    for (p, t), s in generators.items():
        for (k, l), s2 in generators.items():
            if t < k:
                disjoint &= linalg.equal(
                    linalg.matmul(s.matrix, s2.matrix), linalg.matmul(s2.matrix, s.matrix)
                )
            elif p <= k and l <= t and (k, l) != (p, t):
                mirrored = generators[(p + t - l, p + t - k)]
                nested &= linalg.equal(
                    linalg.matmul(s.matrix, s2.matrix), linalg.matmul(mirrored.matrix, s.matrix)
                )
    logger.info("cactus relations on %d-fold tensor power checked", n)
    return {"involutive": involutive, "disjoint": disjoint, "nested": nested}


def symmetry_holds(left: WeightModule, right: WeightModule) -> bool:
    """sigma_{WV} sigma_{VW} = id."""
    return (commutor(right, left) @ commutor(left, right)).is_identity()


def cactus_axiom_holds(first: WeightModule, second: WeightModule, third: WeightModule) -> bool:
    """sigma_{V(x)U,W} (sigma_{UV} (x) 1) = sigma_{U,W(x)V} (1 (x) sigma_{VW}) on U (x) V (x) W."""
    domain = first.domain
    sigma_uv = linalg.kron(commutor(first, second).matrix, linalg.identity(third.dim, domain))
    sigma_vw = linalg.kron(linalg.identity(first.dim, domain), commutor(second, third).matrix)
    top = linalg.matmul(commutor(tensor(second, first), third).matrix, sigma_uv)
    bottom = linalg.matmul(commutor(first, tensor(third, second)).matrix, sigma_vw)
    return linalg.equal(top, bottom)


def eigenvalue_signs(module: WeightModule, q0: float = 2.0) -> list[float]:
    """Numeric eigenvalues of sigma_{VV} at q0 (all of them are +1 or -1)."""
    sigma = module.scalars.specialize_matrix(commutor(module, module).matrix, q0)
    return sorted(float(x) for x in np.real(np.linalg.eigvals(sigma)))


def permutation_action(module: WeightModule, n: int, order: Sequence[int]) -> DomainMatrix:
    """The slot permutation v_1 (x) ... (x) v_n -> v_order[0] (x) ... at q = 1."""
    d = module.dim
    size = d**n
    entries = {}
    for index in range(size):
        digits = [(index // d ** (n - 1 - k)) % d for k in range(n)]
        image = sum(digits[order[k] - 1] * d ** (n - 1 - k) for k in range(n))
        entries[(image, index)] = module.domain.one
    return linalg.from_entries(entries, (size, size), module.domain)
