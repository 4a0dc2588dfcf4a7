"""
The Koszul boundary and the Dolbeault-Dirac element.

The boundary is the canonical element sum_i x_i (x) y_i of S_q(u_+)^op (x)
Lambda_q(u_-). It acts on W (x) Lambda_q(u_+) for a U_q(g)-module W through
kappa(x_i) = S^-1(c_i E_xi_i) on W and the annihilation operators gamma_-(y_i)
on the exterior algebra.
"""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from quantum_clifford.clifford import CliffordStar, CominusculeContext, annihilation, clifford_star
from quantum_clifford.exceptions import (
    IdentityFails,
    MissingInnerProduct,
    NoInvariantForm,
    NonzeroSquare,
    SingularGram,
)
from quantum_clifford.modules import WeightModule, invariant_inner_product, is_positive_definite
from quantum_clifford.quadratic import ext_square, sym_square
from quantum_clifford.scalars import FieldElement
from quantum_clifford.uq import AlgebraElement
from quantum_clifford.utils import linalg

logger = logging.getLogger(__name__)

# Numeric symmetry tolerance for the orthonormalized operator.
SYMMETRY_TOLERANCE = 1e-10


@dataclass(frozen=True)
class KoszulElement:
    """
    sum c_ij x_i (x) y_j in the fixed bases x of u_+ and y of u_-.

    Both factors have degree one; the first factor multiplies oppositely.
    """

    N: int
    terms: dict[tuple[int, int], FieldElement]

    @property
    def degrees(self) -> tuple[int, int]:
        return 1, 1

    def render(self, scalars) -> str:
        parts = []
        for (i, j), value in sorted(self.terms.items()):
            coefficient = scalars.render_q(value)
            term = f"x{i + 1} (x) y{j + 1}"
            parts.append(term if coefficient == "1" else f"{coefficient}*{term}")
        return " + ".join(parts) or "0"


def koszul_boundary(ctx: CominusculeContext, change: DomainMatrix | None = None) -> KoszulElement:
    """
    sum_a x'_a (x) y'_a for x' = P x and its dual basis y' = P^-T y, written
    back in the bases x and y. Without a change of basis this is sum_i x_i (x) y_i.
    """
    n = ctx.N
    if change is None:
        return KoszulElement(n, {(i, i): ctx.scalars.one for i in range(n)})
    dual_change = linalg.inverse(change).transpose()
    coefficients = linalg.matmul(change.transpose(), dual_change)
    terms = {(i, j): v for i, j, v in linalg.entries(coefficients)}
    logger.debug("Koszul boundary of %s rebuilt in a changed basis (%d terms)", ctx, len(terms))
    return KoszulElement(n, terms)


def is_basis_independent(ctx: CominusculeContext, change: DomainMatrix) -> bool:
    return koszul_boundary(ctx, change) == koszul_boundary(ctx)


def _quotient_map(relations: DomainMatrix) -> DomainMatrix:
    """Rows spanning the functionals that vanish on the relations."""
    return linalg.nullspace(relations.transpose()).transpose()


@dataclass(frozen=True)
class SquareCertificate:
    """The image of the boundary's square in S^2_q(u_+) (x) Lambda^2_q(u_-)."""

    symmetric_dim: int
    exterior_dim: int
    image: DomainMatrix

    @property
    def is_zero(self) -> bool:
        return linalg.is_zero(self.image)


def verify_eth_squared_zero(
    ctx: CominusculeContext, boundary: KoszulElement | None = None
) -> SquareCertificate:
    """
    Reduce sum c_ia c_jb (x_j x_i) (x) (y_a y_b) in degree two.

    Raises:
        NonzeroSquare: if the reduced square does not vanish
    """
    boundary = boundary or koszul_boundary(ctx)
    n, domain = ctx.N, ctx.scalars.domain
    entries: dict[tuple[int, int], FieldElement] = {}
    for (i, a), x in boundary.terms.items():
        for (j, b), y in boundary.terms.items():
            key = (j * n + i, a * n + b)
            entries[key] = entries.get(key, ctx.scalars.zero) + x * y
    square = linalg.from_entries(entries, (n * n, n * n), domain)
    symmetric = _quotient_map(ext_square(ctx.u_plus))
    exterior = _quotient_map(sym_square(ctx.u_minus))
    image = linalg.matmul(linalg.matmul(symmetric, square), exterior.transpose())
    certificate = SquareCertificate(symmetric.shape[0], exterior.shape[0], image)
    if not certificate.is_zero:
        raise NonzeroSquare(
            f"square of the Koszul boundary of {ctx} is nonzero",
            {"context": str(ctx), "entries": len(list(linalg.entries(image)))},
        )
    logger.info(
        "square of the Koszul boundary vanishes in S^2 (x) Lambda^2 of dimension %d x %d",
        certificate.symmetric_dim,
        certificate.exterior_dim,
    )
    return certificate


def kappa(ctx: CominusculeContext, k: int) -> AlgebraElement:
    """S^-1(c_k E_xi_k), the image of x_k in U_q(g)."""
    return ctx.group.antipode_inverse(ctx.schubert[k] * ctx.schubert_scales[k])


def _gram(module: WeightModule) -> DomainMatrix:
    try:
        return invariant_inner_product(module)
    except NoInvariantForm as e:
        raise MissingInnerProduct(
            f"{module} carries no invariant inner product", {"module": str(module)}
        ) from e


@dataclass(frozen=True)
class DiracMatrix:
    """
    Operators on W (x) Lambda_q(u_+), W's index major.

    Attributes:
        module: the U_q(g)-module W
        eth: the boundary acting through kappa (x) gamma_-
        gram: the inner product on W (x) Lambda_q(u_+)
        star: the Clifford star used on the exterior factor
    """

    module: WeightModule
    eth: DomainMatrix
    gram: DomainMatrix
    star: CliffordStar

    @property
    def dim(self) -> int:
        return self.eth.shape[0]

    @cached_property
    def gram_inverse(self) -> DomainMatrix:
        return linalg.inverse(self.gram)

    def adjoint(self, operator: DomainMatrix) -> DomainMatrix:
        return linalg.matmul(linalg.matmul(self.gram_inverse, operator.transpose()), self.gram)

    @cached_property
    def eth_star(self) -> DomainMatrix:
        return self.adjoint(self.eth)

    @cached_property
    def dirac(self) -> DomainMatrix:
        return linalg.add(self.eth, self.eth_star)

    @cached_property
    def square(self) -> DomainMatrix:
        return linalg.matmul(self.dirac, self.dirac)


def dirac_element(
    ctx: CominusculeContext,
    module: WeightModule,
    star: CliffordStar | None = None,
    boundary: KoszulElement | None = None,
) -> DiracMatrix:
    """
    Raises:
        MissingInnerProduct: if W has no invariant inner product
        SingularGram: if the combined Gram matrix is singular
    """
    star = star or clifford_star(ctx)
    boundary = boundary or koszul_boundary(ctx)
    domain = ctx.scalars.domain
    size = module.dim * ctx.plus.dim
    kappas = {k: module.act(kappa(ctx, k)) for k in range(ctx.N)}
    gammas = {k: annihilation(ctx, k).matrix for k in range(ctx.N)}
    eth = linalg.zeros(size, size, domain)
    for (i, j), value in boundary.terms.items():
        eth = linalg.add(eth, linalg.scale(linalg.kron(kappas[i], gammas[j]), value))
    gram = linalg.kron(_gram(module), star.gram)
    result = DiracMatrix(module, eth, gram, star)
    try:
        result.gram_inverse
    except DMNonInvertibleMatrixError as e:
        raise SingularGram(
            f"Gram matrix on {module} (x) Lambda_q(u_+) is singular", {"module": str(module)}
        ) from e
    logger.info("Dirac element of %s on %s: %d x %d", ctx, module, size, size)
    return result


@dataclass(frozen=True)
class DiracSquareReport:
    dimension: int
    eth_squared_zero: bool
    eth_star_squared_zero: bool
    laplacian_identity: bool
    self_adjoint: bool

    @property
    def passed(self) -> bool:
        return (
            self.eth_squared_zero
            and self.eth_star_squared_zero
            and self.laplacian_identity
            and self.self_adjoint
        )


def dirac_square_report(dirac: DiracMatrix) -> DiracSquareReport:
    """Exact checks of eth^2 = 0, (eth*)^2 = 0 and D^2 = eth eth* + eth* eth."""
    eth, eth_star = dirac.eth, dirac.eth_star
    laplacian = linalg.add(linalg.matmul(eth, eth_star), linalg.matmul(eth_star, eth))
    return DiracSquareReport(
        dimension=dirac.dim,
        eth_squared_zero=linalg.is_zero(linalg.matmul(eth, eth)),
        eth_star_squared_zero=linalg.is_zero(linalg.matmul(eth_star, eth_star)),
        laplacian_identity=linalg.equal(dirac.square, laplacian),
        self_adjoint=linalg.equal(dirac.adjoint(dirac.dirac), dirac.dirac),
    )


def verify_dirac_square(dirac: DiracMatrix) -> DiracSquareReport:
    """
    Raises:
        IdentityFails: if one of the identities of dirac_square_report fails
    """
    report = dirac_square_report(dirac)
    if not report.passed:
        raise IdentityFails(f"Dirac identities fail on {dirac.module}", {"report": report.__dict__})
    return report


def dirac_spectrum(dirac: DiracMatrix, q0: float) -> list[float]:
    """
    Sorted eigenvalues of D^2 at q = q0.

    Raises:
        PoleAtParameter: if some entry has a pole at q0
    """
    matrix = dirac.module.scalars.specialize_matrix(dirac.square, q0)
    values = np.linalg.eigvals(matrix.astype(float))
    if np.abs(values.imag).max(initial=0.0) > SYMMETRY_TOLERANCE:
        logger.warning("D^2 has non-real eigenvalues at q = %s", q0)
    return sorted(float(v) for v in values.real)


@dataclass(frozen=True)
class OrthonormalForm:
    """L^T D L^-T for the Cholesky factor G = L L^T of the specialized Gram matrix."""

    q0: float
    matrix: np.ndarray
    asymmetry: float

    @property
    def is_symmetric(self) -> bool:
        return self.asymmetry <= SYMMETRY_TOLERANCE


def orthonormal_form(dirac: DiracMatrix, q0: float) -> OrthonormalForm:
    """
    Raises:
        numpy.linalg.LinAlgError: if the Gram matrix is not positive definite at q0
    """
    scalars = dirac.module.scalars
    gram = scalars.specialize_matrix(dirac.gram, q0).astype(float)
    operator = scalars.specialize_matrix(dirac.dirac, q0).astype(float)
    lower = np.linalg.cholesky((gram + gram.T) / 2)
    matrix = lower.T @ operator @ np.linalg.inv(lower.T)
    asymmetry = float(np.abs(matrix - matrix.T).max(initial=0.0))
    if asymmetry > SYMMETRY_TOLERANCE:
        logger.warning("orthonormalized D is not symmetric at q = %s (%.3g)", q0, asymmetry)
    return OrthonormalForm(q0, matrix, asymmetry)


def gram_is_positive(dirac: DiracMatrix, q_values: Iterable[float] = (0.5, 2.0)) -> bool:
    return is_positive_definite(dirac.gram, dirac.module.scalars, q_values)


def spectrum_sweep(dirac: DiracMatrix, q_values: Iterable[float]) -> Mapping[float, list[float]]:
    return {q0: dirac_spectrum(dirac, q0) for q0 in q_values}
