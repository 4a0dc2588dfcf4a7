"""
Exact linear algebra over Q(u) on top of sympy's sparse DomainMatrix.

Subspaces are stored as matrices whose columns form a basis. All helpers keep
matrices in the sparse format so that products and sums never densify.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

from sympy import QQ
from sympy.polys.domains import Domain
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

logger = logging.getLogger(__name__)

# Evaluation points for the full-rank certificate; poles of the field elements
# used here are roots of unity or 0, never these.
_CERTIFICATE_POINTS = (Fraction(7, 5), Fraction(13, 8), Fraction(5, 3))


def zeros(rows: int, cols: int, domain: Domain) -> DomainMatrix:
    return DomainMatrix.zeros((rows, cols), domain).to_sparse()


def identity(n: int, domain: Domain) -> DomainMatrix:
    return DomainMatrix.eye(n, domain).to_sparse()


def from_entries(
    entries: Mapping[tuple[int, int], object], shape: tuple[int, int], domain: Domain
) -> DomainMatrix:
    """Sparse matrix from {(row, col): value}; zero values are dropped."""
    dod: dict[int, dict[int, object]] = {}
    for (i, j), value in entries.items():
        if value:
            dod.setdefault(i, {})[j] = value
    return DomainMatrix.from_dod(dod, shape, domain)


def from_columns(
    columns: Sequence[Mapping[int, object]], rows: int, domain: Domain
) -> DomainMatrix:
    """Matrix whose j-th column has the sparse entries columns[j]."""
    entries = {(i, j): value for j, column in enumerate(columns) for i, value in column.items()}
    return from_entries(entries, (rows, len(columns)), domain)


def diagonal(values: Sequence[object], domain: Domain) -> DomainMatrix:
    n = len(values)
    return from_entries({(i, i): value for i, value in enumerate(values)}, (n, n), domain)


def entries(matrix: DomainMatrix) -> Iterable[tuple[int, int, object]]:
    """Nonzero entries as (row, col, value)."""
    for i, row in matrix.to_sparse().rep.items():
        for j, value in row.items():
            yield i, j, value


def entry(matrix: DomainMatrix, i: int, j: int):
    return matrix.to_sparse().rep.get(i, {}).get(j, matrix.domain.zero)


def column(matrix: DomainMatrix, j: int) -> dict[int, object]:
    """Sparse entries of column j."""
    return {i: row[j] for i, row in matrix.to_sparse().rep.items() if j in row}


def columns(matrix: DomainMatrix) -> list[dict[int, object]]:
    cols: list[dict[int, object]] = [{} for _ in range(matrix.shape[1])]
    for i, j, value in entries(matrix):
        cols[j][i] = value
    return cols


def add(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    return a.to_sparse().add(b.to_sparse())


def sub(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    return a.to_sparse().sub(b.to_sparse())


def matmul(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    return a.to_sparse().matmul(b.to_sparse())


def scale(a: DomainMatrix, factor) -> DomainMatrix:
    if not factor:
        return zeros(*a.shape, a.domain)
    return a.to_sparse().scalarmul(factor)


def product(matrices: Sequence[DomainMatrix], n: int, domain: Domain) -> DomainMatrix:
    """Ordered product M_0 M_1 ... M_k (identity for an empty sequence)."""
    result = identity(n, domain)
    for matrix in matrices:
        result = matmul(result, matrix)
    return result


def linear_combination(terms: Iterable[tuple[object, DomainMatrix]], shape, domain) -> DomainMatrix:
    result = zeros(*shape, domain)
    for coeff, matrix in terms:
        result = add(result, scale(matrix, coeff))
    return result


def kron(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    """Kronecker product, a's index major."""
    (ra, ca), (rb, cb) = a.shape, b.shape
    result: dict[tuple[int, int], object] = {}
    b_entries = list(entries(b))
    for i, j, x in entries(a):
        for k, m, y in b_entries:
            result[(i * rb + k, j * cb + m)] = x * y
    return from_entries(result, (ra * rb, ca * cb), a.domain)


def hstack(matrices: Sequence[DomainMatrix], rows: int, domain: Domain) -> DomainMatrix:
    if not matrices:
        return zeros(rows, 0, domain)
    first, *rest = [m.to_sparse() for m in matrices]
    return first.hstack(*rest) if rest else first


def vstack(matrices: Sequence[DomainMatrix], cols: int, domain: Domain) -> DomainMatrix:
    if not matrices:
        return zeros(0, cols, domain)
    first, *rest = [m.to_sparse() for m in matrices]
    return first.vstack(*rest) if rest else first


def is_zero(matrix: DomainMatrix) -> bool:
    return matrix.is_zero_matrix


def rref(matrix: DomainMatrix) -> tuple[DomainMatrix, list[int]]:
    reduced, pivots = matrix.to_sparse().rref()
    return reduced.to_sparse(), list(pivots)


def _specialized(matrix: DomainMatrix, point: Fraction) -> DomainMatrix | None:
    """Entries evaluated at u = point over QQ, or None on a pole."""
    dod: dict[int, dict[int, object]] = {}
    for i, j, value in entries(matrix):
        numer = _evaluate(value.numer, point)
        denom = _evaluate(value.denom, point)
        if denom == 0:
            return None
        result = numer / denom
        if result:
            dod.setdefault(i, {})[j] = QQ(result.numerator, result.denominator)
    return DomainMatrix.from_dod(dod, matrix.shape, QQ)


def _evaluate(poly, point: Fraction) -> Fraction:
    total = Fraction(0)
    for (k,), coeff in poly.terms():
        total += Fraction(int(coeff.numerator), int(coeff.denominator)) * point**k
    return total


def rank(matrix: DomainMatrix) -> int:
    """
    Exact rank over Q(u).

    A rational point where the specialized matrix has full rank certifies full
    generic rank; otherwise the rank is computed over the field.
    """
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return 0
    full = min(rows, cols)
    if matrix.domain.is_FractionField:
        for point in _CERTIFICATE_POINTS:
            special = _specialized(matrix, point)
            if special is None:
                continue
            if special.rank() == full:
                logger.debug("full rank %d certified at u = %s", full, point)
                return full
            break
    return len(rref(matrix)[1])


def column_basis(matrix: DomainMatrix) -> DomainMatrix:
    """Linearly independent columns spanning the column space."""
    _, pivots = rref(matrix)
    return matrix.to_sparse().extract(list(range(matrix.shape[0])), pivots).to_sparse()


def nullspace(matrix: DomainMatrix) -> DomainMatrix:
    """Columns form a basis of {x : matrix x = 0}."""
    rows, cols = matrix.shape
    if rows == 0:
        return identity(cols, matrix.domain)
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [j for j in range(cols) if j not in pivot_set]
    basis = []
    reduced_rows = reduced.rep
    for f in free:
        vector = {f: matrix.domain.one}
        for r, p in enumerate(pivots):
            value = reduced_rows.get(r, {}).get(f)
            if value:
                vector[p] = -value
        basis.append(vector)
    return from_columns(basis, cols, matrix.domain)


def solve(matrix: DomainMatrix, rhs: DomainMatrix) -> DomainMatrix:
    """
    One solution X of matrix X = rhs (free variables set to zero).

    Raises:
        ValueError: if the system is inconsistent
    """
    rows, cols = matrix.shape
    augmented = matrix.to_sparse().hstack(rhs.to_sparse())
    reduced, pivots = rref(augmented)
    if any(p >= cols for p in pivots):
        raise ValueError("inconsistent linear system")
    solution: dict[tuple[int, int], object] = {}
    reduced_rows = reduced.rep
    for r, p in enumerate(pivots):
        for j, value in reduced_rows.get(r, {}).items():
            if j >= cols:
                solution[(p, j - cols)] = value
    return from_entries(solution, (cols, rhs.shape[1]), matrix.domain)


def inverse(matrix: DomainMatrix) -> DomainMatrix:
    """
    Raises:
        DMNonInvertibleMatrixError: if the matrix is singular
    """
    n, m = matrix.shape
    if n != m:
        raise DMNonInvertibleMatrixError("matrix is not square")
    augmented = matrix.to_sparse().hstack(identity(n, matrix.domain))
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise DMNonInvertibleMatrixError("matrix is singular")
    return reduced.extract(list(range(n)), list(range(n, 2 * n))).to_sparse()


def intersection(first: DomainMatrix, second: DomainMatrix) -> DomainMatrix:
    """Basis (columns) of the intersection of two column spaces."""
    n = first.shape[0]
    if first.shape[1] == 0 or second.shape[1] == 0:
        return zeros(n, 0, first.domain)
    kernel = nullspace(hstack([first, scale(second, -first.domain.one)], n, first.domain))
    k = first.shape[1]
    top = kernel.extract(list(range(k)), list(range(kernel.shape[1])))
    return column_basis(matmul(first, top)) if kernel.shape[1] else zeros(n, 0, first.domain)


def coordinates(basis: DomainMatrix, vectors: DomainMatrix) -> DomainMatrix:
    """
    Coordinates of vectors (columns) in a basis with independent columns.

    Raises:
        ValueError: if some vector lies outside the span
    """
    return solve(basis, vectors)


def vector(values: Mapping[int, object], n: int, domain: Domain) -> DomainMatrix:
    """Column vector from sparse entries."""
    return from_columns([values], n, domain)


class EchelonBasis:
    """
    Incrementally grown basis of a subspace, kept in echelon form.

    Vectors are sparse dicts {index: value}. Each stored vector is reduced
    against the earlier ones, so membership is one sweep in insertion order.
    """

    def __init__(self, domain: Domain):
        self.domain = domain
        self._rows: list[tuple[int, dict[int, object]]] = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, values: Mapping[int, object]) -> dict[int, object]:
        residue = {i: v for i, v in values.items() if v}
        for pivot, row in self._rows:
            factor = residue.get(pivot)
            if not factor:
                continue
            for i, v in row.items():
                updated = residue.get(i, self.domain.zero) - factor * v
                if updated:
                    residue[i] = updated
                else:
                    residue.pop(i, None)
        return residue

    def contains(self, values: Mapping[int, object]) -> bool:
        return not self.reduce(values)

    def add(self, values: Mapping[int, object]) -> bool:
        """Add a vector; False if it was already in the span."""
        residue = self.reduce(values)
        if not residue:
            return False
        pivot = min(residue)
        inverse_pivot = self.domain.one / residue[pivot]
        self._rows.append((pivot, {i: v * inverse_pivot for i, v in residue.items()}))
        return True


def apply_sparse(
    cols: Sequence[Mapping[int, object]], values: Mapping[int, object], domain: Domain
):
    """Matrix (given by its sparse columns) times a sparse vector."""
    result: dict[int, object] = {}
    for j, x in values.items():
        for i, a in cols[j].items():
            updated = result.get(i, domain.zero) + a * x
            if updated:
                result[i] = updated
            else:
                result.pop(i, None)
    return result


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and is_zero(sub(a, b))
