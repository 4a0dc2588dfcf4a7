from collections.abc import Mapping
from typing import Any


class QuantumCliffordError(Exception):
    """
    Base class for every failure raised by the library.

    Each error names the invariant or precondition that failed and the inputs
    that triggered it, so the front end can print a machine-readable record.
    """

    invariant: str = "unspecified"

    def __init__(self, message: str, inputs: Mapping[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.inputs = dict(inputs or {})

    def to_record(self) -> dict[str, Any]:
        """Failure record as emitted by the CLI."""
        return {
            "status": "failed",
            "invariant": self.invariant,
            "inputs": {key: str(value) for key, value in sorted(self.inputs.items())},
            "message": self.message,
        }


class VerificationFailed(QuantumCliffordError):
    invariant = "verification"


# scalar field


class PoleAtParameter(QuantumCliffordError, ArithmeticError):
    invariant = "specialization-pole"


class DivisionByZero(QuantumCliffordError, ZeroDivisionError):
    invariant = "nonzero-divisor"


class ExponentDenominatorMismatch(QuantumCliffordError, ValueError):
    invariant = "exponent-denominator"


# root data


class InvalidType(QuantumCliffordError, ValueError):
    invariant = "cartan-classification"


class NotAPositiveRoot(QuantumCliffordError, ValueError):
    invariant = "positive-root"


class NotReduced(QuantumCliffordError, ValueError):
    invariant = "reduced-word"


# algebra and modules


class DimensionMismatch(QuantumCliffordError, ValueError):
    invariant = "dimension"


class ContextMismatch(QuantumCliffordError, ValueError):
    invariant = "shared-context"


class UnsupportedType(QuantumCliffordError):
    invariant = "seed-type"


class UnreachableWeight(QuantumCliffordError):
    invariant = "reachable-weight"


class InconsistentDecomposition(QuantumCliffordError):
    invariant = "dimension-audit"


class NoInvariantPairing(QuantumCliffordError):
    invariant = "invariant-pairing-exists"


class PairingNotUnique(QuantumCliffordError):
    invariant = "invariant-pairing-unique"


class NoInvariantForm(QuantumCliffordError):
    invariant = "invariant-inner-product"


# braiding


class EigenvalueCollision(QuantumCliffordError):
    invariant = "distinct-double-braiding-eigenvalues"


class IndexOutOfRange(QuantumCliffordError, IndexError):
    invariant = "cactus-index"


# quadratic algebras


class DegreeTooLarge(QuantumCliffordError):
    invariant = "degree-cutoff"


class NonGeneric(QuantumCliffordError):
    invariant = "ordered-monomials-span"


# clifford and dirac


class NotCominuscule(QuantumCliffordError, ValueError):
    invariant = "cominuscule-node"


class ProbeMismatch(QuantumCliffordError):
    invariant = "probe-equality"


class ProbeUnderdetermined(QuantumCliffordError):
    invariant = "probe-rank"


class SingularPairing(QuantumCliffordError):
    invariant = "nondegenerate-pairing"


class RankDeficient(QuantumCliffordError):
    invariant = "gamma-factorization-rank"


class NotFrobenius(QuantumCliffordError):
    invariant = "frobenius-dual-basis"


class SingularGram(QuantumCliffordError):
    invariant = "invertible-gram"


class NonzeroSquare(QuantumCliffordError):
    invariant = "koszul-square-zero"


class MissingInnerProduct(QuantumCliffordError):
    invariant = "inner-product-available"


class IdentityFails(QuantumCliffordError):
    invariant = "dirac-square"
