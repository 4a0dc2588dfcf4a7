"""
U_q(g) as a symbolic algebra of formal words.

Elements are finite linear combinations of words in the generators E_i, F_i and
K_lambda (lambda in P). No normal form is imposed beyond merging adjacent K's;
identities between elements are decided by their action on modules.
"""

import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Protocol

from sympy.polys.matrices import DomainMatrix

from quantum_clifford.exceptions import ContextMismatch, DimensionMismatch
from quantum_clifford.roots import RootSystem, Weight
from quantum_clifford.scalars import FieldElement, ScalarContext
from quantum_clifford.utils import linalg

logger = logging.getLogger(__name__)


class Generator(NamedTuple):
    kind: str  # "E", "F" or "K"
    index: int | Weight

    def __str__(self):
        if self.kind == "K":
            return f"K({','.join(str(c) for c in self.index)})"
        return f"{self.kind}{self.index + 1}"


Word = tuple[Generator, ...]


def _normalize_word(word: Iterable[Generator]) -> Word:
    """Merge adjacent K's and drop K_0."""
    result: list[Generator] = []
    for gen in word:
        if gen.kind == "K" and result and result[-1].kind == "K":
            merged = tuple(a + b for a, b in zip(result[-1].index, gen.index, strict=True))
            result[-1] = Generator("K", merged)
        else:
            result.append(gen)
        if result and result[-1].kind == "K" and not any(result[-1].index):
            result.pop()
    return tuple(result)


@dataclass(frozen=True)
class QuantumGroup:
    """
    U_q(g), or the Levi subalgebra generated by E_i, F_i (i in active) and all K_lambda.

    Attributes:
        root_system: the root data of g
        scalars: the scalar field shared by every element
        active: indices of the E/F generators present
    """

    root_system: RootSystem
    scalars: ScalarContext
    active: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.active is None:
            object.__setattr__(self, "active", tuple(self.root_system.indices))

    def __str__(self):
        if len(self.active) == self.root_system.rank:
            return f"U_q({self.root_system})"
        return f"U_q(l) in U_q({self.root_system}), indices {[i + 1 for i in self.active]}"

    def levi(self, indices: Iterable[int]) -> "QuantumGroup":
        return QuantumGroup(self.root_system, self.scalars, tuple(sorted(indices)))

    # generators

    def element(self, terms: Mapping[Word, object]) -> "AlgebraElement":
        return AlgebraElement(self, terms)

    def scalar(self, value) -> "AlgebraElement":
        return AlgebraElement(self, {(): self.scalars.element(value)})

    @cached_property
    def one(self) -> "AlgebraElement":
        return self.scalar(1)

    @cached_property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def E(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, {(Generator("E", i),): self.scalars.one})

    def F(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, {(Generator("F", i),): self.scalars.one})

    def K(self, weight: Sequence[int]) -> "AlgebraElement":
        return AlgebraElement(self, {(Generator("K", tuple(weight)),): self.scalars.one})

    def K_simple(self, i: int, power: int = 1) -> "AlgebraElement":
        """K_i^power = K_{power * alpha_i}."""
        rs = self.root_system
        return self.K(rs.scale(power, rs.simple_root_weight(i)))

    def q_i(self, i: int, power: int = 1) -> FieldElement:
        return self.scalars.q_power(self.root_system.symmetrizers[i] * power)

    def divided_power(self, kind: str, i: int, n: int) -> "AlgebraElement":
        """E_i^(n) or F_i^(n)."""
        word = (Generator(kind, i),) * n
        d = self.root_system.symmetrizers[i]
        return AlgebraElement(self, {word: self.scalars.one / self.scalars.qfact(n, d)})

    # structure maps

    def coproduct(self, x: "AlgebraElement") -> "TensorElement":
        result = TensorElement(self, {})
        for word, coeff in x.terms.items():
            term = TensorElement(self, {((), ()): coeff})
            for gen in word:
                term = term * self._generator_coproduct(gen)
            result = result + term
        return result

    def _generator_coproduct(self, gen: Generator) -> "TensorElement":
        one = self.scalars.one
        if gen.kind == "K":
            return TensorElement(self, {((gen,), (gen,)): one})
        k = Generator("K", self.root_system.simple_root_weight(gen.index))
        if gen.kind == "E":
            return TensorElement(self, {((gen,), ()): one, ((k,), (gen,)): one})
        k_inv = Generator("K", self.root_system.negate(k.index))
        return TensorElement(self, {((gen,), (k_inv,)): one, ((), (gen,)): one})

    def counit(self, x: "AlgebraElement") -> FieldElement:
        return sum(
            (c for word, c in x.terms.items() if all(g.kind == "K" for g in word)),
            self.scalars.zero,
        )

    def _map_generators(self, x: "AlgebraElement", image, reverse: bool) -> "AlgebraElement":
        result = self.zero
        for word, coeff in x.terms.items():
            term = self.scalar(coeff)
            for gen in reversed(word) if reverse else word:
                term = term * image(gen)
            result = result + term
        return result

    def antipode(self, x: "AlgebraElement") -> "AlgebraElement":
        return self._map_generators(x, self._antipode_generator, reverse=True)

    def _antipode_generator(self, gen: Generator) -> "AlgebraElement":
        if gen.kind == "K":
            return self.K(self.root_system.negate(gen.index))
        if gen.kind == "E":
            return -(self.K_simple(gen.index, -1) * self.E(gen.index))
        return -(self.F(gen.index) * self.K_simple(gen.index))

    def antipode_inverse(self, x: "AlgebraElement") -> "AlgebraElement":
        return self._map_generators(x, self._antipode_inverse_generator, reverse=True)

    def _antipode_inverse_generator(self, gen: Generator) -> "AlgebraElement":
        if gen.kind == "K":
            return self.K(self.root_system.negate(gen.index))
        if gen.kind == "E":
            return -(self.E(gen.index) * self.K_simple(gen.index, -1))
        return -(self.K_simple(gen.index) * self.F(gen.index))

    def star(self, x: "AlgebraElement") -> "AlgebraElement":
        """Compact real form: E_i* = K_i F_i, F_i* = E_i K_i^-1, K* = K."""
        return self._map_generators(x, self._star_generator, reverse=True)

    def _star_generator(self, gen: Generator) -> "AlgebraElement":
        if gen.kind == "K":
            return self.K(gen.index)
        if gen.kind == "E":
            return self.K_simple(gen.index) * self.F(gen.index)
        return self.E(gen.index) * self.K_simple(gen.index, -1)

    def braid_automorphism(self, i: int, x: "AlgebraElement") -> "AlgebraElement":
        """Lusztig's T_i, extended multiplicatively over words."""
        return self._map_generators(x, lambda gen: self._braid_generator(i, gen), reverse=False)

    def _braid_generator(self, i: int, gen: Generator) -> "AlgebraElement":
        rs = self.root_system
        if gen.kind == "K":
            return self.K(rs.reflect_weight(gen.index, i))
        j = gen.index
        if j == i:
            if gen.kind == "E":
                return -(self.F(i) * self.K_simple(i))
            return -(self.K_simple(i, -1) * self.E(i))
        m = -rs.cartan[i][j]
        result = self.zero
        for k in range(m + 1):
            sign = (-1) ** (k + m)
            if gen.kind == "E":
                coeff = self.scalars.element(sign) * self.q_i(i, -k)
                term = self.divided_power("E", i, m - k) * self.E(j) * self.divided_power("E", i, k)
            else:
                coeff = self.scalars.element(sign) * self.q_i(i, k)
                term = self.divided_power("F", i, k) * self.F(j) * self.divided_power("F", i, m - k)
            result = result + coeff * term
        return result

    def braid_word(self, word: Sequence[int], x: "AlgebraElement") -> "AlgebraElement":
        """T_{i1} ... T_{ik}(x)."""
        for i in reversed(word):
            x = self.braid_automorphism(i, x)
        return x

    def root_vectors(self, word: Sequence[int], kind: str = "E") -> list["AlgebraElement"]:
        """
        E_{beta_k} = T_{i1} ... T_{i(k-1)}(E_{ik}) along a reduced word (F likewise).

        When beta_k is a simple root a_j the vector is E_j itself.

        Raises:
            NotReduced: if the word is not reduced
        """
        rs = self.root_system
        rs.check_reduced(word)
        make = self.E if kind == "E" else self.F
        vectors = []
        for k, beta in enumerate(rs.inversion_roots(word)):
            if rs.height(beta) == 1:
                vectors.append(make(beta.index(1)))
            else:
                vectors.append(self.braid_word(word[:k], make(word[k])))
        return vectors

    def adjoint_action(self, x: "AlgebraElement", a: "AlgebraElement") -> "AlgebraElement":
        """x |> a = x_(1) a S(x_(2))."""
        result = self.zero
        for (left, right), coeff in self.coproduct(x).terms.items():
            term = AlgebraElement(self, {left: coeff}) * a
            result = result + term * self.antipode(AlgebraElement(self, {right: self.scalars.one}))
        return result

    def defining_relations(self) -> Iterator[tuple[str, "AlgebraElement"]]:
        """Labelled elements that vanish in U_q: commutators, K-conjugation and Serre sums."""
        rs = self.root_system
        for i in self.active:
            for j in self.active:
                bracket = self.E(i) * self.F(j) - self.F(j) * self.E(i)
                if i == j:
                    cartan = (self.K_simple(i) - self.K_simple(i, -1)) * (
                        self.scalars.one / (self.q_i(i) - self.q_i(i, -1))
                    )
                    bracket = bracket - cartan
                yield f"[E{i + 1},F{j + 1}]", bracket
        for k in rs.indices:
            omega = rs.fundamental_weight(k)
            for j in self.active:
                exponent = rs.form(omega, rs.simple_root_weight(j))
                conj = self.K(omega) * self.E(j) * self.K(rs.negate(omega))
                yield f"K(w{k + 1})E{j + 1}", conj - self.scalars.q_power(exponent) * self.E(j)
                conj = self.K(omega) * self.F(j) * self.K(rs.negate(omega))
                yield f"K(w{k + 1})F{j + 1}", conj - self.scalars.q_power(-exponent) * self.F(j)
        for i in self.active:
            for j in self.active:
                if i == j:
                    continue
                n = 1 - rs.cartan[i][j]
                d = rs.symmetrizers[i]
                for kind in "EF":
                    gen_i = self.E(i) if kind == "E" else self.F(i)
                    gen_j = self.E(j) if kind == "E" else self.F(j)
                    total = self.zero
                    for k in range(n + 1):
                        coeff = self.scalars.element((-1) ** k) * self.scalars.qbinom(n, k, d)
                        total = total + coeff * (gen_i ** (n - k)) * gen_j * (gen_i**k)
                    yield f"serre {kind}{i + 1},{kind}{j + 1}", total


class AlgebraElement:
    """A linear combination of words with coefficients in the field."""

    __slots__ = ("group", "terms")

    def __init__(self, group: QuantumGroup, terms: Mapping[Word, object]):
        self.group = group
        combined: dict[Word, FieldElement] = {}
        for word, coeff in terms.items():
            key = _normalize_word(word)
            combined[key] = combined.get(key, group.scalars.zero) + group.scalars.element(coeff)
        self.terms = {word: c for word, c in combined.items() if c}

    def _coerce(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return other
        return self.group.scalar(other)

    def __add__(self, other) -> "AlgebraElement":
        other = self._coerce(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms.get(word, self.group.scalars.zero) + coeff
        return AlgebraElement(self.group, terms)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.group, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "AlgebraElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "AlgebraElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            factor = self.group.scalars.element(other)
            return AlgebraElement(self.group, {w: c * factor for w, c in self.terms.items()})
        terms: dict[Word, FieldElement] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                key = _normalize_word(w1 + w2)
                terms[key] = terms.get(key, self.group.scalars.zero) + c1 * c2
        return AlgebraElement(self.group, terms)

    def __rmul__(self, other) -> "AlgebraElement":
        return self * other

    def __pow__(self, n: int) -> "AlgebraElement":
        result = self.group.one
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        """Equality of the formal expressions, not of the elements of U_q."""
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return render(self)

    __repr__ = __str__

    @property
    def degree(self) -> Weight:
        """Q-degree of the first term (homogeneous elements only)."""
        rs = self.group.root_system
        total = (0,) * rs.rank
        for gen in next(iter(self.terms), ()):
            if gen.kind == "E":
                total = rs.add(total, rs.simple_root_weight(gen.index))
            elif gen.kind == "F":
                total = rs.sub(total, rs.simple_root_weight(gen.index))
        return total


class TensorElement:
    """A linear combination of pairs of words (elements of U_q tensor U_q)."""

    __slots__ = ("group", "terms")

    def __init__(self, group: QuantumGroup, terms: Mapping[tuple[Word, Word], FieldElement]):
        self.group = group
        self.terms = {
            (_normalize_word(a), _normalize_word(b)): c for (a, b), c in terms.items() if c
        }

    def __add__(self, other: "TensorElement") -> "TensorElement":
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms.get(key, self.group.scalars.zero) + coeff
        return TensorElement(self.group, terms)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        terms: dict[tuple[Word, Word], FieldElement] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (_normalize_word(a1 + a2), _normalize_word(b1 + b2))
                terms[key] = terms.get(key, self.group.scalars.zero) + c1 * c2
        return TensorElement(self.group, terms)

    def __str__(self):
        group = self.group
        pieces = [
            f"{group.scalars.render_q(c)} * ({_word_str(a)} (x) {_word_str(b)})"
            for (a, b), c in sorted(self.terms.items(), key=lambda item: item[0])
        ]
        return " + ".join(pieces) or "0"


def _word_str(word: Word) -> str:
    return "*".join(str(g) for g in word) or "1"


def render(x: AlgebraElement) -> str:
    """Human-readable form such as "q^-1*E1*E2 - E2*E1"."""
    pieces = []
    for word, coeff in sorted(x.terms.items(), key=lambda item: item[0]):
        scalar = x.group.scalars.render_q(coeff)
        negative = scalar.startswith("-")
        magnitude = scalar[1:] if negative else scalar
        if not word:
            body = magnitude
        elif magnitude == "1":
            body = _word_str(word)
        else:
            body = f"{magnitude}*{_word_str(word)}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces) or "0"


# evaluation on modules


class Representation(Protocol):
    """A weight module: generator matrices plus a weight per basis vector."""

    root_system: RootSystem
    scalars: ScalarContext
    weights: Sequence[Weight]

    @property
    def dim(self) -> int: ...

    def generator(self, kind: str, i: int) -> DomainMatrix: ...


def generator_matrix(module: Representation, gen: Generator) -> DomainMatrix:
    if gen.kind == "K":
        rs, scalars = module.root_system, module.scalars
        values = [scalars.q_power(rs.form(gen.index, mu)) for mu in module.weights]
        return linalg.diagonal(values, scalars.domain)
    return module.generator(gen.kind, gen.index)


def representation(x: AlgebraElement, module: Representation) -> DomainMatrix:
    """The matrix by which x acts on the module."""
    if x.group.scalars != module.scalars:
        raise ContextMismatch(
            "element and module use different scalar fields",
            {"element": x.group.scalars, "module": module.scalars},
        )
    domain = module.scalars.domain
    n = module.dim
    cache: dict[Generator, DomainMatrix] = {}
    result = linalg.zeros(n, n, domain)
    for word, coeff in x.terms.items():
        matrix = linalg.identity(n, domain)
        for gen in word:
            if gen not in cache:
                cache[gen] = generator_matrix(module, gen)
            matrix = linalg.matmul(matrix, cache[gen])
        result = linalg.add(result, linalg.scale(matrix, coeff))
    return result


def act(x: AlgebraElement, module: Representation, vector: DomainMatrix) -> DomainMatrix:
    """
    x . v for a column vector v.

    Raises:
        DimensionMismatch: if v does not have the module's dimension
    """
    if vector.shape[0] != module.dim:
        raise DimensionMismatch(
            f"vector of length {vector.shape[0]} for a module of dimension {module.dim}",
            {"vector": vector.shape[0], "module": module.dim},
        )
    return linalg.matmul(representation(x, module), vector)
