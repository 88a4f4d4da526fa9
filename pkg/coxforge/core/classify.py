"""
Spherical / affine / non-affine classification and the group-level verdicts.

Each irreducible component is classified from its exact signature: spherical
when q = r = 0, affine when (p, q, r) = (p, 0, 1), non-affine otherwise. The
amenable radical is the product of the spherical and affine factors; the
reduced C*-algebra is simple (with unique trace) exactly when there are none;
an infinite finitely generated group is primitive exactly when it is
irreducible and non-affine.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from ..utils import InputError, InvariantError
from .coxeter import CoxeterMatrix, NamedType, components, recognize, validate
from .tits_form import Signature, gram, signature

logger = logging.getLogger(__file__)


class Kind(Enum):
    SPHERICAL = "Spherical"
    AFFINE = "Affine"
    NON_AFFINE = "NonAffine"


@dataclass(frozen=True)
class Embedding:
    """Target of the reduced Tits representation of a non-affine component."""

    p: int
    q: int

    @property
    def group(self) -> str:
        return f"PO({self.p},{self.q})"

    @property
    def complex_simple(self) -> bool:
        # (3,1) is complex simple as it stands; any other admissible (p, q) after complexification.
        return (self.p, self.q) != (2, 2)


@dataclass(frozen=True)
class ComponentClass:
    kind: Kind
    name: NamedType
    signature: Signature
    vertices: Tuple[int, ...] = ()
    names: Tuple[str, ...] = ()

    @property
    def centre_order(self) -> int:
        # Infinite irreducible Coxeter groups are centreless.
        return self.name.centre_order() if self.kind is Kind.SPHERICAL else 1

    @property
    def order(self) -> Optional[int]:
        return self.name.order() if self.kind is Kind.SPHERICAL else None

    @property
    def translation_rank(self) -> int:
        """Dimension of T_f, isomorphic to (R^(p+q))^r."""
        sig = self.signature
        return (sig.p + sig.q) * sig.r

    @property
    def embedding(self) -> Optional[Embedding]:
        if self.kind is not Kind.NON_AFFINE:
            return None
        return Embedding(self.signature.p, self.signature.q)


@dataclass(frozen=True)
class Primitivity:
    primitive: bool
    reason: str


@dataclass(frozen=True)
class CStarVerdict:
    simple: bool
    unique_trace: bool


@dataclass
class ClassificationReport:
    matrix: CoxeterMatrix
    components: List[ComponentClass]
    amenable_radical_factors: List[ComponentClass]
    cstar: CStarVerdict
    primitive: Primitivity
    signature: Optional[Signature] = None

    @property
    def cstar_simple(self) -> bool:
        return self.cstar.simple

    @property
    def unique_trace(self) -> bool:
        return self.cstar.unique_trace


def kind_of(sig: Signature) -> Kind:
    if sig.q == 0 and sig.r == 0:
        return Kind.SPHERICAL
    if sig.q == 0 and sig.r == 1:
        return Kind.AFFINE
    return Kind.NON_AFFINE


def classify_component(matrix: CoxeterMatrix, vertices: Tuple[int, ...] = ()) -> ComponentClass:
    """Kind from the exact signature, name from the catalogs."""
    sig = signature(gram(matrix))
    if sig.q == 0 and sig.r > 1:
        raise InvariantError(f"Connected matrix {matrix.names} has q = 0 but r = {sig.r} > 1.")
    result = ComponentClass(kind_of(sig), recognize(matrix), sig, tuple(vertices), matrix.names)
    logger.debug(f"Component {matrix.names}: {result.kind.value} {result.name} {sig}.")
    return result


def amenable_radical(parts: List[ComponentClass]) -> List[ComponentClass]:
    """The spherical and affine factors, whose product is the amenable radical."""
    return [part for part in parts if part.kind is not Kind.NON_AFFINE]


def cstar_verdict(parts: List[ComponentClass]) -> CStarVerdict:
    simple = all(part.kind is Kind.NON_AFFINE for part in parts)
    return CStarVerdict(simple=simple, unique_trace=simple)


def _is_odd_prime(p: int) -> bool:
    return p > 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _finite_primitive(name: NamedType) -> Tuple[bool, str]:
    if name.family == "A":
        return True, f"{name} is a symmetric group acting primitively on {name.rank + 1} points"
    if name.family == "D" and name.rank % 2 == 1:
        return True, f"{name} acts affinely and primitively on an even-weight F_2 space"
    if name.family == "E" and name.rank == 6:
        return True, "E_6 has a single proper nontrivial normal subgroup"
    if name.family == "I2" and _is_odd_prime(name.extra):
        return True, f"{name} is dihedral of odd prime degree"
    if name.centre_order() == 2:
        return False, f"{name} has centre of order 2"
    return False, f"{name} has no core-free maximal subgroup"


def primitivity(parts: List[ComponentClass]) -> Primitivity:
    """Primitivity verdict for the whole group."""
    if len(parts) > 1:
        return Primitivity(False, "reducible: a primitive Coxeter group must be irreducible")
    if not parts:
        raise InputError("The empty Coxeter group is not classified.")
    part = parts[0]
    if part.kind is Kind.NON_AFFINE:
        return Primitivity(True, "infinite, finitely generated, irreducible and non-affine")
    if part.kind is Kind.AFFINE:
        return Primitivity(False, "affine: every maximal subgroup has finite index")
    if part.name.family == "Unnamed":
        raise InvariantError(f"Spherical component {part.names} matches no catalog type.")
    primitive, reason = _finite_primitive(part.name)
    return Primitivity(primitive, reason)


def classify(matrix: CoxeterMatrix) -> ClassificationReport:
    """Classifies every component and derives the amenable radical, C*-simplicity and primitivity verdicts."""
    problems = validate(matrix)
    if problems:
        raise InputError("; ".join(problems))
    parts = [classify_component(sub, vertices) for vertices, sub in components(matrix)]
    # The Gram matrix is block diagonal over the components.
    total = Signature(
        sum(part.signature.p for part in parts),
        sum(part.signature.q for part in parts),
        sum(part.signature.r for part in parts),
    )
    return ClassificationReport(
        matrix=matrix,
        components=parts,
        amenable_radical_factors=amenable_radical(parts),
        cstar=cstar_verdict(parts),
        primitive=primitivity(parts),
        signature=total,
    )
