"""Rational coefficients linking Gamma derivatives at lattice points to a basis.

For the plain lattice m = 1, 2, ... the n-th derivative at m expands over the
derivatives at 1:

    coeff_plain(n, ell, m) = (m-1)! * (n!/ell!) * e_{n-ell}(1, 1/2, ..., 1/(m-1))

For shifted lattice points m + kappa (resp. -m + kappa) the basis point is
kappa, the factorial is replaced by the exact rational ratio
Gamma(m+kappa)/Gamma(kappa) (resp. Gamma(-m+kappa)/Gamma(kappa)), and the
symmetric polynomials run over the plus-shift (resp. minus-shift) variable
family, elementary for the plus side and complete homogeneous for the minus
side.  Stacking one expansion per index yields the linear systems assembled by
`build_system`.

Everything here is exact rational arithmetic; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from .errors import InvalidKappaError, SpecMismatchError
from .linalg import RationalMatrix
from .sympoly import (
    ArgumentFamily,
    FamilyKind,
    elementary_prefix,
    homogeneous_prefix,
)

#: Shift values whose Gamma value is known to be transcendental.
KNOWN_TRANSCENDENTAL_SHIFTS = frozenset(
    Fraction(p, q)
    for p, q in ((1, 6), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (5, 6))
)


@dataclass(frozen=True)
class Kappa:
    """A rational shift in (0, 1), flagged if it is on the known whitelist."""

    value: Fraction
    known_transcendental: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if not 0 < self.value < 1:
            raise InvalidKappaError(f"shift {self.value} outside (0, 1)")
        object.__setattr__(
            self, "known_transcendental", self.value in KNOWN_TRANSCENDENTAL_SHIFTS
        )


@dataclass(frozen=True)
class LatticeSpec:
    """A family selector plus a strictly increasing set of lattice indices.

    Plain indices are the points themselves (m >= 1); shifted indices m >= 0
    select the points m + kappa or -m + kappa.
    """

    family: FamilyKind
    indices: tuple[int, ...]
    kappa: Kappa | None = None

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(v) for v in self.indices))
        if not self.indices:
            raise SpecMismatchError("empty index set")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise SpecMismatchError(
                f"indices {self.indices} are not strictly increasing"
            )
        if self.family is FamilyKind.PLAIN:
            if self.indices[0] < 1:
                raise SpecMismatchError("plain lattice indices must be >= 1")
            if self.kappa is not None:
                raise SpecMismatchError("plain lattice takes no shift")
        else:
            if self.indices[0] < 0:
                raise SpecMismatchError("shifted lattice indices must be >= 0")
            if self.kappa is None:
                raise SpecMismatchError(
                    f"{self.family.value}-shift lattice requires a shift"
                )

    def argument_family(self) -> ArgumentFamily:
        if self.family is FamilyKind.PLAIN:
            return ArgumentFamily(FamilyKind.PLAIN)
        return ArgumentFamily(self.family, self.kappa.value)

    def points(self) -> tuple[Fraction, ...]:
        """The actual lattice points: m, m + kappa, or -m + kappa."""
        if self.family is FamilyKind.PLAIN:
            return tuple(Fraction(m) for m in self.indices)
        if self.family is FamilyKind.PLUS_SHIFT:
            return tuple(m + self.kappa.value for m in self.indices)
        return tuple(-m + self.kappa.value for m in self.indices)


def rational_gamma_ratio(kappa: Kappa, m: int, family: FamilyKind) -> Fraction:
    """Gamma(m+kappa)/Gamma(kappa) or Gamma(-m+kappa)/Gamma(kappa), exactly.

    Both follow from Gamma(z+1) = z Gamma(z): the plus side is the rising
    product prod_{u=0}^{m-1} (u + kappa), the minus side the reciprocal of the
    signed product prod_{u=1}^{m} (-u + kappa).  Empty products are 1.  The
    sign of the minus side, (-1)^m, comes out of the literal product.
    """
    if m < 0:
        raise ValueError(f"lattice index {m} must be >= 0")
    k = kappa.value
    if family is FamilyKind.PLUS_SHIFT:
        return prod((u + k for u in range(m)), start=Fraction(1))
    if family is FamilyKind.MINUS_SHIFT:
        return 1 / prod((k - u for u in range(1, m + 1)), start=Fraction(1))
    raise SpecMismatchError("gamma ratio is defined for shifted families only")


def _order_factor(n: int, ell: int) -> int:
    if n < 0 or not 0 <= ell <= n:
        raise ValueError(f"need 0 <= ell <= n, got n={n}, ell={ell}")
    return factorial(n) // factorial(ell)


def coeff_plain(n: int, ell: int, m: int) -> Fraction:
    """Coefficient of the ell-th basis derivative in the expansion at m >= 1."""
    f = _order_factor(n, ell)
    if m < 1:
        raise ValueError(f"plain lattice point {m} must be >= 1")
    table = elementary_prefix(ArgumentFamily(FamilyKind.PLAIN), m - 1, n - ell)
    return factorial(m - 1) * f * table.value(m - 1, n - ell)


def coeff_plus(n: int, ell: int, m: int, kappa: Kappa) -> Fraction:
    """Coefficient of the ell-th derivative at kappa in the expansion at m + kappa."""
    f = _order_factor(n, ell)
    family = ArgumentFamily(FamilyKind.PLUS_SHIFT, kappa.value)
    table = elementary_prefix(family, m, n - ell)
    return rational_gamma_ratio(kappa, m, FamilyKind.PLUS_SHIFT) * f * table.value(
        m, n - ell
    )


def coeff_minus(n: int, ell: int, m: int, kappa: Kappa) -> Fraction:
    """Coefficient of the ell-th derivative at kappa in the expansion at -m + kappa."""
    f = _order_factor(n, ell)
    family = ArgumentFamily(FamilyKind.MINUS_SHIFT, kappa.value)
    table = homogeneous_prefix(family, m, n - ell)
    return rational_gamma_ratio(kappa, m, FamilyKind.MINUS_SHIFT) * f * table.value(
        m, n - ell
    )


def coefficient(
    family: FamilyKind, n: int, ell: int, m: int, kappa: Kappa | None = None
) -> Fraction:
    """Dispatch to the family's coefficient."""
    if family is FamilyKind.PLAIN:
        if kappa is not None:
            raise SpecMismatchError("plain family takes no shift")
        return coeff_plain(n, ell, m)
    if kappa is None:
        raise SpecMismatchError(f"{family.value}-shift family requires a shift")
    if family is FamilyKind.PLUS_SHIFT:
        return coeff_plus(n, ell, m, kappa)
    return coeff_minus(n, ell, m, kappa)


@dataclass(frozen=True)
class CoeffSystem:
    """The assembled linear system for one lattice spec and derivative order.

    Plain: matrix is k x n over unknowns Gamma^(1..n)(1), with the ell = 0
    terms split off into `constant_column`.  Shifted: matrix is k x (n+1) over
    unknowns Gamma^(0..n)(kappa) and the constant column is empty.  Square
    means k = n (plain) or k = n + 1 (shifted); rectangular systems are legal
    for inspection but cannot be solved.
    """

    spec: LatticeSpec
    order: int
    matrix: RationalMatrix
    constant_column: tuple[Fraction, ...]
    unknowns_label: tuple[str, ...]

    @property
    def is_square(self) -> bool:
        return self.matrix.rows == self.matrix.cols


def build_system(spec: LatticeSpec, n: int) -> CoeffSystem:
    """Assemble the coefficient matrix (and constant column) for `spec`."""
    if n < 0:
        raise ValueError(f"derivative order {n} must be >= 0")
    if spec.family is FamilyKind.PLAIN:
        if n < 1:
            raise SpecMismatchError("plain system needs n >= 1 (no unknown columns)")
        table = elementary_prefix(
            ArgumentFamily(FamilyKind.PLAIN), max(spec.indices) - 1, n
        )
        rows = []
        consts = []
        for m in spec.indices:
            scale = factorial(m - 1)
            rows.append(
                [
                    scale * _order_factor(n, c) * table.value(m - 1, n - c)
                    for c in range(1, n + 1)
                ]
            )
            consts.append(scale * _order_factor(n, 0) * table.value(m - 1, n))
        labels = tuple(f"Gamma^({ell})(1)" for ell in range(1, n + 1))
        return CoeffSystem(
            spec, n, RationalMatrix.from_rows(rows), tuple(consts), labels
        )

    family = spec.argument_family()
    if spec.family is FamilyKind.PLUS_SHIFT:
        table = elementary_prefix(family, max(spec.indices), n)
    else:
        table = homogeneous_prefix(family, max(spec.indices), n)
    rows = []
    for m in spec.indices:
        ratio = rational_gamma_ratio(spec.kappa, m, spec.family)
        rows.append(
            [ratio * _order_factor(n, ell) * table.value(m, n - ell) for ell in range(n + 1)]
        )
    labels = tuple(f"Gamma^({ell})({spec.kappa.value})" for ell in range(n + 1))
    return CoeffSystem(spec, n, RationalMatrix.from_rows(rows), (), labels)
