"""Arbitrary-precision Gamma/polygamma evaluation, identity checks, and solves.

This module is the numeric counterpart of the exact rational coefficients: it
evaluates Gamma and its derivatives at rational points along a completely
different route, so agreement between the two is a real consistency check.

mpmath supplies Gamma and psi^(k) on the positive half line.  Negative
non-integer arguments are shifted up with exact rational recurrence steps
before mpmath is called:

    psi^(k)(q) = psi^(k)(q + J) - sum_{i<J} (-1)^k k! (q+i)^(-(k+1))
    Gamma(q)   = Gamma(q + J) / prod_{i<J} (q + i)

Derivatives of Gamma come from the complete Bell recurrence over polygamma
values, Gamma^(n)(q) = Gamma(q) * Y_n(psi(q), psi'(q), ..., psi^(n-1)(q)),
valid at every non-pole point.  In particular the values at negative points
are never produced by the rational-coefficient expansion they are used to
verify.

All computations run at decimal_digits + guard_digits working precision;
comparisons default to a tolerance of 10^-(decimal_digits - 20), i.e. the
guard-digit budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp

from .coeffs import Kappa, LatticeSpec, build_system, coefficient
from .errors import PoleArgumentError, SpecMismatchError
from .linalg import inverse_exact
from .sympoly import FamilyKind


@dataclass(frozen=True)
class PrecisionContext:
    decimal_digits: int = 60
    guard_digits: int = 20

    def __post_init__(self):
        if self.decimal_digits < 20:
            raise ValueError("decimal_digits must be >= 20")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be >= 0")

    @property
    def working_digits(self) -> int:
        return self.decimal_digits + self.guard_digits

    def default_tolerance(self):
        with mp.workdps(self.working_digits):
            return mp.mpf(10) ** -(self.decimal_digits - 20)


def _as_point(q) -> Fraction:
    q = Fraction(q)
    if q.denominator == 1 and q <= 0:
        raise PoleArgumentError(f"{q} is a pole of Gamma")
    return q


def _to_mpf(x: Fraction):
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)


@lru_cache(maxsize=None)
def _psi_cached(k: int, q: Fraction, dps: int):
    with mp.workdps(dps):
        if q > 0:
            return mp.psi(k, _to_mpf(q))
        shift = -math.floor(q)  # q + shift lands in (0, 1)
        base = mp.psi(k, _to_mpf(q + shift))
        sign = -1 if k % 2 else 1
        fact = math.factorial(k)
        correction = mp.mpf(0)
        for i in range(shift):
            correction += sign * fact / _to_mpf((q + i) ** (k + 1))
        return base - correction


@lru_cache(maxsize=None)
def _gamma_cached(q: Fraction, dps: int):
    with mp.workdps(dps):
        if q > 0:
            return mp.gamma(_to_mpf(q))
        shift = -math.floor(q)
        divisor = Fraction(1)
        for i in range(shift):
            divisor *= q + i
        return mp.gamma(_to_mpf(q + shift)) / _to_mpf(divisor)


def polygamma(k: int, q, ctx: PrecisionContext):
    """psi^(k)(q) at the context's working precision; q rational, not a pole."""
    if k < 0:
        raise ValueError(f"polygamma order {k} must be >= 0")
    return _psi_cached(k, _as_point(q), ctx.working_digits)


def gamma_value(q, ctx: PrecisionContext):
    """Gamma(q) at the context's working precision; q rational, not a pole."""
    return _gamma_cached(_as_point(q), ctx.working_digits)


@dataclass(frozen=True)
class GammaDerivatives:
    """Gamma^(0..order)(point) at one rational point."""

    point: Fraction
    order: int
    values: tuple
    precision: PrecisionContext


def gamma_derivatives(q, n: int, ctx: PrecisionContext) -> GammaDerivatives:
    """All derivatives Gamma^(0)..Gamma^(n) at q, by Bell composition."""
    if n < 0:
        raise ValueError(f"derivative order {n} must be >= 0")
    point = _as_point(q)
    dps = ctx.working_digits
    g = _gamma_cached(point, dps)
    log_derivs = [_psi_cached(k, point, dps) for k in range(n)]
    with mp.workdps(dps):
        bell = [mp.mpf(1)]
        for j in range(1, n + 1):
            acc = mp.mpf(0)
            for i in range(j):
                acc += math.comb(j - 1, i) * log_derivs[i] * bell[j - 1 - i]
            bell.append(acc)
        values = tuple(g * y for y in bell)
    return GammaDerivatives(point, n, values, ctx)


@dataclass(frozen=True)
class VerificationReport:
    family: FamilyKind
    n: int
    m: int
    kappa: Kappa | None
    lhs: object
    rhs: object
    abs_residual: object
    rel_residual: object
    passed: bool
    tolerance: object


def verify_identity(
    family: FamilyKind,
    n: int,
    m: int,
    kappa: Kappa | None = None,
    ctx: PrecisionContext | None = None,
    tolerance=None,
) -> VerificationReport:
    """Compare Gamma^(n) at a lattice point against its rational expansion.

    The left side is evaluated directly at the lattice point; the right side
    sums coefficient(family, n, ell, m) times Gamma^(ell) at the basis point.
    The check uses the relative residual, falling back to the absolute one
    when |lhs| < 1.
    """
    if ctx is None:
        ctx = PrecisionContext()
    if n < 0:
        raise ValueError(f"derivative order {n} must be >= 0")
    if family is FamilyKind.PLAIN:
        if kappa is not None:
            raise SpecMismatchError("plain family takes no shift")
        if m < 1:
            raise ValueError(f"plain lattice point {m} must be >= 1")
        basis_point = Fraction(1)
        lattice_point = Fraction(m)
    else:
        if kappa is None:
            raise SpecMismatchError(f"{family.value}-shift family requires a shift")
        if m < 0:
            raise ValueError(f"shifted lattice index {m} must be >= 0")
        basis_point = kappa.value
        if family is FamilyKind.PLUS_SHIFT:
            lattice_point = m + kappa.value
        else:
            lattice_point = -m + kappa.value

    basis = gamma_derivatives(basis_point, n, ctx).values
    lhs = gamma_derivatives(lattice_point, n, ctx).values[n]
    with mp.workdps(ctx.working_digits):
        rhs = mp.mpf(0)
        for ell in range(n + 1):
            rhs += _to_mpf(coefficient(family, n, ell, m, kappa)) * basis[ell]
        tol = mp.mpf(tolerance) if tolerance is not None else ctx.default_tolerance()
        abs_residual = abs(lhs - rhs)
        magnitude = abs(lhs)
        rel_residual = abs_residual / magnitude if magnitude > 0 else mp.inf
        effective = abs_residual if magnitude < 1 else rel_residual
        passed = bool(effective < tol)
    return VerificationReport(
        family, n, m, kappa, lhs, rhs, abs_residual, rel_residual, passed, tol
    )


def recover_basis(spec: LatticeSpec, n: int, ctx: PrecisionContext | None = None) -> list:
    """Solve a square lattice system for the basis derivative column.

    Evaluates Gamma^(n) at each lattice point numerically, subtracts the
    constant column (plain family), and applies the exact rational inverse of
    the coefficient matrix.  Returns approximations of Gamma^(1..n)(1) for the
    plain family or Gamma^(0..n)(kappa) for the shifted ones.
    """
    if ctx is None:
        ctx = PrecisionContext()
    system = build_system(spec, n)
    if not system.is_square:
        raise SpecMismatchError(
            f"system is {system.matrix.rows}x{system.matrix.cols}; solving needs square"
        )
    inv = inverse_exact(system.matrix)
    data = [gamma_derivatives(p, n, ctx).values[n] for p in spec.points()]
    with mp.workdps(ctx.working_digits):
        if system.constant_column:
            data = [d - _to_mpf(c) for d, c in zip(data, system.constant_column)]
        recovered = []
        for r in range(inv.rows):
            acc = mp.mpf(0)
            for c in range(inv.cols):
                acc += _to_mpf(inv.at(r, c)) * data[c]
            recovered.append(acc)
    return recovered


def machin_pi(ctx: PrecisionContext):
    """pi from Machin's arctangent formula; independent of the polygamma path.

    Used as a cross-method anchor when checking values like psi'(1) = pi^2/6.
    """
    with mp.workdps(ctx.working_digits):
        return 16 * _atan_unit_fraction(5) - 4 * _atan_unit_fraction(239)


def _atan_unit_fraction(n: int):
    # atan(1/n) = sum_j (-1)^j / ((2j+1) n^(2j+1)); runs at the caller's dps.
    threshold = mp.mpf(10) ** -(mp.dps + 5)
    acc = mp.mpf(0)
    j = 0
    while True:
        term = mp.mpf(1) / ((2 * j + 1) * n ** (2 * j + 1))
        if term < threshold:
            return acc
        acc += term if j % 2 == 0 else -term
        j += 1
