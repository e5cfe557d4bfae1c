"""Command-line front end.

Subcommands:

    coeffs    rational coefficient tables for one family
    matrix    assembled systems, determinants, inverses, subset certificates
    verify    identity / basis-recovery sweeps against the numeric oracle
    density   density lower-bound tables, optionally with the min-sum oracle

Output is a single JSON envelope (command, params, rows, warnings, exitStatus)
or CSV (header plus rows).  Rationals are serialized as "num/den" strings,
never floats; reals carry an explicit digit count.  Exit codes: 0 success,
1 verification failure, 2 usage error.  Warnings go to stderr and never change
the exit code.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp

from .coeffs import (
    KNOWN_TRANSCENDENTAL_SHIFTS,
    Kappa,
    LatticeSpec,
    build_system,
    coefficient,
)
from .density import BoundVariant, density_grid
from .errors import GammaLatticeError, SingularMatrixError, SpecMismatchError
from .gammanum import (
    PrecisionContext,
    gamma_derivatives,
    recover_basis,
    verify_identity,
)
from .linalg import (
    PolyKind,
    RationalMatrix,
    cauchy_binet,
    det_exact,
    difference_factorization,
    elementary_matrix,
    homogeneous_matrix,
    inverse_exact,
)
from .sympoly import FamilyKind

VERIFICATION_FAILURE = 1
USAGE_ERROR = 2


@dataclass
class OutputEnvelope:
    command: str
    params: dict
    rows: list
    warnings: list = field(default_factory=list)
    exit_status: int = 0

    def to_payload(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "rows": self.rows,
            "warnings": self.warnings,
            "exitStatus": self.exit_status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        if not self.rows:
            return ""
        buf = io.StringIO()
        writer = csv.DictWriter(
            buf, fieldnames=list(self.rows[0].keys()), lineterminator="\n"
        )
        writer.writeheader()
        writer.writerows(self.rows)
        return buf.getvalue()


def _parse_int_range(text: str) -> list[int]:
    """'7' -> [7]; '2:5' -> [2, 3, 4, 5]."""
    if ":" in text:
        lo_text, hi_text = text.split(":", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"bad index list {text!r}; want e.g. 1,2,5") from None


def _warn_conditional(warnings: list, values) -> None:
    listed = ", ".join(str(v) for v in values)
    warnings.append(
        f"shift value(s) {listed} outside the known-transcendental whitelist "
        f"{{1/6, 1/4, 1/3, 1/2, 2/3, 3/4, 5/6}}; results are conditional on "
        f"transcendence of Gamma at the shift"
    )


def _resolve_kappa(family: FamilyKind, value: Fraction | None, warnings: list):
    if family is FamilyKind.PLAIN:
        if value is not None:
            raise SpecMismatchError("plain family takes no --kappa")
        return None
    if value is None:
        raise SpecMismatchError(f"--kappa is required for the {family.value} family")
    kappa = Kappa(value)
    if not kappa.known_transcendental:
        _warn_conditional(warnings, [kappa.value])
    return kappa


def _real_str(value, digits: int) -> str:
    return mp.nstr(value, digits)


def _matrix_rows(matrix: RationalMatrix) -> list:
    return [
        {"row": r, "col": c, "value": str(matrix.at(r, c))}
        for r in range(matrix.rows)
        for c in range(matrix.cols)
    ]


def _cmd_coeffs(args) -> OutputEnvelope:
    warnings: list = []
    family = FamilyKind(args.family)
    kappa = _resolve_kappa(family, args.kappa, warnings)
    ms = _parse_int_range(args.m)
    low = 1 if family is FamilyKind.PLAIN else 0
    if any(m < low for m in ms):
        raise ValueError(f"{family.value} lattice indices must be >= {low}")
    rows = []
    for m in ms:
        for ell in range(args.n + 1):
            rows.append(
                {
                    "family": family.value,
                    "kappa": str(kappa.value) if kappa else "",
                    "n": args.n,
                    "ell": ell,
                    "m": m,
                    "value": str(coefficient(family, args.n, ell, m, kappa)),
                }
            )
    params = {
        "family": family.value,
        "n": args.n,
        "m": args.m,
        "kappa": str(args.kappa) if args.kappa is not None else None,
    }
    return OutputEnvelope("coeffs", params, rows, warnings)


def _cmd_matrix(args) -> OutputEnvelope:
    warnings: list = []
    family = FamilyKind(args.family)
    kappa = _resolve_kappa(family, args.kappa, warnings)
    indices = _parse_indices(args.indices)
    spec = LatticeSpec(family, indices, kappa)
    system = build_system(spec, args.n)
    params = {
        "family": family.value,
        "n": args.n,
        "indices": args.indices,
        "kappa": str(args.kappa) if args.kappa is not None else None,
        "show": args.show,
        "shape": f"{system.matrix.rows}x{system.matrix.cols}",
        "unknowns": list(system.unknowns_label),
    }

    if args.show is None:
        rows = _matrix_rows(system.matrix)
        for r, value in enumerate(system.constant_column):
            rows.append({"row": r, "col": "const", "value": str(value)})
        return OutputEnvelope("matrix", params, rows, warnings)

    if args.show == "det":
        det = det_exact(system.matrix)
        return OutputEnvelope("matrix", params, [{"det": str(det)}], warnings)

    if args.show == "inverse":
        try:
            inverse = inverse_exact(system.matrix)
        except SingularMatrixError as exc:
            rows = [{"error": "singular coefficient matrix", "det": str(exc.det)}]
            return OutputEnvelope(
                "matrix", params, rows, warnings, exit_status=VERIFICATION_FAILURE
            )
        return OutputEnvelope("matrix", params, _matrix_rows(inverse), warnings)

    # cauchy-binet: certificate for the prefix-matrix chain behind this system
    if len(indices) < 2:
        raise ValueError("--show cauchy-binet needs at least two indices")
    fam = spec.argument_family()
    if family is FamilyKind.PLAIN:
        m_primes = [m - 1 for m in indices]
    else:
        m_primes = list(indices)
    if family is FamilyKind.MINUS_SHIFT:
        parent = homogeneous_matrix(m_primes, fam, len(indices) - 1)
        kind = PolyKind.HOMOGENEOUS
    else:
        parent = elementary_matrix(m_primes, fam, len(indices))
        kind = PolyKind.ELEMENTARY
    banded, prefix = difference_factorization(m_primes, fam, kind)
    certificate = cauchy_binet(banded, prefix)
    parent_det = det_exact(parent)
    positive = all(
        term.det_left > 0 and term.det_right > 0 for term in certificate.surviving
    )
    ok = (
        certificate.total_det == parent_det
        and bool(certificate.surviving)
        and positive
    )
    rows = [
        {
            # space-separated so CSV never needs quoting
            "subset": " ".join(str(s) for s in term.subset),
            "det_left": str(term.det_left),
            "det_right": str(term.det_right),
            "product": str(term.product),
        }
        for term in certificate.surviving
    ]
    params.update(
        {
            "total_det": str(certificate.total_det),
            "parent_det": str(parent_det),
            "pruned": certificate.pruned_count,
            "all_terms_positive": positive,
        }
    )
    return OutputEnvelope(
        "matrix",
        params,
        rows,
        warnings,
        exit_status=0 if ok else VERIFICATION_FAILURE,
    )


def _verify_kappas(family: FamilyKind, kappa_set: str | None, warnings: list):
    if family is FamilyKind.PLAIN:
        if kappa_set:
            raise SpecMismatchError("plain family takes no --kappa-set")
        return [None]
    if kappa_set:
        values = [Fraction(part) for part in kappa_set.split(",")]
    else:
        values = sorted(KNOWN_TRANSCENDENTAL_SHIFTS)
    kappas = [Kappa(v) for v in values]
    outside = sorted(k.value for k in kappas if not k.known_transcendental)
    if outside:
        _warn_conditional(warnings, outside)
    return kappas


def _cmd_verify(args) -> OutputEnvelope:
    warnings: list = []
    family = FamilyKind(args.family)
    ctx = PrecisionContext(args.digits)
    kappas = _verify_kappas(family, args.kappa_set, warnings)
    digits = ctx.decimal_digits
    params = {
        "family": family.value,
        "mode": args.mode,
        "n_max": args.n_max,
        "m_max": args.m_max,
        "kappa_set": args.kappa_set,
        "digits": args.digits,
        "tolerance": args.tolerance,
    }
    rows = []
    any_failed = False

    if args.mode == "identity":
        if args.m_max is None:
            raise ValueError("--m-max is required for identity mode")
        m_start = 1 if family is FamilyKind.PLAIN else 0
        for kappa in kappas:
            for n in range(args.n_max + 1):
                for m in range(m_start, args.m_max + 1):
                    report = verify_identity(
                        family, n, m, kappa, ctx, tolerance=args.tolerance
                    )
                    rows.append(
                        {
                            "family": family.value,
                            "kappa": str(kappa.value) if kappa else "",
                            "n": n,
                            "m": m,
                            "lhs": _real_str(report.lhs, digits),
                            "rhs": _real_str(report.rhs, digits),
                            "abs_residual": _real_str(report.abs_residual, digits),
                            "rel_residual": _real_str(report.rel_residual, digits),
                            "pass": report.passed,
                        }
                    )
                    any_failed |= not report.passed
    else:
        n_start = 2 if family is FamilyKind.PLAIN else 1
        for kappa in kappas:
            for n in range(n_start, args.n_max + 1):
                if family is FamilyKind.PLAIN:
                    indices = tuple(range(1, n + 1))
                    basis_point = Fraction(1)
                    first_ell = 1
                else:
                    indices = tuple(range(n + 1))
                    basis_point = kappa.value
                    first_ell = 0
                spec = LatticeSpec(family, indices, kappa)
                recovered = recover_basis(spec, n, ctx)
                references = gamma_derivatives(basis_point, n, ctx).values
                with mp.workdps(ctx.working_digits):
                    tol = (
                        mp.mpf(args.tolerance)
                        if args.tolerance is not None
                        else ctx.default_tolerance()
                    )
                    for offset, value in enumerate(recovered):
                        ell = first_ell + offset
                        reference = references[ell]
                        abs_error = abs(value - reference)
                        magnitude = abs(reference)
                        rel_error = (
                            abs_error / magnitude if magnitude > 0 else mp.inf
                        )
                        effective = abs_error if magnitude < 1 else rel_error
                        ok = bool(effective < tol)
                        rows.append(
                            {
                                "family": family.value,
                                "kappa": str(kappa.value) if kappa else "",
                                "n": n,
                                "indices": " ".join(str(i) for i in indices),
                                "ell": ell,
                                "recovered": _real_str(value, digits),
                                "reference": _real_str(reference, digits),
                                "abs_error": _real_str(abs_error, digits),
                                "rel_error": _real_str(rel_error, digits),
                                "pass": ok,
                            }
                        )
                        any_failed |= not ok

    status = VERIFICATION_FAILURE if any_failed else 0
    return OutputEnvelope("verify", params, rows, warnings, exit_status=status)


def _cmd_density(args) -> OutputEnvelope:
    variant = BoundVariant(args.variant)
    params = {
        "variant": variant.value,
        "N": args.N,
        "M": args.M,
        "n": args.n,
        "with_oracle": args.with_oracle,
        "digits": args.digits,
    }

    def need(flag, name):
        if flag is None:
            raise ValueError(f"--{name} is required for variant {variant.value}")
        return _parse_int_range(flag)

    def reject(flag, name):
        if flag is not None:
            raise ValueError(f"--{name} does not apply to variant {variant.value}")

    if variant is BoundVariant.PRIOR:
        first = need(args.N, "N")
        reject(args.M, "M")
        reject(args.n, "n")
        second = None
        first_key = "N"
    elif variant in (BoundVariant.FIXED_N, BoundVariant.FIXED_N_SHIFTED):
        first = need(args.n, "n")
        second = need(args.M, "M")
        reject(args.N, "N")
        first_key = "n"
    else:
        first = need(args.N, "N")
        second = need(args.M, "M")
        reject(args.n, "n")
        first_key = "N"
    if args.with_oracle and variant not in (
        BoundVariant.BIVARIATE,
        BoundVariant.BIVARIATE_SHIFTED,
    ):
        raise ValueError("--with-oracle applies to the bivariate variants only")

    grid = density_grid(
        variant, first, second, include_oracle=args.with_oracle, digits=args.digits
    )
    rows = []
    any_mismatch = False
    for cell in grid:
        bound = cell.bound
        row = {"variant": variant.value, first_key: bound.params[first_key]}
        if second is not None:
            row["M"] = bound.params["M"]
        row["value"] = (
            str(bound.value) if bound.exact else _real_str(bound.value, args.digits)
        )
        row["branch"] = bound.branch
        row["exact"] = bound.exact
        if args.with_oracle:
            row["oracle"] = str(cell.oracle)
            matched = cell.oracle == bound.value
            row["oracle_match"] = matched
            any_mismatch |= not matched
        rows.append(row)
    status = VERIFICATION_FAILURE if any_mismatch else 0
    return OutputEnvelope("density", params, rows, exit_status=status)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammalattice",
        description="Exact coefficient systems, certificates, numeric checks, "
        "and density bounds for Gamma derivatives at lattice points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    coeffs = sub.add_parser("coeffs", help="print coefficient tables")
    coeffs.add_argument("--family", required=True, choices=["plain", "plus", "minus"])
    coeffs.add_argument("--n", type=int, required=True, help="derivative order")
    coeffs.add_argument("--m", required=True, help="lattice index, single or lo:hi")
    coeffs.add_argument("--kappa", type=Fraction, default=None, help="shift, e.g. 1/2")
    coeffs.add_argument("--format", choices=["csv", "json"], default="json")
    coeffs.set_defaults(handler=_cmd_coeffs)

    matrix = sub.add_parser("matrix", help="print systems, dets, inverses, certificates")
    matrix.add_argument("--family", required=True, choices=["plain", "plus", "minus"])
    matrix.add_argument("--n", type=int, required=True)
    matrix.add_argument("--indices", required=True, help="comma list, e.g. 1,2,5")
    matrix.add_argument("--kappa", type=Fraction, default=None)
    matrix.add_argument(
        "--show", choices=["det", "inverse", "cauchy-binet"], default=None
    )
    matrix.add_argument("--format", choices=["csv", "json"], default="json")
    matrix.set_defaults(handler=_cmd_matrix)

    verify = sub.add_parser("verify", help="identity / recovery verification sweeps")
    verify.add_argument("--family", required=True, choices=["plain", "plus", "minus"])
    verify.add_argument("--mode", choices=["identity", "recover"], default="identity")
    verify.add_argument("--n-max", type=int, required=True)
    verify.add_argument("--m-max", type=int, default=None)
    verify.add_argument("--kappa-set", default=None, help="comma list, e.g. 1/2,1/3")
    verify.add_argument("--digits", type=int, default=60)
    verify.add_argument("--tolerance", default=None, help="override, e.g. 1e-40")
    verify.add_argument("--format", choices=["csv", "json"], default="json")
    verify.set_defaults(handler=_cmd_verify)

    density = sub.add_parser("density", help="density lower-bound tables")
    density.add_argument(
        "--variant",
        required=True,
        choices=[v.value for v in BoundVariant],
    )
    density.add_argument("--N", default=None, help="single or lo:hi")
    density.add_argument("--M", default=None, help="single or lo:hi")
    density.add_argument("--n", default=None, help="single or lo:hi (fixed-n variants)")
    density.add_argument("--with-oracle", action="store_true")
    density.add_argument("--digits", type=int, default=50)
    density.add_argument("--format", choices=["csv", "json"], default="json")
    density.set_defaults(handler=_cmd_density)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else USAGE_ERROR
    try:
        envelope = args.handler(args)
    except (GammaLatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    output = envelope.to_json() if args.format == "json" else envelope.to_csv()
    if output and not output.endswith("\n"):
        output += "\n"
    sys.stdout.write(output)
    for warning in envelope.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return envelope.exit_status


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
