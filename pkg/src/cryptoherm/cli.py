"""Batch front-end.

Four subcommands over JSON matrix files:

* diagnose   - run every applicable symmetry check plus the full metric
               pipeline on one (H, P) pair, report JSON to stdout
* metric     - build Theta/Q/C (optionally kappa-rescaled or involutive)
               and write them as matrix files
* sweep      - CSV scan of the two-level model's reality domain
* hermitize  - singularity scan of the Hermitian partner family of P

Exit codes: 0 ok, 1 usage or I/O problem, 2 a symmetry or factorization
verdict failed, 3 spectrum obstruction (complex or degenerate), 4
quasiparity coefficients not real (no involutive rescaling exists).
Identical inputs and flags produce byte-identical stdout and files.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .biortho import renormalize, solve_biorthogonal
from .errors import (
    ComplexSpectrum,
    ConvergenceFailure,
    CryptoHermError,
    DegenerateSpectrum,
    DimensionMismatch,
    MatrixFileError,
    NonRealQuasiparity,
    SingularMatrix,
    VanishingOverlap,
    ZeroKappa,
)
from .linalg import Tolerance, eig, frobenius
from .metric import (
    REALITY_REL,
    build_bundle,
    involutive_normalization,
    reference_quasiparity_coeffs,
)
from .models import PseudoMetric, classify_h2, discriminant_h2, hermitian_rotation, hermitian_sum
from .symmetry import (
    pseudo_hermiticity_residual,
    quasi_hermiticity_residual,
    weak_triplet_check,
)

#: factorization residuals above this fail the report verdict
FACTORIZATION_TOL = 1e-9

#: involution residuals above this fail the involutive-mode verdict
INVOLUTIVITY_TOL = 1e-10

#: spectral gaps below this times ||H||_F draw a proximity warning
GAP_WARN_FACTOR = 1e-6

#: number of scan points when --theta scan is given without a count
DEFAULT_SCAN_POINTS = 64

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERDICT = 2
EXIT_SPECTRUM = 3
EXIT_NONREAL = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the contract wants 1,
    # so usage failures are turned into exceptions handled in main()
    def error(self, message):
        raise _UsageError(message)


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-rel", type=float, default=1e-10, metavar="X",
                   help="relative tolerance for verdicts (default 1e-10)")
    p.add_argument("--tol-abs", type=float, default=1e-12, metavar="X",
                   help="absolute tolerance for verdicts (default 1e-12)")
    p.add_argument("--seed", type=int, default=None, metavar="N",
                   help="seed reserved for randomized data generators")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cryptoherm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("diagnose", help="full symmetry/metric diagnostic of (H, P)")
    d.add_argument("hamiltonian", help="matrix file for H")
    d.add_argument("pseudometric", help="matrix file for the candidate P")
    d.add_argument("--out-dir", default=None, metavar="DIR",
                   help="also write report.json into DIR")
    _add_common_flags(d)
    d.set_defaults(func=cmd_diagnose)

    m = sub.add_parser("metric", help="build Theta, Q, C and write them as files")
    m.add_argument("hamiltonian", help="matrix file for H")
    m.add_argument("pseudometric", help="matrix file for the candidate P")
    m.add_argument("--kappa", default=None, metavar="PATH|involutive",
                   help="kappa file to apply, or 'involutive' to solve for it")
    m.add_argument("--out-dir", default=".", metavar="DIR",
                   help="directory for theta.json/q.json/c.json (default .)")
    _add_common_flags(m)
    m.set_defaults(func=cmd_metric)

    s = sub.add_parser("sweep", help="CSV scan of the two-level reality domain")
    s.add_argument("--model", required=True, choices=["h2"],
                   help="model family to sweep")
    s.add_argument("--a", type=float, required=True, help="diagonal parameter a")
    s.add_argument("--d", type=float, required=True, help="diagonal parameter d")
    s.add_argument("--b-re", required=True, metavar="V|MIN:MAX:STEPS",
                   help="real part of b: fixed value or inclusive range")
    s.add_argument("--b-im", required=True, metavar="V|MIN:MAX:STEPS",
                   help="imaginary part of b: fixed value or inclusive range")
    _add_common_flags(s)
    s.set_defaults(func=cmd_sweep)

    h = sub.add_parser("hermitize", help="Hermitian partner scan of a candidate P")
    h.add_argument("pseudometric", help="matrix file for the candidate P")
    h.add_argument("--theta", default="scan", metavar="LIST|scan[:N]",
                   help="comma-separated angles, or a uniform scan over "
                        "[0, 2pi) with N points (default scan:64)")
    _add_common_flags(h)
    h.set_defaults(func=cmd_hermitize)

    return parser


def _tol(args) -> Tolerance:
    try:
        return Tolerance(rel=args.tol_rel, abs=args.tol_abs)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _load_pair(args):
    h, _ = io.load_matrix(args.hamiltonian)
    p, _ = io.load_matrix(args.pseudometric)
    if h.shape != p.shape:
        raise MatrixFileError(
            f"dimension mismatch: H is {h.shape[0]}x{h.shape[0]}, "
            f"P is {p.shape[0]}x{p.shape[0]}"
        )
    return h, p


def _verdict_payload(v) -> dict:
    return {
        "name": v.name,
        "residual": float(v.residual),
        "holds": bool(v.holds),
        "tolerance": float(v.tolerance),
        "detail": dict(v.detail) if v.detail is not None else None,
    }


def _spectrum_payload(values, tol: Tolerance, scale: float) -> dict:
    worst = float(np.max(np.abs(values.imag)))
    return {
        "values": io.complex_pairs(values),
        "all_real": bool(worst <= tol.bound(scale)),
        "max_imag": worst,
    }


def _metric_payload(system, bundle) -> dict:
    theta_min = float(np.linalg.eigvalsh(0.5 * (bundle.theta + bundle.theta.conj().T))[0])
    residuals = {k: float(v) for k, v in bundle.residuals.items()}
    return {
        "kappa": io.complex_pairs(system.kappa),
        "quasiparity_coeffs": io.complex_pairs(bundle.coeffs.q),
        "charge_coeffs": io.complex_pairs(bundle.coeffs.c),
        "theta_min_eigenvalue": theta_min,
        "residuals": residuals,
        "factorizations_hold": bool(max(residuals.values()) <= FACTORIZATION_TOL),
    }


def _nonreal_warning(system, p) -> str | None:
    q1 = reference_quasiparity_coeffs(system, p)
    rel = np.abs(q1.imag) / np.abs(q1)
    bad = np.flatnonzero(rel > REALITY_REL)
    if bad.size == 0:
        return None
    return (
        "non-real quasiparity at levels "
        + ",".join(str(int(i)) for i in bad)
        + "; no involutive rescaling exists"
    )


def _emit_report(report: dict, out_dir: str | None) -> None:
    text = io.canonical_json(report)
    print(text)
    if out_dir is not None:
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / "report.json").write_text(text + "\n", encoding="utf-8")


def cmd_diagnose(args) -> int:
    tol = _tol(args)
    h, p = _load_pair(args)
    pm = PseudoMetric.from_matrix(p, tol)
    scale = frobenius(h)

    report: dict = {
        "schema": 1,
        "command": "diagnose",
        "model_fingerprint": io.fingerprint(
            {
                "hamiltonian": io.matrix_to_payload(h),
                "pseudometric": io.matrix_to_payload(p),
            }
        ),
        "tolerance": {"rel": tol.rel, "abs": tol.abs},
    }
    warnings: list[str] = []

    values, _ = eig(h)
    report["spectrum"] = _spectrum_payload(values, tol, scale)

    verdicts = [pseudo_hermiticity_residual(h, pm, tol)]
    if not pm.self_adjoint:
        verdicts.append(weak_triplet_check(h, pm, tol))

    metric_block = None
    obstruction = None
    metric_failed = False
    try:
        system = solve_biorthogonal(h, tol)
    except (ComplexSpectrum, DegenerateSpectrum) as exc:
        obstruction = exc
        warnings.append(f"spectrum obstruction: {type(exc).__name__}: {exc}")
    else:
        gaps = np.diff(system.energies)
        if system.dim > 1 and float(gaps.min()) < GAP_WARN_FACTOR * scale:
            warnings.append(
                "degeneracy proximity: smallest gap "
                f"{io.format_float(float(gaps.min()))}"
            )
        try:
            bundle = build_bundle(system, pm, tol)
        except VanishingOverlap as exc:
            metric_failed = True
            warnings.append(f"metric construction failed: {exc}")
        else:
            metric_block = _metric_payload(system, bundle)
            note = _nonreal_warning(system, pm.matrix)
            if note is not None:
                warnings.append(note)
            verdicts.append(quasi_hermiticity_residual(h, bundle.theta, tol))

    report["verdicts"] = [_verdict_payload(v) for v in verdicts]
    report["metric"] = metric_block
    report["warnings"] = warnings
    _emit_report(report, args.out_dir)

    if obstruction is not None:
        return EXIT_SPECTRUM
    ok = all(v.holds for v in verdicts)
    if metric_failed or metric_block is None or not metric_block["factorizations_hold"]:
        ok = False
    return EXIT_OK if ok else EXIT_VERDICT


def cmd_metric(args) -> int:
    tol = _tol(args)
    h, p = _load_pair(args)
    pm = PseudoMetric.from_matrix(p, tol)

    kappa_tag: object = None
    system = solve_biorthogonal(h, tol)
    involutive = args.kappa == "involutive"
    warnings: list[str] = []

    if involutive:
        kappa_tag = "involutive"
        _, system = involutive_normalization(system, pm.matrix)
    elif args.kappa is not None:
        kappa = io.load_kappa(args.kappa, system.dim)
        kappa_tag = io.complex_pairs(kappa)
        system = renormalize(system, kappa)

    bundle = build_bundle(system, pm, tol)
    note = _nonreal_warning(system, pm.matrix)
    if note is not None:
        warnings.append(note)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    io.save_matrix(out_dir / "theta.json", bundle.theta)
    io.save_matrix(out_dir / "q.json", bundle.quasiparity)
    io.save_matrix(out_dir / "c.json", bundle.charge)

    report: dict = {
        "schema": 1,
        "command": "metric",
        "model_fingerprint": io.fingerprint(
            {
                "hamiltonian": io.matrix_to_payload(h),
                "pseudometric": io.matrix_to_payload(p),
                "kappa": kappa_tag,
            }
        ),
        "tolerance": {"rel": tol.rel, "abs": tol.abs},
        "metric": _metric_payload(system, bundle),
        "files": ["theta.json", "q.json", "c.json"],
    }

    if involutive:
        n = system.dim
        q2 = frobenius(bundle.quasiparity @ bundle.quasiparity - np.eye(n))
        c2 = frobenius(bundle.charge @ bundle.charge - np.eye(n))
        report["involutive"] = {
            "applied": True,
            "kappa": io.complex_pairs(system.kappa),
            "q_squared_residual": float(q2),
            "c_squared_residual": float(c2),
            "holds": bool(max(q2, c2) <= INVOLUTIVITY_TOL),
        }
    else:
        report["involutive"] = {"applied": False}

    report["warnings"] = warnings
    _emit_report(report, None)

    if not report["metric"]["factorizations_hold"]:
        return EXIT_VERDICT
    if involutive and not report["involutive"]["holds"]:
        return EXIT_VERDICT
    return EXIT_OK


def _parse_axis(expr: str, name: str) -> np.ndarray:
    parts = expr.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) == 3:
            lo, hi = float(parts[0]), float(parts[1])
            steps = int(parts[2])
            if steps < 2:
                raise _UsageError(f"{name}: steps must be >= 2, got {steps}")
            return np.linspace(lo, hi, steps)
    except ValueError as exc:
        raise _UsageError(f"{name}: cannot parse {expr!r} ({exc})") from exc
    raise _UsageError(f"{name}: expected V or MIN:MAX:STEPS, got {expr!r}")


def cmd_sweep(args) -> int:
    re_axis = _parse_axis(args.b_re, "--b-re")
    im_axis = _parse_axis(args.b_im, "--b-im")
    a, d = args.a, args.d

    out = sys.stdout
    out.write("b_re,b_im,discriminant,class,min_gap\n")
    for re in re_axis:
        for im in im_axis:
            b = complex(re, im)
            disc = discriminant_h2(a, d, b)
            tag = classify_h2(a, d, b).tag
            # |E_+ - E_-| = sqrt(|disc|) whether the pair is real or conjugate
            gap = float(np.sqrt(abs(disc)))
            out.write(
                f"{io.format_float(re)},{io.format_float(im)},"
                f"{io.format_float(disc)},{tag},{io.format_float(gap)}\n"
            )
    return EXIT_OK


def _parse_theta(expr: str) -> list[float]:
    if expr == "scan":
        count = DEFAULT_SCAN_POINTS
    elif expr.startswith("scan:"):
        try:
            count = int(expr.split(":", 1)[1])
        except ValueError as exc:
            raise _UsageError(f"--theta: cannot parse {expr!r}") from exc
        if count < 1:
            raise _UsageError("--theta: scan needs at least one point")
    else:
        try:
            return [float(x) for x in expr.split(",")]
        except ValueError as exc:
            raise _UsageError(f"--theta: cannot parse {expr!r}") from exc
    return [2.0 * np.pi * k / count for k in range(count)]


def cmd_hermitize(args) -> int:
    tol = _tol(args)
    p, _ = io.load_matrix(args.pseudometric)
    thetas = _parse_theta(args.theta)
    warnings: list[str] = []

    summed = hermitian_sum(p, tol)
    if not summed.invertible:
        warnings.append("singular Hermitian partner: P + adjoint(P)")

    rotations = []
    for theta in thetas:
        rotated = hermitian_rotation(p, theta, tol)
        if not rotated.invertible:
            warnings.append(
                f"singular Hermitian partner at theta = {io.format_float(theta)}"
            )
        rotations.append(
            {
                "theta": float(theta),
                "smallest_singular_value": rotated.smallest_singular_value,
                "invertible": rotated.invertible,
            }
        )

    report = {
        "schema": 1,
        "command": "hermitize",
        "model_fingerprint": io.fingerprint({"pseudometric": io.matrix_to_payload(p)}),
        "tolerance": {"rel": tol.rel, "abs": tol.abs},
        "sum": {
            "smallest_singular_value": summed.smallest_singular_value,
            "invertible": summed.invertible,
            "self_adjoint": summed.self_adjoint,
        },
        "rotation": rotations,
        "warnings": warnings,
    }
    print(io.canonical_json(report))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatrixFileError, DimensionMismatch, ZeroKappa) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularMatrix as exc:
        print(f"error: pseudometric not invertible: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonRealQuasiparity as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONREAL
    except (ComplexSpectrum, DegenerateSpectrum, ConvergenceFailure) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SPECTRUM
    except VanishingOverlap as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except CryptoHermError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERDICT


if __name__ == "__main__":
    raise SystemExit(main())
