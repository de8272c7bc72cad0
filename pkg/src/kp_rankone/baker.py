"""Wave functions attached to the determinant tau, and the rational
structure of its spectral data.

The wave function is psi(t, z) = tau(t - [1/z]) / tau(t) exp(g(z)) with
g(z) = sum_i t_i z^i; its stationary (first-time-only) form has the
explicit determinant representation

    psi(x, z) = det(A e^{xB} (z I - B) C.T) / (z^n det(A e^{xB} C.T)) e^{xz},

normalized by z^n where n is the row count of A, so psi e^{-xz} -> 1 as
|z| -> infinity. The adjoint wave function flips the shift and the
exponential. Values are carried as ScaledComplex because e^{xz} alone
overflows doubles on moderate grids.

The spectral support of the whole family is the eigenvalue multiset of
B: multiplying the adjoint shift by det(z I - B) clears every pole, and
:func:`polynomiality_check` verifies that claim by polynomial
interpolation on a circle enclosing the spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import GeometryError, PoleError, SingularShiftError
from .matkernel import ScaledComplex, det_scaled, eig, expm_centered
from .tau import TauEvaluator, TimeVector, TimesLike
from .triple import RankOneTriple
from .verify import VerificationReport

__all__ = [
    "DEFAULT_POLY_TOL",
    "SpectralSupport",
    "BASample",
    "psi_stationary",
    "psi_time",
    "psi_dual",
    "grassmann_support",
    "polynomiality_check",
]

DEFAULT_POLY_TOL = 1e-8


@dataclass(frozen=True)
class SpectralSupport:
    """Eigenvalues of B with multiplicities; the degree is always N."""

    points: Tuple[Tuple[complex, int], ...]
    char_poly_degree: int


@dataclass(frozen=True)
class BASample:
    """One wave-function sample; ``value`` stays on the log scale."""

    x: complex
    z: complex
    value: ScaledComplex
    is_pole: bool = False

    @classmethod
    def pole(cls, x: complex, z: complex) -> "BASample":
        return cls(x, z, ScaledComplex(-math.inf, 0.0), True)

    @property
    def as_complex(self) -> complex:
        return self.value.to_complex()


def psi_stationary(tr: RankOneTriple, x: complex, z: complex) -> BASample:
    """Stationary wave function at position x and spectral parameter z."""
    z = complex(z)
    x = complex(x)
    if z == 0:
        raise ValueError("spectral parameter z must be nonzero")
    E0, _ = expm_centered(x * tr.B)  # centering scalar cancels in the ratio
    left = tr.A @ E0
    den = det_scaled(left @ tr.C.T)
    if den.is_zero:
        raise PoleError(f"tau vanishes at x = {x}")
    zIB = z * np.eye(tr.N, dtype=np.complex128) - tr.B
    num = det_scaled(left @ zIB @ tr.C.T)
    val = num / den / (ScaledComplex.from_complex(z) ** tr.n)
    val = val * ScaledComplex.exp_of(x * z)
    return BASample(x, z, val)


def psi_time(tr: RankOneTriple, t: TimesLike, z: complex) -> BASample:
    """tau(t - [1/z]) / tau(t) exp(g(z)), for a full time vector t."""
    z = complex(z)
    if z == 0:
        raise ValueError("spectral parameter z must be nonzero")
    t = TimeVector.coerce(t)
    ev = TauEvaluator(tr, t)
    base = ev.tau()
    if base.is_zero:
        raise PoleError("tau vanishes at the base time")
    shifted = ev.tau_miwa(((z, 1),))
    val = shifted / base * ScaledComplex.exp_of(t.g_scalar(z))
    return BASample(t.entry(1), z, val)


def psi_dual(tr: RankOneTriple, t: TimesLike, z: complex) -> BASample:
    """Adjoint wave function tau(t + [1/z]) / tau(t) exp(-g(z)).

    The inverse shift factor requires z outside the spectrum of B.
    """
    z = complex(z)
    if z == 0:
        raise ValueError("spectral parameter z must be nonzero")
    t = TimeVector.coerce(t)
    ev = TauEvaluator(tr, t)
    base = ev.tau()
    if base.is_zero:
        raise PoleError("tau vanishes at the base time")
    shifted = ev.tau_miwa(((z, -1),))
    val = shifted / base * ScaledComplex.exp_of(-t.g_scalar(z))
    return BASample(t.entry(1), z, val)


def grassmann_support(tr: RankOneTriple) -> SpectralSupport:
    """Clustered eigenvalues of B; multiplicities sum to N."""
    return SpectralSupport(points=tuple(eig(tr.B)), char_poly_degree=tr.N)


def polynomiality_check(
    tr: RankOneTriple,
    t: TimesLike,
    tol: float = DEFAULT_POLY_TOL,
    radius: Optional[float] = None,
) -> VerificationReport:
    """Check that q(z) = det(z I - B) tau(t + [1/z]) is a degree-N polynomial.

    q is sampled at N + 1 equispaced nodes on a circle of radius
    2 + max|eig(B)| (or the given override), fitted exactly in the
    DFT-conditioned basis (z / r)^k, and validated on 2N rotated nodes of
    the same circle. The residual is the largest validation mismatch
    relative to the largest sampled |q|. Rank-one admissibility is what
    makes this hold; generic B of full support would need degree n(N-1).
    """
    t = TimeVector.coerce(t)
    N = tr.N
    lam = np.linalg.eigvals(tr.B)
    spec_radius = float(np.max(np.abs(lam))) if lam.size else 0.0
    r = float(radius) if radius is not None else 2.0 + spec_radius
    ev = TauEvaluator(tr, t)

    for _ in range(5):
        fit_nodes = r * np.exp(2j * np.pi * np.arange(N + 1) / (N + 1))
        check_nodes = r * np.exp(2j * np.pi * (np.arange(2 * N) + 0.37) / (2 * N))
        all_nodes = np.concatenate([fit_nodes, check_nodes])
        if np.min(np.abs(all_nodes[:, None] - lam[None, :])) < 1e-8 * r:
            r *= 1.3
            continue
        try:
            q_vals = []
            for z in all_nodes:
                p = complex(np.prod(z - lam))  # char poly from the spectrum
                q_vals.append(ev.tau_miwa(((z, -1),)) * p)
        except SingularShiftError:
            r *= 1.3
            continue
        break
    else:
        raise GeometryError("could not place interpolation nodes off the spectrum")

    peak = max(q.log_magnitude for q in q_vals)
    if peak == -math.inf:
        # the whole family vanishes; a zero function is trivially polynomial
        return VerificationReport.make("polynomiality", 0.0, tol, radius=r, degree=N)
    scaled = np.array(
        [
            (q / ScaledComplex(peak, 0.0)).to_complex()
            for q in q_vals
        ],
        dtype=np.complex128,
    )
    V = (fit_nodes[:, None] / r) ** np.arange(N + 1)[None, :]
    coeffs = np.linalg.solve(V, scaled[: N + 1])
    Vc = (check_nodes[:, None] / r) ** np.arange(N + 1)[None, :]
    predicted = Vc @ coeffs
    residual = float(np.max(np.abs(predicted - scaled[N + 1 :])))
    # undo the peak normalization and the (z/r)^k basis scaling so the
    # reported value is the coefficient of z^N itself (equals tau(t))
    leading = (
        ScaledComplex(peak, 0.0)
        * ScaledComplex.from_complex(complex(coeffs[-1]))
        / ScaledComplex.exp_of(N * math.log(r))
    )
    return VerificationReport.make(
        "polynomiality",
        residual,
        tol,
        radius=r,
        degree=N,
        leading_coefficient=leading,
    )
