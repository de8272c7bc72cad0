"""Residual checks for every identity the determinant tau is supposed to
satisfy, each packaged as a :class:`VerificationReport`.

All residuals are relative: the defect is divided by the magnitude of
the largest contributing term, so "small" means small compared to the
quantities that were combined, not on some absolute scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from .cases import (
    CalogeroMoserData,
    IntertwiningData,
    from_calogero_moser,
    from_intertwining,
    wilson_tau_closed_form,
)
from .errors import (
    DegenerateSpectrumError,
    DimensionError,
    InadmissibleTripleError,
)
from .matkernel import (
    DEFAULT_RANK_TOL,
    as_cmatrix,
    det_scaled,
    matexp,
    numerical_rank,
    rel_difference,
    residual_of_sum,
    ScaledComplex,
)
from .tau import TauEvaluator, TimeVector, TimesLike, log_tau_derivative, tau
from .triple import RankOneTriple

__all__ = [
    "DEFAULT_HBDE_TOL",
    "DEFAULT_KP_TOL",
    "DEFAULT_H3_TOL",
    "DEFAULT_BETHE_TOL",
    "DEFAULT_WILSON_TOL",
    "DEFAULT_INTERTWINING_TOL",
    "VerificationReport",
    "hbde_residual",
    "kp_residual",
    "h3_residual",
    "bethe_check",
    "crosscheck_wilson",
    "crosscheck_intertwining",
]

DEFAULT_HBDE_TOL = 1e-8
DEFAULT_KP_TOL = 1e-4          # limited by the finite-difference stage
DEFAULT_H3_TOL = 1e-10
DEFAULT_BETHE_TOL = 1e-8
DEFAULT_WILSON_TOL = 1e-10
DEFAULT_INTERTWINING_TOL = 1e-12


@dataclass(frozen=True)
class VerificationReport:
    """One named residual against one tolerance, with free-form context."""

    name: str
    residual: float
    tolerance: float
    passed: bool
    context: Dict[str, object] = field(default_factory=dict)

    @classmethod
    def make(cls, name: str, residual: float, tolerance: float, **context) -> "VerificationReport":
        residual = float(residual)
        if not (residual >= 0.0):  # also rejects nan
            raise ValueError(f"residual must be a non-negative number, got {residual}")
        return cls(
            name=name,
            residual=residual,
            tolerance=float(tolerance),
            passed=bool(residual <= tolerance),
            context=dict(context),
        )


def hbde_residual(
    tr: RankOneTriple,
    t: TimesLike,
    c1: complex,
    c2: complex,
    c3: complex,
    l: int = 0,
    m: int = 0,
    n_index: int = 0,
    tol: float = DEFAULT_HBDE_TOL,
) -> VerificationReport:
    """Three-term bilinear lattice residual at one lattice site.

    With T(i, j, k) the tau shifted by i [1/c1] + j [1/c2] + k [1/c3]
    from base time t, the combination

        (c2 - c3) T(l+1, m, n) T(l, m+1, n+1)
      - (c1 - c3) T(l, m+1, n) T(l+1, m, n+1)
      + (c1 - c2) T(l, m, n+1) T(l+1, m+1, n)

    vanishes identically for admissible triples. The report carries
    |sum| / max term magnitude, evaluated on the log scale.
    """
    c1, c2, c3 = complex(c1), complex(c2), complex(c3)
    if len({c1, c2, c3}) < 3:
        raise ValueError("the three lattice parameters must be distinct")
    if 0 in (c1, c2, c3):
        raise ValueError("lattice parameters must be nonzero")
    ev = TauEvaluator(tr, t)

    def T(dl: int, dm: int, dn: int) -> ScaledComplex:
        return ev.tau_miwa(
            ((c1, l + dl), (c2, m + dm), (c3, n_index + dn))
        )

    terms = [
        T(1, 0, 0) * T(0, 1, 1) * (c2 - c3),
        T(0, 1, 0) * T(1, 0, 1) * (-(c1 - c3)),
        T(0, 0, 1) * T(1, 1, 0) * (c1 - c2),
    ]
    residual = residual_of_sum(terms)
    return VerificationReport.make(
        "hbde",
        residual,
        tol,
        c=[c1, c2, c3],
        site=[int(l), int(m), int(n_index)],
        term_log_magnitudes=[x.log_magnitude for x in terms],
    )


def kp_residual(tr: RankOneTriple, t: TimesLike, tol: float = DEFAULT_KP_TOL) -> VerificationReport:
    """Bilinear residual of the first continuous equation of the hierarchy.

    Checks 2(T1111 T - 4 T111 T1 + 3 T11^2) - 8(T13 T - T1 T3)
    + 6(T22 T - T2^2) = 0, with subscripts denoting tau derivatives. The
    derivative ratios T_a / T come from :func:`log_tau_derivative`, so the
    residual is automatically normalized by tau^2; the scale is the
    largest of the seven contributing products.
    """
    d = lambda o: log_tau_derivative(tr, t, o)
    L1, L2, L3 = d((1, 0, 0)), d((0, 1, 0)), d((0, 0, 1))
    L11, L22, L13 = d((2, 0, 0)), d((0, 2, 0)), d((1, 0, 1))
    L111 = d((3, 0, 0))
    L1111 = d((4, 0, 0))

    r1, r2, r3 = L1, L2, L3
    r11 = L11 + L1 * L1
    r22 = L22 + L2 * L2
    r13 = L13 + L1 * L3
    r111 = L111 + 3 * L1 * L11 + L1 ** 3
    r1111 = L1111 + 4 * L1 * L111 + 3 * L11 ** 2 + 6 * L1 ** 2 * L11 + L1 ** 4

    terms = [
        2 * r1111,
        -8 * r111 * r1,
        6 * r11 ** 2,
        -8 * r13,
        8 * r1 * r3,
        6 * r22,
        -6 * r2 ** 2,
    ]
    scale = max(abs(x) for x in terms)
    residual = abs(sum(terms)) / scale if scale > 0.0 else 0.0
    return VerificationReport.make(
        "kp", residual, tol, scale=scale, log_derivatives={"L1": L1, "L11": L11}
    )


def h3_residual(
    P,
    Q,
    c1: complex,
    c2: complex,
    c3: complex,
    tol: float = DEFAULT_H3_TOL,
) -> VerificationReport:
    """Alternating three-point determinant identity for rank-one Q.

    With h1(c) = det(c I - P) and h2(a, b) = det((a I - P)(b I - P) + Q),
    the *weighted* combination

        (c2 - c3) h1(c1) h2(c2, c3) - (c1 - c3) h1(c2) h2(c1, c3)
      + (c1 - c2) h1(c3) h2(c1, c2)

    vanishes whenever rank(Q) <= 1. The unweighted ("printed") form
    h1(c1) h2(c2, c3) - h1(c2) h2(c1, c3) + h1(c3) h2(c1, c2) does NOT
    vanish in general (for 1 x 1 P = 0 it equals c1 c2 c3 +
    (c1 - c2 + c3) Q); both values are reported, the residual is the
    weighted one.
    """
    P = as_cmatrix(P, "P")
    Q = as_cmatrix(Q, "Q")
    n = P.shape[0]
    if P.shape != (n, n) or Q.shape != (n, n):
        raise DimensionError(f"P and Q must be square and equal-sized, got {P.shape}, {Q.shape}")
    if numerical_rank(Q) > 1:
        raise InadmissibleTripleError(f"rank(Q) = {numerical_rank(Q)} > 1")
    c1, c2, c3 = complex(c1), complex(c2), complex(c3)
    I = np.eye(n, dtype=np.complex128)

    def h1(c: complex) -> complex:
        return complex(np.linalg.det(c * I - P))

    def h2(a: complex, b: complex) -> complex:
        return complex(np.linalg.det((a * I - P) @ (b * I - P) + Q))

    w_terms = [
        (c2 - c3) * h1(c1) * h2(c2, c3),
        -(c1 - c3) * h1(c2) * h2(c1, c3),
        (c1 - c2) * h1(c3) * h2(c1, c2),
    ]
    printed = h1(c1) * h2(c2, c3) - h1(c2) * h2(c1, c3) + h1(c3) * h2(c1, c2)
    scale = max(abs(x) for x in w_terms)
    residual = abs(sum(w_terms)) / scale if scale > 0.0 else 0.0
    return VerificationReport.make(
        "h3",
        residual,
        tol,
        weighted_value=sum(w_terms),
        printed_value=printed,
        scale=scale,
    )


def bethe_check(
    d: CalogeroMoserData,
    eta: complex,
    lambda1: complex,
    lambda2: complex,
    m: int = 1,
    tol: float = DEFAULT_BETHE_TOL,
) -> VerificationReport:
    """Product form of the rational nested spectral equations.

    Builds X(m) = -eta X (lambda1 - Z) - m eta (lambda2 - Z)^-1 (lambda1 - Z)
    for m - 1, m, m + 1, takes eigenvalues x_j^m of each, and checks for
    every j that

        prod_k [(x_j^m - x_k^(m-1)) (x_j^m - x_k^m + eta)
                (x_j^m - x_k^(m+1) - eta)]
              / [(x_j^m - x_k^(m-1) + eta) (x_j^m - x_k^m - eta)
                (x_j^m - x_k^(m+1))]  =  -1.

    The reported residual is max_j |product_j + 1|.
    """
    eta = complex(eta)
    lambda1 = complex(lambda1)
    lambda2 = complex(lambda2)
    if eta == 0:
        raise ValueError("eta must be nonzero")
    n = d.n
    I = np.eye(n, dtype=np.complex128)
    comm = d.X @ d.Z - d.Z @ d.X + I
    r = numerical_rank(comm)
    if r > 1:
        raise InadmissibleTripleError(f"commutator condition fails: rank([X, Z] + I) = {r} > 1")
    shifted = lambda2 * I - d.Z
    s = np.linalg.svd(shifted, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= 1e-10 * s[0]:
        raise DegenerateSpectrumError("lambda2 must stay away from the spectrum of Z")
    resolvent = np.linalg.solve(shifted, lambda1 * I - d.Z)

    def lax(mm: int) -> np.ndarray:
        return -eta * d.X @ (lambda1 * I - d.Z) - mm * eta * resolvent

    spectra = {mm: np.linalg.eigvals(lax(mm)) for mm in (m - 1, m, m + 1)}
    scale = max(
        [abs(eta)] + [float(np.max(np.abs(v))) for v in spectra.values()]
    )
    worst = 0.0
    for j in range(n):
        xj = spectra[m][j]
        prod = 1.0 + 0j
        for k in range(n):
            num = (
                (xj - spectra[m - 1][k])
                * (xj - spectra[m][k] + eta)
                * (xj - spectra[m + 1][k] - eta)
            )
            den = (
                (xj - spectra[m - 1][k] + eta)
                * (xj - spectra[m][k] - eta)
                * (xj - spectra[m + 1][k])
            )
            if abs(den) <= 1e-12 * scale ** 3:
                raise DegenerateSpectrumError(
                    "near-zero denominator in the spectral product; the "
                    "parameters sit on a collision locus"
                )
            prod *= num / den
        worst = max(worst, abs(prod + 1.0))
    return VerificationReport.make(
        "bethe",
        worst,
        tol,
        m=int(m),
        eta=eta,
        lambda1=lambda1,
        lambda2=lambda2,
        spectrum=[complex(v) for v in np.sort_complex(spectra[m])],
    )


def crosscheck_wilson(
    d: CalogeroMoserData, t: TimesLike, tol: float = DEFAULT_WILSON_TOL
) -> VerificationReport:
    """General determinant route against det(exp(g(Z))) det(X + g'(Z))."""
    t = TimeVector.coerce(t)
    tr = from_calogero_moser(d)
    lhs = tau(tr, t)
    gauge = det_scaled(matexp(t.g_matrix(d.Z)))
    rhs = gauge * wilson_tau_closed_form(d, t)
    residual = rel_difference(lhs, rhs)
    return VerificationReport.make(
        "crosscheck_wilson",
        residual,
        tol,
        lhs_log_magnitude=lhs.log_magnitude,
        rhs_log_magnitude=rhs.log_magnitude,
    )


def crosscheck_intertwining(
    d: IntertwiningData, t: TimesLike, tol: float = DEFAULT_INTERTWINING_TOL
) -> VerificationReport:
    """General determinant route against det(X exp(g(Z)) + exp(g(Y))).

    Needs square X (so the default C = [I I] applies).
    """
    if d.m != d.n:
        raise DimensionError(
            f"the closed form needs square X, got shape {d.X.shape}"
        )
    t = TimeVector.coerce(t)
    tr = from_intertwining(d)
    lhs = tau(tr, t)
    rhs = det_scaled(d.X @ matexp(t.g_matrix(d.Z)) + matexp(t.g_matrix(d.Y)))
    residual = rel_difference(lhs, rhs)
    return VerificationReport.make(
        "crosscheck_intertwining",
        residual,
        tol,
        lhs_log_magnitude=lhs.log_magnitude,
        rhs_log_magnitude=rhs.log_magnitude,
    )
