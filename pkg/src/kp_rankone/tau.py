"""Determinant tau evaluation: continuous times, exact lattice shifts,
log derivatives and the second-log-derivative field.

The central object is tau(t) = det(A exp(g(B)) C.T) with
g(x) = sum_{i=1..K} t_i x^i. Shifting the times by -k [1/c], meaning
t_i -> t_i - k c^(-i) / i for all i, acts exactly as the matrix factor
(I - B/c)^k inside the determinant; :class:`MiwaShiftList` carries such
shifts and :func:`tau_miwa` applies them without any series truncation.
The discrete variant :func:`tau_discrete` uses factors (c I - B)^k
instead, which differs from the shift form only by the scalar gauge
(c1^l c2^m c3^n)^n.

First derivatives of log tau are exact:

    d/dt_k log tau = tr[(A E C.T)^-1 A B^k E C.T],   E = exp(g(B)),

and higher derivatives are central finite differences of that exact
first derivative, Richardson-extrapolated from steps h and h/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as _iter_product
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import PoleError, SingularShiftError
from .matkernel import (
    ScaledComplex,
    as_cmatrix,
    det_scaled,
    expm_centered,
)
from .triple import RankOneTriple

__all__ = [
    "DEFAULT_TRUNCATION",
    "TimeVector",
    "MiwaShiftList",
    "TauEvaluator",
    "tau",
    "tau_miwa",
    "tau_discrete",
    "log_tau_derivative",
    "u_field",
    "GridSample",
]

#: default number of retained times when a scenario or caller does not say
DEFAULT_TRUNCATION = 6

TimesLike = Union["TimeVector", Sequence[complex]]
ShiftsLike = Union["MiwaShiftList", Iterable[Tuple[complex, int]]]


@dataclass(frozen=True, eq=False)
class TimeVector:
    """Truncated sequence of times (t_1, ..., t_K), K >= 1, all finite."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.atleast_1d(np.array(self.values, dtype=np.complex128))
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("times must form a nonempty 1-D sequence")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("times must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @classmethod
    def coerce(cls, t: TimesLike) -> "TimeVector":
        if isinstance(t, TimeVector):
            return t
        return cls(np.asarray(list(t)))

    @classmethod
    def zeros(cls, K: int = DEFAULT_TRUNCATION) -> "TimeVector":
        return cls(np.zeros(K, dtype=np.complex128))

    @property
    def K(self) -> int:
        return int(self.values.size)

    def entry(self, index: int) -> complex:
        """t_index with 1-based index; zero beyond the truncation."""
        if index < 1:
            raise IndexError("time indices start at 1")
        if index > self.K:
            return 0j
        return complex(self.values[index - 1])

    def padded(self, K: int) -> "TimeVector":
        """Extend with zeros to at least K entries (tau is unchanged)."""
        if K <= self.K:
            return self
        out = np.zeros(K, dtype=np.complex128)
        out[: self.K] = self.values
        return TimeVector(out)

    def with_entry(self, index: int, value: complex) -> "TimeVector":
        """Copy with t_index replaced (1-based; pads if needed)."""
        base = self.padded(index)
        out = np.array(base.values)
        out[index - 1] = value
        return TimeVector(out)

    def g_scalar(self, z: complex) -> complex:
        """g(z) = sum_i t_i z^i by Horner."""
        acc = 0j
        for t_i in self.values[::-1]:
            acc = z * (complex(t_i) + acc)
        return acc

    def g_matrix(self, B: np.ndarray) -> np.ndarray:
        """g(B) = sum_i t_i B^i by Horner (exact for the truncation)."""
        B = as_cmatrix(B, "B")
        dim = B.shape[0]
        acc = np.zeros((dim, dim), dtype=np.complex128)
        I = np.eye(dim, dtype=np.complex128)
        for t_i in self.values[::-1]:
            acc = B @ (complex(t_i) * I + acc)
        return acc

    def g_prime_matrix(self, Z: np.ndarray) -> np.ndarray:
        """g'(Z) = sum_i i t_i Z^(i-1) by Horner."""
        Z = as_cmatrix(Z, "Z")
        dim = Z.shape[0]
        acc = np.zeros((dim, dim), dtype=np.complex128)
        I = np.eye(dim, dtype=np.complex128)
        for i in range(self.K, 0, -1):
            acc = acc @ Z + (i * complex(self.values[i - 1])) * I
        return acc


@dataclass(frozen=True)
class MiwaShiftList:
    """Shifts ((c, k), ...): positive k subtracts k [1/c] from the times.

    Each entry contributes the exact factor (I - B/c)^k inside the
    determinant. Negative k is allowed as long as c stays away from the
    spectrum of B (checked when the factor is built).
    """

    shifts: Tuple[Tuple[complex, int], ...] = ()

    def __post_init__(self):
        cleaned = []
        for entry in self.shifts:
            c, k = entry
            c = complex(c)
            k = int(k)
            if c == 0:
                raise ValueError("shift parameter c must be nonzero")
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError("shift parameter c must be finite")
            cleaned.append((c, k))
        object.__setattr__(self, "shifts", tuple(cleaned))

    @classmethod
    def coerce(cls, s: ShiftsLike) -> "MiwaShiftList":
        if isinstance(s, MiwaShiftList):
            return s
        return cls(tuple(s))

    def merged(self) -> "MiwaShiftList":
        """Combine repeated parameters by adding multiplicities."""
        acc: dict = {}
        order: list = []
        for c, k in self.shifts:
            if c not in acc:
                acc[c] = 0
                order.append(c)
            acc[c] += k
        return MiwaShiftList(tuple((c, acc[c]) for c in order if acc[c] != 0))


def _shift_factor(B: np.ndarray, c: complex, k: int) -> np.ndarray:
    """(I - B/c)^k, with a singularity guard when k < 0."""
    dim = B.shape[0]
    base = np.eye(dim, dtype=np.complex128) - B / c
    if k == 0:
        return np.eye(dim, dtype=np.complex128)
    if k < 0:
        s = np.linalg.svd(base, compute_uv=False)
        if s[0] == 0.0 or s[-1] <= 1e-12 * s[0]:
            raise SingularShiftError(
                f"shift parameter c = {c} lies in (or too close to) the "
                "spectrum of B; the inverse factor does not exist"
            )
    return np.linalg.matrix_power(base, k)


class TauEvaluator:
    """Tau values for one triple at one base time, with exp(g(B)) cached.

    The exponential is stored as exp(g(B)) = e^mu E0 with mu the mean
    eigenvalue of g(B) split off (see ``expm_centered``), so repeated
    shifted evaluations cost one small determinant each and huge tau
    magnitudes never leave the log scale.
    """

    def __init__(self, tr: RankOneTriple, t: TimesLike):
        self.triple = tr
        self.times = TimeVector.coerce(t)
        G = self.times.g_matrix(tr.B)
        self.E0, self.mu = expm_centered(G)
        self._left = tr.A @ self.E0
        self._gauge = ScaledComplex.exp_of(tr.n * self.mu)

    def _det(self, inner: np.ndarray) -> ScaledComplex:
        return det_scaled(inner) * self._gauge

    def tau(self) -> ScaledComplex:
        return self._det(self._left @ self.triple.C.T)

    def tau_miwa(self, shifts: ShiftsLike) -> ScaledComplex:
        shifts = MiwaShiftList.coerce(shifts)
        right = self.triple.C.T
        for c, k in shifts.shifts:
            if k == 0:
                continue
            right = _shift_factor(self.triple.B, c, k) @ right
        return self._det(self._left @ right)

    def tau_discrete(
        self, l: int, m: int, n_index: int, c1: complex, c2: complex, c3: complex
    ) -> ScaledComplex:
        B = self.triple.B
        dim = B.shape[0]
        I = np.eye(dim, dtype=np.complex128)
        right = self.triple.C.T
        for c, k in ((c1, int(l)), (c2, int(m)), (c3, int(n_index))):
            if k == 0:
                continue
            base = complex(c) * I - B
            if k < 0:
                s = np.linalg.svd(base, compute_uv=False)
                if s[0] == 0.0 or s[-1] <= 1e-12 * s[0]:
                    raise SingularShiftError(
                        f"lattice parameter c = {c} lies in (or too close to) "
                        "the spectrum of B"
                    )
            right = np.linalg.matrix_power(base, k) @ right
        return self._det(self._left @ right)


def tau(tr: RankOneTriple, t: TimesLike) -> ScaledComplex:
    """det(A exp(g(B)) C.T) as a ScaledComplex."""
    return TauEvaluator(tr, t).tau()


def tau_miwa(
    tr: RankOneTriple, shifts: ShiftsLike, t: Optional[TimesLike] = None
) -> ScaledComplex:
    """Tau at t shifted by sum_j -k_j [1/c_j], via exact matrix factors."""
    base = t if t is not None else TimeVector.zeros(1)
    return TauEvaluator(tr, base).tau_miwa(shifts)


def tau_discrete(
    tr: RankOneTriple,
    l: int,
    m: int,
    n_index: int,
    c1: complex,
    c2: complex,
    c3: complex,
    t: Optional[TimesLike] = None,
) -> ScaledComplex:
    """det(A exp(g(B)) (c1 I - B)^l (c2 I - B)^m (c3 I - B)^n C.T).

    With t omitted the exponential factor is the identity. Equal to
    (c1^l c2^m c3^n)^n_rows times the corresponding :func:`tau_miwa`.
    """
    base = t if t is not None else TimeVector.zeros(1)
    return TauEvaluator(tr, base).tau_discrete(l, m, n_index, c1, c2, c3)


# ---------------------------------------------------------------------------
# log derivatives
# ---------------------------------------------------------------------------

# steps for the finite-difference stage, by derivative order of the
# stencil; the third-order stencil uses a larger step because its
# rounding error grows like eps / h^3
_FD_STEP = {1: 1e-3, 2: 1e-3, 3: 1e-2}

# central stencils with O(h^2) truncation: (offset, weight) pairs, to be
# divided by h^order
_CENTRAL_STENCIL = {
    1: ((-1, -0.5), (1, 0.5)),
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
}


def _dlog_tau_exact(tr: RankOneTriple, t: TimeVector, k: int) -> complex:
    """Exact d/dt_k log tau via the resolvent trace."""
    G = t.g_matrix(tr.B)
    E0, _ = expm_centered(G)  # the scalar e^mu cancels in the ratio
    M = tr.A @ E0 @ tr.C.T
    Bk = np.linalg.matrix_power(tr.B, k)
    Mk = tr.A @ (Bk @ E0) @ tr.C.T
    try:
        sol = np.linalg.solve(M, Mk)
    except np.linalg.LinAlgError as exc:
        raise PoleError(f"tau vanishes at the evaluation point: {exc}") from exc
    val = complex(np.trace(sol))
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise PoleError("tau is numerically zero at the evaluation point")
    return val


def _fd_of_exact(
    tr: RankOneTriple,
    t: TimeVector,
    pivot: int,
    rest: Tuple[int, int, int],
) -> complex:
    """Tensor-product central differences of the exact d/dt_pivot log tau,
    Richardson-extrapolated from steps h and h/2."""
    axes = [i for i in range(3) if rest[i] > 0]
    stencils = [_CENTRAL_STENCIL[rest[i]] for i in axes]
    base_steps = [_FD_STEP[rest[i]] for i in axes]

    def apply(scale: float) -> complex:
        steps = [h * scale for h in base_steps]
        total = 0j
        for combo in _iter_product(*stencils):
            tv = t
            weight = 1.0
            for (offset, w), axis, h in zip(combo, axes, steps):
                weight *= w
                if offset != 0:
                    tv = tv.with_entry(axis + 1, tv.entry(axis + 1) + offset * h)
            total += weight * _dlog_tau_exact(tr, tv, pivot)
        denom = 1.0
        for axis, h in zip(axes, steps):
            denom *= h ** rest[axis]
        return total / denom

    d_h = apply(1.0)
    d_half = apply(0.5)
    return (4.0 * d_half - d_h) / 3.0


def log_tau_derivative(
    tr: RankOneTriple, t: TimesLike, orders: Sequence[int]
) -> complex:
    """Partial derivative of log tau at t.

    ``orders`` is a multi-index (d1, d2, d3) over (t_1, t_2, t_3) with
    1 <= d1 + d2 + d3 <= 4. Total order one is exact (trace identity);
    the remaining orders are applied as central finite differences of
    the exact first derivative in the variable of highest order.
    """
    o = tuple(int(x) for x in orders)
    if len(o) != 3 or any(x < 0 for x in o):
        raise ValueError("orders must be three non-negative integers")
    total = sum(o)
    if not (1 <= total <= 4):
        raise ValueError(f"total derivative order must lie in 1..4, got {total}")
    t = TimeVector.coerce(t).padded(3)
    pivot_axis = max(range(3), key=lambda i: o[i])  # ties pick the lowest index
    rest = list(o)
    rest[pivot_axis] -= 1
    rest = tuple(rest)
    if sum(rest) == 0:
        return _dlog_tau_exact(tr, t, pivot_axis + 1)
    return _fd_of_exact(tr, t, pivot_axis + 1, rest)


# ---------------------------------------------------------------------------
# second-derivative field on grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSample:
    """One grid point of the field u = 2 d^2/dt_1^2 log tau."""

    t1: float
    t2: Optional[float]
    t3: Optional[float]
    value: complex
    is_pole: bool


def u_field(
    tr: RankOneTriple,
    t1_values: Sequence[float],
    t2_values: Optional[Sequence[float]] = None,
    t3_values: Optional[Sequence[float]] = None,
    base: Optional[TimesLike] = None,
    *,
    pole_rel_threshold: float = 1e-10,
) -> List[GridSample]:
    """Sample u = 2 d^2/dt_1^2 log tau over a grid.

    Grid coordinates overwrite t_1 (and t_2, t_3 when given) of ``base``;
    the remaining base entries are kept. Samples where |tau| falls below
    ``pole_rel_threshold`` times the grid maximum are marked as poles and
    carry value nan; so are samples whose derivative hits an exact zero
    of tau.
    """
    base_t = TimeVector.coerce(base).padded(3) if base is not None else TimeVector.zeros(3)
    t1s = [float(v) for v in t1_values]
    t2s = [float(v) for v in t2_values] if t2_values is not None else [None]
    t3s = [float(v) for v in t3_values] if t3_values is not None else [None]

    points = []
    for v3 in t3s:
        for v2 in t2s:
            for v1 in t1s:
                tv = base_t.with_entry(1, v1)
                if v2 is not None:
                    tv = tv.with_entry(2, v2)
                if v3 is not None:
                    tv = tv.with_entry(3, v3)
                points.append((v1, v2, v3, tv))

    log_mags = [TauEvaluator(tr, tv).tau().log_magnitude for (_, _, _, tv) in points]
    peak = max(log_mags)
    threshold = peak + math.log(pole_rel_threshold)

    out: List[GridSample] = []
    for (v1, v2, v3, tv), lm in zip(points, log_mags):
        if lm < threshold:
            out.append(GridSample(v1, v2, v3, complex(math.nan, math.nan), True))
            continue
        try:
            val = 2.0 * log_tau_derivative(tr, tv, (2, 0, 0))
        except PoleError:
            out.append(GridSample(v1, v2, v3, complex(math.nan, math.nan), True))
            continue
        out.append(GridSample(v1, v2, v3, val, False))
    return out
