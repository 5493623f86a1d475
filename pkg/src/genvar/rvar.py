"""Total r-variation of sampled functions and the error function built from it.

For a grid ``x_0 < ... < x_{n-1}`` the total r-variation is the maximum of
``sum |f(x_{i_k}) - f(x_{i_{k-1}})|**r`` over all index subsets holding both
endpoints. For ``r <= 1`` the finest partition is optimal (``(a+b)**r <=
a**r + b**r``); for ``r > 1`` skipping points can pay off and a quadratic
dynamic program over the last kept point is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Optional, Tuple

import numpy as np

from .errors import (
    DomainTooShortError,
    ExponentError,
    NonUniformGridError,
    ValidationError,
)
from .funcspace import PartitionIndexSet, SampledFunction, UNIFORM_RTOL, _frozen
from .reports import CheckReport, _Worst, combine

# u is treated as the table node when |u - node| <= SNAP_RTOL * (local spacing)
SNAP_RTOL = 1e-9


def _abs_pow(delta: np.ndarray, r: float) -> np.ndarray:
    """``|delta|**r`` with ``0 -> 0`` for every r > 0."""
    a = np.abs(delta)
    if r == 1.0:
        return a
    return np.where(a > 0, a ** r, 0.0)


def _check_r(r: float) -> float:
    r = float(r)
    if not (np.isfinite(r) and r > 0):
        raise ExponentError(f"r must be a finite positive number, got {r!r}")
    return r


@dataclass(frozen=True, eq=False)
class VariationProfile:
    """Cumulative variation ``values[k]`` of ``base`` over grid points ``0..k``.

    ``flavor`` is ``"r_power"`` (parameter r) or ``"d_spaced"`` (parameter d).
    """

    base: SampledFunction
    flavor: Literal["r_power", "d_spaced"]
    param: float
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.base.xs.shape:
            raise ValidationError("profile length does not match the grid")
        if self.flavor not in ("r_power", "d_spaced"):
            raise ValidationError(f"unknown profile flavor {self.flavor!r}")
        object.__setattr__(self, "values", _frozen(values))

    def as_function(self) -> SampledFunction:
        return self.base.with_values(self.values)


def r_variation_on_partition(f: SampledFunction, P: PartitionIndexSet, r: float) -> float:
    r = _check_r(r)
    P.validate_for(f)
    ys = f.ys[list(P.idx)]
    return float(np.sum(_abs_pow(np.diff(ys), r)))


def _dp(ys: np.ndarray, r: float) -> Tuple[np.ndarray, np.ndarray]:
    """best[j] = max over partitions of 0..j ending at j; pred[j] = argmax predecessor.

    ``np.argmax`` returns the first maximiser, so ties go to the smallest
    predecessor index.
    """
    n = ys.size
    best = np.zeros(n)
    pred = np.zeros(n, dtype=np.int64)
    for j in range(1, n):
        cand = best[:j] + _abs_pow(ys[j] - ys[:j], r)
        k = int(np.argmax(cand))
        best[j] = cand[k]
        pred[j] = k
    return best, pred


def _walk_back(pred: np.ndarray, last: int) -> PartitionIndexSet:
    path = [last]
    while path[-1] != 0:
        path.append(int(pred[path[-1]]))
    return PartitionIndexSet(tuple(reversed(path)))


def total_r_variation(f: SampledFunction, r: float, use_dp: bool = False) -> float:
    """Maximum of the r-variation sum over every partition of the grid.

    ``use_dp=True`` forces the dynamic program even when ``r <= 1``; the
    value is the same up to rounding.
    """
    r = _check_r(r)
    if r <= 1.0 and not use_dp:
        return float(np.sum(_abs_pow(np.diff(f.ys), r)))
    best, _ = _dp(f.ys, r)
    return float(best[-1])


def optimal_r_partition(f: SampledFunction, r: float) -> Tuple[float, PartitionIndexSet]:
    """Total r-variation together with a maximising partition (always via DP)."""
    r = _check_r(r)
    best, pred = _dp(f.ys, r)
    return float(best[-1]), _walk_back(pred, f.last)


def r_variation_profile(f: SampledFunction, r: float, use_dp: bool = False) -> VariationProfile:
    r = _check_r(r)
    if r <= 1.0 and not use_dp:
        values = np.concatenate(([0.0], np.cumsum(_abs_pow(np.diff(f.ys), r))))
    else:
        values, _ = _dp(f.ys, r)
    return VariationProfile(f, "r_power", r, values)


def superadditivity_gap(f: SampledFunction, r: float, c_index: int) -> float:
    """``V(a..b) - V(a..c) - V(c..b)``; never negative, zero for r <= 1."""
    if not 0 < c_index < f.last:
        raise ValidationError(f"cut index {c_index} is not interior to 0..{f.last}")
    whole = total_r_variation(f, r)
    left = total_r_variation(f.segment(0, c_index), r)
    right = total_r_variation(f.segment(c_index, f.last), r)
    return whole - (left + right)


# -- error functions ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ErrorFunctionTable:
    """Nonnegative error function tabulated on ``[0, L]``, linear in between.

    Arguments within ``SNAP_RTOL`` of a node (relative to the neighbouring
    spacing) return the node value exactly, so grid differences that differ
    from a table offset only by rounding see the tabulated value.
    """

    offsets: np.ndarray
    phis: np.ndarray

    def __post_init__(self) -> None:
        offsets = np.asarray(self.offsets, dtype=float).ravel()
        phis = np.asarray(self.phis, dtype=float).ravel()
        if offsets.size != phis.size or offsets.size < 2:
            raise ValidationError("offsets and phis need equal length >= 2")
        if not (np.all(np.isfinite(offsets)) and np.all(np.isfinite(phis))):
            raise ValidationError("error function table must be finite")
        if offsets[0] != 0.0 or np.any(np.diff(offsets) <= 0):
            raise ValidationError("offsets must start at 0 and increase strictly")
        if phis[0] != 0.0 or np.any(phis < 0):
            raise ValidationError("an error function is nonnegative with value 0 at 0")
        object.__setattr__(self, "offsets", _frozen(offsets))
        object.__setattr__(self, "phis", _frozen(phis))

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], offsets) -> "ErrorFunctionTable":
        offsets = np.asarray(offsets, dtype=float)
        phis = np.asarray(fn(offsets), dtype=float)
        return cls(offsets, phis)

    @property
    def length(self) -> float:
        return float(self.offsets[-1])

    def __len__(self) -> int:
        return int(self.offsets.size)

    def __repr__(self) -> str:
        return f"ErrorFunctionTable(n={len(self)}, L={self.length!r})"

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        offs, phis = self.offsets, self.phis
        spacing = np.diff(offs)
        slack = SNAP_RTOL * float(spacing.min())
        if np.any(u < -slack) or np.any(u > offs[-1] + slack):
            raise DomainTooShortError(
                f"argument outside the table domain [0, {offs[-1]!r}]")
        out = np.interp(u, offs, phis)
        k = np.clip(np.searchsorted(offs, u), 1, offs.size - 1)
        left_gap = np.abs(u - offs[k - 1])
        right_gap = np.abs(offs[k] - u)
        tol = SNAP_RTOL * spacing[k - 1]
        out = np.where(left_gap <= tol, phis[k - 1], out)
        out = np.where(right_gap <= tol, phis[k], out)
        return out if out.ndim else float(out)

    def covers(self, length: float) -> bool:
        return self.length >= length - SNAP_RTOL * float(np.diff(self.offsets).min())


def _require_uniform(f: SampledFunction) -> None:
    if not f.is_uniform(UNIFORM_RTOL):
        raise NonUniformGridError("this operation needs a uniform grid")


def phi_from_variation(f: SampledFunction, r: float) -> ErrorFunctionTable:
    """Largest window increment of the r-variation profile, per offset, to the power 1/r."""
    r = _check_r(r)
    if r < 1.0:
        raise ExponentError("phi_from_variation needs r >= 1")
    _require_uniform(f)
    prof = r_variation_profile(f, r).values
    n = prof.size
    phis = np.zeros(n)
    for k in range(1, n):
        inc = np.max(prof[k:] - prof[:-k])
        phis[k] = max(inc, 0.0) ** (1.0 / r)
    return ErrorFunctionTable(f.xs - f.xs[0], phis)


def check_phi_subadditive(phi: ErrorFunctionTable, tol: float = 0.0) -> CheckReport:
    """``phi(u + v) <= phi(u) + phi(v) + tol`` over table offsets with ``u + v <= L``."""
    offs, vals = phi.offsets, phi.phis
    L = phi.length
    slack = SNAP_RTOL * float(np.diff(offs).min())
    worst = _Worst()
    for i in range(offs.size):
        v = offs[i:]
        s = offs[i] + v
        ok = s <= L + slack
        if not np.any(ok):
            break
        j = np.nonzero(ok)[0]
        excess = phi(np.minimum(s[j], L)) - (vals[i] + vals[i + j])
        worst.update(excess, lambda k: (offs[i], v[j[k]]))
    return worst.report("phi_subadditive", tol)


def _slopes(phi: ErrorFunctionTable) -> np.ndarray:
    return np.diff(phi.phis) / np.diff(phi.offsets)


def check_phi_concave(phi: ErrorFunctionTable, tol: float = 0.0) -> CheckReport:
    """Slopes between consecutive nodes must not increase by more than ``tol``."""
    s = _slopes(phi)
    if s.size < 2:
        return CheckReport("phi_concave", True, 0.0, float(tol), 0)
    excess = s[1:] - s[:-1]
    k = int(np.argmax(excess))
    worst = max(0.0, float(excess[k]))
    loc = (float(phi.offsets[k]), float(phi.offsets[k + 1]), float(phi.offsets[k + 2])) if worst > 0 else None
    return CheckReport("phi_concave", worst <= tol, worst, float(tol), int(excess.size), loc)


def concave_majorant(phi: ErrorFunctionTable) -> ErrorFunctionTable:
    """Least concave majorant of the table points (upper hull), on the same offsets."""
    if check_phi_concave(phi).passed:
        return phi
    xs, ys = phi.offsets, phi.phis
    hull = []
    for k in range(xs.size):
        while len(hull) >= 2:
            i, j = hull[-2], hull[-1]
            # drop j when it lies on or below the chord i -> k
            cross = (xs[j] - xs[i]) * (ys[k] - ys[i]) - (ys[j] - ys[i]) * (xs[k] - xs[i])
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(k)
    values = np.interp(xs, xs[hull], ys[hull])
    values[hull] = ys[hull]
    values = np.maximum(values, ys)
    return ErrorFunctionTable(xs, values)


def _pairwise_excess(f: SampledFunction, phi, sign: float, name: str, tol: float) -> CheckReport:
    xs, ys = f.xs, sign * f.ys
    worst = _Worst()
    for i in range(xs.size - 1):
        d = xs[i + 1:] - xs[i]
        excess = ys[i] - ys[i + 1:] - np.asarray(phi(d), dtype=float)
        worst.update(excess, lambda k: (xs[i], xs[i + 1 + k]))
    return worst.report(name, tol)


def _require_cover(f: SampledFunction, phi) -> None:
    if isinstance(phi, ErrorFunctionTable) and not phi.covers(f.length):
        raise DomainTooShortError(
            f"error function defined up to {phi.length!r}, grid spans {f.length!r}")


def check_phi_monotone(f: SampledFunction, phi, tol: float = 0.0) -> CheckReport:
    """``f(x) <= f(y) + phi(y - x) + tol`` for every grid pair ``x < y``.

    ``phi`` is an :class:`ErrorFunctionTable` or any vectorised callable.
    """
    _require_cover(f, phi)
    return _pairwise_excess(f, phi, 1.0, "phi_monotone", tol)


def check_holder(f: SampledFunction, phi, tol: float = 0.0) -> CheckReport:
    """``|f(x) - f(y)| <= phi(|y - x|) + tol``: both f and -f phi-monotone."""
    _require_cover(f, phi)
    up = _pairwise_excess(f, phi, 1.0, "phi_monotone(f)", tol)
    down = _pairwise_excess(f, phi, -1.0, "phi_monotone(-f)", tol)
    return combine("phi_holder", [up, down])


def lipschitz_constant(f: SampledFunction) -> float:
    """Smallest c with ``|f(x_{i+1}) - f(x_i)| <= c (x_{i+1} - x_i)`` on neighbours."""
    return float(np.max(np.abs(np.diff(f.ys)) / np.diff(f.xs)))
