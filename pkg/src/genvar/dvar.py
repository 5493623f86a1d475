"""Distance-constrained variation and d-periodically increasing functions.

A partition is admissible for spacing ``d`` when consecutive abscissas are at
least ``d`` apart (up to ``SPACING_ATOL``); both endpoints are always kept.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from .errors import IntervalTooShortError, SpacingError, ValidationError
from .funcspace import PartitionIndexSet, SampledFunction, sup_norm
from .reports import CheckReport, check_nondecreasing, combine, from_excess
from .rvar import VariationProfile

SPACING_ATOL = 1e-12


def _check_d(d: float) -> float:
    d = float(d)
    if not (math.isfinite(d) and d > 0):
        raise ValidationError(f"d must be a finite positive number, got {d!r}")
    return d


def _require_length(f: SampledFunction, needed: float, what: str) -> None:
    if f.length < needed - SPACING_ATOL:
        raise IntervalTooShortError(f"interval length {f.length!r} is shorter than {what} = {needed!r}")


def _reach(xs: np.ndarray, d: float) -> np.ndarray:
    """m[j] = number of grid points i with xs[j] - xs[i] >= d (a prefix of the grid)."""
    return np.searchsorted(xs, xs - d + SPACING_ATOL, side="right")


def d_variation_on_partition(f: SampledFunction, P: PartitionIndexSet, d: float) -> float:
    d = _check_d(d)
    _require_length(f, d, "d")
    P.validate_for(f)
    idx = list(P.idx)
    gaps = np.diff(f.xs[idx])
    if np.any(gaps < d - SPACING_ATOL):
        k = int(np.argmin(gaps))
        raise SpacingError(
            f"points {idx[k]} and {idx[k + 1]} are {gaps[k]!r} apart, less than d = {d!r}")
    return float(np.sum(np.abs(np.diff(f.ys[idx]))))


def _d_dp(f: SampledFunction, d: float) -> Tuple[np.ndarray, np.ndarray]:
    """Best admissible chain value from index 0 to each j (-inf where none exists)."""
    xs, ys = f.xs, f.ys
    n = xs.size
    reach = _reach(xs, d)
    best = np.full(n, -np.inf)
    pred = np.full(n, -1, dtype=np.int64)
    best[0] = 0.0
    for j in range(1, n):
        m = int(reach[j])
        if m == 0:
            continue
        cand = best[:m] + np.abs(ys[j] - ys[:m])
        k = int(np.argmax(cand))
        best[j] = cand[k]
        pred[j] = k
    return best, pred


def total_d_variation(f: SampledFunction, d: float) -> float:
    """Maximum of ``sum |f(x_i) - f(x_{i-1})|`` over admissible partitions of the grid."""
    d = _check_d(d)
    _require_length(f, d, "d")
    best, _ = _d_dp(f, d)
    return float(best[-1])


def optimal_d_partition(f: SampledFunction, d: float) -> Tuple[float, PartitionIndexSet]:
    d = _check_d(d)
    _require_length(f, d, "d")
    best, pred = _d_dp(f, d)
    path = [f.last]
    while path[-1] != 0:
        path.append(int(pred[path[-1]]))
    return float(best[-1]), PartitionIndexSet(tuple(reversed(path)))


def d_variation_profile(f: SampledFunction, d: float) -> VariationProfile:
    """Total d-variation over ``[a, x]``; zero while ``x - a < d``."""
    d = _check_d(d)
    _require_length(f, d, "d")
    best, _ = _d_dp(f, d)
    return VariationProfile(f, "d_spaced", d, np.where(np.isfinite(best), best, 0.0))


def is_d_periodically_increasing(f: SampledFunction, d: float, tol: float = 0.0) -> CheckReport:
    """``f(x) <= f(y) + tol`` for every grid pair with ``y - x >= d``, in one pass."""
    d = _check_d(d)
    xs, ys = f.xs, f.ys
    reach = _reach(xs, d)
    run_max = np.maximum.accumulate(ys)
    is_new = np.r_[True, ys[1:] > run_max[:-1]]
    run_arg = np.maximum.accumulate(np.where(is_new, np.arange(ys.size), 0))
    js = np.nonzero(reach > 0)[0]
    if js.size == 0:
        return CheckReport("d_periodically_increasing", True, 0.0, float(tol), 0)
    prior = reach[js] - 1
    excess = run_max[prior] - ys[js]
    locs = [(xs[run_arg[p]], xs[j]) for p, j in zip(prior, js)]
    return from_excess("d_periodically_increasing", excess, tol, locs)


def d_envelope(f: SampledFunction, d: float) -> SampledFunction:
    """Largest d-variation over trailing windows ``[z, x]`` with ``z <= x - d``.

    Zero while ``x - a < d``. Computed with a free-start chain recurrence in
    O(n^2): a chain ending at ``i`` either starts there (value 0) or continues
    an earlier chain. The result is *not* nondecreasing in general: on
    ``xs = [0, 1, 2, 3], ys = [0, 0, 10, 0], d = 2`` it reads ``[0, 0, 10, 0]``.
    """
    d = _check_d(d)
    _require_length(f, d, "d")
    xs, ys = f.xs, f.ys
    reach = _reach(xs, d)
    ends = np.full(xs.size, -np.inf)
    for j in range(1, xs.size):
        m = int(reach[j])
        if m == 0:
            continue
        start = np.maximum(ends[:m], 0.0)
        ends[j] = np.max(start + np.abs(ys[j] - ys[:m]))
    return f.with_values(np.where(np.isfinite(ends), ends, 0.0))


def d_monotone_part(f: SampledFunction, d: float) -> SampledFunction:
    """Least nonnegative nondecreasing ``h`` such that ``h - f`` is d-periodically increasing.

    ``h[j] = max(h[j-1], f[j] + max_{x_j - x_i >= d} (h[i] - f[i]))`` with
    ``h[0] = 0``; linear time via a running prefix maximum.
    """
    d = _check_d(d)
    _require_length(f, d, "d")
    xs, ys = f.xs, f.ys
    reach = _reach(xs, d)
    h = np.zeros(xs.size)
    pref = np.full(xs.size, -np.inf)   # pref[i] = max_{k <= i} (h[k] - ys[k])
    pref[0] = -ys[0]
    for j in range(1, xs.size):
        m = int(reach[j])
        h[j] = h[j - 1]
        if m > 0:
            h[j] = max(h[j], ys[j] + pref[m - 1])
        pref[j] = max(pref[j - 1], h[j] - ys[j])
    return f.with_values(h)


def d_bound_check(f: SampledFunction, d: float, tol: float = 1e-9) -> CheckReport:
    """Pointwise ``|f(x)| <= max(|f(a)|, |f(b)|) + V_d(f)`` plus the ceiling bound.

    The ceiling bound ``V_d(f) <= ceil((b - a)/d) * max |f(u) - f(v)|`` holds
    for every admissible partition. The pointwise bound can fail on grids
    where no admissible chain passes near an interior point; the report
    records that instead of raising.
    """
    d = _check_d(d)
    _require_length(f, 2 * d, "2d")
    total = total_d_variation(f, d)
    cap = max(abs(f.ys[0]), abs(f.ys[-1])) + total
    pointwise = from_excess("bound_pointwise", np.abs(f.ys) - cap, tol,
                            [(x,) for x in f.xs])
    osc = float(np.max(f.ys) - np.min(f.ys))
    steps = math.ceil(f.length / d - SPACING_ATOL)
    ceiling = from_excess("bound_ceiling", np.array([total - steps * osc]), tol)
    return combine("d_bound", [pointwise, ceiling])


def check_d_decomposition(f: SampledFunction, part_a: SampledFunction, part_b: SampledFunction,
                          d: float, tol: float) -> Tuple[CheckReport, CheckReport, CheckReport]:
    scale = max(1.0, sup_norm(part_a), sup_norm(f))
    eff = tol * scale
    mono = check_nondecreasing("part_a_nondecreasing", f.xs, part_a.ys, eff)
    periodic = is_d_periodically_increasing(part_b, d, eff)
    periodic = CheckReport("part_b_d_periodically_increasing", periodic.passed,
                           periodic.worst_violation, periodic.tol, periodic.checked,
                           periodic.location)
    recon = from_excess("reconstruction", np.abs(part_a.ys - part_b.ys - f.ys), eff,
                        [(x,) for x in f.xs])
    return mono, periodic, recon


def d_decompose(f: SampledFunction, d: float, method: str = "least",
                tol: float = 1e-12) -> "DecompositionPair":
    """``f = part_a - part_b`` with ``part_a`` nondecreasing and ``part_b`` d-periodically increasing.

    ``method="least"`` (default) takes ``part_a = d_monotone_part(f, d)``,
    which certifies on every input. ``method="envelope"`` takes
    ``part_a = d_envelope(f, d)``; its ``part_b`` is always d-periodically
    increasing but ``part_a`` can decrease, and the certificate then says so.
    Needs ``b - a >= 2d``.
    """
    from .decomp import DecompositionPair

    d = _check_d(d)
    _require_length(f, 2 * d, "2d")
    if method == "least":
        part_a = d_monotone_part(f, d)
    elif method == "envelope":
        part_a = d_envelope(f, d)
    else:
        raise ValidationError(f"unknown method {method!r}; use 'least' or 'envelope'")
    part_b = f.with_values(part_a.ys - f.ys)
    checks = check_d_decomposition(f, part_a, part_b, d, tol)
    return DecompositionPair(part_a, part_b, "d_periodic", {"d": d, "method": method}, checks)
