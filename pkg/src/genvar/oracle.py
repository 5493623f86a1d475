"""Exhaustive references for small grids.

Everything here enumerates partitions (or window starts) directly and shares
no code path with the dynamic programs it is used to certify.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

from .errors import IntervalTooShortError, SizeCapError
from .funcspace import PartitionIndexSet, SampledFunction

MAX_POINTS = 20
SPACING_ATOL = 1e-12


def enumerate_partitions(n: int, min_gap: Optional[float] = None,
                         xs: Optional[Sequence[float]] = None) -> Iterator[PartitionIndexSet]:
    """Every index subset of ``0..n-1`` holding both endpoints.

    Order is binary counting over the interior indices (bit ``i-1`` selects
    index ``i``). With ``min_gap`` only subsets whose consecutive abscissas
    are at least ``min_gap`` apart are yielded.
    """
    if n > MAX_POINTS:
        raise SizeCapError(f"enumeration capped at {MAX_POINTS} points, got {n}")
    if n < 2:
        raise SizeCapError("need at least 2 points")
    if min_gap is not None and xs is None:
        raise ValueError("min_gap needs the abscissas xs")
    interior = n - 2
    for mask in range(1 << interior):
        idx = [0] + [i + 1 for i in range(interior) if mask >> i & 1] + [n - 1]
        if min_gap is not None:
            if any(xs[j] - xs[i] < min_gap - SPACING_ATOL for i, j in zip(idx, idx[1:])):
                continue
        yield PartitionIndexSet(tuple(idx))


def _sum_r(ys, idx, r: float) -> float:
    total = 0.0
    for i, j in zip(idx, idx[1:]):
        delta = abs(ys[j] - ys[i])
        total += delta ** r if delta > 0 else 0.0
    return total


def brute_force_total_r_variation(f: SampledFunction, r: float) -> float:
    ys = f.ys.tolist()
    return max(_sum_r(ys, P.idx, r) for P in enumerate_partitions(len(f)))


def brute_force_r_profile(f: SampledFunction, r: float) -> list:
    return [0.0] + [brute_force_total_r_variation(f.segment(0, k), r) for k in range(1, len(f))]


def brute_force_total_d_variation(f: SampledFunction, d: float) -> float:
    if f.length < d - SPACING_ATOL:
        raise IntervalTooShortError(f"interval length {f.length!r} < d = {d!r}")
    ys = f.ys.tolist()
    xs = f.xs.tolist()
    return max(_sum_r(ys, P.idx, 1.0) for P in enumerate_partitions(len(f), d, xs))


def brute_force_d_profile(f: SampledFunction, d: float) -> list:
    out = [0.0]
    for k in range(1, len(f)):
        if f.xs[k] - f.xs[0] < d - SPACING_ATOL:
            out.append(0.0)
        else:
            out.append(brute_force_total_d_variation(f.segment(0, k), d))
    return out


def brute_force_d_envelope(f: SampledFunction, d: float) -> list:
    """Paper-style envelope: max over window starts z <= x - d of V_d(z..x)."""
    out = []
    for k in range(len(f)):
        if f.xs[k] - f.xs[0] < d - SPACING_ATOL:
            out.append(0.0)
            continue
        starts = [z for z in range(k) if f.xs[k] - f.xs[z] >= d - SPACING_ATOL]
        out.append(max(brute_force_total_d_variation(f.segment(z, k), d) for z in starts))
    return out


def brute_force_majorant(f: SampledFunction, phi) -> list:
    """``g(u) = min over grid z >= u of f(z) + 2 phi(z/2)``, by direct minimisation."""
    xs, ys = f.xs.tolist(), f.ys.tolist()
    return [min(ys[z] + 2.0 * float(phi(xs[z] / 2.0)) for z in range(u, len(xs)))
            for u in range(len(xs))]


def brute_force_least_d_monotone(f: SampledFunction, d: float) -> list:
    """Least nonnegative nondecreasing h with h(y) - h(x) >= f(y) - f(x) when y - x >= d.

    Computed as a longest-path relaxation over the pair graph, independent of
    the prefix-maximum recurrence used in :mod:`genvar.dvar`.
    """
    xs, ys = f.xs.tolist(), f.ys.tolist()
    n = len(xs)
    h = [0.0] * n
    changed = True
    while changed:
        changed = False
        for y in range(n):
            need = h[y - 1] if y else 0.0
            for x in range(y):
                if xs[y] - xs[x] >= d - SPACING_ATOL:
                    need = max(need, h[x] + ys[y] - ys[x])
            if need > h[y]:
                h[y] = need
                changed = True
    return h
