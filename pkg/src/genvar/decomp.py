"""Decompositions and monotone majorants.

* :func:`jordan_decompose` -- for ``0 < r <= 1``, ``f = v**(1/r) - (v**(1/r) - f)``
  with ``v`` the r-variation profile; both parts nondecreasing.
* :func:`monotone_majorant` -- for phi-monotone ``f`` with subadditive concave
  ``phi`` on a grid starting at 0, the suffix minimum of ``f(z) + 2 phi(z/2)``
  is nondecreasing and satisfies ``phi(x) <= g(x) - f(x) <= 2 phi(x/2)``.
* :func:`power_majorant` -- the same with ``phi(u) = c u**p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional, Tuple

import numpy as np

from .errors import (
    BassInequalityError,
    DomainTooShortError,
    ExponentError,
    OriginError,
)
from .funcspace import SampledFunction, power_phi, sup_norm
from .reports import CheckReport, check_nondecreasing, combine, from_excess
from .rvar import (
    ErrorFunctionTable,
    check_phi_monotone,
    concave_majorant,
    phi_from_variation,
    r_variation_profile,
)

CERTIFY_TOL = 1e-12
SANDWICH_TOL = 1e-9
ORIGIN_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class DecompositionPair:
    """``f = part_a - part_b`` with certification results attached.

    ``verified`` maps each certificate name to the outcome of its checker;
    ``checks`` keeps the full reports.
    """

    part_a: SampledFunction
    part_b: SampledFunction
    theorem: str
    params: Dict[str, float]
    checks: Tuple[CheckReport, ...] = field(default=())

    @property
    def verified(self) -> Dict[str, bool]:
        return {c.name: c.passed for c in self.checks}

    @property
    def certified(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def report(self) -> CheckReport:
        return combine(f"{self.theorem}_certification", list(self.checks))


def _scaled_tol(tol: float, *fs: SampledFunction) -> float:
    # rounding in v**(1/r) and in part_a - f grows with the magnitude of the values
    return tol * max(1.0, *(sup_norm(g) for g in fs))


def jordan_decompose(f: SampledFunction, r: float = 1.0, tol: float = CERTIFY_TOL) -> DecompositionPair:
    r = float(r)
    if not 0 < r <= 1:
        raise ExponentError("jordan_decompose covers 0 < r <= 1 only")
    prof = r_variation_profile(f, r).values
    part_a = f.with_values(prof ** (1.0 / r))
    part_b = f.with_values(part_a.ys - f.ys)
    eff = _scaled_tol(tol, part_a, f)
    checks = (
        check_nondecreasing("part_a_nondecreasing", f.xs, part_a.ys, eff),
        check_nondecreasing("part_b_nondecreasing", f.xs, part_b.ys, eff),
        from_excess("reconstruction", np.abs(part_a.ys - part_b.ys - f.ys), eff,
                    [(x,) for x in f.xs]),
    )
    return DecompositionPair(part_a, part_b, "jordan", {"r": r}, checks)


def _require_origin(f: SampledFunction) -> None:
    if abs(f.a) > ORIGIN_ATOL:
        raise OriginError(f"grid must start at 0, starts at {f.a!r}")


def _suffix_min_majorant(f: SampledFunction, phi: Callable) -> SampledFunction:
    cost = f.ys + 2.0 * np.asarray(phi(f.xs / 2.0), dtype=float)
    g = np.minimum.accumulate(cost[::-1])[::-1]
    return f.with_values(g)


def monotone_majorant(f: SampledFunction, phi: ErrorFunctionTable) -> SampledFunction:
    """``g(u) = min over grid z >= u of f(z) + 2 phi(z/2)``.

    Needs ``xs[0] == 0``; ``phi`` must cover ``[0, b]``. Subadditivity and
    concavity of ``phi`` are the caller's responsibility (see
    :func:`genvar.rvar.concave_majorant`); without them the sandwich may
    fail, which :func:`check_majorant_sandwich` reports.
    """
    _require_origin(f)
    if isinstance(phi, ErrorFunctionTable) and not phi.covers(f.b):
        raise DomainTooShortError(f"error function defined up to {phi.length!r}, grid ends at {f.b!r}")
    return _suffix_min_majorant(f, phi)


def check_majorant_sandwich(f: SampledFunction, g: SampledFunction, phi,
                            tol: float = SANDWICH_TOL) -> CheckReport:
    """``g`` nondecreasing and ``phi(x) <= g(x) - f(x) <= 2 phi(x/2)`` at every grid point."""
    gap = g.ys - f.ys
    lower = np.asarray(phi(f.xs), dtype=float)
    upper = 2.0 * np.asarray(phi(f.xs / 2.0), dtype=float)
    locs = [(x,) for x in f.xs]
    return combine("majorant_sandwich", [
        check_nondecreasing("g_nondecreasing", f.xs, g.ys, tol),
        from_excess("sandwich_lower", lower - gap, tol, locs),
        from_excess("sandwich_upper", gap - upper, tol, locs),
    ])


def check_bass(f: SampledFunction, c: float, p: float, tol: float = CERTIFY_TOL) -> CheckReport:
    """``f(x) <= f(y) + c (y - x)**p`` for every grid pair ``x < y``."""
    rep = check_phi_monotone(f, power_phi(c, p), tol)
    return CheckReport("power_monotone", rep.passed, rep.worst_violation, rep.tol,
                       rep.checked, rep.location)


def power_majorant(f: SampledFunction, c: float, p: float, tol: float = CERTIFY_TOL) -> SampledFunction:
    """Majorant for ``phi(u) = c u**p`` evaluated in closed form.

    Raises :class:`BassInequalityError` when ``f`` is not power-monotone on
    the grid. The result satisfies ``c x**p <= g - f <= 2**(1-p) c x**p``.
    """
    c, p = float(c), float(p)
    if not 0 < p < 1:
        raise ExponentError(f"p must lie in ]0, 1[, got {p!r}")
    if not c > 0:
        raise ExponentError(f"c must be positive, got {c!r}")
    _require_origin(f)
    rep = check_bass(f, c, p, tol)
    if not rep.passed:
        raise BassInequalityError(
            f"f(x) > f(y) + c(y-x)^p by {rep.worst_violation:.3g} at {rep.location}")
    return _suffix_min_majorant(f, power_phi(c, p))


def regularized_phi(f: SampledFunction, r: float) -> Tuple[ErrorFunctionTable, bool]:
    """Error function from the r-variation, replaced by its least concave majorant.

    Returns the table and whether the majorant differs from the raw table.
    """
    raw = phi_from_variation(f, r)
    reg = concave_majorant(raw)
    return reg, reg is not raw


# -- inequality suites --------------------------------------------------------

def check_ineq_902(phi: ErrorFunctionTable, tol: float = CERTIFY_TOL) -> CheckReport:
    """``phi(y) - phi(x) <= phi(y - x) <= 2 phi(y/2) - phi(x)`` over table pairs ``x <= y``,
    plus phi-monotonicity of ``-phi``."""
    offs = phi.offsets
    vals = phi.phis
    lefts, rights = [], []
    for i in range(offs.size):
        y = offs[i:]
        mid = phi(y - offs[i])
        half = 2.0 * phi(y / 2.0) - vals[i]
        lefts.append(vals[i:] - vals[i] - mid)
        rights.append(mid - half)
    pairs = [(offs[i], y) for i in range(offs.size) for y in offs[i:]]
    left = from_excess("ineq_902_left", np.concatenate(lefts), tol, pairs)
    right = from_excess("ineq_902_right", np.concatenate(rights), tol, pairs)
    neg = check_phi_monotone(SampledFunction(offs, -vals), phi, tol)
    neg = CheckReport("neg_phi_monotone", neg.passed, neg.worst_violation, neg.tol,
                      neg.checked, neg.location)
    return combine("ineq_902", [left, right, neg])


def check_ineq_980(p: float, pairs: Iterable[Tuple[float, float]], tol: float = CERTIFY_TOL) -> CheckReport:
    """``y**p - x**p <= (y - x)**p <= 2**(1-p) y**p - x**p`` for ``0 <= x <= y``.

    ``0**0`` is taken as 1, so ``p = 0`` reads ``0 <= 1 <= 1``.
    """
    p = float(p)
    if not 0 <= p <= 1:
        raise ExponentError(f"p must lie in [0, 1], got {p!r}")
    arr = np.asarray(list(pairs), dtype=float).reshape(-1, 2)
    x, y = arr[:, 0], arr[:, 1]
    if np.any(x < 0) or np.any(y < x):
        raise ExponentError("pairs must satisfy 0 <= x <= y")
    xp, yp, dp = x ** p, y ** p, (y - x) ** p
    locs = [tuple(row) for row in arr]
    left = from_excess("ineq_980_left", yp - xp - dp, tol, locs)
    right = from_excess("ineq_980_right", dp - (2.0 ** (1.0 - p) * yp - xp), tol, locs)
    return combine("ineq_980", [left, right])
