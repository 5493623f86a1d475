"""Sampled real functions, partitions of their grids, and the witness corpus."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    GridMismatchError,
    LengthMismatchError,
    NonFiniteValueError,
    NonMonotoneGridError,
    PartitionError,
    ValidationError,
)

UNIFORM_RTOL = 1e-9


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Real values ``ys`` sampled on a strictly increasing grid ``xs``.

    Arrays are stored read-only; every operation returns a new instance.
    """

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float).ravel()
        ys = np.asarray(self.ys, dtype=float).ravel()
        if xs.size != ys.size:
            raise LengthMismatchError(f"xs has {xs.size} entries but ys has {ys.size}")
        if xs.size < 2:
            raise LengthMismatchError("a sampled function needs at least 2 points")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise NonFiniteValueError("xs and ys must be finite")
        if np.any(np.diff(xs) <= 0):
            k = int(np.argmax(np.diff(xs) <= 0))
            raise NonMonotoneGridError(f"xs not strictly increasing at index {k + 1}")
        object.__setattr__(self, "xs", _frozen(xs))
        object.__setattr__(self, "ys", _frozen(ys))

    def __len__(self) -> int:
        return int(self.xs.size)

    def __repr__(self) -> str:
        return f"SampledFunction(n={len(self)}, a={self.a!r}, b={self.b!r})"

    @property
    def a(self) -> float:
        return float(self.xs[0])

    @property
    def b(self) -> float:
        return float(self.xs[-1])

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def last(self) -> int:
        return len(self) - 1

    def with_values(self, ys) -> "SampledFunction":
        return SampledFunction(self.xs, ys)

    def segment(self, lo: int, hi: int) -> "SampledFunction":
        """Restriction to grid indices ``lo..hi`` inclusive."""
        if not 0 <= lo < hi <= self.last:
            raise ValidationError(f"bad segment [{lo}, {hi}] for a grid of {len(self)} points")
        return SampledFunction(self.xs[lo:hi + 1], self.ys[lo:hi + 1])

    def shifted(self, dx: float) -> "SampledFunction":
        return SampledFunction(self.xs + dx, self.ys)

    def __neg__(self) -> "SampledFunction":
        return self.with_values(-self.ys)

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        _same_grid(self, other)
        return self.with_values(self.ys + other.ys)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        _same_grid(self, other)
        return self.with_values(self.ys - other.ys)

    def scaled(self, c: float) -> "SampledFunction":
        return self.with_values(c * self.ys)

    def is_uniform(self, rtol: float = UNIFORM_RTOL) -> bool:
        steps = np.diff(self.xs)
        h = self.length / (len(self) - 1)
        return bool(np.all(np.abs(steps - h) <= rtol * h))


@dataclass(frozen=True, eq=False)
class PartitionIndexSet:
    """Sorted grid indices of a partition; must hold both endpoints."""

    idx: tuple

    def __post_init__(self) -> None:
        idx = tuple(int(i) for i in self.idx)
        if len(idx) < 2:
            raise PartitionError("a partition needs at least two points")
        if idx[0] != 0:
            raise PartitionError("a partition must start at index 0")
        if any(j <= i for i, j in zip(idx, idx[1:])):
            raise PartitionError("partition indices must be strictly increasing")
        object.__setattr__(self, "idx", idx)

    def __iter__(self):
        return iter(self.idx)

    def __len__(self) -> int:
        return len(self.idx)

    def __eq__(self, other) -> bool:
        if isinstance(other, PartitionIndexSet):
            return self.idx == other.idx
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.idx)

    def __repr__(self) -> str:
        return f"PartitionIndexSet({list(self.idx)})"

    def validate_for(self, f: SampledFunction) -> None:
        if self.idx[-1] != f.last:
            raise PartitionError(
                f"partition ends at index {self.idx[-1]}, grid ends at {f.last}")

    @classmethod
    def finest(cls, n: int) -> "PartitionIndexSet":
        return cls(tuple(range(n)))


def make_sampled(xs: Sequence[float], ys: Sequence[float]) -> SampledFunction:
    return SampledFunction(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float))


def _same_grid(f: SampledFunction, g: SampledFunction) -> None:
    if len(f) != len(g) or not np.array_equal(f.xs, g.xs):
        raise GridMismatchError("functions are sampled on different grids")


def pointwise_product(f: SampledFunction, g: SampledFunction) -> SampledFunction:
    _same_grid(f, g)
    return f.with_values(f.ys * g.ys)


def sup_norm(f: SampledFunction) -> float:
    return float(np.max(np.abs(f.ys)))


# -- witness corpus -----------------------------------------------------------

def identity(n: int = 4, a: float = 0.0, b: float = 1.0) -> SampledFunction:
    """``t -> t`` on ``n`` equal steps of ``[a, b]`` (``n + 1`` points)."""
    n = _count(n, "n", 1)
    if not b > a:
        raise ValidationError("identity needs a < b")
    xs = np.linspace(a, b, n + 1)
    return SampledFunction(xs, xs)


def _reciprocal_grid(m: int, n: int) -> np.ndarray:
    ks = np.arange(m + n, m - 1, -1, dtype=float)
    return 1.0 / ks


def reciprocal_cos(m: int = 2, n: int = 8) -> SampledFunction:
    """``x cos(pi/x)`` on ``{0, 1/(m+n), ..., 1/m, 1}``, with value 0 at 0."""
    m = _count(m, "m", 2)
    n = _count(n, "n", 0)
    inner = _reciprocal_grid(m, n)
    xs = np.concatenate(([0.0], inner, [1.0]))
    ys = np.zeros_like(xs)
    ys[1:] = xs[1:] * np.cos(np.pi / xs[1:])
    return SampledFunction(xs, ys)


def reciprocal(m: int = 2, n: int = 8) -> SampledFunction:
    """``1/x`` on the grid of :func:`reciprocal_cos`, with value 0 at 0."""
    f = reciprocal_cos(m, n)
    ys = np.zeros_like(f.xs)
    ys[1:] = 1.0 / f.xs[1:]
    return f.with_values(ys)


def alternating(n: int = 4, a: float = 0.0, b: float = 1.0) -> SampledFunction:
    """Values 1, 0, 1, 0, ... on ``n`` equal steps of ``[a, b]``.

    Grid stand-in for the rational-indicator function: every step jumps by 1
    at any refinement level.
    """
    n = _count(n, "n", 1)
    if not b > a:
        raise ValidationError("alternating needs a < b")
    xs = np.linspace(a, b, n + 1)
    ys = (np.arange(n + 1) % 2 == 0).astype(float)
    return SampledFunction(xs, ys)


def power_seq(r: float = 2.0, m: int = 1, n: int = 8) -> SampledFunction:
    """``(-1)**k * k**-r`` at ``x = 1/k`` for ``k = m + n, ..., m``."""
    if not (np.isfinite(r) and r > 0):
        raise ValidationError("power_seq needs r > 0")
    m = _count(m, "m", 1)
    n = _count(n, "n", 1)
    xs = _reciprocal_grid(m, n)
    ks = np.arange(m + n, m - 1, -1, dtype=float)
    ys = np.where(ks % 2 == 0, 1.0, -1.0) * ks ** (-float(r))
    return SampledFunction(xs, ys)


def phi_monotone_walk(seed: int, phi: Callable[[np.ndarray], np.ndarray], n: int = 64,
                      b: float = 1.0, jump_prob: float = 0.5) -> SampledFunction:
    """``g - phi(x)`` with ``g`` a seeded nondecreasing step sequence.

    The grid is ``n`` equal steps of ``[0, b]`` and ``g(0) = 0``. For
    subadditive ``phi`` the result is phi-monotone.
    """
    n = _count(n, "n", 1)
    if not b > 0:
        raise ValidationError("phi_monotone_walk needs b > 0")
    rng = np.random.default_rng(seed)
    xs = np.linspace(0.0, b, n + 1)
    jumps = np.where(rng.random(n) < jump_prob, rng.exponential(1.0, n), 0.0)
    g = np.concatenate(([0.0], np.cumsum(jumps)))
    ys = g - np.asarray(phi(xs - xs[0]), dtype=float)
    return SampledFunction(xs, ys)


def power_phi(c: float, p: float) -> Callable[[np.ndarray], np.ndarray]:
    """``u -> c * u**p`` with ``0**p = 0``."""
    if not (c >= 0 and p >= 0):
        raise ValidationError("power_phi needs c >= 0 and p >= 0")

    def phi(u):
        u = np.asarray(u, dtype=float)
        return c * np.where(u > 0, np.abs(u) ** p, 0.0)

    return phi


CORPUS = {
    "identity": identity,
    "reciprocal_cos": reciprocal_cos,
    "reciprocal": reciprocal,
    "alternating": alternating,
    "power_seq": power_seq,
    "phi_monotone_walk": phi_monotone_walk,
}


def corpus(name: str, **params) -> SampledFunction:
    """Witness function by name.

    ``phi_monotone_walk`` accepts either ``phi=`` (any callable, e.g. an
    ``ErrorFunctionTable``) or ``c=``/``p=`` for the power function ``c*u**p``.
    """
    try:
        build = CORPUS[name]
    except KeyError:
        raise ValidationError(f"unknown corpus function {name!r}; choose from {sorted(CORPUS)}") from None
    if name == "phi_monotone_walk" and "phi" not in params:
        c = float(params.pop("c", 1.0))
        p = float(params.pop("p", 0.5))
        params["phi"] = power_phi(c, p)
    if name == "phi_monotone_walk" and "seed" not in params:
        params["seed"] = 0
    try:
        return build(**params)
    except TypeError as exc:
        raise ValidationError(f"bad parameters for {name}: {exc}") from None


def _count(value, name: str, minimum: int) -> int:
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if not isinstance(value, (int, np.integer)) or value < minimum:
        raise ValidationError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def from_pairs(rows: Iterable[Sequence[float]]) -> SampledFunction:
    rows = list(rows)
    return make_sampled([r[0] for r in rows], [r[1] for r in rows])
