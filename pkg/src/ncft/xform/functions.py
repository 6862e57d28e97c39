"""Function carriers for the two sides of the transform."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ..groups import SU2, U1, multiply, quat_mul, reduce_angle


def bump(r, r0: float):
    """Smooth compactly supported profile ``exp(-1/(1 - (r/r0)^2))`` for ``|r| < r0``."""
    r = np.asarray(r, dtype=float)
    x = (r / r0) ** 2
    inside = x < 1.0
    safe = np.where(inside, x, 0.0)
    return np.where(inside, np.exp(-1.0 / (1.0 - safe)), 0.0)


def canonical_radius(data):
    """``|k(g)|`` for quaternions or ``|theta|`` for angles, without the -1 singularity."""
    data = np.asarray(data, dtype=float)
    if data.ndim >= 1 and data.shape[-1] == 4:
        return np.arctan2(np.linalg.norm(data[..., 1:], axis=-1), data[..., 0])
    return np.abs(reduce_angle(data))


@dataclass(frozen=True)
class GroupFunction:
    """A function on U(1) or SU(2).

    ``func`` receives stacked group data (angles, or unit quaternions of shape
    ``(n, 4)``) and returns complex values.  ``radial``, when given, is the
    profile ``chi`` with ``psi(g) = chi(|k(g)|)``; the transforms use it for
    their one-dimensional fast paths.
    """

    func: Callable
    group: str = "su2"
    radial: Optional[Callable] = None
    support_radius: Optional[float] = None

    def __call__(self, data):
        return np.asarray(self.func(np.asarray(data, dtype=float)), dtype=complex)

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        return self.combine(other, 1.0, 1.0)

    def combine(self, other: "GroupFunction", a: complex, b: complex) -> "GroupFunction":
        if other.group != self.group:
            raise ValueError("functions live on different groups")
        radial = None
        if self.radial is not None and other.radial is not None:
            radial = lambda r, f=self.radial, h=other.radial: a * f(r) + b * h(r)  # noqa: E731
        sup = None
        if self.support_radius is not None and other.support_radius is not None:
            sup = max(self.support_radius, other.support_radius)
        return GroupFunction(lambda d: a * self(d) + b * other(d), self.group, radial, sup)

    def at(self, g) -> complex:
        data = np.array([g.theta]) if isinstance(g, U1) else g.quaternion[None, :]
        return complex(self(data)[0])

    def translated(self, g0) -> "GroupFunction":
        """``h -> psi(g0 h)``."""
        if isinstance(g0, U1):
            return GroupFunction(lambda d: self(np.asarray(d) + g0.theta), self.group)
        q0 = g0.quaternion
        return GroupFunction(lambda d: self(quat_mul(q0, d)), self.group)


def radial_bump(r0: float, group: str = "su2", center=None) -> GroupFunction:
    """C-infinity bump ``exp(-1/(1-(|k|/r0)^2))`` around the identity (or ``center``)."""
    profile = lambda r: bump(r, r0)  # noqa: E731
    if center is None:
        return GroupFunction(lambda d: profile(canonical_radius(d)), group, radial=profile, support_radius=r0)
    inv = center.inverse()
    if group == "u1":
        return GroupFunction(lambda d: profile(canonical_radius(np.asarray(d) - center.theta)), group, support_radius=r0)
    qi = inv.quaternion
    return GroupFunction(lambda d: profile(canonical_radius(quat_mul(qi, d))), group, support_radius=r0)


def zero_function(group: str = "su2") -> GroupFunction:
    def f(d):
        d = np.asarray(d)
        shape = d.shape[:-1] if group == "su2" else d.shape
        return np.zeros(shape, dtype=complex)

    return GroupFunction(f, group, radial=lambda r: np.zeros_like(np.asarray(r, dtype=float)), support_radius=0.0)


@dataclass
class AlgebraFunction:
    """A function on the dual Lie algebra, as a callable or as samples.

    Sampled functions keep their points, the cutoff ``R`` of the sampling box
    and the grid spacing (``None`` for non-uniform rules).
    """

    dim: int
    func: Optional[Callable] = None
    points: Optional[np.ndarray] = None
    values: Optional[np.ndarray] = None
    cutoff: Optional[float] = None
    spacing: Optional[float] = None
    shape: Optional[tuple] = None
    radial: Optional[Callable] = field(default=None, repr=False)

    def __post_init__(self):
        if self.func is None and self.values is None:
            raise ValueError("an AlgebraFunction needs a callable or samples")
        if self.values is not None:
            self.values = np.asarray(self.values, dtype=complex)
            self.points = np.asarray(self.points, dtype=float)
            if len(self.points) != len(self.values):
                raise ValueError("points and values differ in length")
            if self.cutoff is None:
                raise ValueError("sampled functions must carry their cutoff")

    @classmethod
    def from_callable(cls, func, dim: int, radial=None) -> "AlgebraFunction":
        return cls(dim=dim, func=func, radial=radial)

    @property
    def is_sampled(self) -> bool:
        return self.values is not None

    def __call__(self, X):
        if self.func is None:
            raise TypeError("sampled AlgebraFunction cannot be evaluated off its grid")
        return np.asarray(self.func(np.asarray(X, dtype=float)), dtype=complex)

    def grid_values(self) -> np.ndarray:
        """Samples reshaped to the tensor grid (``shape``) when the grid is uniform."""
        return self.values.reshape(self.shape) if self.shape else self.values

    def to_csv(self, path) -> None:
        """Write columns ``X1..Xd, re, im`` with a header row."""
        if not self.is_sampled:
            raise TypeError("only sampled functions can be exported")
        pts = self.points.reshape(len(self.points), -1)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow([f"X{i + 1}" for i in range(pts.shape[1])] + ["re", "im"])
            for x, v in zip(pts, self.values):
                writer.writerow([repr(float(c)) for c in x] + [repr(float(v.real)), repr(float(v.imag))])


@dataclass(frozen=True)
class PointMassFunction:
    """Finite measure ``sum_a c_a delta_{g_a}``."""

    masses: tuple

    def __post_init__(self):
        masses = tuple((g, complex(c)) for g, c in self.masses)
        if not masses:
            raise ValueError("a point-mass function needs at least one mass")
        group = type(masses[0][0])
        for g, c in masses:
            if not isinstance(g, (SU2, U1)) or type(g) is not group:
                raise TypeError("all masses must sit on elements of one group")
            if not np.isfinite(c):
                raise ValueError("point-mass weights must be finite")
        object.__setattr__(self, "masses", masses)

    def __iter__(self):
        return iter(self.masses)

    def __len__(self):
        return len(self.masses)

    def convolve(self, other: "PointMassFunction", upper: bool = False) -> "PointMassFunction":
        """``delta_g * delta_h = delta_gh``, extended bilinearly."""
        out = []
        for g, c in self.masses:
            for h, d in other.masses:
                gh = multiply(g, h)
                out.append((gh.upper() if upper and isinstance(gh, SU2) else gh, c * d))
        return PointMassFunction(tuple(out))

    def translated(self, g) -> "PointMassFunction":
        """Masses of ``h -> psi(g h)``: each ``delta_a`` moves to ``delta_{g^-1 a}``."""
        gi = g.inverse()
        return PointMassFunction(tuple((multiply(gi, a), c) for a, c in self.masses))
