"""Quadrature rules on the group charts and on the dual Lie algebra."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, replace
from functools import lru_cache
from pathlib import Path

import numpy as np

from ..groups import PI, sinc
from ..maps import MapKind
from ..planewave import zeta_from_group

#: radial group nodes stop this far short of the chart boundary (relative)
BOUNDARY_MARGIN = 1e-6


class ConfigError(ValueError):
    """A quadrature configuration is malformed or out of range."""


class QuadratureWarning(UserWarning):
    """Successive quadrature refinements disagree by more than the tolerance."""


class CutoffWarning(UserWarning):
    """The algebra-side integrand is not negligible near the cutoff."""


class AliasingWarning(UserWarning):
    """The sampling grid cannot resolve the whole chart image."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and cutoffs for both sides of the transform.

    For SU(2) maps the group grid is ``radial`` Gauss-Legendre nodes in
    ``|k|`` times ``theta`` Gauss-Legendre nodes in ``cos`` of the polar angle
    times ``phi`` uniform azimuths.  For U(1) maps ``theta`` is the number of
    uniform angle nodes and the other two counts are ignored.  The algebra side
    uses ``nodes`` points per axis on ``[-cutoff, cutoff]``.
    """

    radial: int = 64
    theta: int = 32
    phi: int = 64
    cutoff: float = 20.0
    nodes: int = 64
    tolerance: float = 1e-2

    def __post_init__(self):
        for name in ("radial", "theta", "phi", "nodes"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < 2:
                raise ConfigError(f"{name} must be an integer >= 2, got {value!r}")
        if not (isinstance(self.cutoff, (int, float)) and math.isfinite(self.cutoff) and self.cutoff > 0):
            raise ConfigError(f"cutoff must be a positive number, got {self.cutoff!r}")
        if not (isinstance(self.tolerance, (int, float)) and self.tolerance > 0):
            raise ConfigError(f"tolerance must be positive, got {self.tolerance!r}")

    @classmethod
    def default(cls, kind) -> "QuadratureSpec":
        kind = MapKind.parse(kind)
        if kind.group == "u1":
            return cls(radial=2, theta=2048, phi=2, cutoff=200.0, nodes=65536, tolerance=1e-6)
        if kind is MapKind.FLM:
            # p-coordinates squeeze a bump toward |p| < 1, so its transform decays more slowly
            return cls(radial=128, theta=64, phi=128, cutoff=60.0, nodes=192)
        return cls()

    @classmethod
    def from_dict(cls, data: dict, kind=None) -> "QuadratureSpec":
        if not isinstance(data, dict):
            raise ConfigError("quadrature configuration must be a JSON object")
        base = cls.default(kind) if kind is not None else cls()
        fields = {}
        grid = data.get("group_grid", {})
        alg = data.get("algebra_grid", {})
        if not isinstance(grid, dict) or not isinstance(alg, dict):
            raise ConfigError("group_grid and algebra_grid must be objects")
        for key in ("radial", "theta", "phi"):
            if key in grid:
                fields[key] = grid[key]
        if "cutoff" in alg:
            fields["cutoff"] = alg["cutoff"]
        if "nodes" in alg:
            fields["nodes"] = alg["nodes"]
        if "tolerance" in data:
            fields["tolerance"] = data["tolerance"]
        return replace(base, **fields)

    @classmethod
    def from_json(cls, path, kind=None) -> "QuadratureSpec":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read quadrature config {path}: {exc}") from exc
        return cls.from_dict(data, kind)

    def to_dict(self) -> dict:
        d = asdict(self)
        return {
            "group_grid": {"radial": d["radial"], "theta": d["theta"], "phi": d["phi"]},
            "algebra_grid": {"cutoff": d["cutoff"], "nodes": d["nodes"]},
            "tolerance": d["tolerance"],
        }

    def refined(self, factor: int = 2) -> "QuadratureSpec":
        return replace(
            self, radial=self.radial * factor, theta=self.theta * factor, phi=self.phi * factor, nodes=self.nodes * factor
        )

    def coarsened(self) -> "QuadratureSpec":
        return replace(
            self,
            radial=max(2, self.radial // 2),
            theta=max(2, self.theta // 2),
            phi=max(2, self.phi // 2),
            nodes=max(2, self.nodes // 2),
        )


@lru_cache(maxsize=64)
def gauss_legendre(n: int, a: float, b: float):
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return half * x + 0.5 * (a + b), half * w


@dataclass(frozen=True)
class GroupGrid:
    """Chart nodes with Haar weights already folded in."""

    kind: MapKind
    data: np.ndarray  # quaternions (n, 4) or angles (n,)
    zeta: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.weights)


def _sphere(ntheta: int, nphi: int):
    c, wc = gauss_legendre(ntheta, -1.0, 1.0)
    phi = 2.0 * PI * np.arange(nphi) / nphi
    s = np.sqrt(1.0 - c * c)
    dirs = np.stack(
        [np.outer(s, np.cos(phi)), np.outer(s, np.sin(phi)), np.outer(c, np.ones(nphi))], axis=-1
    ).reshape(-1, 3)
    w = np.repeat(wc, nphi) * (2.0 * PI / nphi)
    return dirs, w


@lru_cache(maxsize=16)
def group_grid(kind, spec: QuadratureSpec) -> GroupGrid:
    """Product rule on the map's chart.

    Symmetric and Duflo integrate over the ball ``|k| < pi``.  FLM integrates
    over the upper hemisphere (SO(3)); its radial variable is ``u = |k|`` on
    ``[0, pi/2]`` with ``p = sin(u) k/|k|``, which removes the inverse square
    root singularity of the p-chart density.
    """
    kind = MapKind.parse(kind)
    if kind.group == "u1":
        n = spec.theta
        theta = -PI + 2.0 * PI * (np.arange(n) + 0.5) / n
        w = np.full(n, 2.0 * PI / n)
        return GroupGrid(kind, theta, zeta_from_group(kind, theta), w)
    rmax = PI if kind is not MapKind.FLM else PI / 2.0
    r, wr = gauss_legendre(spec.radial, 0.0, rmax * (1.0 - BOUNDARY_MARGIN))
    dirs, wd = _sphere(spec.theta, spec.phi)
    k = (r[:, None, None] * dirs[None, :, :]).reshape(-1, 3)
    haar = (r * r * sinc(r) ** 2 * wr)[:, None] * wd[None, :]
    quats = np.concatenate([np.cos(np.linalg.norm(k, axis=-1))[:, None], sinc(np.linalg.norm(k, axis=-1))[:, None] * k], axis=-1)
    return GroupGrid(kind, quats, zeta_from_group(kind, quats), haar.reshape(-1))


def radial_algebra_nodes(spec: QuadratureSpec):
    """Gauss-Legendre nodes and weights in ``|X|`` on ``[0, cutoff]``."""
    return gauss_legendre(spec.nodes, 0.0, float(spec.cutoff))


def algebra_tensor_grid(dim: int, spec: QuadratureSpec):
    """Tensor Gauss-Legendre rule on ``[-R, R]^dim``: points ``(n^dim, dim)`` and weights."""
    x, w = gauss_legendre(spec.nodes, -float(spec.cutoff), float(spec.cutoff))
    mesh = np.meshgrid(*([x] * dim), indexing="ij")
    wmesh = np.meshgrid(*([w] * dim), indexing="ij")
    pts = np.stack([m.reshape(-1) for m in mesh], axis=-1)
    weights = np.prod(np.stack([m.reshape(-1) for m in wmesh], axis=-1), axis=-1)
    return pts, weights


def uniform_axis(spec: QuadratureSpec):
    """Midpoint grid on ``[-R, R]`` with ``nodes`` points and its spacing."""
    h = 2.0 * float(spec.cutoff) / spec.nodes
    return -float(spec.cutoff) + h * (np.arange(spec.nodes) + 0.5), h
