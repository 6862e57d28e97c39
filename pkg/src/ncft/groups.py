"""U(1) and SU(2): elements, charts, BCH composition and Haar weights.

SU(2) elements are stored as unit quaternions ``(p0, p1, p2, p3)`` standing for
``g = p0*1 + i p.sigma``.  Canonical coordinates ``k`` satisfy
``g = exp(i k.sigma)``; the principal branch is ``|k| < pi``.

All array functions broadcast over leading axes, so ``k`` may be a single
3-vector or an ``(n, 3)`` batch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

PI = math.pi
TWO_PI = 2.0 * math.pi

# below this value removable singularities are evaluated from their series
SERIES_CUTOFF = 1e-4
# within this distance of -1 logarithms are refused
SINGULAR_TOL = 1e-12
RENORMALIZE_TOL = 1e-9


class SingularPointError(ValueError):
    """Raised at -1 in SU(2), which canonical coordinates do not cover."""


class BranchAmbiguityError(ValueError):
    """Raised when a hemisphere projection lands exactly on the equator."""


class ChartError(ValueError):
    """Raised when coordinates fall outside the chart they are given in."""


# ---------------------------------------------------------------- structure constants


@dataclass(frozen=True)
class StructureConstants:
    """Structure constants ``c[i][j][k]`` of ``[X_i, X_j] = i c_ij^k X_k``."""

    dim: int
    c: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        shape_ok = len(self.c) == self.dim and all(
            len(row) == self.dim and all(len(col) == self.dim for col in row) for row in self.c
        )
        if not shape_ok:
            raise ValueError(f"structure constants must be a {self.dim}^3 table")

    def is_antisymmetric(self) -> bool:
        d = self.dim
        return all(
            self.c[i][j][k] == -self.c[j][i][k] for i, j, k in product(range(d), repeat=3)
        )

    def jacobi_defect(self):
        """Largest absolute violation of the Jacobi identity (0 when exact)."""
        d, c = self.dim, self.c
        worst = 0
        for i, j, k, l in product(range(d), repeat=4):
            s = sum(
                c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l]
                for m in range(d)
            )
            worst = max(worst, abs(s))
        return worst

    def as_array(self) -> np.ndarray:
        return np.array(self.c, dtype=float)


def _levi_civita(i: int, j: int, k: int) -> int:
    return (i - j) * (j - k) * (k - i) // 2


def su2_structure() -> StructureConstants:
    # c = 2 epsilon: the Pauli basis has [sigma_i, sigma_j] = 2i eps_ijk sigma_k
    c = tuple(
        tuple(tuple(Fraction(2 * _levi_civita(i, j, k)) for k in range(3)) for j in range(3))
        for i in range(3)
    )
    return StructureConstants(3, c)


def u1_structure() -> StructureConstants:
    return StructureConstants(1, (((Fraction(0),),),))


SU2_STRUCTURE = su2_structure()
U1_STRUCTURE = u1_structure()


# ---------------------------------------------------------------- scalar helpers


def sinc(r):
    """``sin(r)/r`` with the removable singularity at 0 handled by series."""
    r = np.asarray(r, dtype=float)
    small = np.abs(r) < SERIES_CUTOFF
    safe = np.where(small, 1.0, r)
    r2 = r * r
    return np.where(small, 1.0 - r2 / 6.0 + r2 * r2 / 120.0, np.sin(safe) / safe)


def _asin_over(s):
    """``arcsin(s)/s``; used where the angle is recovered from a vector norm."""
    s = np.asarray(s, dtype=float)
    small = s < SERIES_CUTOFF
    safe = np.where(small, 1.0, s)
    s2 = s * s
    return np.where(small, 1.0 + s2 / 6.0 + 3.0 * s2 * s2 / 40.0, np.arcsin(np.minimum(safe, 1.0)) / safe)


def reduce_angle(theta):
    """Map angles onto the principal branch ``(-pi, pi]``."""
    t = np.remainder(np.asarray(theta, dtype=float) + PI, TWO_PI) - PI
    return np.where(t <= -PI, t + TWO_PI, t)


# ---------------------------------------------------------------- SU(2) array API


def quat_mul(a, b) -> np.ndarray:
    """Product of quaternions in the ``p0 + i p.sigma`` convention."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a0, av = a[..., 0], a[..., 1:]
    b0, bv = b[..., 0], b[..., 1:]
    s = a0 * b0 - np.sum(av * bv, axis=-1)
    v = a0[..., None] * bv + b0[..., None] * av - np.cross(av, bv)
    return np.concatenate([s[..., None], v], axis=-1)


def quat_inv(q) -> np.ndarray:
    q = np.array(q, dtype=float)
    q[..., 1:] *= -1.0
    return q


def exp_su2(k) -> np.ndarray:
    """Quaternion of ``exp(i k.sigma)``: ``(cos|k|, sin|k|/|k| k)``."""
    k = np.asarray(k, dtype=float)
    r = np.linalg.norm(k, axis=-1)
    return np.concatenate([np.cos(r)[..., None], sinc(r)[..., None] * k], axis=-1)


def log_su2(q) -> np.ndarray:
    """Principal-branch canonical coordinates of a unit quaternion.

    Raises :class:`SingularPointError` at ``-1``, the one point of SU(2) the
    principal branch excludes.
    """
    q = np.asarray(q, dtype=float)
    p0, p = q[..., 0], q[..., 1:]
    s = np.linalg.norm(p, axis=-1)
    if np.any((s <= SINGULAR_TOL) & (p0 < 0.0)):
        raise SingularPointError("log_su2 is undefined at g = -1 (p0 = -1, p = 0)")
    theta = np.arctan2(s, p0)
    near_id = (s < SERIES_CUTOFF) & (p0 > 0.0)
    safe = np.where(s == 0.0, 1.0, s)
    ratio = np.where(near_id, _asin_over(s), theta / safe)
    return ratio[..., None] * p


def project_principal(k) -> np.ndarray:
    """Shift ``k`` along its own axis by multiples of 2 pi into ``|k| < pi``."""
    k = np.asarray(k, dtype=float)
    r = np.linalg.norm(k, axis=-1)
    if np.any(np.isclose(np.remainder(r, TWO_PI), PI, rtol=0.0, atol=1e-15)):
        raise SingularPointError("coordinates map to g = -1")
    wrapped = reduce_angle(r)
    safe = np.where(r == 0.0, 1.0, r)
    return (wrapped / safe)[..., None] * k


def bch(k1, k2) -> np.ndarray:
    """Closed-form Baker-Campbell-Hausdorff composition for SU(2).

    The scalar part ``x`` and vector part ``v`` of ``exp(i k1.s) exp(i k2.s)``
    are formed directly from ``k1, k2``; the result is
    ``arccos(x)/sin(arccos(x)) * v``.  The angle is taken as
    ``atan2(|v|, x)``, which equals ``arccos(x)`` on the unit sphere and stays
    accurate where ``|x|`` approaches 1.
    """
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    r1 = np.linalg.norm(k1, axis=-1)
    r2 = np.linalg.norm(k2, axis=-1)
    c1, c2 = np.cos(r1), np.cos(r2)
    s1, s2 = sinc(r1), sinc(r2)
    x = c1 * c2 - s1 * s2 * np.sum(k1 * k2, axis=-1)
    v = (c2 * s1)[..., None] * k1 + (c1 * s2)[..., None] * k2 - (s1 * s2)[..., None] * np.cross(k1, k2)
    vn = np.linalg.norm(v, axis=-1)
    if np.any((vn <= SINGULAR_TOL) & (x < 0.0)):
        raise SingularPointError("BCH product equals -1; canonical coordinates undefined")
    theta = np.arctan2(vn, x)
    near_id = (vn < SERIES_CUTOFF) & (x > 0.0)
    safe = np.where(vn == 0.0, 1.0, vn)
    ratio = np.where(near_id, _asin_over(vn), theta / safe)
    return ratio[..., None] * v


def bch_p(k1, k2) -> np.ndarray:
    """BCH composition projected onto the principal branch, via the group."""
    return log_su2(quat_mul(exp_su2(k1), exp_su2(k2)))


def k_to_p(k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    return sinc(np.linalg.norm(k, axis=-1))[..., None] * k


def _check_ball(p, radius=1.0, what="p"):
    n = np.linalg.norm(p, axis=-1)
    if np.any(n > radius + 1e-12):
        raise ChartError(f"|{what}| exceeds {radius}")
    return np.minimum(n, radius)


def oplus_p(p1, p2, w1=None, w2=None) -> np.ndarray:
    """Deformed addition of p-coordinates with projection to the upper hemisphere.

    ``w1, w2`` are the scalar parts ``sqrt(1 - |p|^2)`` when the caller already
    has them; recomputing them from ``p`` costs about ``eps / p0`` near the equator.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    n1 = _check_ball(p1)
    n2 = _check_ball(p2)
    w1 = np.sqrt(1.0 - n1 * n1) if w1 is None else np.asarray(w1, dtype=float)
    w2 = np.sqrt(1.0 - n2 * n2) if w2 is None else np.asarray(w2, dtype=float)
    eps = np.sign(w1 * w2 - np.sum(p1 * p2, axis=-1))
    if np.any(eps == 0.0):
        raise BranchAmbiguityError("product lies on the equator p0 = 0; hemisphere is ambiguous")
    raw = w2[..., None] * p1 + w1[..., None] * p2 - np.cross(p1, p2)
    return eps[..., None] * raw


def oplus_zeta_u1(z1, z2, c1=None, c2=None):
    """Composition of U(1) coordinates ``zeta = 2 sin(theta/2)``, branch-projected.

    The one-dimensional analogue of :func:`oplus_p`: the sign flip moves a sum
    of angles that left ``(-pi, pi]`` back by 2 pi.  ``c1, c2`` are
    ``cos(theta/2)`` when known.
    """
    z1 = np.asarray(z1, dtype=float)
    z2 = np.asarray(z2, dtype=float)
    if np.any(np.abs(z1) > 2.0 + 1e-12) or np.any(np.abs(z2) > 2.0 + 1e-12):
        raise ChartError("|zeta| exceeds 2")
    c1 = np.sqrt(np.maximum(1.0 - z1 * z1 / 4.0, 0.0)) if c1 is None else np.asarray(c1, dtype=float)
    c2 = np.sqrt(np.maximum(1.0 - z2 * z2 / 4.0, 0.0)) if c2 is None else np.asarray(c2, dtype=float)
    eps = np.sign(c1 * c2 - z1 * z2 / 4.0)
    raw = z1 * c2 + z2 * c1
    # eps == 0 is theta = pi exactly, which the branch (-pi, pi] keeps
    return np.where(eps == 0.0, np.abs(raw), eps * raw)


def haar_weight(chart: str, coords):
    """Density of the Haar measure with respect to Lebesgue measure of a chart.

    ``chart`` is one of ``"k"``, ``"p"`` (SU(2)) or ``"theta"``, ``"zeta-u1"``
    (U(1)).  SU(2) is normalised to total volume 2 pi^2, U(1) to 2 pi.
    """
    coords = np.asarray(coords, dtype=float)
    if chart == "k":
        return sinc(np.linalg.norm(coords, axis=-1)) ** 2
    if chart == "p":
        n = np.linalg.norm(coords, axis=-1)
        if np.any(n >= 1.0):
            raise ChartError("p-chart Haar weight diverges at |p| = 1")
        return 1.0 / np.sqrt(1.0 - n * n)
    if chart == "theta":
        return np.ones_like(coords)
    if chart == "zeta-u1":
        if np.any(np.abs(coords) >= 2.0):
            raise ChartError("zeta-chart Haar weight diverges at |zeta| = 2")
        return 1.0 / np.sqrt(1.0 - coords * coords / 4.0)
    raise ValueError(f"unknown chart {chart!r}")


# ---------------------------------------------------------------- element types

_PAULI = np.array(
    [[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex
)


@dataclass(frozen=True)
class SU2:
    """Unit quaternion ``p0 + i p.sigma``; small norm drift is renormalised."""

    p0: float
    p: tuple

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        if len(p) != 3:
            raise ValueError("p must be a 3-vector")
        p0 = float(self.p0)
        norm2 = p0 * p0 + sum(x * x for x in p)
        if abs(norm2 - 1.0) > RENORMALIZE_TOL:
            raise ValueError(f"not a unit quaternion: |q|^2 = {norm2!r}")
        n = math.sqrt(norm2)
        object.__setattr__(self, "p0", p0 / n)
        object.__setattr__(self, "p", tuple(x / n for x in p))

    @classmethod
    def identity(cls) -> "SU2":
        return cls(1.0, (0.0, 0.0, 0.0))

    @classmethod
    def from_quaternion(cls, q) -> "SU2":
        q = np.asarray(q, dtype=float)
        return cls(q[0], tuple(q[1:]))

    @classmethod
    def from_k(cls, k) -> "SU2":
        return cls.from_quaternion(exp_su2(k))

    @classmethod
    def from_matrix(cls, m) -> "SU2":
        m = np.asarray(m, dtype=complex)
        p0 = 0.5 * np.trace(m).real
        p = [0.5 * np.trace(m @ s).imag for s in _PAULI]
        return cls(p0, tuple(p))

    @property
    def quaternion(self) -> np.ndarray:
        return np.array((self.p0, *self.p))

    @property
    def k(self) -> np.ndarray:
        return log_su2(self.quaternion)

    def matrix(self) -> np.ndarray:
        return self.p0 * np.eye(2) + 1j * np.einsum("i,ijk->jk", np.array(self.p), _PAULI)

    def inverse(self) -> "SU2":
        return SU2(self.p0, tuple(-x for x in self.p))

    def upper(self) -> "SU2":
        """Representative on the closed upper hemisphere ``p0 >= 0`` (SO(3))."""
        return self if self.p0 >= 0.0 else SU2(-self.p0, tuple(-x for x in self.p))

    def __mul__(self, other: "SU2") -> "SU2":
        return multiply(self, other)


@dataclass(frozen=True)
class U1:
    """Element ``exp(i theta)`` with theta on the branch ``(-pi, pi]``."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(reduce_angle(self.theta)))

    @classmethod
    def identity(cls) -> "U1":
        return cls(0.0)

    def inverse(self) -> "U1":
        return U1(-self.theta)

    def __mul__(self, other: "U1") -> "U1":
        return multiply(self, other)


def multiply(g, h):
    """Group product; both factors must come from the same group."""
    if isinstance(g, SU2) and isinstance(h, SU2):
        return SU2.from_quaternion(quat_mul(g.quaternion, h.quaternion))
    if isinstance(g, U1) and isinstance(h, U1):
        return U1(g.theta + h.theta)
    raise TypeError(f"cannot multiply {type(g).__name__} by {type(h).__name__}")


def random_su2(rng: np.random.Generator, n: int, max_angle: float = PI) -> np.ndarray:
    """``n`` canonical-coordinate vectors drawn uniformly from the ball ``|k| < max_angle``."""
    direction = rng.normal(size=(n, 3))
    direction /= np.linalg.norm(direction, axis=-1, keepdims=True)
    radius = max_angle * rng.random(n) ** (1.0 / 3.0)
    return radius[:, None] * direction
