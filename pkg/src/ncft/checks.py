"""The property suite behind ``ncft check-all``."""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

from .cli import CheckResult, run_roundtrip
from .groups import SU2, U1, bch, exp_su2, log_su2, project_principal, quat_mul, random_su2
from .maps import MapKind
from .xform.quadrature import QuadratureSpec

ALL_MAPS = tuple(MapKind)
SU2_MAPS = (MapKind.SYMMETRIC, MapKind.DUFLO, MapKind.FLM)


def _timed(check_id: str, kind: str, tolerance: float, fn: Callable[[], float]) -> CheckResult:
    t0 = time.perf_counter()
    err = float(fn())
    ms = int(1000 * (time.perf_counter() - t0))
    return CheckResult(check_id, kind, err, tolerance, ms)


def random_elements(kind: MapKind, rng, n: int, max_angle: float | None = None):
    if kind.group == "u1":
        return [U1(t) for t in rng.uniform(-np.pi, np.pi, n)]
    limit = max_angle if max_angle is not None else (np.pi / 2 if kind is MapKind.FLM else np.pi)
    out = []
    for k in random_su2(rng, n, limit * 0.999):
        g = SU2.from_k(k)
        out.append(g.upper() if kind is MapKind.FLM else g)
    return out


def random_points(kind: MapKind, rng, n: int, scale: float = 3.0):
    return rng.normal(scale=scale, size=(n, kind.dim)) if kind.group == "su2" else rng.normal(scale=scale, size=n)


# ---------------------------------------------------------------- exact checks


def _table_check(kind: MapKind, order: int, source: str) -> float:
    from .quantizer import star_chain
    from .quantizer.tables import max_coefficient_difference, table, u1_sine_table

    if kind is MapKind.U1_SINE:
        ref = {k: v for k, v in u1_sine_table().items() if len(k) == order}
    else:
        ref = table(kind, order, source)
    return max((max_coefficient_difference(star_chain(kind, idx), p) for idx, p in ref.items()), default=0.0)


def _dual_route(kind: MapKind, max_len: int) -> float:
    from .quantizer import SymPolynomial, star_monomials, star_product
    from .quantizer.core import index_strings
    from .quantizer.tables import max_coefficient_difference

    # PBW route, reusing each prefix chain; index_strings yields prefixes first
    chains = {(): SymPolynomial.constant(kind.dim, 1)}
    worst = 0.0
    for idx in index_strings(kind.dim, max_len):
        chains[idx] = star_product(kind, chains[idx[:-1]], SymPolynomial.variable(kind.dim, idx[-1]))
        worst = max(worst, max_coefficient_difference(chains[idx], star_monomials(kind, idx)))
    return worst


def _lie_relation(kind: MapKind) -> float:
    from .quantizer import SymPolynomial, star_product, structure_for
    from .quantizer.rational import I
    from .quantizer.tables import max_coefficient_difference

    d = kind.dim
    c = structure_for(kind).c
    worst = 0.0
    for i in range(d):
        for j in range(d):
            xi, xj = SymPolynomial.variable(d, i), SymPolynomial.variable(d, j)
            lhs = star_product(kind, xi, xj) - star_product(kind, xj, xi)
            rhs = SymPolynomial.zero(d)
            for k in range(d):
                if c[i][j][k]:
                    rhs = rhs + SymPolynomial.variable(d, k).scale(I * c[i][j][k])
            worst = max(worst, max_coefficient_difference(lhs, rhs))
    return worst


def _associativity(kind: MapKind, rng, count: int) -> float:
    from .quantizer import SymPolynomial, star_product
    from .quantizer.polynomial import monomials_of_degree
    from .quantizer.tables import max_coefficient_difference

    d = kind.dim
    monos = [m for n in range(3) for m in monomials_of_degree(d, n)]

    def rand_poly():
        out = SymPolynomial.zero(d)
        for m in rng.choice(len(monos), size=2, replace=False):
            out = out + SymPolynomial.monomial(monos[m], int(rng.integers(-3, 4)))
        return out

    worst = 0.0
    for _ in range(count):
        f, g, h = rand_poly(), rand_poly(), rand_poly()
        a = star_product(kind, star_product(kind, f, g), h)
        b = star_product(kind, f, star_product(kind, g, h))
        worst = max(worst, max_coefficient_difference(a, b))
    return worst


def _duflo_center() -> float:
    from .quantizer import PBWElement, casimir, quantize, structure_for

    c = quantize(MapKind.DUFLO, casimir(3))
    worst = 0.0
    for i in range(3):
        comm = c.commutator(PBWElement.generator(i, structure_for(MapKind.DUFLO)))
        worst = max(worst, max((abs(complex(v)) for v in comm.terms.values()), default=0.0))
    return worst


# ---------------------------------------------------------------- numerical checks


def bch_oracle(k1, k2) -> np.ndarray:
    """Principal log of ``exp(k1) exp(k2)`` by quaternion product (independent of :func:`bch`)."""
    return log_su2(quat_mul(exp_su2(k1), exp_su2(k2)))


def _bch_check(rng, n: int) -> float:
    k1 = random_su2(rng, n, np.pi * 0.999)
    k2 = random_su2(rng, n, np.pi * 0.999)
    q = quat_mul(exp_su2(k1), exp_su2(k2))
    keep = q[:, 0] > -1 + 1e-6
    return float(np.max(np.abs(project_principal(bch(k1[keep], k2[keep])) - bch_oracle(k1[keep], k2[keep]))))


def _group_law(kind: MapKind, rng, pairs: int, points: int) -> float:
    from .groups import multiply
    from .planewave import evaluate, make_plane_wave, star_p_multiply

    worst = 0.0
    g1s, g2s = random_elements(kind, rng, pairs), random_elements(kind, rng, pairs)
    X = random_points(kind, rng, points)
    for g1, g2 in zip(g1s, g2s):
        g = multiply(g1, g2)
        if kind is MapKind.FLM:
            g = g.upper()
        if kind.group == "su2" and g.quaternion[0] <= -1 + 1e-12:
            continue
        w = star_p_multiply(make_plane_wave(kind, g1), make_plane_wave(kind, g2))
        worst = max(worst, float(np.max(np.abs(evaluate(w, X) - evaluate(make_plane_wave(kind, g), X)))))
    return worst


def sigma_identity_residual(kind: MapKind, n: int = 1000) -> float:
    """``max |omega eta^2 sigma - 1|`` on a chart grid of ``n`` points."""
    from .planewave import eta, omega, sigma_of_zeta

    rng = np.random.default_rng(11)
    if kind.group == "u1":
        z = np.linspace(-np.pi, np.pi, n + 2)[1:-1] if kind is MapKind.U1_STANDARD else np.linspace(-2, 2, n + 2)[1:-1]
    else:
        radius = {MapKind.FLM: 1.0, MapKind.SYMMETRIC: np.pi, MapKind.DUFLO: np.pi}[kind]
        dirs = rng.normal(size=(n, 3))
        dirs /= np.linalg.norm(dirs, axis=-1, keepdims=True)
        z = dirs * np.linspace(0.0, radius * 0.999, n)[:, None]
    return float(np.max(np.abs(omega(kind, z) * eta(kind, z) ** 2 * sigma_of_zeta(kind, z) - 1.0)))


def _compatibility(kind: MapKind, rng, pairs: int, points: int) -> float:
    from .planewave import compatibility_check

    g1s, g2s = random_elements(kind, rng, pairs), random_elements(kind, rng, pairs)
    X = random_points(kind, rng, points)
    worst = 0.0
    for g1, g2 in zip(g1s, g2s):
        for axis in range(kind.dim):
            worst = max(worst, compatibility_check(kind, g1, g2, X, axis))
    return worst


def _defining_equation(kind: MapKind, rng, count: int) -> float:
    from .planewave import verify_defining_equation

    worst = 0.0
    for k in random_su2(rng, count, 0.1):
        X = rng.normal(scale=2.0, size=(8, 3))
        worst = max(worst, verify_defining_equation(kind, SU2.from_k(k), X, axis=int(rng.integers(3)), order=12))
    return worst


def random_point_masses(kind: MapKind, rng, n: int):
    from .xform import PointMassFunction

    gs = random_elements(kind, rng, n, max_angle=np.pi / 2 if kind.group == "su2" else None)
    cs = rng.normal(size=n) + 1j * rng.normal(size=n)
    return PointMassFunction(tuple(zip(gs, cs)))


def _convolution(kind: MapKind, rng, trials: int) -> float:
    from .xform import convolution_duality_check

    return max(
        convolution_duality_check(kind, random_point_masses(kind, rng, 5), random_point_masses(kind, rng, 5), random_points(kind, rng, 20))
        for _ in range(trials)
    )


def _translation(kind: MapKind, rng, trials: int) -> float:
    from .xform import translation_duality_check

    worst = 0.0
    for _ in range(trials):
        g = random_elements(kind, rng, 1, max_angle=np.pi / 2 if kind.group == "su2" else None)[0]
        worst = max(worst, translation_duality_check(kind, random_point_masses(kind, rng, 5), g, random_points(kind, rng, 20)))
    return worst


def _parseval(kind: MapKind, spec: QuadratureSpec, radius: float, workers) -> float:
    from .xform import parseval_check, radial_bump

    return parseval_check(kind, radial_bump(radius, kind.group), radial_bump(0.8 * radius, kind.group), spec, workers)


# ---------------------------------------------------------------- assembly


def exact_checks():
    jobs = []
    for kind in (MapKind.SYMMETRIC, MapKind.DUFLO, MapKind.FLM):
        for order in (2, 3):
            jobs.append((f"star/table/{kind.value}/order{order}/tabulated", kind, 0.0, lambda k=kind, o=order: _table_check(k, o, "tabulated")))
            jobs.append((f"star/table/{kind.value}/order{order}/derived", kind, 0.0, lambda k=kind, o=order: _table_check(k, o, "derived")))
    for order in (2, 3):
        jobs.append((f"star/table/u1-sine/order{order}", MapKind.U1_SINE, 0.0, lambda o=order: _table_check(MapKind.U1_SINE, o, "")))
    for kind in (MapKind.SYMMETRIC, MapKind.DUFLO):
        jobs.append((f"star/dual-route/{kind.value}", kind, 0.0, lambda k=kind: _dual_route(k, 5)))
    for kind in ALL_MAPS:
        jobs.append((f"star/lie-relation/{kind.value}", kind, 0.0, lambda k=kind: _lie_relation(k)))
        jobs.append((f"star/associativity/{kind.value}", kind, 0.0, lambda k=kind: _associativity(k, np.random.default_rng(3), 5)))
    jobs.append(("star/duflo-center", MapKind.DUFLO, 0.0, _duflo_center))
    return jobs


def numeric_checks(quick: bool):
    pairs = 100 if quick else 1000
    jobs = [("group/bch-oracle", MapKind.SYMMETRIC, 1e-11, lambda: _bch_check(np.random.default_rng(1), pairs * 10))]
    for kind in ALL_MAPS:
        v = kind.value
        jobs.append((f"planewave/group-law/{v}", kind, 1e-11, lambda k=kind: _group_law(k, np.random.default_rng(2), pairs, 100)))
        jobs.append((f"planewave/sigma/{v}", kind, 1e-13, lambda k=kind: sigma_identity_residual(k)))
        jobs.append((f"planewave/compatibility/{v}", kind, 1e-12, lambda k=kind: _compatibility(k, np.random.default_rng(4), pairs, 10)))
        jobs.append((f"xform/convolution-duality/{v}", kind, 1e-11, lambda k=kind: _convolution(k, np.random.default_rng(5), 3)))
        jobs.append((f"xform/translation-duality/{v}", kind, 1e-11, lambda k=kind: _translation(k, np.random.default_rng(6), 3)))
    for kind in (MapKind.SYMMETRIC, MapKind.DUFLO):
        jobs.append((f"planewave/defining-equation/{kind.value}", kind, 1e-6, lambda k=kind: _defining_equation(k, np.random.default_rng(8), 2 if quick else 4)))
    return jobs


def run_all(kind: MapKind, spec: QuadratureSpec, radius: float, samples: int, workers=None, quick: bool = False):
    """Run every check; quadrature checks use ``kind``, ``spec`` and the bump radius."""
    jobs = exact_checks() + numeric_checks(quick)
    results = []

    def run(job):
        cid, k, tol, fn = job
        return _timed(cid, k.value, tol, fn)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results.extend(pool.map(run, jobs))
    else:
        results.extend(run(j) for j in jobs)

    _, _, _, rt = run_roundtrip(kind, spec, radius, 1.0, samples, workers)
    results.append(rt)
    results.append(_timed(f"xform/parseval/{kind.value}", kind.value, spec.tolerance, lambda: _parseval(kind, spec, radius, workers)))
    return results
