"""Command-line front end: ``ncft star-table | bch | planewave | roundtrip | check-all``."""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .groups import SU2, U1, BranchAmbiguityError, ChartError, SingularPointError, bch, bch_p
from .maps import MapKind
from .xform.quadrature import ConfigError, QuadratureSpec

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_SINGULAR = 3


@dataclass
class CheckResult:
    check_id: str
    map: str
    max_error: float
    tolerance: float
    runtime_ms: int
    status: str = ""

    def __post_init__(self):
        if not self.status:
            self.status = "pass" if self.max_error <= self.tolerance else "fail"

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "map": self.map,
            "status": self.status,
            "max_error": float(self.max_error),
            "tolerance": float(self.tolerance),
            "runtime_ms": int(self.runtime_ms),
        }


class UsageError(Exception):
    pass


def _vector(text: str, n: int = 3) -> np.ndarray:
    try:
        parts = [float(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"cannot parse vector {text!r}") from None
    if len(parts) != n:
        raise UsageError(f"expected {n} comma-separated numbers, got {text!r}")
    return np.array(parts)


def _fmt(x: float) -> str:
    return f"{float(x) + 0.0:.15g}"


def _map(name: str) -> MapKind:
    try:
        return MapKind.parse(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------- star-table


def cmd_star_table(args) -> int:
    from .quantizer import star_table

    kind = _map(args.map)
    if not 1 <= args.degree <= 5:
        raise UsageError("--degree must lie between 1 and 5")
    rows = star_table(kind, args.degree)
    if args.json:
        out = [{k: v for k, v in r.items() if k != "result"} for r in rows]
        print(json.dumps(out, indent=None if args.compact else 2))
    else:
        for r in rows:
            print(f"{r['monomial']} = {r['result']}")
    return EXIT_OK


# ---------------------------------------------------------------- bch


def cmd_bch(args) -> int:
    k1, k2 = _vector(args.k1), _vector(args.k2)
    out = bch_p(k1, k2) if args.project else bch(k1, k2)
    print(" ".join(_fmt(x) for x in out))
    return EXIT_OK


# ---------------------------------------------------------------- planewave


def cmd_planewave(args) -> int:
    from .planewave import evaluate, make_plane_wave, sigma

    kind = _map(args.map)
    if kind.group == "u1":
        if args.theta is None:
            raise UsageError("U(1) maps need --theta")
        g = U1(args.theta)
    else:
        if args.k is None:
            raise UsageError("SU(2) maps need --k")
        g = SU2.from_k(_vector(args.k))
    w = make_plane_wave(kind, g)
    report = {"map": kind.value, "eta": w.eta, "zeta": list(w.zeta), "sigma": sigma(kind, g)}
    if args.X is not None:
        X = _vector(args.X, kind.dim) if kind.group == "su2" else float(args.X)
        v = complex(evaluate(w, X))
        report["E"] = {"re": v.real, "im": v.imag}
    print(json.dumps(report))
    return EXIT_OK


# ---------------------------------------------------------------- config


def load_config(path, kind_override=None):
    """Quadrature spec plus the run parameters ``map``, ``bump_radius``, ``amplitude``, ``samples``."""
    data = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    name = kind_override or data.get("map", "duflo")
    try:
        kind = MapKind.parse(name)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    spec = QuadratureSpec.from_dict(data, kind)
    default_radius = 2.5 if kind.group == "u1" else (1.0 if kind is MapKind.FLM else 2.0)
    radius = data.get("bump_radius", default_radius)
    limit = {"u1": np.pi, "su2": np.pi if kind is not MapKind.FLM else np.pi / 2}[kind.group]
    if not isinstance(radius, (int, float)) or not 0 < radius < limit:
        raise ConfigError(f"bump_radius must lie in (0, {limit:.6g}) for map {kind.value!r}")
    amplitude = data.get("amplitude", 1.0)
    samples = data.get("samples", 50)
    if not isinstance(amplitude, (int, float)):
        raise ConfigError("amplitude must be a number")
    if not isinstance(samples, int) or samples < 1:
        raise ConfigError("samples must be a positive integer")
    return kind, spec, float(radius), float(amplitude), samples


def sample_points(kind: MapKind, radius: float, n: int, seed: int = 7):
    """Deterministic sample points inside the bump support."""
    kind = MapKind.parse(kind)
    rng = np.random.default_rng(seed)
    if kind.group == "u1":
        return np.linspace(-0.96 * radius, 0.96 * radius, n)
    from .groups import exp_su2, random_su2

    return exp_su2(random_su2(rng, n, 0.95 * radius))


def run_roundtrip(kind, spec, radius, amplitude, samples, workers=None):
    from .xform import radial_bump, roundtrip_values

    base = radial_bump(radius, kind.group)
    psi = base if amplitude == 1.0 else base.combine(base, amplitude, 0.0)
    pts = sample_points(kind, radius, samples)
    t0 = time.perf_counter()
    exact, back = roundtrip_values(kind, psi, spec, pts, workers)
    ms = int(1000 * (time.perf_counter() - t0))
    scale = float(np.max(np.abs(exact), initial=0.0))
    err = float(np.max(np.abs(back - exact), initial=0.0))
    err = err / scale if scale > 0 else err
    return pts, exact, back, CheckResult(f"xform/roundtrip/{kind.value}", kind.value, err, spec.tolerance, ms)


def cmd_roundtrip(args) -> int:
    kind, spec, radius, amplitude, samples = load_config(args.config, args.map)
    pts, exact, back, result = run_roundtrip(kind, spec, radius, amplitude, samples, args.workers)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            coords = ["theta"] if kind.group == "u1" else ["p0", "p1", "p2", "p3"]
            writer.writerow(coords + ["psi_re", "psi_im", "roundtrip_re", "roundtrip_im"])
            rows = pts if kind.group == "su2" else pts[:, None]
            for p, a, b in zip(rows, exact, back):
                values = [*np.atleast_1d(p), a.real, a.imag, b.real, b.imag]
                writer.writerow([repr(float(x)) for x in values])
    print(json.dumps(result.to_dict()))
    return EXIT_OK if result.status == "pass" else EXIT_CHECK_FAILED


# ---------------------------------------------------------------- check-all


def cmd_check_all(args) -> int:
    from .checks import run_all

    kind, spec, radius, amplitude, samples = load_config(args.config, args.map)
    results = run_all(kind, spec, radius, samples, workers=args.workers, quick=args.quick)
    results.sort(key=lambda r: r.check_id)
    lines = [json.dumps(r.to_dict()) for r in results]
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "skip")}
    summary = {"summary": {"total": len(results), **counts, "status": "pass" if counts["fail"] == 0 else "fail"}}
    lines.append(json.dumps(summary))
    text = "\n".join(lines) + "\n"
    if args.json:
        Path(args.json).write_text(text)
    sys.stdout.write(text)
    return EXIT_OK if counts["fail"] == 0 else EXIT_CHECK_FAILED


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncft", description="Non-commutative Fourier transform toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("star-table", help="print exact star-products of coordinate monomials")
    p.add_argument("--map", required=True)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--json", action="store_true", help="emit the JSON table instead of text")
    p.add_argument("--compact", action="store_true", help="single-line JSON")
    p.set_defaults(func=cmd_star_table)

    p = sub.add_parser("bch", help="compose two su(2) canonical coordinate vectors")
    p.add_argument("k1", help="comma-separated 3-vector")
    p.add_argument("k2", help="comma-separated 3-vector")
    p.add_argument("--project", action="store_true", help="project onto the principal branch |k| < pi")
    p.set_defaults(func=cmd_bch)

    p = sub.add_parser("planewave", help="plane-wave data of a group element")
    p.add_argument("--map", required=True)
    p.add_argument("--k", help="canonical coordinates of an SU(2) element")
    p.add_argument("--theta", type=float, help="angle of a U(1) element")
    p.add_argument("--X", help="evaluate E_g at this algebra point")
    p.set_defaults(func=cmd_planewave)

    p = sub.add_parser("roundtrip", help="inverse-after-forward transform of a bump")
    p.add_argument("--map")
    p.add_argument("--config")
    p.add_argument("--csv", help="write sample points, psi and the round trip")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("check-all", help="run the full property suite")
    p.add_argument("--config")
    p.add_argument("--map")
    p.add_argument("--json", help="write the JSON-lines report here")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--quick", action="store_true", help="smaller sample counts")
    p.set_defaults(func=cmd_check_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ConfigError, ChartError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SingularPointError, BranchAmbiguityError) as exc:
        print(f"singular: {exc}", file=sys.stderr)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
