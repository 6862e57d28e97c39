from __future__ import annotations

from enum import Enum


class MapKind(str, Enum):
    """Quantization maps shipped with the library.

    The two U(1) kinds differ only in the coordinates their plane waves use:
    ``theta`` itself, or ``zeta = 2 sin(theta/2)``.
    """

    SYMMETRIC = "symmetric"
    DUFLO = "duflo"
    FLM = "flm"
    U1_STANDARD = "u1-standard"
    U1_SINE = "u1-sine"

    @property
    def group(self) -> str:
        return "u1" if self in (MapKind.U1_STANDARD, MapKind.U1_SINE) else "su2"

    @property
    def dim(self) -> int:
        return 1 if self.group == "u1" else 3

    @property
    def chart(self) -> str:
        """Coordinate chart in which the plane wave is a classical exponential."""
        return {
            MapKind.SYMMETRIC: "k",
            MapKind.DUFLO: "k",
            MapKind.FLM: "p",
            MapKind.U1_STANDARD: "theta",
            MapKind.U1_SINE: "zeta-u1",
        }[self]

    @property
    def chart_radius(self) -> float:
        import math

        return {"k": math.pi, "p": 1.0, "theta": math.pi, "zeta-u1": 2.0}[self.chart]

    @classmethod
    def parse(cls, name) -> "MapKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        aliases = {"s": "symmetric", "sym": "symmetric", "d": "duflo", "u1": "u1-standard"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown quantization map {name!r}; expected one of {valid}") from None
