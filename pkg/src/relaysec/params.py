"""System parameters shared by the simulator, the bounds calculator and the CLI."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields


class ParameterError(ValueError):
    """Invalid parameter value. ``field`` names the offending parameter."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class SystemParams:
    """Protocol and channel scalars for one two-hop network.

    Relays are indexed ``0..n-1`` throughout the package.
    """

    n: int = 10
    m: int = 1
    k: int = 1
    tau: float = 0.5
    gamma_r: float = 1.0
    gamma_e: float = 1.0
    es: float = 1.0
    n0: float = 0.2
    epsilon_t: float = 0.1
    epsilon_s: float = 0.1

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParameterError(f.name, f"expected a number, got {value!r}")
            if not math.isfinite(value):
                raise ParameterError(f.name, "must be finite")
        for name in ("n", "m", "k"):
            if int(getattr(self, name)) != getattr(self, name):
                raise ParameterError(name, "must be an integer")
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.n < 1:
            raise ParameterError("n", "must be >= 1")
        if self.m < 0:
            raise ParameterError("m", "must be >= 0")
        if not 1 <= self.k <= self.n:
            raise ParameterError("k", f"must satisfy 1 <= k <= n (k={self.k}, n={self.n})")
        if self.tau < 0:
            raise ParameterError("tau", "must be >= 0")
        for name in ("gamma_r", "gamma_e", "es", "n0"):
            if getattr(self, name) <= 0:
                raise ParameterError(name, "must be > 0")
        for name in ("epsilon_t", "epsilon_s"):
            if not 0 < getattr(self, name) < 1:
                raise ParameterError(name, "must lie in (0, 1)")

    def replace(self, **changes) -> "SystemParams":
        return SystemParams(**{**asdict(self), **changes})
