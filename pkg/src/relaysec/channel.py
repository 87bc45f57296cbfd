"""Rayleigh block-fading gains and the SINR model."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .params import ParameterError, SystemParams


def exponential_from_uniform(u):
    """Inverse-CDF map of a uniform in (0, 1] onto Exp(1): ``-ln(u)``.

    Works on scalars and arrays.
    """
    return -np.log(u)


def uniform_open_left(rng: np.random.Generator, size=None):
    """Uniform draws on (0, 1]; ``Generator.random`` covers [0, 1)."""
    return 1.0 - rng.random(size)


def sample_exponential(rng: np.random.Generator, size=None):
    """Unit-mean exponential draw(s), i.e. one squared Rayleigh gain."""
    u = uniform_open_left(rng, size)
    if size is None:
        return -math.log(u)
    return exponential_from_uniform(u)


def symmetric_gains(upper: np.ndarray, n: int) -> np.ndarray:
    """Build symmetric ``(..., n, n)`` gain matrices with zero diagonal.

    ``upper`` holds the strict upper triangle in row-major order, shape
    ``(..., n*(n-1)//2)``.
    """
    # gather from the triangle plus one trailing zero used for the diagonal
    pairs = n * (n - 1) // 2
    index = np.full((n, n), pairs)
    iu = np.triu_indices(n, k=1)
    index[iu] = np.arange(pairs)
    index[iu[1], iu[0]] = np.arange(pairs)
    padded = np.concatenate([upper, np.zeros(upper.shape[:-1] + (1,))], axis=-1)
    return padded[..., index]


@dataclass(frozen=True)
class ChannelState:
    """All squared fading gains needed for one two-hop trial.

    ``g_re_h1`` and ``g_re_h2`` are relay-to-eavesdropper gains for the two
    hops (independent packets). In hop 2 the row of the selected relay carries
    the signal, other rows carry jamming.
    """

    g_sr: np.ndarray  # (n,)
    g_rd: np.ndarray  # (n,)
    g_rr: np.ndarray  # (n, n)
    g_se: np.ndarray  # (m,)
    g_re_h1: np.ndarray  # (n, m)
    g_re_h2: np.ndarray  # (n, m)

    @property
    def n(self) -> int:
        return self.g_sr.shape[0]

    @property
    def m(self) -> int:
        return self.g_se.shape[0]

    def check_dims(self, params: SystemParams):
        n, m = params.n, params.m
        expected = {
            "g_sr": (n,),
            "g_rd": (n,),
            "g_rr": (n, n),
            "g_se": (m,),
            "g_re_h1": (n, m),
            "g_re_h2": (n, m),
        }
        for name, shape in expected.items():
            got = np.shape(getattr(self, name))
            if got != shape:
                raise ParameterError(name, f"shape {got} does not match params {shape}")


def sample_legit_gains(n: int, rng: np.random.Generator, blocks: int | None = None):
    """Draw the legitimate-side gains ``(g_sr, g_rd, g_rr)``.

    With ``blocks`` set, every array gets a leading block axis. Draw order is
    g_sr, g_rd, then the upper triangle of g_rr.
    """
    lead = () if blocks is None else (blocks,)
    g_sr = sample_exponential(rng, lead + (n,))
    g_rd = sample_exponential(rng, lead + (n,))
    upper = sample_exponential(rng, lead + (n * (n - 1) // 2,))
    return g_sr, g_rd, symmetric_gains(upper, n)


def sample_eaves_gains(n: int, m: int, rng: np.random.Generator, trials: int | None = None):
    """Draw the eavesdropper-side gains ``(g_se, g_re_h1, g_re_h2)``."""
    lead = () if trials is None else (trials,)
    g_se = sample_exponential(rng, lead + (m,))
    g_re_h1 = sample_exponential(rng, lead + (n, m))
    g_re_h2 = sample_exponential(rng, lead + (n, m))
    return g_se, g_re_h1, g_re_h2


def sample_channel_state(params: SystemParams, rng: np.random.Generator) -> ChannelState:
    g_sr, g_rd, g_rr = sample_legit_gains(params.n, rng)
    g_se, g_re_h1, g_re_h2 = sample_eaves_gains(params.n, params.m, rng)
    return ChannelState(g_sr, g_rd, g_rr, g_se, g_re_h1, g_re_h2)


def sinr(signal_gain: float, jam_gains: Sequence[float], es: float, n0: float) -> float:
    """SINR at a receiver: ``Es*g / (sum(Es*g_j) + N0/2)``.

    Noise enters only as the constant ``N0/2``.
    """
    interference = sum(es * g for g in jam_gains)
    return es * signal_gain / (interference + n0 / 2)
