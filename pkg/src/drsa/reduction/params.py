"""Reduction parameters and the default schedule."""
from __future__ import annotations

from dataclasses import dataclass, replace

# Smallest alpha from which every gadget's DP cost table equals its large-alpha
# value (see gadgetcheck.alpha_sweep, which recomputes it).
ALPHA_MIN = 2


class AlphaTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class Parameters:
    alpha: int
    beta: int
    gamma_min: int  # splitter cascade sizes are chosen in [gamma_min, gamma_max]
    gamma_max: int
    variable_depth: int | None = None  # None: shallowest depth that still reaches the root

    @property
    def side(self) -> int:
        return 4 * self.alpha + 2

    def check(self) -> None:
        if self.alpha < ALPHA_MIN:
            raise AlphaTooSmall(f"alpha-too-small: alpha={self.alpha} < alpha_min={ALPHA_MIN}")
        if self.beta < 1:
            raise ValueError("beta must be positive")
        if not 1 <= self.gamma_min <= self.gamma_max:
            raise ValueError("need 1 <= gamma_min <= gamma_max")

    def with_overrides(self, **kw) -> "Parameters":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def default_parameters(n: int, m: int) -> Parameters:
    """alpha = (nm)^4, beta = 20(nm)^2, (nm)^3 < gamma < 4(nm)^3, variable depth 4(nm)^3."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    nm = n * m
    return Parameters(alpha=nm ** 4, beta=20 * nm ** 2, gamma_min=nm ** 3 + 1,
                      gamma_max=4 * nm ** 3 - 1, variable_depth=4 * nm ** 3)


def grid_side(n: int, m: int) -> int:
    return 1 + m + 2 * n


def band_width(n: int, m: int) -> int:
    return 10 * (n * m) ** 2


def length_bands(u: int, L: int, n: int, m: int, beta: int) -> tuple[int, int]:
    """Closed interval of realization lengths with ``u`` unsatisfied clauses."""
    if u < 0:
        raise ValueError("u must be non-negative")
    lo = L + u * beta
    return lo, lo + band_width(n, m)


def desk_parameters(n: int, m: int) -> Parameters:
    """Schedule for small instances, where the asymptotic one breaks down.

    beta keeps 20(nm)^2. The splitter cascades must outweigh the clause
    penalties and the per-tile constants of a best realization, so
    gamma_min = 2 beta + 20 N^2 (N the grid side), with the default ratio
    gamma_max = 4 gamma_min. alpha must outweigh all cascades together:
    every clause input passes at most two splitters, so 4m gamma_max bounds
    their sum; alpha takes twice that.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    beta = 20 * (n * m) ** 2
    g_lo = 2 * beta + 20 * grid_side(n, m) ** 2
    g_hi = 4 * g_lo
    return Parameters(alpha=max(ALPHA_MIN, 8 * m * g_hi), beta=beta,
                      gamma_min=g_lo, gamma_max=g_hi)
