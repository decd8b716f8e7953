"""Numeric evaluation of the bound formulas tied to the extremal quantities.

These are pure-arithmetic main terms (asymptotic corrections dropped, and
any unstated constants are explicit user parameters), intended for
sanity-checking computed desk-scale values against the expected shapes.
Logarithms are natural unless a base is written out.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, exp, floor, log

from .colorings import K4ColoringParams

__all__ = [
    "BoundProfile",
    "GeneralLogBound",
    "bound_even_decomp",
    "bound_maxmin",
    "bound_k4_colors",
    "bound_general_log",
    "shrunken_host",
    "EXACT_SCAN_LIMIT",
]

EXACT_SCAN_LIMIT = 10**6


@dataclass(frozen=True)
class BoundProfile:
    """Validated parameter bundle for the bound evaluators."""

    v_h: int
    e_h: int
    k: int | None = None
    c: float | None = None

    def __post_init__(self):
        if self.v_h < 0 or self.e_h < 0:
            raise ValueError("v_h and e_h must be non-negative")
        if self.k is not None and not 1 <= self.k < self.v_h:
            raise ValueError(f"k={self.k} must satisfy 1 <= k < v_h={self.v_h}")
        if self.c is not None and self.c <= 0:
            raise ValueError("c must be positive")


def bound_even_decomp(v_h: int, n: int) -> float:
    """Main term n^(1/(v_h-2)); the dropped correction factor tends to one."""
    if v_h < 3:
        raise ValueError("needs a pattern on at least 3 vertices")
    if n < 1:
        raise ValueError("needs n >= 1")
    return n ** (1.0 / (v_h - 2))


def bound_maxmin(r1, r2, k: int, n: int, exact: bool | None = None) -> float:
    """max over integers m in [1, n] of min(r1(m), r2(m), the exponential
    middle-gap term).  Exact integer scan below EXACT_SCAN_LIMIT (the default
    there); otherwise a 1000-point logarithmic grid with local integer
    refinement around the grid optimum."""
    if k < 1:
        raise ValueError("needs k >= 1")
    if n < 2:
        raise ValueError("needs n >= 2")
    ln_n = log(n)

    def value(m: int) -> float:
        third = exp((ln_n - log(m)) ** 2 / (3 * k * ln_n))
        return min(r1(m), r2(m), third)

    if exact is None:
        exact = n < EXACT_SCAN_LIMIT
    if exact:
        if n >= EXACT_SCAN_LIMIT:
            raise ValueError(f"exact scan limited to n < {EXACT_SCAN_LIMIT}")
        return max(value(m) for m in range(1, n + 1))

    candidates = sorted({min(max(round(exp(ln_n * j / 999)), 1), n) for j in range(1000)} | {1, n})
    best_m, best = candidates[0], value(candidates[0])
    for m in candidates[1:]:
        v = value(m)
        if v > best:
            best_m, best = m, v
    step = exp(ln_n / 999)
    lo = max(1, floor(best_m / step) - 1000)
    hi = min(n, ceil(best_m * step) + 1000)
    window = range(lo, hi + 1) if hi - lo <= 4000 else range(best_m - 2000, best_m + 2001)
    for m in window:
        if 1 <= m <= n:
            v = value(m)
            if v > best:
                best = v
    return best


def bound_k4_colors(n: int) -> int:
    """Palette-size bound 3^d * m^2 with the same d = ceil(sqrt(log2 n)),
    m = 2^d used by the explicit coloring construction."""
    params = K4ColoringParams.from_n(n)
    return 3**params.d * params.m**2


@dataclass(frozen=True)
class GeneralLogBound:
    colors: float  # c * ln n
    density: float  # 1 / (c * ln n)
    shrunken_host: float | None  # n * exp(-C * (ln n)^(3/4)) when C is given


def shrunken_host(n: int, big_c: float) -> float:
    if n < 3:
        raise ValueError("needs n >= 3")
    return n * exp(-big_c * log(n) ** 0.75)


def bound_general_log(c: float, n: int, big_c: float | None = None) -> GeneralLogBound:
    if c <= 0:
        raise ValueError("needs c > 0")
    if n < 3:
        raise ValueError("needs n >= 3")
    colors = c * log(n)
    return GeneralLogBound(
        colors=colors,
        density=1.0 / colors,
        shrunken_host=None if big_c is None else shrunken_host(n, big_c),
    )
