"""Asymptotic and uniform (Banach) density: exact values where the algebra allows,
finite-horizon profiles everywhere else."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence

import numpy as np

from .errors import HorizonError, ParameterError
from .setmodel import (BlockFamily, Difference, Explicit, Generator, Intersection, Prefix,
                       ResidueClass, SetExpr, Union, count_upto)

MAX_PERIOD = 10**6


@dataclass(frozen=True)
class DensityProfile:
    checkpoints: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    liminf_estimate: Fraction
    limsup_estimate: Fraction
    tail_start: int  # index into checkpoints where the tail begins


@dataclass(frozen=True)
class UniformDensityProfile:
    k_values: tuple[int, ...]
    sup_window_avg: tuple[Fraction, ...]
    inf_window_avg: tuple[Fraction, ...]
    burn_in: int
    horizon: int
    sup_nonincreasing: bool


def doubling_checkpoints(N: int, start: int = 1) -> list[int]:
    out = []
    n = start
    while n <= N:
        out.append(n)
        n *= 2
    return out


def density_profile(prefix: Prefix, checkpoints: Sequence[int],
                    tail_fraction: Fraction = Fraction(1, 2)) -> DensityProfile:
    """Exact ratios A(n)/n at each checkpoint; lim inf / lim sup estimated over the
    last ``tail_fraction`` of the checkpoints."""
    if not checkpoints:
        raise ParameterError("density_profile needs at least one checkpoint")
    cps = tuple(checkpoints)
    if any(b <= a for a, b in zip(cps, cps[1:])):
        raise ParameterError("checkpoints must be strictly increasing")
    if cps[0] < 1:
        raise ParameterError("checkpoints must be >= 1")
    ratios = tuple(Fraction(count_upto(prefix, n), n) for n in cps)
    start = min(len(cps) - 1, int(len(cps) * (1 - tail_fraction)))
    tail = ratios[start:]
    return DensityProfile(cps, ratios, min(tail), max(tail), start)


# -- exact density via periodic residue algebra ------------------------------

_NULL = "null"


def _lcm(a, b):
    return a // gcd(a, b) * b


def _lift(period, residues, L):
    return frozenset(r + period * j for r in residues for j in range(L // period))


def _periodic(expr: SetExpr):
    """(L, residues mod L) for periodic sets, _NULL for density-zero sets, None if unknown.

    Density-zero parts are dropped: they never change the density of a union,
    an intersection with them is null, and removing them changes nothing.
    """
    cert = expr.certificate
    if isinstance(expr, Explicit):
        return _NULL
    if isinstance(expr, ResidueClass):
        return expr.modulus, frozenset({expr.residue % expr.modulus})
    if isinstance(expr, (Generator, BlockFamily)):
        return _NULL if cert is not None and cert.density == 0 else None
    if isinstance(expr, Union):
        parts = [_periodic(m) for m in expr.members]
        if any(p is None for p in parts):
            return _NULL if cert is not None and cert.density == 0 else None
        parts = [p for p in parts if p is not _NULL]
        if not parts:
            return _NULL
        L = 1
        for period, _ in parts:
            L = _lcm(L, period)
            if L > MAX_PERIOD:
                return None
        return L, frozenset().union(*(_lift(p, rs, L) for p, rs in parts))
    if isinstance(expr, (Intersection, Difference)):
        left, right = _periodic(expr.left), _periodic(expr.right)
        if left is _NULL:
            return _NULL
        if isinstance(expr, Intersection) and right is _NULL:
            return _NULL
        if left is None or right is None:
            return None
        if right is _NULL:
            return left
        L = _lcm(left[0], right[0])
        if L > MAX_PERIOD:
            return None
        a, b = _lift(*left, L), _lift(*right, L)
        return L, (a & b) if isinstance(expr, Intersection) else (a - b)
    return None


def exact_density(expr: SetExpr) -> Optional[Fraction]:
    """d(A) exactly, or None when it is not available symbolically."""
    if expr.certificate is not None and expr.certificate.density is not None:
        return Fraction(expr.certificate.density)
    p = _periodic(expr)
    if p is None:
        return None
    if p is _NULL:
        return Fraction(0)
    L, residues = p
    return Fraction(len(residues), L)


# -- uniform density ---------------------------------------------------------

def cumulative_counts(prefix: Prefix) -> np.ndarray:
    """C[n] = A(n) for n = 0..N (int64; exact for any horizon that fits in memory)."""
    ind = np.zeros(prefix.horizon + 1, dtype=np.int64)
    if prefix.elements:
        ind[np.fromiter(prefix.elements, dtype=np.int64, count=len(prefix))] = 1
    return np.cumsum(ind)


def window_extremes(counts: np.ndarray, k: int, h_lo: int, h_hi: int) -> tuple[int, int]:
    """(min, max) of A(h+1, h+k) over h in [h_lo, h_hi]."""
    w = counts[h_lo + k : h_hi + k + 1] - counts[h_lo : h_hi + 1]
    return int(w.min()), int(w.max())


def default_burn_in(N: int) -> int:
    return isqrt(N)


def uniform_density_profile(prefix: Prefix, k_values: Sequence[int],
                            burn_in: Optional[int] = None) -> UniformDensityProfile:
    N = prefix.horizon
    H0 = default_burn_in(N) if burn_in is None else burn_in
    ks = tuple(k_values)
    if not ks:
        raise ParameterError("need at least one window length")
    if min(ks) < 1 or H0 < 0:
        raise ParameterError("window lengths must be >= 1 and burn-in >= 0")
    if max(ks) + H0 > N:
        raise HorizonError(f"window {max(ks)} with burn-in {H0} exceeds horizon {N}")
    counts = cumulative_counts(prefix)
    sups, infs = [], []
    for k in ks:
        lo, hi = window_extremes(counts, k, H0, N - k)
        sups.append(Fraction(hi, k))
        infs.append(Fraction(lo, k))
    order = sorted(range(len(ks)), key=ks.__getitem__)
    ordered = [sups[i] for i in order]
    mono = all(b <= a for a, b in zip(ordered, ordered[1:]))
    return UniformDensityProfile(ks, tuple(sups), tuple(infs), H0, N, mono)
