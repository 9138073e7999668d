"""Named generators and block families with the growth facts they are known to satisfy.

Every entry is exact: generators return all members up to a horizon, block
families map k (1-based) to the k-th finite block.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable

from ..errors import ParameterError, UnknownNameError
from .exprs import BlockFamily, Certificate, Generator, ResidueClass, SetExpr

ZERO = Fraction(0)


def triangular(k):
    return k * (k + 1) // 2


def cubic_sum(n):
    """1^3 + ... + n^3."""
    return triangular(n) ** 2


def cubicgap_start(p):
    """a_1 = 1, a_p = a_{p-1} + 2 * cubic_sum(p - 1) + 1."""
    a = 1
    for q in range(2, p + 1):
        a += 2 * cubic_sum(q - 1) + 1
    return a


# -- generators: (params, N) -> ascending members <= N ----------------------

def _geometric(base, shift, N):
    out = []
    v = base
    while v + shift <= N:
        out.append(v + shift)
        v *= base
    return out


def _poly(a, e, s, N):
    out = []
    k = 1
    while (v := a * k**e + s) <= N:
        out.append(v)
        k += 1
    return out


def _tri(N):
    out = []
    k = 1
    while (v := triangular(k)) <= N:
        out.append(v)
        k += 1
    return out


def primes_upto(N):
    if N < 2:
        return []
    sieve = bytearray([1]) * (N + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(N) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, N + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


GENERATORS: dict[str, Callable[[tuple, int], list]] = {
    "pow": lambda p, N: _geometric(p[0], 0, N),
    "powshift": lambda p, N: _geometric(p[0], p[1], N),
    "pow2plus1": lambda p, N: _geometric(2, 1, N),
    "poly": lambda p, N: _poly(p[0], p[1], p[2], N),
    "tri": lambda p, N: _tri(N),
    "primes": lambda p, N: primes_upto(N),
}


# -- block families: params -> (k -> k-th block) -----------------------------

def _pow2run(k):
    return tuple(range(2**k, 2**k + k + 1))


def _pow2stretch(k):
    return tuple(range(2**k, 2**k + k))


def _pow2pair(k):
    return (2**k, 2**k + k)


def _triY(k):
    b = triangular(k)
    return (b, b + 1) if k % 2 else (b,)


def _cubicgap_family():
    starts = {1: 1}

    def block(p):
        if p not in starts:
            q = max(starts)
            a = starts[q]
            while q < p:
                a += 2 * cubic_sum(q) + 1
                q += 1
                starts[q] = a
        a = starts[p]
        return tuple(a + cubic_sum(i) for i in range(p + 1))

    return block


def _polyblocks(a, e, offsets):
    return lambda k: tuple(a * k**e + d for d in offsets)


BLOCK_FAMILIES: dict[str, Callable[[tuple], Callable[[int], tuple]]] = {
    "pow2run": lambda p: _pow2run,
    "pow2stretch": lambda p: _pow2stretch,
    "pow2pair": lambda p: _pow2pair,
    "triY": lambda p: _triY,
    "cubicgap": lambda p: _cubicgap_family(),
    "polyblocks": lambda p: _polyblocks(p[0], p[1], p[2:]),
}


# -- builders with certificates ----------------------------------------------

def _need(cond, msg):
    if not cond:
        raise ParameterError(msg)


def _ap(m, r):
    _need(m >= 1, f"ap: modulus must be >= 1, got {m}")
    _need(1 <= r <= m, f"ap: residue must satisfy 1 <= r <= m, got r={r}, m={m}")
    return ResidueClass(m, r)


def _dyadic(n, i):
    _need(n >= 0, f"dyadic: exponent must be >= 0, got {n}")
    _need(0 <= i < 2**n, f"dyadic: offset must satisfy 0 <= i < 2^n, got {i}")
    return ResidueClass(2**n, 2**n - i)


def _geometric_cert(b):
    return Certificate(
        gap_bound=lambda k: (b - 1) * b**k,
        gaps_diverge=True,
        reciprocal_gaps_converge=True,
        density=ZERO,
        note=f"gaps (b-1)b^k with b={b}",
    )


def _pow(b):
    _need(b >= 2, f"pow: base must be >= 2, got {b}")
    return Generator("pow", (b,), certificate=_geometric_cert(b))


def _powshift(b, s):
    _need(b >= 2, f"powshift: base must be >= 2, got {b}")
    _need(s >= 0, f"powshift: shift must be >= 0, got {s}")
    return Generator("powshift", (b, s), certificate=_geometric_cert(b))


def _poly_expr(a, e, s):
    _need(a >= 1, f"poly: coefficient must be >= 1, got {a}")
    _need(e >= 2, f"poly: exponent must be >= 2, got {e}")
    _need(s >= 0, f"poly: shift must be >= 0, got {s}")
    cert = Certificate(
        gap_bound=lambda k: a * e * k ** (e - 1),
        gaps_diverge=True,
        reciprocal_gaps_converge=e >= 3,
        density=ZERO,
        note=f"gaps a((k+1)^e - k^e) >= a*e*k^(e-1) with a={a}, e={e}",
    )
    return Generator("poly", (a, e, s), certificate=cert)


def _tri_expr():
    cert = Certificate(
        gap_bound=lambda k: k + 1,
        gaps_diverge=True,
        reciprocal_gaps_converge=False,
        bounded_blocks_diverge=True,
        density=ZERO,
        note="gaps b_{k+1} - b_k = k + 1; any M-bounded decomposition has 1/(k+1) <= M/gap_k",
    )
    return Generator("tri", (), certificate=cert)


def _pow2pair_expr():
    cert = Certificate(
        gap_bound=lambda j: (j + 1) // 2,
        gaps_diverge=True,
        reciprocal_gaps_converge=False,
        block_size=2,
        block_gap_bound=lambda k: 2**k - k,
        block_gaps_diverge=True,
        block_reciprocals_converge=True,
        density=ZERO,
        note="gaps alternate k and 2^k - k; blocks {2^k, 2^k + k}",
    )
    return BlockFamily("pow2pair", (), certificate=cert)


def _triY_expr():
    cert = Certificate(
        gaps_diverge=False,
        recurring_gap=1,
        block_size=2,
        block_gap_bound=lambda k: k,
        block_gaps_diverge=True,
        bounded_blocks_diverge=True,
        density=ZERO,
        note="blocks {b_k, b_k + 1} (k odd), {b_k} (k even); contains tri",
    )
    return BlockFamily("triY", (), certificate=cert)


def _cubicgap_expr():
    cert = Certificate(
        gaps_diverge=False,
        recurring_gap=1,
        density=ZERO,
        note="block A_p has p+1 elements with inner gaps 1^3..p^3; inter-block gap b_p + 1",
    )
    return BlockFamily("cubicgap", (), certificate=cert)


def _pow2run_expr():
    return BlockFamily(
        "pow2run", (), certificate=Certificate(
            gaps_diverge=False, recurring_gap=1, density=ZERO,
            note="d_n <= (k+1)(k+2)/2^k on [2^k, 2^(k+1))"))


def _pow2stretch_expr():
    return BlockFamily(
        "pow2stretch", (), certificate=Certificate(
            gaps_diverge=False, recurring_gap=1, density=ZERO,
            note="runs {2^k, ..., 2^k + k - 1}"))


def _polyblocks_expr(a, e, *offsets):
    _need(a >= 1, f"polyblocks: coefficient must be >= 1, got {a}")
    _need(e >= 2, f"polyblocks: exponent must be >= 2, got {e}")
    _need(len(offsets) >= 1, "polyblocks: need at least one offset")
    _need(all(d >= 0 for d in offsets), "polyblocks: offsets must be >= 0")
    _need(list(offsets) == sorted(set(offsets)), "polyblocks: offsets must be strictly increasing")
    spread = offsets[-1] - offsets[0]
    _need(a * (2**e - 1) > spread, "polyblocks: blocks overlap (need a(2^e - 1) > offset spread)")

    def block_gap(k):
        return a * ((k + 1) ** e - k**e) - spread

    if len(offsets) == 1:
        cert = Certificate(
            gap_bound=block_gap, gaps_diverge=True,
            reciprocal_gaps_converge=e >= 3,
            block_size=1, block_gap_bound=block_gap, block_gaps_diverge=True,
            block_reciprocals_converge=e >= 3, density=ZERO)
    else:
        inner = min(b - a_ for a_, b in zip(offsets, offsets[1:]))
        cert = Certificate(
            gaps_diverge=False, recurring_gap=inner,
            block_size=len(offsets), block_gap_bound=block_gap, block_gaps_diverge=True,
            block_reciprocals_converge=e >= 3, density=ZERO)
    return BlockFamily("polyblocks", (a, e) + tuple(offsets), certificate=cert)


@dataclass(frozen=True)
class Entry:
    min_args: int
    max_args: int | None
    build: Callable[..., SetExpr]
    kind: str  # "residue" | "generator" | "blocks"
    doc: str


CATALOG: dict[str, Entry] = {
    "ap": Entry(2, 2, _ap, "residue", "ap(m,r) = {n : n = r mod m}, 1 <= r <= m"),
    "dyadic": Entry(2, 2, _dyadic, "residue", "dyadic(n,i) = 2^n*w - i"),
    "pow": Entry(1, 1, _pow, "generator", "pow(b) = {b^k : k >= 1}"),
    "powshift": Entry(2, 2, _powshift, "generator", "powshift(b,s) = {b^k + s}"),
    "pow2plus1": Entry(0, 0, lambda: Generator(
        "pow2plus1", (), certificate=_geometric_cert(2)), "generator", "{2^k + 1}"),
    "poly": Entry(3, 3, _poly_expr, "generator", "poly(a,e,s) = {a*k^e + s}, e >= 2"),
    "tri": Entry(0, 0, _tri_expr, "generator", "triangular numbers 1+...+k"),
    "primes": Entry(0, 0, lambda: Generator("primes", ()), "generator", "the primes (sieve)"),
    "pow2pair": Entry(0, 0, _pow2pair_expr, "blocks", "union of {2^k, 2^k + k}"),
    "pow2run": Entry(0, 0, _pow2run_expr, "blocks", "union of {2^k, ..., 2^k + k}"),
    "pow2stretch": Entry(0, 0, _pow2stretch_expr, "blocks", "union of {2^k, ..., 2^k + k - 1}"),
    "triY": Entry(0, 0, _triY_expr, "blocks", "{b1, b1+1, b2, b3, b3+1, b4, ...}"),
    "cubicgap": Entry(0, 0, _cubicgap_expr, "blocks", "A_p = {a_p, a_p+1^3, ..., a_p+1^3+...+p^3}"),
    "polyblocks": Entry(3, None, _polyblocks_expr, "blocks", "blocks {a*k^e + d : d in offsets}"),
}


def build(name: str, params: tuple = ()) -> SetExpr:
    try:
        entry = CATALOG[name]
    except KeyError:
        raise UnknownNameError(f"unknown catalog name {name!r}") from None
    n = len(params)
    if n < entry.min_args or (entry.max_args is not None and n > entry.max_args):
        want = (str(entry.min_args) if entry.max_args == entry.min_args
                else f"{entry.min_args}+" if entry.max_args is None
                else f"{entry.min_args}-{entry.max_args}")
        raise ParameterError(f"{name} takes {want} argument(s), got {n}")
    return entry.build(*params)
