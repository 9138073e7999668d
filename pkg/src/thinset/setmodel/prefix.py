"""Materialized prefixes A ∩ [1, N] and the counting functions over them."""
from __future__ import annotations

import heapq
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Optional

from ..errors import CertificateError, EnumerationError, HorizonError, ParameterError
from . import catalog
from .exprs import (BlockFamily, Certificate, Difference, Explicit, Generator, Intersection,
                    ResidueClass, SetExpr, Union)


@dataclass(frozen=True)
class Prefix:
    horizon: int
    elements: tuple[int, ...]
    source: Optional[SetExpr] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.horizon < 1:
            raise HorizonError(f"horizon must be >= 1, got {self.horizon}")
        els = self.elements
        if els and (els[0] < 1 or els[-1] > self.horizon):
            raise EnumerationError("prefix elements must lie in [1, horizon]")
        if any(b <= a for a, b in zip(els, els[1:])):
            raise EnumerationError("prefix elements must be strictly increasing")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, n):
        i = bisect_left(self.elements, n)
        return i < len(self.elements) and self.elements[i] == n

    def restrict(self, n: int) -> "Prefix":
        """The prefix cut down to horizon n <= self.horizon."""
        if n > self.horizon:
            raise HorizonError(f"cannot restrict horizon {self.horizon} up to {n}")
        return Prefix(n, self.elements[: bisect_right(self.elements, n)], self.source)

    @classmethod
    def of(cls, elements, horizon=None):
        els = tuple(sorted(set(elements)))
        return cls(horizon if horizon is not None else max(els, default=1), els)


@dataclass(frozen=True)
class GapSequence:
    gaps: tuple[int, ...]

    def __len__(self):
        return len(self.gaps)

    def __iter__(self):
        return iter(self.gaps)

    def __getitem__(self, i):
        return self.gaps[i]


def family_blocks(blocks_fn, N: int, name: str = "block family") -> list[tuple[int, ...]]:
    """Blocks k = 1, 2, ... whose minimum is <= N (the last one may overshoot N)."""
    out = []
    prev_max = 0
    k = 1
    while True:
        block = tuple(blocks_fn(k))
        if not block:
            raise EnumerationError(f"{name}: block {k} is empty")
        if any(b <= a for a, b in zip(block, block[1:])):
            raise EnumerationError(f"{name}: block {k} is not strictly increasing")
        if block[0] > N:
            return out
        if block[0] - prev_max <= 0:
            raise EnumerationError(
                f"{name}: min(block {k}) - max(block {k - 1}) = {block[0] - prev_max} is not > 0")
        out.append(block)
        prev_max = block[-1]
        k += 1


def _materialize(expr: SetExpr, N: int) -> list[int]:
    if isinstance(expr, Explicit):
        return [v for v in expr.elements if v <= N]
    if isinstance(expr, ResidueClass):
        return list(range(expr.residue, N + 1, expr.modulus))
    if isinstance(expr, Generator):
        values = catalog.GENERATORS[expr.name](expr.params, N)
        if any(b <= a for a, b in zip(values, values[1:])):
            raise EnumerationError(f"generator {expr} is not strictly increasing")
        if values and values[0] < 1:
            raise EnumerationError(f"generator {expr} produced a non-positive value")
        return values
    if isinstance(expr, BlockFamily):
        fn = catalog.BLOCK_FAMILIES[expr.name](expr.params)
        return [v for block in family_blocks(fn, N, str(expr)) for v in block if v <= N]
    if isinstance(expr, Union):
        parts = [_checked(m, N) for m in expr.members]
        out = []
        for v in heapq.merge(*parts):
            if not out or out[-1] != v:
                out.append(v)
        return out
    if isinstance(expr, Intersection):
        right = set(_checked(expr.right, N))
        return [v for v in _checked(expr.left, N) if v in right]
    if isinstance(expr, Difference):
        right = set(_checked(expr.right, N))
        return [v for v in _checked(expr.left, N) if v not in right]
    raise TypeError(f"not a set expression: {expr!r}")


def _checked(expr, N):
    values = _materialize(expr, N)
    if expr.certificate is not None:
        validate_certificate(expr, values, N)
    return values


def certificate_blocks(expr: SetExpr, N: int):
    """Witness blocks declared by the certificate (or the family itself), up to N."""
    cert = expr.certificate
    if cert is not None and cert.blocks is not None:
        return family_blocks(cert.blocks, N, f"certificate blocks of {expr}")
    if isinstance(expr, BlockFamily):
        fn = catalog.BLOCK_FAMILIES[expr.name](expr.params)
        return family_blocks(fn, N, str(expr))
    return None


def validate_certificate(expr: SetExpr, values: list[int], N: int) -> None:
    cert: Certificate = expr.certificate
    if cert.gap_bound is not None:
        for k, (a, b) in enumerate(zip(values, values[1:]), start=1):
            if cert.gap_bound(k) > b - a:
                raise CertificateError(
                    f"{expr}: gap bound g({k}) = {cert.gap_bound(k)} exceeds observed gap {b - a}")
    if cert.block_size is not None or cert.block_gap_bound is not None or cert.blocks is not None:
        blocks = certificate_blocks(expr, N)
        if blocks is None:
            raise CertificateError(f"{expr}: block facts declared without a block witness")
        flat = [v for block in blocks for v in block if v <= N]
        if flat != values:
            raise CertificateError(f"{expr}: certificate blocks do not reproduce the set up to {N}")
        for k, block in enumerate(blocks, start=1):
            if cert.block_size is not None and len(block) > cert.block_size:
                raise CertificateError(
                    f"{expr}: block {k} has {len(block)} elements > declared bound {cert.block_size}")
            if cert.block_gap_bound is not None and k < len(blocks):
                gap = blocks[k][0] - block[-1]
                if blocks[k][0] <= N and cert.block_gap_bound(k) > gap:
                    raise CertificateError(
                        f"{expr}: block gap bound {cert.block_gap_bound(k)} exceeds observed gap {gap}")


def enumerate_upto(expr: SetExpr, N: int) -> Prefix:
    if N < 1:
        raise HorizonError(f"horizon must be >= 1, got {N}")
    return Prefix(N, tuple(_checked(expr, N)), expr)


def member(expr: SetExpr, n: int) -> bool:
    if n < 1:
        raise HorizonError(f"membership is defined for n >= 1, got {n}")
    if isinstance(expr, Explicit):
        return n in expr.elements
    if isinstance(expr, ResidueClass):
        return n % expr.modulus == expr.residue % expr.modulus
    if isinstance(expr, Union):
        return any(member(m, n) for m in expr.members)
    if isinstance(expr, Intersection):
        return member(expr.left, n) and member(expr.right, n)
    if isinstance(expr, Difference):
        return member(expr.left, n) and not member(expr.right, n)
    return n in enumerate_upto(expr, n)


def count_upto(prefix: Prefix, n: int) -> int:
    """A(n) = |A ∩ [1, n]|."""
    if n > prefix.horizon:
        raise HorizonError(f"n = {n} is beyond the horizon {prefix.horizon}")
    return bisect_right(prefix.elements, n)


def window_count(prefix: Prefix, h: int, k: int) -> int:
    """A(h+1, h+k) = |A ∩ [h+1, h+k]|."""
    if h < 0 or k < 1:
        raise ParameterError(f"need h >= 0 and k >= 1, got h={h}, k={k}")
    if h + k > prefix.horizon:
        raise HorizonError(f"window [{h + 1}, {h + k}] is beyond the horizon {prefix.horizon}")
    els = prefix.elements
    return bisect_right(els, h + k) - bisect_right(els, h)


def gap_sequence(prefix: Prefix) -> GapSequence:
    els = prefix.elements
    if len(els) < 2:
        raise ParameterError("a gap sequence needs at least two elements")
    return GapSequence(tuple(b - a for a, b in zip(els, els[1:])))
