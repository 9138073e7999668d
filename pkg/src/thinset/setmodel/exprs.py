"""Symbolic subsets of {1, 2, 3, ...} and their optional growth certificates."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

IntFn = Callable[[int], int]
BlockFn = Callable[[int], Sequence[int]]


@dataclass(frozen=True)
class Certificate:
    """Declared (trusted) growth facts about a set A = {n_1 < n_2 < ...}.

    Gap indices are 1-based: ``gap_bound(k) <= n_{k+1} - n_k``.  Block facts
    describe the witness decomposition ``blocks`` (k -> k-th block, 1-based);
    for a BlockFamily expression the family's own blocks are used when
    ``blocks`` is None.  Bound functions are checked against every
    materialized prefix; the limit flags cannot be checked and are taken on
    trust.
    """

    gap_bound: Optional[IntFn] = None
    gaps_diverge: Optional[bool] = None
    recurring_gap: Optional[int] = None
    reciprocal_gaps_converge: Optional[bool] = None
    blocks: Optional[BlockFn] = None
    block_size: Optional[int] = None
    block_gap_bound: Optional[IntFn] = None
    block_gaps_diverge: Optional[bool] = None
    block_reciprocals_converge: Optional[bool] = None
    # every bounded-size block decomposition has a divergent block-gap reciprocal sum
    bounded_blocks_diverge: bool = False
    density: Optional[Fraction] = None
    note: str = ""

    def merged(self, other: Optional["Certificate"]) -> "Certificate":
        """Field-wise overlay: values set on ``other`` win."""
        if other is None:
            return self
        updates = {}
        for name, f in self.__dataclass_fields__.items():
            value = getattr(other, name)
            if value is f.default or (type(value) is type(f.default) and value == f.default):
                continue
            updates[name] = value
        return replace(self, **updates)


@dataclass(frozen=True, kw_only=True)
class SetExpr:
    certificate: Optional[Certificate] = field(default=None, compare=False)

    def with_certificate(self, cert: Certificate) -> "SetExpr":
        base = self.certificate or Certificate()
        return replace(self, certificate=base.merged(cert))


@dataclass(frozen=True)
class Explicit(SetExpr):
    elements: tuple[int, ...]

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


@dataclass(frozen=True)
class ResidueClass(SetExpr):
    """{n >= 1 : n = r (mod m)} with 1 <= r <= m."""

    modulus: int
    residue: int

    def __str__(self):
        return f"ap({self.modulus},{self.residue})"


@dataclass(frozen=True)
class Generator(SetExpr):
    name: str
    params: tuple[int, ...] = ()

    def __str__(self):
        return _call_str(self.name, self.params)


@dataclass(frozen=True)
class BlockFamily(SetExpr):
    name: str
    params: tuple[int, ...] = ()

    def __str__(self):
        return f"blocks({_call_str(self.name, self.params)})"


@dataclass(frozen=True)
class Union(SetExpr):
    members: tuple[SetExpr, ...]

    def __str__(self):
        return "union(" + ",".join(map(str, self.members)) + ")"


@dataclass(frozen=True)
class Intersection(SetExpr):
    left: SetExpr
    right: SetExpr

    def __str__(self):
        return f"inter({self.left},{self.right})"


@dataclass(frozen=True)
class Difference(SetExpr):
    left: SetExpr
    right: SetExpr

    def __str__(self):
        return f"diff({self.left},{self.right})"


def _call_str(name, params):
    return f"{name}({','.join(map(str, params))})" if params else name


OMEGA = ResidueClass(1, 1)
EMPTY = Explicit(())
