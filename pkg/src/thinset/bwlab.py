"""Binary tree families {A_s : s in 2^<ω}, the dyadic residue-class family, and the
finite-depth constructions used for the BW property of the very thin ideal."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import HorizonError, ParameterError, ThinsetError
from .setmodel import (OMEGA, Difference, Prefix, ResidueClass, SetExpr, Union, build,
                       enumerate_upto)

Bits = tuple[int, ...]


def parse_bits(text: str) -> Bits:
    text = text.strip()
    if any(ch not in "01" for ch in text):
        raise ParameterError(f"bit string may only contain '0' and '1', got {text!r}")
    return tuple(int(ch) for ch in text)


def bits_str(s: Bits) -> str:
    return "".join(map(str, s)) or "∅"


def offset(s: Bits) -> int:
    """i(s) = Σ_j s_j 2^(j-1), j = 1..|s|."""
    return sum(bit << j for j, bit in enumerate(s))


def tree_node(s: Sequence[int]) -> ResidueClass:
    """A_s = 2^|s| ω - i(s)."""
    s = tuple(s)
    if any(b not in (0, 1) for b in s):
        raise ParameterError(f"not a bit string: {s}")
    m = 2 ** len(s)
    return ResidueClass(m, m - offset(s))


@dataclass(frozen=True)
class TreeFamily:
    name: str
    node: Callable[[Bits], SetExpr] = field(compare=False)

    def __call__(self, s) -> SetExpr:
        return self.node(tuple(s))


DYADIC = TreeFamily("dyadic", tree_node)
OMEGA_FAMILY = TreeFamily("omega", lambda s: OMEGA)
POW2RUN_FAMILY = TreeFamily("pow2run", lambda s: Union((build("pow2run"), tree_node(s))))
FAMILIES = {f.name: f for f in (DYADIC, OMEGA_FAMILY, POW2RUN_FAMILY)}


@dataclass(frozen=True)
class Violation:
    condition: str  # "S1" | "S2" | "S3"
    node: Bits
    witness: int


@dataclass(frozen=True)
class TreeReport:
    depth: int
    horizon: int
    nodes_checked: int
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def passed_condition(self, cond: str) -> bool:
        return not any(v.condition == cond for v in self.violations)


def _children(level):
    return [s + (b,) for s in level for b in (0, 1)]


def verify_tree_conditions(family: TreeFamily, depth: int, N: int) -> TreeReport:
    """Check S1 (A_∅ = ω), S2 (A_s = A_s0 ∪ A_s1) and S3 (A_s0 ∩ A_s1 = ∅) on every
    node of depth < ``depth``, against prefixes up to N."""
    if depth < 1:
        raise ParameterError(f"depth must be >= 1, got {depth}")
    if N < 2**depth:
        raise HorizonError(f"horizon {N} is below 2^depth = {2**depth}")
    violations = []

    def elements(s):
        return set(enumerate_upto(family(s), N).elements)

    root = elements(())
    bad = set(range(1, N + 1)) ^ root
    if bad:
        violations.append(Violation("S1", (), min(bad)))
    level = {(): root}
    checked = 1
    for _ in range(depth):
        nxt = {}
        for s, parent in level.items():
            c0, c1 = elements(s + (0,)), elements(s + (1,))
            nxt[s + (0,)], nxt[s + (1,)] = c0, c1
            checked += 2
            diff = parent ^ (c0 | c1)
            if diff:
                violations.append(Violation("S2", s, min(diff)))
            both = c0 & c1
            if both:
                violations.append(Violation("S3", s, min(both)))
        level = nxt
    return TreeReport(depth, N, checked, tuple(violations))


def branch_chain(x: Sequence[int], family: TreeFamily = DYADIC) -> list[tuple[SetExpr, SetExpr]]:
    """(A_{x|j}, A_{x|j} minus A_{x|j+1}) for j < |x|.  For the dyadic family the
    difference is the sibling node, a single residue class mod 2^(j+1)."""
    x = tuple(x)
    out = []
    for j in range(len(x)):
        head = x[:j]
        parent = family(head)
        if family is DYADIC:
            diff = tree_node(head + (1 - x[j],))
        else:
            diff = Difference(parent, family(head + (x[j],)))
        out.append((parent, diff))
    return out


def _first_elements(expr: SetExpr, count: int, N: int) -> tuple[int, ...]:
    if isinstance(expr, ResidueClass):
        vals = tuple(expr.residue + i * expr.modulus for i in range(count))
    else:
        vals = enumerate_upto(expr, N).elements[:count]
    if len(vals) < count or (vals and vals[-1] > N):
        raise HorizonError(f"horizon {N} is too small for the first {count} elements of {expr}")
    return vals


def build_ar_set(x: Sequence[int], indices: Sequence[int], N: int,
                 family: TreeFamily = DYADIC) -> Prefix:
    """Union over k of the first indices[k] elements of the k-th branch difference."""
    x, indices = tuple(x), tuple(indices)
    if not indices:
        raise ParameterError("need at least one index")
    if indices[0] < 1 or any(b <= a for a, b in zip(indices, indices[1:])):
        raise ParameterError(f"indices must be positive and strictly increasing: {indices}")
    if len(x) < len(indices):
        raise ParameterError(f"branch of length {len(x)} is shorter than {len(indices)} indices")
    chain = branch_chain(x, family)
    out = set()
    for (_, diff), n in zip(chain, indices):
        out.update(_first_elements(diff, n, N))
    return Prefix(N, tuple(sorted(out)))


class NoRunError(ThinsetError):
    pass


def _first_run(elements, length, M, after):
    run_start = None
    for i, v in enumerate(elements):
        if v <= after:
            continue
        if run_start is None or v - elements[i - 1] > M:
            run_start = i
        if i - run_start + 1 == length:
            return tuple(elements[run_start : i + 1])
    return None


def case1_blocks(family: TreeFamily, x: Sequence[int], M: int, N: int) -> list[tuple[int, ...]]:
    """B_0 = {1}; B_j = the earliest j consecutive elements of A_{x|j} with gaps <= M
    lying above max(B_{j-1})."""
    if M < 1:
        raise ParameterError(f"M must be >= 1, got {M}")
    x = tuple(x)
    blocks = [(1,)]
    for j in range(1, len(x) + 1):
        els = enumerate_upto(family(x[:j]), N).elements
        run = _first_run(els, j, M, blocks[-1][-1])
        if run is None:
            raise NoRunError(
                f"A_{bits_str(x[:j])} has no run of {j} elements with gaps <= {M} "
                f"above {blocks[-1][-1]} within horizon {N}")
        blocks.append(run)
    return blocks


def case1_witness(family: TreeFamily, x: Sequence[int], M: int, N: int) -> Prefix:
    blocks = case1_blocks(family, x, M, N)
    return Prefix(N, tuple(v for b in blocks for v in b))
