"""Constructive decompositions: merging super thin / very thin sets into bounded
blocks, splitting very thin sets into super thin parts, writing a super thin set
as the intersection of two non very thin sets, and the gallery of example sets."""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import Optional

from .errors import HorizonError, ParameterError, UnknownNameError
from .setmodel import Certificate, Prefix, SetExpr, Union, build
from .thinness import BlockDecomposition


def _check_horizon(N, *prefixes):
    for p in prefixes:
        if p.horizon != N:
            raise HorizonError(f"prefix horizon {p.horizon} does not match N = {N}")


def _smallest_in(ts, lo, hi2, used):
    """Smallest unused t with lo <= t and 2t <= hi2."""
    i = bisect_left(ts, lo)
    while i < len(ts) and 2 * ts[i] <= hi2:
        if ts[i] not in used:
            return ts[i]
        i += 1
    return None


def _largest_in(ts, lo2, hi, used):
    """Largest unused t with 2t >= lo2 and t <= hi."""
    i = bisect_right(ts, hi) - 1
    while i >= 0 and 2 * ts[i] >= lo2:
        if ts[i] not in used:
            return ts[i]
        i -= 1
    return None


def _assemble(groups, loose, N, M=None):
    blocks = [tuple(sorted(g)) for g in groups] + [(t,) for t in loose]
    blocks.sort()
    return BlockDecomposition(tuple(blocks), M, N)


def merge_super_thin(S: Prefix, T: Prefix, N: int) -> BlockDecomposition:
    """Blocks of size <= 3 covering S ∪ T: each s_i takes the smallest t in
    [s_i, (s_i + s_{i+1})/2] and the largest t in [(s_{i-1} + s_i)/2, s_i].

    A t sitting exactly on a midpoint goes to the earlier block.  The last s in
    the horizon has no known successor and takes no right neighbour.
    """
    _check_horizon(N, S, T)
    ss = S.elements
    sset = set(ss)
    ts = [t for t in T.elements if t not in sset]
    used: set = set()
    groups = []
    for i, s in enumerate(ss):
        group = [s]
        if i > 0:
            t = _largest_in(ts, ss[i - 1] + s, s, used)
            if t is not None:
                used.add(t)
                group.append(t)
        if i + 1 < len(ss):
            t = _smallest_in(ts, s, s + ss[i + 1], used)
            if t is not None:
                used.add(t)
                group.append(t)
        groups.append(group)
    return _assemble(groups, [t for t in ts if t not in used], N)


def _split_consecutive_t(block, tset):
    """Cut a block between every two consecutive T elements with no S element between."""
    parts = [[block[0]]]
    for v in block[1:]:
        if v in tset and parts[-1][-1] in tset:
            parts.append([v])
        else:
            parts[-1].append(v)
    return parts


def merge_very_thin_super_thin(S_decomp: BlockDecomposition, T: Prefix,
                               N: int) -> BlockDecomposition:
    """Blocks of size <= 2M + 1 covering S ∪ T, where M bounds the blocks of S_decomp.

    Block A_i takes the T elements strictly inside its span, the smallest t in
    [max A_i, (max A_i + min A_{i+1})/2] and the largest t in
    [(max A_{i-1} + min A_i)/2, min A_i]; each enlarged block is then cut between
    consecutive T elements that have no S element between them.
    """
    if S_decomp.horizon is not None and S_decomp.horizon != N:
        raise HorizonError(f"decomposition horizon {S_decomp.horizon} does not match N = {N}")
    _check_horizon(N, T)
    blocks = [b for b in S_decomp.blocks]
    M = max((len(b) for b in blocks), default=1)
    sset = {v for b in blocks for v in b}
    ts = [t for t in T.elements if t not in sset]
    tset = set(ts)
    used: set = set()
    groups = []
    for i, A in enumerate(blocks):
        lo, hi = A[0], A[-1]
        group = list(A)
        inside = ts[bisect_right(ts, lo): bisect_left(ts, hi)]
        group += inside
        used.update(inside)
        if i > 0:
            t = _largest_in(ts, blocks[i - 1][-1] + lo, lo, used)
            if t is not None:
                used.add(t)
                group.append(t)
        if i + 1 < len(blocks):
            t = _smallest_in(ts, hi, hi + blocks[i + 1][0], used)
            if t is not None:
                used.add(t)
                group.append(t)
        groups.extend(_split_consecutive_t(sorted(group), tset))
    out = _assemble(groups, [t for t in ts if t not in used], N)
    if out.block_size_max > 2 * M + 1:
        raise AssertionError(f"block of size {out.block_size_max} exceeds 2M + 1 = {2 * M + 1}")
    return out


def split_into_super_thin(decomp: BlockDecomposition, M: Optional[int] = None) -> list[Prefix]:
    """B_i = i-th smallest element of every block (short blocks padded with their
    maximum), duplicates removed in favour of the lowest i."""
    blocks = decomp.blocks
    if M is None:
        M = decomp.block_size_max
    if M < 1:
        raise ParameterError("cannot split an empty decomposition")
    for k, b in enumerate(blocks, start=1):
        if not 1 <= len(b) <= M:
            raise ParameterError(f"block {k} has {len(b)} elements, outside [1, {M}]")
    for k, g in enumerate(decomp.inter_block_gaps, start=1):
        if g <= 0:
            raise ParameterError(f"blocks {k} and {k + 1} are not separated (gap {g})")
    horizon = decomp.horizon or max((b[-1] for b in blocks), default=1)
    seen: set = set()
    parts = []
    for i in range(M):
        part = []
        for b in blocks:
            v = b[min(i, len(b) - 1)]
            if v not in seen:
                seen.add(v)
                part.append(v)
        parts.append(Prefix(horizon, tuple(part)))
    return parts


def cover_indices(S: Prefix) -> list[int]:
    """Greedy-smallest 1-based indices n_1 < n_2 < ... with t_{n_1+1} - t_{n_1} > 2 and,
    for k >= 2, t_{n_k} > 2 t_{n_{k-1}} and t_{n_k+1} - t_{n_k} > 2k."""
    t = (None,) + S.elements
    last = len(S.elements)
    out = []
    j = 1
    while j < last:
        k = len(out) + 1
        ok = t[j + 1] - t[j] > 2 * k if k > 1 else t[j + 1] - t[j] > 2
        if k > 1:
            ok = ok and t[j] > 2 * t[out[-1]]
        if ok:
            out.append(j)
        j += 1
    return out


def thin_intersection_cover(S: Prefix, N: int, min_stages: int = 3) -> tuple[Prefix, Prefix]:
    """(A ∪ S, B ∪ S) with A = ∪ {t_{n_k}, ..., t_{n_k} + k} and
    B = ∪ {t_{n_k+1} - k, ..., t_{n_k+1}}, cut to [1, N]; their intersection is S."""
    _check_horizon(N, S)
    idx = cover_indices(S)
    if len(idx) < min_stages:
        raise HorizonError(
            f"horizon {N} admits only {len(idx)} cover stage(s); need {min_stages}")
    t = (None,) + S.elements
    A, B = set(S.elements), set(S.elements)
    for k, n in enumerate(idx, start=1):
        A.update(v for v in range(t[n], t[n] + k + 1) if v <= N)
        B.update(range(t[n + 1] - k, t[n + 1] + 1))
    return Prefix(N, tuple(sorted(A))), Prefix(N, tuple(sorted(B)))


# -- gallery -----------------------------------------------------------------

def _a_frak():
    cert = Certificate(
        gaps_diverge=False,
        recurring_gap=1,
        blocks=lambda k: (2**k, 2**k + 1),
        block_size=2,
        block_gap_bound=lambda k: 2**k - 1,
        block_gaps_diverge=True,
        block_reciprocals_converge=True,
        density=Fraction(0),
        note="blocks {2^k, 2^k + 1} with gaps 2^k - 1",
    )
    return Union((build("pow", (2,)), build("pow2plus1"))).with_certificate(cert)


_GALLERY = {
    "A_frak": (_a_frak, "{2^k} ∪ {2^k + 1}: very thin, gap 1 recurs"),
    "pow2": (lambda: build("pow", (2,)), "{2^k}: super super thin"),
    "pow2plus1": (lambda: build("pow2plus1"), "{2^k + 1}: super super thin"),
    "pow2run": (lambda: build("pow2run"), "∪ {2^k, ..., 2^k + k}: thin, not very thin"),
    "pow2stretch": (lambda: build("pow2stretch"), "∪ {2^k, ..., 2^k + k - 1}: exceptions of x_n"),
    "pow2pair": (lambda: build("pow2pair"),
                 "∪ {2^k, 2^k + k}: super thin, very very thin, not super super thin"),
    "tri": (lambda: build("tri"), "triangular numbers X: super thin, not very very thin"),
    "triY": (lambda: build("triY"), "Y ⊇ X: very thin, not very very thin"),
    "cubicgap": (lambda: build("cubicgap"), "cubic-gap blocks: uniformly thin, not very thin"),
    "primes": (lambda: build("primes"), "primes: empirical entry only"),
}

GALLERY_NAMES = tuple(_GALLERY)


def gallery(name: str) -> SetExpr:
    try:
        factory, _ = _GALLERY[name]
    except KeyError:
        raise UnknownNameError(
            f"unknown gallery name {name!r}; known: {', '.join(GALLERY_NAMES)}") from None
    return factory()


def gallery_listing() -> list[tuple[str, str, str]]:
    return [(name, str(factory()), doc) for name, (factory, doc) in _GALLERY.items()]


def certify(expr: SetExpr) -> SetExpr:
    """Attach the gallery certificate when ``expr`` denotes a gallery set verbatim."""
    for factory, _ in _GALLERY.values():
        g = factory()
        if g == expr:
            return expr.with_certificate(g.certificate) if g.certificate else expr
    return expr
