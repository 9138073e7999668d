"""Run statistics, block decompositions and the six-class thinness classifier.

Verdicts come in two flavours.  A symbolic verdict (proved / refuted) follows from
certificates attached to the expression, pushed through the inclusions

    super super thin => super thin => very thin => uniformly thin => thin
    super super thin => very very thin => very thin => thin

and through closure of the ideals under finite unions and subsets.  Everything
else is an empirical diagnostic on the materialized prefix, reported as
consistent / inconsistent up to the horizon.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm
from typing import Optional, Sequence

from .density import (cumulative_counts, default_burn_in, doubling_checkpoints, exact_density,
                      window_extremes)
from .errors import CertificateError, HierarchyError, HorizonError, ParameterError, UnknownNameError
from .setmodel import (BlockFamily, Difference, Explicit, GapSequence, Generator, Intersection,
                       Prefix, ResidueClass, SetExpr, Union, count_upto, enumerate_upto,
                       gap_sequence)


class ThinClass(str, enum.Enum):
    THIN = "Thin"
    SUPER_THIN = "SuperThin"
    VERY_THIN = "VeryThin"
    SUPER_SUPER_THIN = "SuperSuperThin"
    VERY_VERY_THIN = "VeryVeryThin"
    UNIFORMLY_THIN = "UniformlyThin"

    @classmethod
    def parse(cls, name: str) -> "ThinClass":
        key = name.replace("-", "").replace("_", "").lower()
        for c in cls:
            if c.value.lower() == key:
                return c
        raise UnknownNameError(f"unknown class name {name!r}")


class Status(str, enum.Enum):
    PROVED = "ProvedSymbolic"
    REFUTED = "RefutedSymbolic"
    CONSISTENT = "ConsistentUpTo"
    INCONSISTENT = "InconsistentUpTo"

    @property
    def positive(self) -> bool:
        return self in (Status.PROVED, Status.CONSISTENT)


T, ST, VT, SST, VVT, UT = (ThinClass.THIN, ThinClass.SUPER_THIN, ThinClass.VERY_THIN,
                           ThinClass.SUPER_SUPER_THIN, ThinClass.VERY_VERY_THIN,
                           ThinClass.UNIFORMLY_THIN)
ALL_CLASSES = (T, ST, VT, SST, VVT, UT)

# a => b for each (a, b)
IMPLICATIONS = ((SST, ST), (SST, VVT), (ST, VT), (VVT, VT), (VT, UT), (VT, T), (UT, T))


@dataclass(frozen=True)
class Verdict:
    cls: ThinClass
    status: Status
    horizon: int
    evidence: dict = field(default_factory=dict, compare=False)

    def __str__(self):
        if self.status in (Status.PROVED, Status.REFUTED):
            return f"{self.cls.value}: {self.status.value}"
        return f"{self.cls.value}: {self.status.value}({self.horizon})"


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]
    M_param: Optional[int] = None
    horizon: Optional[int] = None

    @property
    def block_size_max(self) -> int:
        return max((len(b) for b in self.blocks), default=0)

    @property
    def inter_block_gaps(self) -> tuple[int, ...]:
        return tuple(b[0] - a[-1] for a, b in zip(self.blocks, self.blocks[1:]))

    def elements(self) -> tuple[int, ...]:
        return tuple(v for b in self.blocks for v in b)


# -- run statistic and greedy blocks -----------------------------------------

def _runs(elements, M):
    """Maximal runs of consecutive elements whose successive differences are <= M."""
    if not elements:
        return []
    runs = [[elements[0]]]
    for a, b in zip(elements, elements[1:]):
        if b - a <= M:
            runs[-1].append(b)
        else:
            runs.append([b])
    return runs


def _longest_run(elements, M):
    best = cur = 1 if elements else 0
    for a, b in zip(elements, elements[1:]):
        cur = cur + 1 if b - a <= M else 1
        if cur > best:
            best = cur
    return best


def run_statistic(prefix: Prefix, M: int) -> int:
    """max (A ∩ [1, N])_M: the longest run of consecutive elements with gaps <= M."""
    if not prefix.elements:
        raise ParameterError("run_statistic needs a nonempty prefix")
    if M < 1:
        raise ParameterError(f"M must be >= 1, got {M}")
    return _longest_run(prefix.elements, M)


def tail_run_statistic(prefix: Prefix, M: int, lo: int) -> int:
    """Longest run among the elements greater than ``lo`` (0 if there are none)."""
    els = prefix.elements
    start = count_upto(prefix, lo) if lo >= 1 else 0
    return _longest_run(els[start:], M)


def greedy_block_decomposition(prefix: Prefix, M: int) -> BlockDecomposition:
    if not prefix.elements:
        raise ParameterError("greedy_block_decomposition needs a nonempty prefix")
    if M < 1:
        raise ParameterError(f"M must be >= 1, got {M}")
    blocks = tuple(tuple(r) for r in _runs(prefix.elements, M))
    return BlockDecomposition(blocks, M, prefix.horizon)


# -- reciprocal gap sums -----------------------------------------------------

def reciprocal_gap_partial_sums(gaps) -> list[Fraction]:
    gaps = tuple(gaps)
    if not gaps:
        raise ParameterError("need at least one gap")
    out = []
    s = Fraction(0)
    for b in gaps:
        s += Fraction(1, b)
        out.append(s)
    return out


def reciprocal_sum(gaps) -> Fraction:
    """Σ 1/b exactly, summed per distinct gap value so the common denominator stays small."""
    counts = Counter(gaps)
    if not counts:
        return Fraction(0)
    L = lcm(*counts)
    return Fraction(sum(c * (L // b) for b, c in counts.items()), L)


def tail_min_gap(prefix: Prefix, h: int) -> Optional[int]:
    """Smallest gap whose right endpoint lies in (h/2, h]; None if there is none."""
    els = prefix.elements
    lo = count_upto(prefix, h // 2)
    hi = count_upto(prefix, h)
    gaps = [els[i] - els[i - 1] for i in range(max(lo, 1), hi)]
    return min(gaps) if gaps else None


# -- symbolic facts ----------------------------------------------------------

@dataclass
class Facts:
    proved: set = field(default_factory=set)
    refuted: set = field(default_factory=set)
    reasons: dict = field(default_factory=dict)
    finite: bool = False

    def prove(self, c, why):
        if c not in self.proved:
            self.proved.add(c)
            self.reasons.setdefault(c, why)

    def refute(self, c, why):
        if c not in self.refuted:
            self.refuted.add(c)
            self.reasons.setdefault(c, why)

    def close(self, where):
        changed = True
        while changed:
            changed = False
            for a, b in IMPLICATIONS:
                if a in self.proved and b not in self.proved:
                    self.prove(b, f"{a.value} implies {b.value}")
                    changed = True
                if b in self.refuted and a not in self.refuted:
                    self.refute(a, f"not {b.value} implies not {a.value}")
                    changed = True
        clash = self.proved & self.refuted
        if clash:
            names = ", ".join(sorted(c.value for c in clash))
            raise CertificateError(f"{where}: certificate both entails and refutes {names}")
        return self


def _certificate_facts(expr: SetExpr, facts: Facts):
    cert = expr.certificate
    if cert is None:
        return
    if cert.gaps_diverge is True:
        facts.prove(ST, "declared gap lower bound tends to infinity")
    elif cert.gaps_diverge is False:
        c = cert.recurring_gap
        facts.refute(ST, f"gaps <= {c} recur infinitely often" if c else "gaps do not diverge")
    if cert.reciprocal_gaps_converge is True:
        facts.prove(SST, "declared Σ 1/gap convergent")
    elif cert.reciprocal_gaps_converge is False:
        facts.refute(SST, "declared Σ 1/gap divergent")
    if cert.block_size is not None and cert.block_gaps_diverge:
        facts.prove(VT, f"blocks of size <= {cert.block_size} with block gaps tending to infinity")
        if cert.block_reciprocals_converge:
            facts.prove(VVT, f"blocks of size <= {cert.block_size} with Σ 1/block gap convergent")
    if cert.bounded_blocks_diverge:
        facts.refute(VVT, "every bounded-size decomposition has divergent Σ 1/block gap")
    if cert.density is not None:
        if cert.density == 0:
            facts.prove(T, "declared density 0")
        else:
            facts.refute(T, f"declared density {cert.density}")


def symbolic_facts(expr: SetExpr) -> Facts:
    facts = Facts()
    where = str(expr)
    if isinstance(expr, Explicit):
        facts.finite = True
        for c in ALL_CLASSES:
            facts.prove(c, "finite set")
        return facts
    if isinstance(expr, Union):
        subs = [symbolic_facts(m) for m in expr.members]
        facts.finite = all(s.finite for s in subs)
        if facts.finite:
            for c in ALL_CLASSES:
                facts.prove(c, "finite union of finite sets")
        for c in (VT, VVT, T, UT):
            if all(c in s.proved for s in subs):
                facts.prove(c, f"finite union of {c.value} sets")
        for s in subs:
            for c in s.refuted:
                facts.refute(c, f"contains a set that is not {c.value}")
    elif isinstance(expr, (Intersection, Difference)):
        left = symbolic_facts(expr.left)
        right = symbolic_facts(expr.right) if isinstance(expr, Intersection) else Facts()
        facts.finite = left.finite or right.finite
        if facts.finite:
            for c in ALL_CLASSES:
                facts.prove(c, "subset of a finite set")
        for c in left.proved | right.proved:
            facts.prove(c, f"subset of a {c.value} set")
    _certificate_facts(expr, facts)
    d = exact_density(expr)
    if d is not None and d > 0:
        facts.refute(T, f"density {d}")
    elif d == 0:
        facts.prove(T, "exact density 0")
    return facts.close(where)


# -- empirical diagnostics ---------------------------------------------------

@dataclass(frozen=True)
class ClassifierConfig:
    """Thresholds of the finite-horizon diagnostics (not proofs)."""

    m_grid: Optional[tuple[int, ...]] = None
    super_thin_gap_factor: Fraction = Fraction(1, 2)  # tail min gap must exceed factor*log2(N)
    reciprocal_decay: Fraction = Fraction(3, 4)       # later-half reciprocal sum <= decay * earlier
    ratio_decay: Fraction = Fraction(15, 16)          # density ratio over a 4x span must shrink by this
    growth_steps: int = 3                             # grid steps of steady tail-run growth
    vvt_threshold: Optional[int] = None               # greedy threshold for block gaps


DEFAULT_CONFIG = ClassifierConfig()


def default_m_grid(N: int) -> tuple[int, ...]:
    top = max(1, isqrt(N) // 4)
    grid = [1]
    while grid[-1] * 2 <= top:
        grid.append(grid[-1] * 2)
    return tuple(grid)


def top_horizons(N: int) -> list[int]:
    return sorted({max(1, N // 4), max(1, N // 2), N})


def _quarter_windows(seq):
    """Split a sequence into index windows (K/4, K/2], (K/2, 3K/4], (3K/4, K]."""
    K = len(seq)
    cuts = [K // 4, K // 2, (3 * K) // 4, K]
    return [seq[a:b] for a, b in zip(cuts, cuts[1:])]


def _halving_increments(gaps):
    """Reciprocal sums over gap indices (K/4, K/2] and (K/2, K]."""
    K = len(gaps)
    return reciprocal_sum(gaps[K // 4 : K // 2]), reciprocal_sum(gaps[K // 2 :])


def _decaying(gaps, decay):
    # convergent series: the later half contributes a shrinking share;
    # harmonic-type series contribute about log 2 per halving
    if len(gaps) < 4:
        return True, ()
    prev, last = _halving_increments(gaps)
    return last == 0 or last <= decay * prev, (prev, last)


def empirical_verdict(prefix: Prefix, cls: ThinClass, m_grid: Optional[Sequence[int]] = None,
                      config: ClassifierConfig = DEFAULT_CONFIG, _memo=None) -> Verdict:
    """Diagnostic verdict on a prefix.  A class is reported inconsistent whenever a class
    it implies is, so empirical verdicts never contradict the inclusions."""
    memo = {} if _memo is None else _memo
    if cls in memo:
        return memo[cls]
    own = _diagnostic(prefix, cls, m_grid, config)
    implied = [b for a, b in IMPLICATIONS if a is cls]
    failing = [b.value for b in implied
               if empirical_verdict(prefix, b, m_grid, config, memo).status is Status.INCONSISTENT]
    if failing and own.status is Status.CONSISTENT:
        own.evidence["implied_inconsistent"] = failing
        own = Verdict(cls, Status.INCONSISTENT, own.horizon, own.evidence)
    memo[cls] = own
    return own


def _diagnostic(prefix, cls, m_grid, config) -> Verdict:
    N = prefix.horizon
    hs = top_horizons(N)
    ev: dict = {"horizons": hs}
    ok = True
    if cls is T:
        ratios = [Fraction(count_upto(prefix, h), h) for h in hs]
        ev["density_ratios"] = ratios
        ok = ratios[-1] == 0 or ratios[-1] <= config.ratio_decay * ratios[0]
    elif cls is ST:
        gaps = list(gap_sequence(prefix).gaps) if len(prefix) >= 2 else []
        bound = config.super_thin_gap_factor * (N.bit_length() - 1)
        ev["gap_threshold"] = bound
        if len(gaps) < 4:
            ev["window_min_gaps"] = [min(gaps)] if gaps else []
            ok = not gaps or gaps[-1] > bound
        else:
            mins = [min(w) for w in _quarter_windows(gaps)]
            ev["window_min_gaps"] = mins
            ok = all(b >= a for a, b in zip(mins, mins[1:])) and mins[-1] > bound
        ev["tail_min_gap"] = tail_min_gap(prefix, N)
    elif cls is VT:
        grid = tuple(m_grid or config.m_grid or default_m_grid(N))
        runs = {M: [run_statistic(prefix.restrict(h), M) if count_upto(prefix, h) else 0
                    for h in hs] for M in grid}
        tail = {M: tail_run_statistic(prefix, M, N // 2) for M in grid}
        ev["m_grid"] = list(grid)
        ev["run_statistic"] = {str(M): v for M, v in runs.items()}
        ev["tail_run_statistic"] = {str(M): v for M, v in tail.items()}
        growing_in_n = [M for M, v in runs.items()
                        if len(v) == 3 and v[0] < v[1] < v[2]]
        steps = config.growth_steps
        tail_seq = [tail[M] for M in grid]
        growing_in_m = (len(tail_seq) > steps
                        and all(b > a for a, b in zip(tail_seq[-steps - 1:], tail_seq[-steps:])))
        ev["runs_grow_with_horizon"] = growing_in_n
        ev["blocks_grow_with_threshold"] = growing_in_m
        ok = not growing_in_n and not growing_in_m
    elif cls is SST:
        gaps = list(gap_sequence(prefix).gaps) if len(prefix) >= 2 else []
        ok, incs = _decaying(gaps, config.reciprocal_decay)
        ev["halving_reciprocal_sums"] = list(incs)
        ev["reciprocal_gap_sum"] = reciprocal_sum(gaps)
    elif cls is VVT:
        M = config.vvt_threshold or max(1, N.bit_length() - 1)
        ev["block_threshold"] = M
        gaps = list(greedy_block_decomposition(prefix, M).inter_block_gaps) if len(prefix) else []
        ok, incs = _decaying(gaps, config.reciprocal_decay)
        ev["halving_block_reciprocal_sums"] = list(incs)
        ev["block_reciprocal_sum"] = reciprocal_sum(gaps)
    elif cls is UT:
        top = max(1, N // 8)
        ks = doubling_checkpoints(top)
        H0 = default_burn_in(N)
        if not prefix.elements or max(ks) + H0 > N:
            ev["sup_window_avg"] = []
            ok = True
        else:
            counts = cumulative_counts(prefix)
            sups = [Fraction(window_extremes(counts, k, H0, N - k)[1], k) for k in ks]
            ev.update(k_values=ks, burn_in=H0, sup_window_avg=sups)
            ok = sups[-1] == 0 or sups[-1] <= config.ratio_decay * sups[max(0, len(sups) - 3)]
    else:
        raise UnknownNameError(f"unknown class {cls!r}")
    status = Status.CONSISTENT if ok else Status.INCONSISTENT
    return Verdict(cls, status, N, ev)


# -- classifier --------------------------------------------------------------

def _as_class(c) -> ThinClass:
    return c if isinstance(c, ThinClass) else ThinClass.parse(c)


def classify(expr: SetExpr, cls, horizon: int, m_grid: Optional[Sequence[int]] = None, *,
             use_certificates: bool = True, config: ClassifierConfig = DEFAULT_CONFIG,
             prefix: Optional[Prefix] = None, _memo=None) -> Verdict:
    cls = _as_class(cls)
    if horizon < 1:
        raise HorizonError(f"horizon must be >= 1, got {horizon}")
    if prefix is None:
        prefix = enumerate_upto(expr, horizon)  # validates certificates
    if use_certificates:
        facts = symbolic_facts(expr)
        if cls in facts.proved:
            return Verdict(cls, Status.PROVED, horizon, {"reason": facts.reasons[cls]})
        if cls in facts.refuted:
            return Verdict(cls, Status.REFUTED, horizon, {"reason": facts.reasons[cls]})
    return empirical_verdict(prefix, cls, m_grid, config, _memo)


def check_hierarchy(verdicts: dict) -> None:
    def st(c):
        return verdicts[c].status if c in verdicts else None

    for a, b in IMPLICATIONS:
        if st(a) is Status.PROVED and st(b) in (Status.REFUTED, Status.INCONSISTENT):
            raise HierarchyError(f"{a.value} proved but {b.value} {st(b).value}")
        if st(b) is Status.REFUTED and st(a) is Status.PROVED:
            raise HierarchyError(f"{b.value} refuted but {a.value} proved")
    if st(VT) is Status.PROVED:
        for c in (T, UT):
            if st(c) in (Status.REFUTED, Status.INCONSISTENT):
                raise HierarchyError(f"VeryThin proved but {c.value} {st(c).value}")


def classify_all(expr: SetExpr, horizon: int, m_grid: Optional[Sequence[int]] = None, *,
                 use_certificates: bool = True,
                 config: ClassifierConfig = DEFAULT_CONFIG) -> dict:
    prefix = enumerate_upto(expr, horizon)
    memo: dict = {}
    out = {c: classify(expr, c, horizon, m_grid, use_certificates=use_certificates,
                       config=config, prefix=prefix, _memo=memo)
           for c in ALL_CLASSES}
    if use_certificates:
        check_hierarchy(out)
    return out


def classify_prefix_all(prefix: Prefix, m_grid=None, config: ClassifierConfig = DEFAULT_CONFIG):
    memo: dict = {}
    return {c: empirical_verdict(prefix, c, m_grid, config, memo) for c in ALL_CLASSES}
