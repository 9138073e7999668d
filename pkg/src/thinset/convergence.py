"""Statistical and ideal convergence of real sequences through the thinness of
their ε-exceedance sets {n : |x_n - a| >= ε}.

A sequence converges to ``a`` along an ideal when every exceedance set belongs to
the ideal; statistical convergence is the ideal of thin sets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union as TUnion

from .constructions import certify
from .errors import HorizonError, ParameterError, UnknownNameError
from .setmodel import EMPTY, OMEGA, Difference, Prefix, SetExpr, build, enumerate_upto, member
from .thinness import ThinClass, Verdict, classify_all, classify_prefix_all

MODES = {
    "statistical": ThinClass.THIN,
    "super-thin": ThinClass.SUPER_THIN,
    "very-thin": ThinClass.VERY_THIN,
    "very-very-thin": ThinClass.VERY_VERY_THIN,
}


@dataclass(frozen=True)
class IndicatorSequence:
    """x_n = value_on for n in the exception set, value_off otherwise."""

    exceptions: SetExpr
    value_on: Fraction
    value_off: Fraction
    name: str = ""

    def __str__(self):
        return self.name or f"indicator({self.exceptions},{self.value_on},{self.value_off})"


@dataclass(frozen=True)
class TableSequence:
    values: tuple[Fraction, ...]
    name: str = "table"

    def __str__(self):
        return self.name


SequenceDef = TUnion[IndicatorSequence, TableSequence]


def paper_x() -> IndicatorSequence:
    """-1 on the stretches 2^k, ..., 2^k + k - 1 and 1 elsewhere."""
    return IndicatorSequence(build("pow2stretch"), Fraction(-1), Fraction(1), "paper_x")


def paper_y() -> IndicatorSequence:
    """-1 at the powers of two and 1 elsewhere."""
    return IndicatorSequence(build("pow", (2,)), Fraction(-1), Fraction(1), "paper_y")


SEQUENCES = {"paper_x": paper_x, "paper_y": paper_y}


def sequence(name: str) -> IndicatorSequence:
    try:
        return SEQUENCES[name]()
    except KeyError:
        raise UnknownNameError(f"unknown sequence {name!r}; known: {', '.join(SEQUENCES)}") from None


def eval_sequence(seq: SequenceDef, N: int) -> list[Fraction]:
    if N < 1:
        raise HorizonError(f"N must be >= 1, got {N}")
    if isinstance(seq, TableSequence):
        if N > len(seq.values):
            raise HorizonError(f"table has {len(seq.values)} values, asked for {N}")
        return [Fraction(v) for v in seq.values[:N]]
    hits = set(enumerate_upto(seq.exceptions, N).elements)
    return [seq.value_on if n in hits else seq.value_off for n in range(1, N + 1)]


def exceedance_expr(seq: IndicatorSequence, a, eps) -> SetExpr:
    """The exceedance set of a two-valued sequence as a set expression."""
    a, eps = Fraction(a), Fraction(eps)
    on = abs(seq.value_on - a) >= eps
    off = abs(seq.value_off - a) >= eps
    if on and off:
        return OMEGA
    if on:
        return certify(seq.exceptions)
    if off:
        return Difference(OMEGA, seq.exceptions)
    return EMPTY


def exceedance_set(seq: SequenceDef, a, eps, N: int) -> Prefix:
    a, eps = Fraction(a), Fraction(eps)
    if eps <= 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    if isinstance(seq, IndicatorSequence):
        return enumerate_upto(exceedance_expr(seq, a, eps), N)
    xs = eval_sequence(seq, N)
    return Prefix(N, tuple(n for n, x in enumerate(xs, start=1) if abs(x - a) >= eps))


@dataclass(frozen=True)
class ExceedanceReport:
    limit: Fraction
    epsilon: Fraction
    horizon: int
    exceedance: Prefix
    verdicts: dict
    modes: dict = field(default_factory=dict)
    symbolic: bool = False

    def convergent(self, mode: str) -> bool:
        return self.modes[mode]["convergent"]


def _mode_name(mode: str) -> str:
    key = mode.strip().lower().removesuffix("-ideal")
    if key not in MODES:
        raise UnknownNameError(f"unknown mode {mode!r}; known: {', '.join(MODES)}")
    return key


def convergence_report(seq: SequenceDef, a, eps_list: Sequence, N: int,
                       modes: Sequence[str] = tuple(MODES), m_grid=None) -> list[ExceedanceReport]:
    """One report per ε.  Mode ``m`` is convergent-so-far when the exceedance set's
    verdict for the matching class is proved or consistent."""
    a = Fraction(a)
    wanted = [_mode_name(m) for m in modes]
    reports = []
    for eps in eps_list:
        eps = Fraction(eps)
        if eps <= 0:
            raise ParameterError(f"eps must be positive, got {eps}")
        if isinstance(seq, IndicatorSequence):
            expr = exceedance_expr(seq, a, eps)
            prefix = enumerate_upto(expr, N)
            verdicts = classify_all(expr, N, m_grid)
            symbolic = True
        else:
            prefix = exceedance_set(seq, a, eps, N)
            verdicts = classify_prefix_all(prefix, m_grid)
            symbolic = False
        conclusions = {}
        for m in wanted:
            v: Verdict = verdicts[MODES[m]]
            conclusions[m] = {"convergent": v.status.positive, "class": v.cls.value,
                              "status": v.status.value}
        reports.append(ExceedanceReport(a, eps, N, prefix, verdicts, conclusions, symbolic))
    return reports


def exceedance_matches(seq: IndicatorSequence, a, eps, n: int) -> bool:
    """Pointwise check of the exceedance definition, independent of enumeration."""
    x = seq.value_on if member(seq.exceptions, n) else seq.value_off
    return abs(x - Fraction(a)) >= Fraction(eps)
