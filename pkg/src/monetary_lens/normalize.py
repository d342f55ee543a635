"""Money-supply normalization of GDP and debt, and aggregate composition.

A nominal series is divided by the growth of the money stock since a base
year::

    normalized_t = raw_t / (1 + (m_t - m_base) / m_base) = raw_t * m_base / m_t

so that, had the money stock been constant, the normalized series is the raw
one.  Debt rows apply the same idea with a single start-to-end multiplier.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import (
    CompositionWarning,
    DegenerateBaseError,
    DomainError,
    MissingPeriodError,
    UnknownSeriesError,
)
from .series import TimeSeries, align, align_all, splice


@dataclass(frozen=True)
class AggregateSpec:
    """A monetary aggregate as a signed sum of component series.

    ``splice_plan`` maps a term label to the segments it is built from, each
    ``(segment_label, first_year, last_year)``; terms without a plan are
    looked up directly in the universe.
    """

    name: str
    terms: tuple[tuple[str, int], ...]
    splice_plan: Mapping[str, Sequence[tuple[str, int, int]]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        terms = tuple((str(label), int(sign)) for label, sign in self.terms)
        for label, sign in terms:
            if sign not in (1, -1):
                raise DomainError(f"{self.name}: sign for {label!r} must be +1 or -1, got {sign}")
        if not any(sign == 1 for _, sign in terms):
            raise DomainError(f"{self.name}: aggregate needs at least one positive term")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "splice_plan", {k: tuple(v) for k, v in dict(self.splice_plan).items()})

    @classmethod
    def parse(cls, expression: str, name: str | None = None) -> AggregateSpec:
        """Parse ``"M2 - RMF"`` or ``"M1+M2"`` into terms.

        Labels may not themselves contain ``+``; a ``-`` only separates terms
        when the whole expression is not an existing label, which the caller
        decides (see :func:`resolve_money`).
        """
        text = expression.strip()
        if not text:
            raise DomainError("empty aggregate expression")
        tokens = re.split(r"\s*([+-])\s*", text)
        if tokens[0] == "":
            tokens = tokens[1:]
        else:
            tokens = ["+"] + tokens
        terms = []
        for sign, label in zip(tokens[0::2], tokens[1::2]):
            if not label:
                raise DomainError(f"malformed aggregate expression {expression!r}")
            terms.append((label, 1 if sign == "+" else -1))
        if len(tokens) % 2:
            raise DomainError(f"malformed aggregate expression {expression!r}")
        return cls(name=name or text, terms=tuple(terms))


def _resolve_term(label: str, spec: AggregateSpec, universe: Mapping[str, TimeSeries]) -> TimeSeries:
    plan = spec.splice_plan.get(label)
    if plan:
        segments = []
        for seg_label, start, end in plan:
            if seg_label not in universe:
                raise UnknownSeriesError(f"{spec.name}: splice segment {seg_label!r} not found")
            segments.append((universe[seg_label], start, end))
        return splice(segments, label=label)
    if label not in universe:
        raise UnknownSeriesError(f"{spec.name}: no series labelled {label!r}")
    return universe[label]


def compose_aggregate(spec: AggregateSpec, universe: Mapping[str, TimeSeries]) -> TimeSeries:
    """Evaluate ``spec`` over the common periods of its terms.

    A negative result in any period is reported as a :class:`CompositionWarning`
    and kept: it usually means a subtracted component exceeds its base.
    """
    parts = [_resolve_term(label, spec, universe) for label, _ in spec.terms]
    if len(parts) == 1 and spec.terms[0][1] == 1:
        return parts[0]
    aligned = align_all(parts)
    years = aligned[0].years
    values = []
    for i in range(len(years)):
        total = 0.0
        for s, (_, sign) in zip(aligned, spec.terms):
            total += sign * s.values[i]
        values.append(total)
    negative = [y for y, v in zip(years, values) if v < 0]
    if negative:
        warnings.warn(
            f"aggregate {spec.name!r} is negative in {negative}",
            CompositionWarning,
            stacklevel=2,
        )
    return TimeSeries(
        label=spec.name,
        currency=aligned[0].currency,
        unit_scale=aligned[0].unit_scale,
        years=years,
        values=tuple(values),
    )


@dataclass(frozen=True)
class NormalizedSeries:
    base: int
    raw: TimeSeries
    money: TimeSeries
    values: TimeSeries

    def rows(self) -> list[tuple[int, float, float, float]]:
        return list(zip(self.values.years, self.raw.values, self.money.values, self.values.values))


def normalize(raw: TimeSeries, money: TimeSeries, base: int) -> NormalizedSeries:
    raw_a, money_a = align(raw, money)
    if base not in raw_a or base not in money_a:
        raise MissingPeriodError(
            f"base year {base} not in the common periods of {raw.label!r} and {money.label!r}"
        )
    m_base = money_a.value_at(base)
    if m_base == 0:
        raise DegenerateBaseError(f"{money.label!r} is zero in base year {base}")
    values = []
    for (year, r), m in zip(raw_a, money_a.values):
        if m == 0:
            raise DegenerateBaseError(f"{money.label!r} is zero in {year}")
        # m_base / m_t is exactly 1.0 at the base, so the base value is raw's
        values.append(r * (m_base / m))
    label = f"{raw.label} normalized by {money.label} ({base}=base)"
    return NormalizedSeries(base, raw_a, money_a, raw_a.replace_points(list(zip(raw_a.years, values)), label=label))


def rebase(n: NormalizedSeries, new_base: int) -> NormalizedSeries:
    if new_base not in n.values:
        raise MissingPeriodError(f"rebase year {new_base} not in normalized series")
    return normalize(n.raw, n.money, new_base)


@dataclass(frozen=True)
class DebtRow:
    country: str
    debt_start: float
    debt_end: float
    multiplier: float
    normalized_end: float
    pct_change: float
    alt_multiplier: float | None = None
    alt_normalized_end: float | None = None
    alt_pct_change: float | None = None

    @property
    def pct_rounded(self) -> int:
        return round(self.pct_change * 100)

    @property
    def alt_pct_rounded(self) -> int | None:
        return None if self.alt_pct_change is None else round(self.alt_pct_change * 100)


def normalize_debt_row(
    country: str,
    debt_start: float,
    debt_end: float,
    multiplier: float,
    alt_multiplier: float | None = None,
) -> DebtRow:
    """Divide end-of-period debt by the money multiplier over the same span.

    ``alt_multiplier`` carries a second, country-level multiplier (for a
    currency-union member, its own bank-deposit expansion).
    """
    if not multiplier > 0:
        raise DomainError(f"{country}: money multiplier must be positive, got {multiplier!r}")
    if not debt_start > 0:
        raise DomainError(f"{country}: starting debt must be positive, got {debt_start!r}")
    normalized = debt_end / multiplier
    alt_normalized = alt_pct = None
    if alt_multiplier is not None:
        if not alt_multiplier > 0:
            raise DomainError(f"{country}: alternative multiplier must be positive, got {alt_multiplier!r}")
        alt_normalized = debt_end / alt_multiplier
        alt_pct = alt_normalized / debt_start - 1
    return DebtRow(
        country=country,
        debt_start=debt_start,
        debt_end=debt_end,
        multiplier=multiplier,
        normalized_end=normalized,
        pct_change=normalized / debt_start - 1,
        alt_multiplier=alt_multiplier,
        alt_normalized_end=alt_normalized,
        alt_pct_change=alt_pct,
    )
