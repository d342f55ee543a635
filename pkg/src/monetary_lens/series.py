"""Annual time series: alignment, splicing and growth multipliers.

A :class:`TimeSeries` is an immutable run of ``(year, value)`` observations
with a currency code and a unit scale (``1e9`` means the values are in
billions).  Money-stock observations are read as year-start stocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    AlignmentError,
    CurrencyError,
    DegenerateBaseError,
    DomainError,
    MissingPeriodError,
    SpliceError,
)

Period = int


@dataclass(frozen=True)
class TimeSeries:
    label: str
    currency: str
    unit_scale: float
    years: tuple[int, ...]
    values: tuple[float, ...]
    _index: dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        years = tuple(int(y) for y in self.years)
        values = tuple(float(v) for v in self.values)
        if len(years) != len(values):
            raise DomainError(f"{self.label}: {len(years)} years but {len(values)} values")
        if not (math.isfinite(self.unit_scale) and self.unit_scale > 0):
            raise DomainError(f"{self.label}: unit_scale must be positive, got {self.unit_scale!r}")
        for prev, cur in zip(years, years[1:]):
            if cur <= prev:
                raise DomainError(f"{self.label}: years not strictly increasing at {prev} -> {cur}")
        for y, v in zip(years, values):
            if not math.isfinite(v):
                raise DomainError(f"{self.label}: non-finite value {v!r} in {y}")
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "unit_scale", float(self.unit_scale))
        object.__setattr__(self, "_index", {y: i for i, y in enumerate(years)})

    @classmethod
    def from_points(
        cls,
        points: Iterable[tuple[int, float]] | dict[int, float],
        label: str = "",
        currency: str = "XXX",
        unit_scale: float = 1.0,
    ) -> TimeSeries:
        items = list(points.items()) if isinstance(points, dict) else list(points)
        return cls(
            label=label,
            currency=currency,
            unit_scale=unit_scale,
            years=tuple(y for y, _ in items),
            values=tuple(v for _, v in items),
        )

    @property
    def points(self) -> list[tuple[int, float]]:
        return list(zip(self.years, self.values))

    def __len__(self) -> int:
        return len(self.years)

    def __iter__(self) -> Iterator[tuple[int, float]]:
        return iter(zip(self.years, self.values))

    def __contains__(self, year: object) -> bool:
        return year in self._index

    def __getitem__(self, year: int) -> float:
        return self.value_at(year)

    def value_at(self, year: int) -> float:
        try:
            return self.values[self._index[year]]
        except KeyError:
            raise MissingPeriodError(f"{self.label or 'series'} has no observation for {year}") from None

    def to_dict(self) -> dict[int, float]:
        return dict(zip(self.years, self.values))

    def window(self, start: int, end: int) -> TimeSeries:
        """Observations with ``start <= year <= end``; metadata kept."""
        keep = [(y, v) for y, v in self if start <= y <= end]
        return self.replace_points(keep)

    def replace_points(self, points: Iterable[tuple[int, float]], label: str | None = None) -> TimeSeries:
        points = list(points)
        return TimeSeries(
            label=self.label if label is None else label,
            currency=self.currency,
            unit_scale=self.unit_scale,
            years=tuple(y for y, _ in points),
            values=tuple(v for _, v in points),
        )

    def rescaled(self, unit_scale: float) -> TimeSeries:
        """Re-express values in ``unit_scale`` units (same money amounts)."""
        if unit_scale == self.unit_scale:
            return self
        factor = self.unit_scale / unit_scale
        return TimeSeries(
            label=self.label,
            currency=self.currency,
            unit_scale=unit_scale,
            years=self.years,
            values=tuple(v * factor for v in self.values),
        )

    def relabel(self, label: str) -> TimeSeries:
        return self.replace_points(self.points, label=label)


def _require_nonempty(*series: TimeSeries) -> None:
    for s in series:
        if not s.years:
            raise DomainError(f"series {s.label!r} is empty")


def align(a: TimeSeries, b: TimeSeries) -> tuple[TimeSeries, TimeSeries]:
    """Restrict ``a`` and ``b`` to their common years on a common unit scale.

    When the unit scales differ both series are expressed in the finer unit
    (billions vs millions -> millions), multiplying the coarser one's values.
    """
    if a.currency != b.currency:
        raise CurrencyError(f"cannot align {a.label!r} ({a.currency}) with {b.label!r} ({b.currency})")
    common = sorted(set(a.years) & set(b.years))
    if not common:
        raise AlignmentError(f"{a.label!r} and {b.label!r} share no periods")
    scale = min(a.unit_scale, b.unit_scale)
    out = []
    for s in (a, b):
        if len(common) != len(s):
            s = s.replace_points([(y, s.value_at(y)) for y in common])
        out.append(s.rescaled(scale))
    return out[0], out[1]


def align_all(series: Sequence[TimeSeries]) -> list[TimeSeries]:
    """Pairwise :func:`align` generalised to any number of series."""
    if not series:
        return []
    currencies = {s.currency for s in series}
    if len(currencies) > 1:
        raise CurrencyError(f"mixed currencies: {sorted(currencies)}")
    common = set(series[0].years)
    for s in series[1:]:
        common &= set(s.years)
    if not common:
        raise AlignmentError("series share no periods: " + ", ".join(repr(s.label) for s in series))
    years = sorted(common)
    scale = min(s.unit_scale for s in series)
    return [s.replace_points([(y, s.value_at(y)) for y in years]).rescaled(scale) for s in series]


def splice(segments: Sequence[tuple[TimeSeries, int, int]], label: str | None = None) -> TimeSeries:
    """Concatenate successive series revisions, each owning a closed year window.

    Windows must tile a contiguous range with no gaps or overlaps, and every
    owned year must be present in its segment.
    """
    if not segments:
        raise SpliceError("no segments to splice")
    ordered = sorted(segments, key=lambda seg: seg[1])
    for s, start, end in ordered:
        if start > end:
            raise SpliceError(f"segment {s.label!r}: window {start}-{end} is reversed")
    for (s0, _, end0), (s1, start1, _) in zip(ordered, ordered[1:]):
        if start1 <= end0:
            raise SpliceError(f"windows of {s0.label!r} and {s1.label!r} overlap at {start1}")
        if start1 > end0 + 1:
            raise SpliceError(f"gap between {s0.label!r} and {s1.label!r}: {end0 + 1}-{start1 - 1}")
    currencies = {s.currency for s, _, _ in ordered}
    if len(currencies) > 1:
        raise CurrencyError(f"cannot splice mixed currencies {sorted(currencies)}")

    if len(ordered) == 1 and label is None:
        s, start, end = ordered[0]
        if s.years and s.years[0] >= start and s.years[-1] <= end:
            return s

    scale = min(s.unit_scale for s, _, _ in ordered)
    points: list[tuple[int, float]] = []
    for s, start, end in ordered:
        s = s.rescaled(scale)
        for year in range(start, end + 1):
            if year not in s:
                raise SpliceError(f"segment {s.label!r} has no value for owned year {year}")
            points.append((year, s.value_at(year)))

    provenance = "; ".join(f"{s.label} {start}-{end}" for s, start, end in ordered)
    name = label if label is not None else ordered[0][0].label
    first = ordered[0][0]
    return TimeSeries(
        label=f"{name} [spliced: {provenance}]",
        currency=first.currency,
        unit_scale=scale,
        years=tuple(y for y, _ in points),
        values=tuple(v for _, v in points),
    )


def growth_multiplier(s: TimeSeries, start: int, end: int) -> float:
    """Ratio ``s[end] / s[start]``, e.g. 18.0 for an eighteen-fold expansion."""
    base = s.value_at(start)
    later = s.value_at(end)
    if base == 0:
        raise DegenerateBaseError(f"{s.label!r} is zero in {start}; growth undefined")
    return later / base
