"""File-based loading of money, GDP and debt series.

Data files are UTF-8 CSV with the exact header ``year,value``; ``#`` lines
are comments.  A comment of the form ``# currency: USD`` (likewise
``label`` and ``unit_scale``) carries series metadata so a written series
reads back unchanged.

The manifest is an INI file with one section per dataset::

    [russia.M2]
    country = russia
    label = M2
    role = money
    file = russia/m2.csv
    currency = RUB
    unit_scale = 1e9
    convention_note = year-start stock
    synthetic = true

A dataset may instead be one revision of a longer series: ``splice_into``
names the series it belongs to and ``window = 1985-1997`` the years it owns.
"""

from __future__ import annotations

import configparser
import csv
import io
import math
import os
import re
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DataIOError, DomainError, ManifestError, ParseError, SpliceError, UnknownSeriesError
from .series import TimeSeries, splice

ROLES = ("money", "gdp", "debt")
REQUIRED_KEYS = ("country", "label", "role", "file", "currency", "unit_scale")
OPTIONAL_KEYS = ("convention_note", "synthetic", "splice_into", "window")
FIXTURES_ENV = "MONETARY_LENS_FIXTURES"

_YEAR = re.compile(r"\d{4}", re.ASCII)
_DECIMAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)", re.ASCII)
_META = re.compile(r"#\s*(label|currency|unit_scale)\s*:\s*(.*?)\s*$")
_WINDOW = re.compile(r"(\d{4})\s*-\s*(\d{4})", re.ASCII)


def fixtures_dir() -> Path:
    override = os.environ.get(FIXTURES_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "fixtures"


def default_manifest() -> Path:
    return fixtures_dir() / "manifest.ini"


def format_decimal(value: float) -> str:
    """Shortest positional decimal literal that reads back as the same double."""
    if not math.isfinite(value):
        raise DomainError(f"cannot write non-finite value {value!r}")
    return format(Decimal(repr(float(value))), "f")


def parse_decimal(text: str, path: str | None = None, line: int | None = None) -> float:
    if not _DECIMAL.fullmatch(text):
        raise ParseError(f"not a decimal literal: {text!r}", path, line)
    return float(text)


def _lines(text: str) -> list[str]:
    # only \n (or \r\n) ends a line; str.splitlines also breaks on U+2028 etc.
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line[:-1] if line.endswith("\r") else line for line in lines]


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DataIOError(f"no such file: {path}") from None


def read_table(path: str | Path, header: Sequence[str] | None = None) -> tuple[list[str], list[tuple[int, list[str]]]]:
    """Strictly read a comma-separated table.

    Returns the header and ``(line_number, fields)`` rows.  Comment lines are
    skipped; every row must have as many fields as the header.
    """
    path = Path(path)
    text = _read_text(path)
    found_header: list[str] | None = None
    rows: list[tuple[int, list[str]]] = []
    for lineno, line in enumerate(_lines(text), start=1):
        if line.startswith("#"):
            continue
        fields = next(csv.reader([line])) if line else []
        if found_header is None:
            found_header = fields
            if header is not None and fields != list(header):
                raise ParseError(f"header must be exactly {','.join(header)!r}, got {line!r}", str(path), lineno)
            continue
        if len(fields) != len(found_header):
            raise ParseError(
                f"expected {len(found_header)} fields, got {len(fields)}: {line!r}", str(path), lineno
            )
        rows.append((lineno, fields))
    if found_header is None:
        raise ParseError("missing header line", str(path))
    return found_header, rows


def read_series(
    path: str | Path,
    label: str | None = None,
    currency: str | None = None,
    unit_scale: float | None = None,
) -> TimeSeries:
    """Read a ``year,value`` file.

    Explicit metadata arguments must agree with any metadata comments in the
    file; either source may supply what the other lacks.
    """
    path = Path(path)
    text = _read_text(path)
    meta: dict[str, str] = {}
    for line in _lines(text):
        m = _META.match(line)
        if m:
            meta[m.group(1)] = m.group(2)

    _, rows = read_table(path, header=("year", "value"))
    years: list[int] = []
    values: list[float] = []
    for lineno, (year_text, value_text) in rows:
        if not _YEAR.fullmatch(year_text):
            raise ParseError(f"year must be a 4-digit integer, got {year_text!r}", str(path), lineno)
        year = int(year_text)
        if years and year == years[-1]:
            raise ParseError(f"duplicate year {year}", str(path), lineno)
        if years and year < years[-1]:
            raise ParseError(f"year {year} follows {years[-1]}; years must increase", str(path), lineno)
        years.append(year)
        values.append(parse_decimal(value_text, str(path), lineno))

    def pick(key: str, given: object) -> str | None:
        in_file = meta.get(key)
        if given is None:
            return in_file
        if in_file is not None and key != "label":
            same = float(in_file) == float(given) if key == "unit_scale" else in_file == given  # type: ignore[arg-type]
            if not same:
                raise ParseError(f"{key} {given!r} conflicts with file metadata {in_file!r}", str(path))
        return str(given)

    scale_text = pick("unit_scale", unit_scale)
    try:
        scale = float(scale_text) if scale_text is not None else 1.0
        return TimeSeries(
            label=pick("label", label) or path.stem,
            currency=pick("currency", currency) or "XXX",
            unit_scale=scale,
            years=tuple(years),
            values=tuple(values),
        )
    except (DomainError, ValueError) as exc:
        raise ParseError(str(exc), str(path)) from exc


def series_to_csv(series: TimeSeries) -> str:
    out = io.StringIO()
    out.write(f"# label: {series.label}\n")
    out.write(f"# currency: {series.currency}\n")
    out.write(f"# unit_scale: {format_decimal(series.unit_scale)}\n")
    out.write("year,value\n")
    for year, value in series:
        out.write(f"{year:04d},{format_decimal(value)}\n")
    return out.getvalue()


def write_series(series: TimeSeries, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(series_to_csv(series))
    return path


@dataclass(frozen=True)
class DatasetEntry:
    country: str
    label: str
    role: str
    file: str
    currency: str
    unit_scale: float
    convention_note: str = ""
    synthetic: bool = False
    splice_into: str | None = None
    window: tuple[int, int] | None = None
    base_dir: Path = field(default=Path("."), compare=False)

    @property
    def path(self) -> Path:
        return self.base_dir / self.file


def load_series(entry: DatasetEntry) -> TimeSeries:
    return read_series(entry.path, label=entry.label, currency=entry.currency, unit_scale=entry.unit_scale)


@dataclass(frozen=True)
class Manifest:
    datasets: tuple[DatasetEntry, ...] = ()
    path: Path | None = None

    def countries(self) -> list[str]:
        seen: dict[str, None] = {}
        for d in self.datasets:
            seen.setdefault(d.country, None)
        return list(seen)

    def entries_for(self, country: str) -> list[DatasetEntry]:
        key = country.lower()
        return [d for d in self.datasets if d.country.lower() == key]

    def entry(self, country: str, label: str) -> DatasetEntry:
        for d in self.entries_for(country):
            if d.label == label:
                return d
        raise UnknownSeriesError(f"no dataset ({country}, {label}) in manifest")

    def load_country(self, country: str) -> dict[str, TimeSeries]:
        """Every series for ``country`` keyed by label, with revisions spliced."""
        entries = self.entries_for(country)
        if not entries:
            raise UnknownSeriesError(f"no datasets for country {country!r} in manifest")
        universe: dict[str, TimeSeries] = {}
        pieces: dict[str, list[tuple[TimeSeries, int, int]]] = {}
        for d in entries:
            s = load_series(d)
            universe[d.label] = s
            if d.splice_into:
                assert d.window is not None
                pieces.setdefault(d.splice_into, []).append((s, d.window[0], d.window[1]))
        for target, segments in pieces.items():
            if target in universe:
                raise ManifestError(f"{country}: spliced series {target!r} clashes with a dataset label")
            try:
                universe[target] = splice(segments, label=target)
            except SpliceError as exc:
                raise ManifestError(f"{country}: cannot splice {target!r}: {exc}") from exc
        return universe


def _parse_bool(text: str, where: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ManifestError(f"{where}: not a boolean: {text!r}")


def load_manifest(path: str | Path) -> Manifest:
    path = Path(path)
    text = _read_text(path)
    parser = configparser.ConfigParser(interpolation=None, strict=True)
    parser.optionxform = str  # type: ignore[assignment,method-assign]
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise ManifestError(f"{path}: {exc}") from exc

    base_dir = path.parent
    entries: list[DatasetEntry] = []
    seen: set[tuple[str, str]] = set()
    for section in parser.sections():
        raw = dict(parser[section])
        where = f"{path} [{section}]"
        missing = [k for k in REQUIRED_KEYS if k not in raw]
        if missing:
            raise ManifestError(f"{where}: missing keys {missing}")
        unknown = sorted(set(raw) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS))
        if unknown:
            raise ManifestError(f"{where}: unknown keys {unknown}")
        if raw["role"] not in ROLES:
            raise ManifestError(f"{where}: role must be one of {ROLES}, got {raw['role']!r}")
        try:
            scale = float(raw["unit_scale"])
        except ValueError:
            raise ManifestError(f"{where}: unit_scale is not a number: {raw['unit_scale']!r}") from None
        if not (math.isfinite(scale) and scale > 0):
            raise ManifestError(f"{where}: unit_scale must be positive")
        window = None
        if "window" in raw:
            m = _WINDOW.fullmatch(raw["window"].strip())
            if not m:
                raise ManifestError(f"{where}: window must look like 1985-1997, got {raw['window']!r}")
            window = (int(m.group(1)), int(m.group(2)))
        if ("window" in raw) != ("splice_into" in raw):
            raise ManifestError(f"{where}: splice_into and window go together")
        key = (raw["country"].lower(), raw["label"])
        if key in seen:
            raise ManifestError(f"{where}: duplicate dataset ({raw['country']}, {raw['label']})")
        seen.add(key)
        entry = DatasetEntry(
            country=raw["country"],
            label=raw["label"],
            role=raw["role"],
            file=raw["file"],
            currency=raw["currency"],
            unit_scale=scale,
            convention_note=raw.get("convention_note", ""),
            synthetic=_parse_bool(raw.get("synthetic", "false"), where),
            splice_into=raw.get("splice_into"),
            window=window,
            base_dir=base_dir,
        )
        if not entry.path.is_file():
            raise DataIOError(f"{where}: data file not found: {entry.path}")
        entries.append(entry)
    return Manifest(tuple(entries), path)


def write_manifest(entries: Iterable[DatasetEntry], path: str | Path) -> Path:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # type: ignore[assignment,method-assign]
    for d in entries:
        section = f"{d.country}.{d.label}"
        values = {
            "country": d.country,
            "label": d.label,
            "role": d.role,
            "file": d.file,
            "currency": d.currency,
            "unit_scale": format_decimal(d.unit_scale),
        }
        if d.convention_note:
            values["convention_note"] = d.convention_note
        if d.synthetic:
            values["synthetic"] = "true"
        if d.splice_into:
            assert d.window is not None
            values["splice_into"] = d.splice_into
            values["window"] = f"{d.window[0]}-{d.window[1]}"
        parser[section] = values
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        parser.write(fh)
    return path
