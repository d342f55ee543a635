"""Regenerate the bundled synthetic fixture datasets.

Each series is log-linear between hand-picked anchor years.  The anchors
pin the decade growth multipliers reported for each country's money stock;
GDP anchors are loosely plausible magnitudes.  None of this is official
data, and every manifest entry says so.

    python tools/make_fixtures.py [output_dir]
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

from monetary_lens.ingest import DatasetEntry, write_manifest, write_series
from monetary_lens.series import TimeSeries

NOTE = "year-start stock; synthetic log-linear curve between anchor years"
GDP_NOTE = "annual nominal GDP, national currency; synthetic log-linear curve"


def curve(anchors: dict[int, float], first: int, last: int) -> list[tuple[int, float]]:
    years = sorted(anchors)
    assert years[0] <= first and years[-1] >= last, anchors
    out = []
    for year in range(first, last + 1):
        if year in anchors:
            v = anchors[year]
        else:
            lo = max(y for y in years if y < year)
            hi = min(y for y in years if y > year)
            w = (year - lo) / (hi - lo)
            v = math.exp((1 - w) * math.log(anchors[lo]) + w * math.log(anchors[hi]))
        out.append((year, round(v, 1)))
    return out


# country -> (currency, first, last, {label: (role, unit_scale, anchors)})
COUNTRIES: dict[str, tuple[str, int, int, dict[str, tuple[str, float, dict[int, float]]]]] = {
    "usa": ("USD", 1980, 2010, {
        # M2 = M2 excluding retail money funds + RMF, so the composed measure hits the anchors
        "M2exRMF": ("money", 1e9, {1980: 1000, 1990: 2300, 2000: 4600, 2010: 9200}),
        "RMF": ("money", 1e9, {1980: 60, 1990: 350, 2000: 900, 2008: 1050, 2010: 700}),
        "M1": ("money", 1e9, {1980: 400, 1990: 800, 2000: 1100, 2010: 1800}),
        "FL793130005": ("money", 1e9, {1980: 1300, 1989: 3100, 1992: 3000, 2000: 5200, 2010: 10000}),
        "GDP": ("gdp", 1e9, {1980: 2800, 1990: 5800, 2000: 10000, 2010: 14500}),
    }),
    "eurozone": ("EUR", 1999, 2010, {
        "M1": ("money", 1e9, {1999: 1800, 2010: 4700}),
        "M2": ("money", 1e9, {1999: 4200, 2000: 4400, 2010: 8624}),
    }),
    "uk": ("GBP", 1988, 2010, {
        "M1": ("money", 1e9, {1988: 150, 2000: 450, 2010: 1000}),
        "M2": ("money", 1e9, {1988: 300, 1990: 350, 2000: 700, 2010: 1550}),
        "M3": ("money", 1e9, {1988: 380, 1990: 450, 2000: 855, 2010: 2223}),
        "GDP": ("gdp", 1e9, {1988: 470, 1990: 560, 2000: 975, 2010: 1460}),
    }),
    "switzerland": ("CHF", 1985, 2010, {
        "M1": ("money", 1e9, {1985: 80, 2000: 170, 2010: 420}),
        "M2": ("money", 1e9, {1985: 200, 2000: 300, 2010: 560}),
        "M3": ("money", 1e9, {1985: 280, 1999: 470, 2000: 455, 2010: 773.5}),
        "GDP": ("gdp", 1e9, {1985: 250, 2000: 415, 2010: 550}),
    }),
    "india": ("INR", 1985, 2010, {
        "M1": ("money", 1e9, {1985: 500, 2010: 20000}),
        "M2": ("money", 1e9, {1985: 700, 2010: 40000}),
        "M3": ("money", 1e9, {1985: 1500, 1995: 7500, 2005: 37500, 2015: 187500}),
        "GDP": ("gdp", 1e9, {1985: 2900, 2010: 78000}),
    }),
    "china": ("CNY", 2000, 2010, {
        "M0": ("money", 1e9, {2000: 1470, 2010: 4410}),
        "M1": ("money", 1e9, {2000: 5300, 2010: 27030}),
        "M2": ("money", 1e9, {2000: 13460, 2010: 69319}),
        "GDP": ("gdp", 1e9, {2000: 9920, 2010: 40150}),
    }),
    "iceland": ("ISK", 1990, 2010, {
        "M1": ("money", 1e9, {1990: 45, 2000: 90, 2008: 700, 2010: 600}),
        "M2": ("money", 1e9, {1990: 90, 2000: 200, 2008: 1900, 2010: 1500}),
        "M3": ("money", 1e9, {1990: 180, 2000: 414, 2007: 3600, 2008: 4600, 2010: 4140}),
        "GDP": ("gdp", 1e9, {1990: 360, 2000: 680, 2008: 1480, 2010: 1540}),
    }),
    "new_zealand": ("NZD", 1988, 2010, {
        "M1": ("money", 1e9, {1988: 8, 2010: 40}),
        "M3": ("money", 1e9, {1988: 40, 1998: 80, 2008: 160, 2010: 175}),
        "GDP": ("gdp", 1e9, {1988: 60, 2010: 190}),
    }),
    "russia": ("RUB", 1997, 2010, {
        "M0": ("money", 1e9, {1997: 100, 2000: 270, 2010: 5000}),
        "M2": ("money", 1e9, {1997: 290, 2000: 1150, 2010: 20700}),
        "GDP": ("gdp", 1e9, {1997: 2500, 2000: 7300, 2010: 46300}),
    }),
}

EURO_GDP = {2002: 7250, 2008: 9250, 2009: 8950, 2010: 9200}

# Japan: money in units of 100 million yen, published as three successive
# series per aggregate.  Each file covers its listed period; the splice gives
# the shared boundary year to the later series, and the earlier file's value
# for that year is a slightly different (revised) figure.
JAPAN_SEGMENTS = {
    "M1": [("MA'MAMS1AN01", 1985, 1998), ("MA'MAMS3AN01", 1998, 2003), ("MA'MAMS5ANM1", 2003, 2010)],
    "M2": [("MA'MAMS1ANM2C", 1985, 1998), ("MA'MAMS3ANM2C", 1998, 2003), ("MA'MAMS5ANM2", 2003, 2010)],
}
JAPAN_ANCHORS = {
    "M1": {1985: 900000, 1990: 1150000, 2000: 2200000, 2010: 3300000},
    "M2": {1985: 3000000, 1990: 4800000, 2000: 6300000, 2010: 9450000},
}
JAPAN_GDP = {1985: 330000, 1990: 450000, 1997: 520000, 2000: 510000, 2010: 480000}
REVISION = 0.985

# Government debt, currency-unit billions: start 1999, end 2009, multiplier
# over the same span, and the per-country deposit multiplier for euro members.
DEBT_ROWS = [
    # country, start, end, mult, alt, printed_norm, printed_pct, printed_alt_norm, printed_alt_pct
    ("UK", "354.4", "759.5", "2.6", "", "292.12", "-17", "", ""),
    ("USA", "5662", "13972", "2.0", "", "6986", "23", "", ""),
    ("Germany", "1225", "1760", "2.0", "1.4", "880", "-28", "1257", "0"),
    ("Spain", "361", "561", "2.0", "3.0", "281", "-22.0", "187", "-48"),
    ("Italy", "1281", "1763", "2.0", "2.0", "921", "-37", "", ""),
]


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    entries: list[DatasetEntry] = []

    def add(country: str, label: str, role: str, currency: str, scale: float,
            points: list[tuple[int, float]], note: str, fname: str | None = None, **extra) -> None:
        rel = f"{country}/{fname or label.lower()}.csv"
        write_series(TimeSeries.from_points(points, label, currency, scale), out / rel)
        entries.append(DatasetEntry(country, label, role, rel, currency, scale, note, True, **extra))

    for country, (ccy, first, last, series) in COUNTRIES.items():
        for label, (role, scale, anchors) in series.items():
            if label == "M2exRMF":
                continue
            pts = curve(anchors, first, last)
            if country == "usa" and label == "RMF":
                core = curve(series["M2exRMF"][2], first, last)
                m2 = [(y, round(a + b, 1)) for (y, a), (_, b) in zip(core, pts)]
                add(country, "M2", "money", ccy, scale, m2, NOTE + "; includes retail money funds")
            add(country, label, role, ccy, scale, pts, GDP_NOTE if role == "gdp" else NOTE)
        if country == "eurozone":
            add(country, "GDP", "gdp", ccy, 1e9, curve(EURO_GDP, 2002, 2010), GDP_NOTE)

    for agg, segments in JAPAN_SEGMENTS.items():
        full = dict(curve(JAPAN_ANCHORS[agg], 1985, 2010))
        for i, (code, first, last) in enumerate(segments):
            owned_last = segments[i + 1][1] - 1 if i + 1 < len(segments) else last
            pts = [(y, full[y] if y <= owned_last else round(full[y] * REVISION, 1))
                   for y in range(first, last + 1)]
            add("japan", code, "money", "JPY", 1e8, pts, NOTE + "; Bank of Japan series revision",
                fname=f"{agg.lower()}_{first}_{last}", splice_into=agg, window=(first, owned_last))
    add("japan", "GDP", "gdp", "JPY", 1e9, curve(JAPAN_GDP, 1985, 2010), GDP_NOTE)

    write_manifest(entries, out / "manifest.ini")

    header = "country,debt_start,debt_end,multiplier,alt_multiplier,printed_normalized,printed_pct,printed_alt_normalized,printed_alt_pct"
    lines = ["# government debt 1999 -> 2009, currency-unit billions", header]
    lines += [",".join(row) for row in DEBT_ROWS]
    (out / "debt_table.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src" / "monetary_lens" / "fixtures"
    main(target)
