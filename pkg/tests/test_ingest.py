import struct
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from monetary_lens.errors import DataIOError, ManifestError, ParseError
from monetary_lens.ingest import (
    DatasetEntry,
    format_decimal,
    load_manifest,
    load_series,
    read_series,
    read_table,
    series_to_csv,
    write_manifest,
    write_series,
)
from monetary_lens.series import TimeSeries

from strategies import series

ENTRY_TEMPLATE = """
[{name}]
country = {country}
label = {label}
role = {role}
file = {file}
currency = USD
unit_scale = 1e9
"""


def write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def bits(x: float) -> bytes:
    return struct.pack("<d", x)


class TestReadSeries:
    def test_minimal(self, tmp_path):
        s = read_series(write(tmp_path / "a.csv", "year,value\n2000,1\n2001,2\n"))
        assert s.to_dict() == {2000: 1.0, 2001: 2.0}

    def test_comments_ignored(self, tmp_path):
        s = read_series(write(tmp_path / "a.csv", "# note\nyear,value\n# mid\n2000,1.5\n"))
        assert s.to_dict() == {2000: 1.5}

    @pytest.mark.parametrize(
        "body, line",
        [
            ("year,value\n2001,1\n2000,2\n", 3),
            ("year,value\n2000,1\n2000,2\n", 3),
            ("year,value\n2000,abc\n", 2),
            ("year,value\n2000,1e5\n", 2),
            ("year,value\n2000,nan\n", 2),
            ("year,value\n99,1\n", 2),
            ("year,value\n\u0662\u0660\u0660\u0660,1\n", 2),
            ("year,value\n2000,\u0661\n", 2),
            ("year,value\n2000,1,2\n", 2),
            ("year,value\n2000,1\n\n2001,2\n", 3),
        ],
    )
    def test_strict_errors_carry_line(self, tmp_path, body, line):
        with pytest.raises(ParseError) as info:
            read_series(write(tmp_path / "a.csv", body))
        assert info.value.line == line
        assert f"a.csv:{line}" in str(info.value)

    @pytest.mark.parametrize("header", ["Year,Value", "year, value", "year,value,extra", "value,year"])
    def test_header_exact(self, tmp_path, header):
        with pytest.raises(ParseError, match="header"):
            read_series(write(tmp_path / "a.csv", f"{header}\n2000,1\n"))

    def test_missing_header(self, tmp_path):
        with pytest.raises(ParseError):
            read_series(write(tmp_path / "a.csv", "# only a comment\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataIOError, match="nope.csv"):
            read_series(tmp_path / "nope.csv")

    def test_metadata_conflict(self, tmp_path):
        path = write_series(TimeSeries.from_points({2000: 1.0}, "x", "USD", 1e9), tmp_path / "a.csv")
        with pytest.raises(ParseError, match="currency"):
            read_series(path, currency="EUR")
        with pytest.raises(ParseError, match="unit_scale"):
            read_series(path, unit_scale=1e6)
        assert read_series(path, currency="USD", unit_scale=1e9).currency == "USD"


class TestRoundTrip:
    @pytest.mark.parametrize("value", [0.1, 1e-7, 1e22, -3.25, 123456789.123456789, 5e-324, 2.0**60])
    def test_format_decimal(self, value):
        text = format_decimal(value)
        assert "e" not in text.lower()
        assert bits(float(text)) == bits(value)

    @settings(suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(series(values=st.floats(-1e12, 1e12, allow_nan=False, allow_infinity=False)), st.text(
        st.characters(blacklist_categories=("Cs",), blacklist_characters="\n\r"), max_size=12
    ).map(str.strip))
    def test_write_read(self, tmp_path, s, label):
        # labels are stored in a comment line and trimmed
        label = label.strip(" \t\x0b\x0c\x1c\x1d\x1e\x1f\x85\xa0\u2028\u2029")
        s = s.relabel(label or "x")
        back = read_series(write(tmp_path / "rt.csv", series_to_csv(s)))
        assert back == s
        assert [bits(v) for v in back.values] == [bits(v) for v in s.values]


class TestManifest:
    def test_bundled(self, manifest):
        assert len(manifest.countries()) == 10
        assert all(d.synthetic for d in manifest.datasets)
        roles = {d.role for d in manifest.datasets}
        assert roles == {"money", "gdp"}
        for country in manifest.countries():
            assert any(d.role == "gdp" for d in manifest.entries_for(country))

    def test_empty(self, tmp_path):
        m = load_manifest(write(tmp_path / "m.ini", "# nothing yet\n"))
        assert m.datasets == ()

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(DataIOError):
            load_manifest(tmp_path / "absent.ini")

    def test_missing_data_file(self, tmp_path):
        text = ENTRY_TEMPLATE.format(name="a", country="x", label="M1", role="money", file="gone.csv")
        with pytest.raises(DataIOError, match="gone.csv"):
            load_manifest(write(tmp_path / "m.ini", text))

    def test_duplicate_pair(self, tmp_path):
        write(tmp_path / "a.csv", "year,value\n2000,1\n")
        text = ENTRY_TEMPLATE.format(name="a", country="x", label="M1", role="money", file="a.csv")
        text += ENTRY_TEMPLATE.format(name="b", country="X", label="M1", role="money", file="a.csv")
        with pytest.raises(ManifestError, match="duplicate"):
            load_manifest(write(tmp_path / "m.ini", text))

    def test_bad_role(self, tmp_path):
        write(tmp_path / "a.csv", "year,value\n2000,1\n")
        text = ENTRY_TEMPLATE.format(name="a", country="x", label="M1", role="credit", file="a.csv")
        with pytest.raises(ManifestError, match="role"):
            load_manifest(write(tmp_path / "m.ini", text))

    def test_missing_key(self, tmp_path):
        with pytest.raises(ManifestError, match="currency"):
            load_manifest(write(tmp_path / "m.ini", "[a]\ncountry = x\nlabel = M1\nrole = money\nfile = a.csv\nunit_scale = 1\n"))

    def test_unknown_key(self, tmp_path):
        write(tmp_path / "a.csv", "year,value\n2000,1\n")
        text = ENTRY_TEMPLATE.format(name="a", country="x", label="M1", role="money", file="a.csv") + "colour = red\n"
        with pytest.raises(ManifestError, match="colour"):
            load_manifest(write(tmp_path / "m.ini", text))

    def test_write_and_reload(self, tmp_path):
        s = TimeSeries.from_points({2000: 1.0, 2001: 2.0}, "M1", "NZD", 1e9)
        write_series(s, tmp_path / "nz" / "m1.csv")
        entry = DatasetEntry("nz", "M1", "money", "nz/m1.csv", "NZD", 1e9, "year-start stock", True, base_dir=tmp_path)
        m = load_manifest(write_manifest([entry], tmp_path / "m.ini"))
        assert m.datasets == (entry,)
        assert load_series(m.datasets[0]) == s

    def test_splice_entries(self, tmp_path):
        write(tmp_path / "a.csv", "year,value\n1990,1\n1991,2\n1992,99\n")
        write(tmp_path / "b.csv", "year,value\n1992,3\n1993,4\n")
        text = ENTRY_TEMPLATE.format(name="a", country="x", label="A", role="money", file="a.csv")
        text += "splice_into = M\nwindow = 1990-1991\n"
        text += ENTRY_TEMPLATE.format(name="b", country="x", label="B", role="money", file="b.csv")
        text += "splice_into = M\nwindow = 1992-1993\n"
        u = load_manifest(write(tmp_path / "m.ini", text)).load_country("x")
        assert u["M"].to_dict() == {1990: 1, 1991: 2, 1992: 3, 1993: 4}

    def test_splice_gap_is_manifest_error(self, tmp_path):
        write(tmp_path / "a.csv", "year,value\n1990,1\n1991,2\n")
        text = ENTRY_TEMPLATE.format(name="a", country="x", label="A", role="money", file="a.csv")
        text += "splice_into = M\nwindow = 1990-1990\n"
        text += ENTRY_TEMPLATE.format(name="b", country="x", label="B", role="money", file="a.csv")
        text += "splice_into = M\nwindow = 1992-1992\n"
        with pytest.raises(ManifestError, match="gap"):
            load_manifest(write(tmp_path / "m.ini", text)).load_country("x")

    def test_country_lookup_case_insensitive(self, manifest):
        assert manifest.entries_for("RUSSIA") == manifest.entries_for("russia")


def test_read_table_field_count(tmp_path):
    with pytest.raises(ParseError) as info:
        read_table(write(tmp_path / "t.csv", "a,b\n1,2\n3\n"))
    assert info.value.line == 3


def test_new_zealand_doubles_each_decade(manifest):
    from monetary_lens.series import growth_multiplier

    m3 = manifest.load_country("new_zealand")["M3"]
    for start in (1990, 2000):
        assert growth_multiplier(m3, start, start + 10) == pytest.approx(2.0, rel=0.05)
