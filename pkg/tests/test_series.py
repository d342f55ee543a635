import math

import pytest
from hypothesis import given, strategies as st

from monetary_lens.errors import (
    AlignmentError,
    CurrencyError,
    DegenerateBaseError,
    DomainError,
    MissingPeriodError,
    SpliceError,
)
from monetary_lens.series import TimeSeries, align, growth_multiplier, splice

from strategies import series


def ts(points, label="s", currency="USD", unit_scale=1.0):
    return TimeSeries.from_points(points, label, currency, unit_scale)


class TestTimeSeries:
    def test_rejects_unordered_years(self):
        with pytest.raises(DomainError):
            ts({2001: 1.0, 2000: 2.0})

    def test_rejects_duplicate_years(self):
        with pytest.raises(DomainError):
            ts([(2000, 1.0), (2000, 2.0)])

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(DomainError):
            ts({2000: bad})

    def test_rejects_nonpositive_scale(self):
        with pytest.raises(DomainError):
            ts({2000: 1.0}, unit_scale=0)

    def test_missing_period(self):
        with pytest.raises(MissingPeriodError, match="1999"):
            ts({2000: 1.0})[1999]


class TestAlign:
    def test_intersection(self):
        a, b = align(ts({2000: 1, 2001: 2}), ts({2001: 10, 2002: 20}))
        assert a.to_dict() == {2001: 2}
        assert b.to_dict() == {2001: 10}

    def test_identity(self):
        a = ts({2000: 1, 2001: 2})
        assert align(a, a) == (a, a)

    def test_scale_reconciliation(self):
        # 1.5 billion is 1500 million
        a = ts({2004: 1.0, 2005: 1.5}, unit_scale=1e9)
        b = ts({2005: 700.0, 2006: 800.0}, unit_scale=1e6)
        a2, b2 = align(a, b)
        assert a2.unit_scale == b2.unit_scale == 1e6
        assert a2.to_dict() == {2005: 1500.0}
        assert b2.to_dict() == {2005: 700.0}

    def test_empty_intersection(self):
        with pytest.raises(AlignmentError):
            align(ts({2000: 1}), ts({2001: 1}))

    def test_currency_mismatch(self):
        with pytest.raises(CurrencyError):
            align(ts({2000: 1}), ts({2000: 1}, currency="EUR"))

    @given(series(), series())
    def test_idempotent(self, a, b):
        try:
            once = align(a, b)
        except AlignmentError:
            return
        assert align(*once) == once


class TestSplice:
    def test_two_segments_by_lookup(self):
        s1 = ts({y: 100.0 + y for y in range(1988, 1998)}, label="old")
        s2 = ts({y: 5000.0 - y for y in range(1994, 2003)}, label="new")
        out = splice([(s1, 1990, 1995), (s2, 1996, 2000)])
        assert out.years == tuple(range(1990, 2001))
        for year, value in out:
            owner = s1 if year <= 1995 else s2
            assert value == owner[year]
        assert "old 1990-1995" in out.label and "new 1996-2000" in out.label

    def test_single_segment_identity(self):
        s = ts({2000: 1.0, 2001: 2.0})
        assert splice([(s, 2000, 2001)]) is s

    def test_segment_order_does_not_matter(self):
        s1 = ts({y: float(y) for y in range(1990, 2001)}, label="a")
        s2 = ts({y: -float(y) for y in range(1990, 2001)}, label="b")
        assert splice([(s2, 1996, 2000), (s1, 1990, 1995)]) == splice([(s1, 1990, 1995), (s2, 1996, 2000)])

    @pytest.mark.parametrize("windows", [((1990, 1995), (1995, 2000)), ((1990, 1994), (1996, 2000))])
    def test_gap_or_overlap(self, windows):
        s = ts({y: 1.0 for y in range(1990, 2001)})
        with pytest.raises(SpliceError):
            splice([(s, *windows[0]), (s, *windows[1])])

    def test_owned_year_missing(self):
        s1 = ts({1990: 1.0, 1991: 1.0})
        s2 = ts({1993: 1.0})
        with pytest.raises(SpliceError, match="1992"):
            splice([(s1, 1990, 1991), (s2, 1992, 1993)])

    def test_currency_mismatch(self):
        with pytest.raises(CurrencyError):
            splice([(ts({1990: 1.0}), 1990, 1990), (ts({1991: 1.0}, currency="JPY"), 1991, 1991)])

    def test_japan_three_way(self, manifest):
        by_label = {d.label: d for d in manifest.entries_for("japan")}
        from monetary_lens.ingest import load_series

        for agg, codes in {
            "M1": ("MA'MAMS1AN01", "MA'MAMS3AN01", "MA'MAMS5ANM1"),
            "M2": ("MA'MAMS1ANM2C", "MA'MAMS3ANM2C", "MA'MAMS5ANM2"),
        }.items():
            segs = [load_series(by_label[c]) for c in codes]
            out = splice([(segs[0], 1985, 1997), (segs[1], 1998, 2002), (segs[2], 2003, 2010)], label=agg)
            assert out.years == tuple(range(1985, 2011))
            # boundary years come from the later series, not the earlier file's revised figure
            assert out[1998] == segs[1][1998] != segs[0][1998]
            assert out[2003] == segs[2][2003] != segs[1][2003]

    @given(st.lists(st.integers(1, 6), min_size=1, max_size=5), st.data())
    def test_slice_back_reproduces_segments(self, lengths, data):
        start = 1950
        segments = []
        for i, n in enumerate(lengths):
            vals = data.draw(st.lists(st.floats(-1e6, 1e6), min_size=n + 2, max_size=n + 2))
            # each source covers one extra year either side of its window
            s = ts({start - 1 + k: v for k, v in enumerate(vals)}, label=f"seg{i}")
            segments.append((s, start, start + n - 1))
            start += n
        out = splice(segments)
        for s, a, b in segments:
            assert out.window(a, b).values == s.window(a, b).values


class TestGrowthMultiplier:
    def test_synthetic(self):
        assert growth_multiplier(ts({2000: 100, 2010: 250}), 2000, 2010) == 2.5

    def test_same_period(self):
        assert growth_multiplier(ts({2000: 7.3}), 2000, 2000) == 1.0

    def test_russia_fixture(self, manifest):
        m2 = manifest.load_country("russia")["M2"]
        assert growth_multiplier(m2, 2000, 2010) == pytest.approx(18.0, rel=0.05)

    def test_missing_period(self):
        with pytest.raises(MissingPeriodError):
            growth_multiplier(ts({2000: 1}), 2000, 2010)

    def test_zero_base(self):
        with pytest.raises(DegenerateBaseError):
            growth_multiplier(ts({2000: 0.0, 2010: 1.0}), 2000, 2010)

    @given(series(min_len=3), st.data())
    def test_chain_rule(self, s, data):
        i, j, k = sorted(data.draw(st.lists(st.integers(0, len(s) - 1), min_size=3, max_size=3)))
        y0, y1, y2 = s.years[i], s.years[j], s.years[k]
        whole = growth_multiplier(s, y0, y2)
        assert math.isclose(whole, growth_multiplier(s, y0, y1) * growth_multiplier(s, y1, y2), rel_tol=1e-12)

    @given(series(min_len=2), st.sampled_from([1e-3, 1.0, 1e3, 1e6]))
    def test_unit_rescaling_invariance(self, s, new_scale):
        a, b = s.years[0], s.years[-1]
        assert math.isclose(
            growth_multiplier(s.rescaled(new_scale), a, b), growth_multiplier(s, a, b), rel_tol=1e-12
        )


def test_replace_points_accepts_iterator():
    s = ts({2000: 1.0, 2001: 2.0})
    assert s.replace_points(zip((2000, 2001), (3.0, 4.0))).to_dict() == {2000: 3.0, 2001: 4.0}
