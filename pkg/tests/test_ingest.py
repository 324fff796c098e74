import numpy as np
import pytest

from gnsspred.errors import MalformedLine, SchemaMismatch, UnknownFormat
from gnsspred.ingest import (
    NGL_SCHEMA,
    SECONDS_PER_DAY,
    SeriesFileSchema,
    fmt,
    parse_delimited,
    parse_ngl,
    read_series,
    write_results,
    write_series,
    write_table,
)

from conftest import make_series

TENV3 = """site YYMMMDD yyyy.yyyy __MJD week d reflon _e0(m) __east(m) ____n0(m) _north(m) u0(m) ____up(m) _ant(m) sig_e(m) sig_n(m) sig_u(m) __corr_en __corr_eu __corr_nu
P496 10JAN01 2010.0000 55197 1565 5 237.2 -117000 0.123456 3700000 0.234567 100 0.345678 0.0083 0.001 0.002 0.003 0.1 0.2 0.3
P496 10JAN02 2010.0027 55198 1565 6 237.2 -117000 0.123556 3700000 0.234667 100 0.345778 0.0083 0.001 0.002 0.003 0.1 0.2 0.3
P496 10JAN03 2010.0055 55199 1565 7 237.2 -117000 0.123656 3700000 0.234767 100 0.345878 0.0083 0.001 0.002 0.003 0.1 0.2 0.3
"""


class TestParseNgl:
    def test_components_and_values(self):
        series = parse_ngl(TENV3)
        by_comp = {s.component: s for s in series}
        assert set(by_comp) == {"E", "N", "U"}
        east = by_comp["E"]
        assert east.station_id == "P496"
        assert east.values() == pytest.approx([0.123456, 0.123556, 0.123656])
        assert east.sigmas() == pytest.approx([0.001, 0.001, 0.001])

    def test_epochs_are_daily_seconds_from_first(self):
        east = parse_ngl(TENV3)[0]
        assert east.times() == pytest.approx([0.0, SECONDS_PER_DAY, 2 * SECONDS_PER_DAY])
        assert east.sampling_interval == SECONDS_PER_DAY

    def test_short_row_rejected_with_lineno(self):
        bad = TENV3 + "P496 10JAN04 2010.0082 55200\n"
        with pytest.raises(MalformedLine) as exc:
            parse_ngl(bad)
        assert exc.value.lineno == 5

    def test_empty_input(self):
        with pytest.raises(UnknownFormat):
            parse_ngl("")


class TestParseDelimited:
    SCHEMA = SeriesFileSchema(
        epoch_col=0,
        value_cols={"E": 1, "U": 2},
        sigma_cols={"E": 3},
        delimiter=",",
        station_id="ABCD",
    )

    def test_two_components(self):
        text = "0,1.0,5.0,0.01\n1,2.0,6.0,0.02\n"
        east, up = parse_delimited(text, self.SCHEMA)
        assert east.component == "E" and up.component == "U"
        assert east.values() == pytest.approx([1.0, 2.0])
        assert east.sigmas() == pytest.approx([0.01, 0.02])
        assert up.sigmas() == [None, None]

    def test_seconds_epochs_not_reorigined(self):
        text = "100,1.0,5.0,0.01\n101,2.0,6.0,0.02\n"
        east, _ = parse_delimited(text, self.SCHEMA)
        assert east.times() == pytest.approx([100.0, 101.0])

    def test_header_lines_skipped(self):
        schema = SeriesFileSchema(epoch_col=0, value_cols={"E": 1}, header_lines=1, delimiter=",")
        (east,) = parse_delimited("t,e\n0,1.5\n", schema)
        assert east.values() == pytest.approx([1.5])

    def test_bad_float_reports_line(self):
        with pytest.raises(MalformedLine) as exc:
            parse_delimited("0,1.0,5.0,0.01\n1,oops,6.0,0.02\n", self.SCHEMA)
        assert exc.value.lineno == 2

    def test_narrow_row_rejected(self):
        with pytest.raises(SchemaMismatch):
            parse_delimited("0,1.0\n", self.SCHEMA)

    def test_duplicate_schema_columns_rejected(self):
        with pytest.raises(SchemaMismatch):
            SeriesFileSchema(epoch_col=0, value_cols={"E": 0})

    def test_unknown_epoch_unit_rejected(self):
        with pytest.raises(SchemaMismatch):
            SeriesFileSchema(epoch_col=0, value_cols={"E": 1}, epoch_unit="weeks")


class TestCanonicalRoundTrip:
    def test_round_trip_exact(self):
        rng = np.random.default_rng(0)
        series = make_series(rng.standard_normal(20) / 3.0, dt=30.0, sigmas=[0.0123] * 20)
        back = read_series(write_series(series))
        assert back.station_id == series.station_id
        assert back.component == series.component
        assert back.sampling_interval == series.sampling_interval
        assert np.array_equal(back.times(), series.times())
        assert np.array_equal(back.values(), series.values())
        assert back.sigmas() == pytest.approx(series.sigmas())

    def test_missing_sigma_round_trips_as_none(self):
        series = make_series([1.0, 2.0])
        back = read_series(write_series(series))
        assert back.sigmas() == [None, None]

    def test_not_canonical(self):
        with pytest.raises(UnknownFormat):
            read_series("1\t2\t3\n")


class TestResultsSerialization:
    def test_fmt_float_precision(self):
        x = 1.0 / 3.0
        assert float(fmt(x)) == x
        assert fmt(None) == ""

    def test_delimited_records(self):
        from gnsspred.metrics import EvaluationReport

        rep = EvaluationReport(smape=1.5, mase=0.5, std=0.1, mae=0.2, q=4, n=16)
        text = write_results(rep)
        lines = text.splitlines()
        assert lines[0] == "smape\tmase\tstd\tmae\tq\tn"
        assert lines[1].split("\t")[0] == "1.5"

    def test_structured_text(self):
        text = write_results({"a": 1.0, "b": None}, format="structured-text")
        assert "a = 1\n" in text
        assert "b = \n" in text

    def test_empty_list_gives_header_only(self):
        assert write_table(["t", "value"], []) == "t\tvalue\n"

    def test_deterministic(self):
        rep = {"x": np.pi, "y": 2.0}
        assert write_results(rep) == write_results(rep)
