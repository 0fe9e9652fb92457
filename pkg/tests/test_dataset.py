import numpy as np
import pytest

from tariffcast.dataset import ingest_csv, read_csv_text, to_csv_text
from tariffcast.errors import GapInCalendar, NonPositivePrice, ParseError
from tariffcast.series import Month


def test_minimal_two_row_file():
    ds = read_csv_text("date,monochromic\n2011-01,0.2\n2011-02,0.21\n")
    assert ds.start == Month(2011, 1)
    assert ds.n == 2
    assert ds.names == ("monochromic",)
    assert np.array_equal(ds.columns["monochromic"], [0.2, 0.21])


def test_four_column_file_and_series_access():
    text = (
        "date,monochromic,day,peak,night\n"
        "2011-01,0.2,0.19,0.3,0.1\n"
        "2011-02,0.21,0.2,0.31,0.11\n"
        "2011-03,0.22,0.21,0.32,0.12\n"
    )
    ds = read_csv_text(text)
    ts = ds.series("peak")
    assert np.array_equal(ts.values, [0.3, 0.31, 0.32])
    assert ts.start == Month(2011, 1)
    assert ts.period_hint == 12
    with pytest.raises(KeyError):
        ds.series("offpeak")


def test_header_is_case_insensitive():
    ds = read_csv_text("Date,Monochromic\n2011-01,0.2\n2011-02,0.21\n")
    assert ds.names == ("monochromic",)


def test_gap_names_missing_month():
    text = "date,monochromic\n2011-01,0.2\n2011-03,0.21\n"
    with pytest.raises(GapInCalendar) as err:
        read_csv_text(text)
    assert "2011-02" in str(err.value)


def test_nonpositive_price_rejected():
    with pytest.raises(NonPositivePrice):
        read_csv_text("date,monochromic\n2011-01,0.0\n2011-02,0.21\n")
    with pytest.raises(NonPositivePrice):
        read_csv_text("date,monochromic\n2011-01,-0.2\n2011-02,0.21\n")


def test_parse_errors_identify_row_and_column():
    with pytest.raises(ParseError) as err:
        read_csv_text("date,monochromic\n2011-01,0.2\n2011/03,0.21\n")
    assert "row 3" in str(err.value)
    with pytest.raises(ParseError) as err:
        read_csv_text("date,monochromic\n2011-01,cheap\n2011-02,0.2\n")
    assert "row 2" in str(err.value) and "monochromic" in str(err.value)


def test_months_must_increase():
    with pytest.raises(ParseError):
        read_csv_text("date,monochromic\n2011-02,0.2\n2011-01,0.21\n")


def test_header_validation():
    with pytest.raises(ParseError):
        read_csv_text("month,monochromic\n2011-01,0.2\n")
    with pytest.raises(ParseError):
        read_csv_text("date,watts\n2011-01,0.2\n")
    with pytest.raises(ParseError):
        read_csv_text("date,day,day\n2011-01,0.2,0.2\n")
    with pytest.raises(ParseError):
        read_csv_text("date\n2011-01\n")
    with pytest.raises(ParseError):
        read_csv_text("date,monochromic\n2011-01,0.2\n")  # single row


def test_wrong_cell_count():
    with pytest.raises(ParseError):
        read_csv_text("date,monochromic,day\n2011-01,0.2\n2011-02,0.2,0.3\n")


def test_round_trip_is_bit_identical(tmp_path):
    rng = np.random.default_rng(31)
    months = [Month(2011, 1).plus(i) for i in range(40)]
    lines = ["date,monochromic,night"]
    for i, m in enumerate(months):
        lines.append(f"{m},{rng.uniform(0.1, 0.5)},{rng.uniform(0.05, 0.2)}")
    text = "\n".join(lines) + "\n"
    ds = read_csv_text(text)
    again = read_csv_text(to_csv_text(ds))
    assert again.start == ds.start
    assert again.names == ds.names
    for name in ds.names:
        assert np.array_equal(again.columns[name], ds.columns[name])

    path = tmp_path / "prices.csv"
    path.write_text(text, encoding="utf-8")
    from_file = ingest_csv(path)
    assert np.array_equal(from_file.columns["night"], ds.columns["night"])
