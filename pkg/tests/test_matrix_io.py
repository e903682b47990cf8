import numpy as np
import pytest

from skewlines.incidence import build_psi, skew_matrix
from skewlines.matrix_io import ordering_comment, read_matrix, write_matrix


@pytest.mark.parametrize("fmt,suffix", [("mm", ".mtx"), ("csv", ".csv")])
def test_round_trip(tmp_path, fmt, suffix):
    for m in (skew_matrix(3), build_psi(2)):
        path = tmp_path / f"m{suffix}"
        write_matrix(path, m, fmt, comment=ordering_comment(3, 4, 2, 2))
        back = read_matrix(path)
        assert back.dtype == np.int64
        assert np.array_equal(back, m)


def test_matrix_market_header(tmp_path):
    path = tmp_path / "a.mtx"
    write_matrix(path, skew_matrix(2), "mm", comment=ordering_comment(2, 4, 2, 2))
    lines = path.read_text().splitlines()
    assert lines[0] == "%%MatrixMarket matrix coordinate integer general"
    assert any("lexicographically" in line for line in lines[1:7])
    assert "35 35 560" in lines


def test_csv_has_comments(tmp_path):
    path = tmp_path / "a.csv"
    write_matrix(path, build_psi(2), "csv", comment=ordering_comment(2, 4, 3, 2, "psi"))
    text = path.read_text()
    assert text.startswith("# ")
    assert "not contained" in text


def test_format_errors(tmp_path):
    with pytest.raises(ValueError):
        write_matrix(tmp_path / "x", np.eye(2), "json")
    with pytest.raises(ValueError):
        read_matrix(tmp_path / "x.mtx", fmt="json")
