import numpy as np
import pytest
from hypothesis import given, strategies as st

from models.matrices import Graph, PmOneMatrix
from utils.matrix_io import MatrixFileCodec

H2_TEXT = "PMM 1\n2\n1 1\n1 -1\n"
P3_TEXT = "ADJ 1\n3\n0 1 0\n1 0 1\n0 1 0\n"


def test_parse_and_serialize_pmm(h2):
    assert MatrixFileCodec.parse_pmm(H2_TEXT) == h2
    assert MatrixFileCodec.serialize_pmm(h2) == H2_TEXT


def test_parse_and_serialize_adj():
    g = MatrixFileCodec.parse_adj(P3_TEXT)
    assert g == Graph.from_edges(3, [(0, 1), (1, 2)])
    assert MatrixFileCodec.serialize_adj(g) == P3_TEXT


def test_missing_trailing_newline_is_accepted(h2):
    assert MatrixFileCodec.parse_pmm(H2_TEXT.rstrip("\n")) == h2


@pytest.mark.parametrize("text, fragment", [
    ("PMM 1\n2\n1 1\n-1 -1\n", "not symmetric"),
    ("PMM 1\n2\n1 0\n0 1\n", "invalid token '0'"),
    ("PMM 1\n2\n1 1\n1 +1\n", "Row 2, column 2: invalid token"),
    ("PMM 1\r\n2\r\n1 1\r\n1 -1\r\n", "LF line endings"),
    ("PMM 2\n2\n1 1\n1 -1\n", "Expected header"),
    ("PMM 1\n3\n1 1 1\n1 1 1\n", "Expected 3 matrix rows"),
    ("PMM 1\n2\n1 1 1\n1 -1\n", "Row 1: expected 2 tokens"),
    ("PMM 1\n2\n1  1\n1 -1\n", "Row 1: expected 2 tokens"),
    ("PMM 1\n02\n1 1\n1 -1\n", "positive decimal integer"),
    ("PMM 1\nx\n", "decimal integer"),
    ("", "empty file"),
])
def test_parse_pmm_rejections(text, fragment):
    with pytest.raises(ValueError, match=fragment):
        MatrixFileCodec.parse_pmm(text)


@pytest.mark.parametrize("text, fragment", [
    ("ADJ 1\n2\n1 1\n1 0\n", "nonzero diagonal entry at vertex 1"),
    ("ADJ 1\n2\n0 1\n0 0\n", "not symmetric"),
    ("ADJ 1\n2\n0 -1\n-1 0\n", "invalid token '-1'"),
    ("PMM 1\n2\n0 1\n1 0\n", "Expected header 'ADJ 1'"),
])
def test_parse_adj_rejections(text, fragment):
    with pytest.raises(ValueError, match=fragment):
        MatrixFileCodec.parse_adj(text)


def test_asymmetry_is_located():
    with pytest.raises(ValueError, match=r"\(1, 3\)"):
        MatrixFileCodec.parse_pmm("PMM 1\n3\n1 1 -1\n1 1 1\n1 1 1\n")


@st.composite
def symmetric_pm_text(draw, max_order=6):
    n = draw(st.integers(min_value=1, max_value=max_order))
    upper = draw(st.lists(st.sampled_from([1, -1]), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
    arr = np.zeros((n, n), dtype=np.int64)
    arr[np.triu_indices(n)] = upper
    arr = arr + np.triu(arr, 1).T
    rows = "\n".join(" ".join(str(x) for x in row) for row in arr)
    return f"PMM 1\n{n}\n{rows}\n", arr


@given(symmetric_pm_text())
def test_parse_pmm_reads_every_symmetric_file(case):
    text, arr = case
    parsed = MatrixFileCodec.parse_pmm(text)
    assert np.array_equal(parsed.entries, arr)
    assert MatrixFileCodec.serialize_pmm(parsed) == text


def test_write_and_read_files(tmp_path, h2):
    pmm = tmp_path / "h2.pmm"
    adj = tmp_path / "c5.adj"
    digest = MatrixFileCodec.write_pmm(pmm, h2)
    assert len(digest) == 64
    assert pmm.read_bytes() == H2_TEXT.encode("ascii")
    MatrixFileCodec.write_adj(adj, Graph.cycle(5))

    assert MatrixFileCodec.read_pmm(pmm) == h2
    assert MatrixFileCodec.read_adj(adj) == Graph.cycle(5)
    assert isinstance(MatrixFileCodec.read_any(pmm), PmOneMatrix)
    assert isinstance(MatrixFileCodec.read_any(adj), Graph)


def test_read_any_rejects_unknown_header(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("MAT 1\n1\n1\n")
    with pytest.raises(ValueError, match="Unrecognized matrix file header"):
        MatrixFileCodec.read_any(path)


def test_serialize_coerces_arrays():
    text = MatrixFileCodec.serialize_pmm(np.ones((2, 2), dtype=np.int64))
    assert text == "PMM 1\n2\n1 1\n1 1\n"
    with pytest.raises(ValueError):
        MatrixFileCodec.serialize_adj(np.ones((2, 2), dtype=np.int64))
