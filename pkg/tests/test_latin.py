import pytest

from models.latin import LatinSquare
from services.latin_service import LatinService
from utils.errors import ConstDiagImpossible


@pytest.fixture
def latin():
    return LatinService()


@pytest.mark.parametrize("s, cells", [
    (1, [[1]]),
    (2, [[1, 2], [2, 1]]),
    (3, [[3, 1, 2], [1, 2, 3], [2, 3, 1]]),
])
def test_back_circulant_small(latin, s, cells):
    assert latin.back_circulant(s).cells == cells


@pytest.mark.parametrize("s, cells", [
    (2, [[2, 1], [1, 2]]),
    (4, [[4, 1, 2, 3], [1, 4, 3, 2], [2, 3, 4, 1], [3, 2, 1, 4]]),
])
def test_const_diag_symmetric_small(latin, s, cells):
    assert latin.const_diag_symmetric(s).cells == cells


def test_const_diag_symmetric_six_is_valid(latin):
    report = latin.validate(latin.const_diag_symmetric(6))
    assert report.is_latin and report.is_symmetric
    assert report.diagonal_constant == 6


@pytest.mark.parametrize("s", [1, 3, 5, 7])
def test_const_diag_rejects_odd_order(latin, s):
    with pytest.raises(ConstDiagImpossible):
        latin.const_diag_symmetric(s)


def test_back_circulant_diagonal_is_transversal_for_odd_order(latin):
    report = latin.validate(latin.back_circulant(5))
    assert report.is_latin and report.is_symmetric
    assert report.diagonal_constant is None
    assert report.diagonal_transversal


def test_const_diag_validates(latin):
    report = latin.validate(latin.const_diag_symmetric(4))
    assert (report.is_latin, report.is_symmetric, report.diagonal_constant) == (True, True, 4)


def test_cell_swap_breaks_latin_property(latin):
    cells = [row[:] for row in latin.back_circulant(3).cells]
    cells[0][0], cells[0][1] = cells[0][1], cells[0][0]
    report = latin.validate(LatinSquare(size=3, cells=cells))
    assert not report.is_latin
    assert report.failures


@pytest.mark.parametrize("s", range(2, 13, 2))
def test_every_even_const_diag_square_is_latin(latin, s):
    report = latin.validate(latin.const_diag_symmetric(s))
    assert report.is_latin and report.is_symmetric and report.diagonal_constant == s


def test_render_text(latin):
    assert LatinService.render_text(latin.back_circulant(2)) == "1 2\n2 1\n"


def test_symbol_range_is_enforced():
    with pytest.raises(ValueError):
        LatinSquare(size=2, cells=[[1, 3], [3, 1]])
