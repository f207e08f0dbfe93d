from fractions import Fraction

import pytest

import hkcob


@pytest.fixture(scope="module")
def engine():
    return hkcob.Engine()


def test_top_values_match_closed_forms(engine):
    for n in (1, 2, 3):
        assert engine.hilb_ch(n, [n]) == hkcob.closed_form_hilb_top(n)
        assert engine.kummer_ch(n, [n]) == hkcob.closed_form_kummer_top(n)
    assert engine.kummer_ch(2, [1, 1]) == 756 == hkcob.closed_form_kummer_double(2, 1)


def test_generic_c2(engine):
    assert engine.hilb_ch(2, [2], c2=Fraction(12)) == hkcob.closed_form_hilb_top(2, 12)
    assert engine.hilb_ch(2, [1, 1], c2=24) == engine.hilb_ch(2, [1, 1])


def test_chern_numbers_round_trip(engine):
    v = engine.vector("hilb", 3)
    c = hkcob.chern_numbers(v)
    assert c[(1, 1, 1)] == 36800 and c[(2, 1)] == 14720 and c[(3,)] == 3200
    assert hkcob.from_chern_numbers(c) == v


def test_expansions(engine):
    coeffs = engine.expand(engine.vector("hilb", 2), "kummer")
    assert coeffs == {(2,): Fraction(1, 3), (1, 1): Fraction(1, 2)}
    assert hkcob.euler_affine_check(coeffs, 2)
    back = engine.synthesize(coeffs, "kummer")
    assert back == engine.vector("hilb", 2)
    og6 = hkcob.from_chern_numbers({(1, 1, 1): 30720, (2, 1): 7680, (3,): 1920})
    assert engine.expand(og6, "kummer") == {
        (3,): Fraction(6, 5),
        (2, 1): Fraction(-16, 45),
        (1, 1, 1): Fraction(1, 6),
    }


def test_genera(engine):
    assert hkcob.genus("todd", engine.vector("hilb", 3)) == 4
    assert hkcob.genus("milnor", engine.vector("kummer", 3)) == Fraction(-280, 9)
    assert hkcob.genus("chi_y", engine.vector("kummer", 2)) == hkcob.gottsche_soergel_kummer_chi(3)


def test_gottsche():
    assert hkcob.gottsche_betti([1, 0, 10, 0, 1], 2) == [1, 0, 11, 0, 66, 0, 11, 0, 1]
    assert hkcob.gottsche_soergel_kummer_chi(2) == [2, 20, 2]


def test_errors(engine):
    with pytest.raises(ValueError):
        engine.hilb_ch(3, [2, 2])
    with pytest.raises(ValueError):
        engine.vector("og6", 3)
    with pytest.raises(ValueError):
        hkcob.genus("elliptic", engine.vector("hilb", 1))
    with pytest.raises(ValueError):
        hkcob.Engine("cubic")


def test_metadata():
    assert hkcob.__version__ == "0.1.0"
    assert len(hkcob.conventions_hash()) == 16
