import json

import pytest

import gdist


def test_zoo_and_lengths():
    assert "sl2z" in gdist.zoo_names()
    assert gdist.word_length("free2", "x y x^-1 x") == 2
    assert gdist.geodesic("z2", "y x y^-1") == "x"
    assert gdist.growth_series("free2", 3) == [1, 4, 12, 36]


def test_surfaces():
    assert gdist.orientation_double_cover("N3,1^2") == "S2,2^4"
    assert gdist.euler_characteristic("N3,1^2") == -4
    assert gdist.exceptional_case("N2") == "klein_bottle"
    with pytest.raises(gdist.GdistError):
        gdist.exceptional_case("S1")


def test_reports():
    k = gdist.klein_check(radius=4)
    assert k["as_expected"]
    assert k["verdict"] == "no injective homomorphism Z2xZ2 -> SL(2,Z)"
    d = gdist.distortion("z2", "factor:0", 8, expect="linear", expect_undistorted=True)
    assert d["as_expected"]
    assert d["tables"]["profile"].startswith("n,delta,exact,witness_key,witness_word,dH\n")
    c = gdist.centralizer("free2", "x y", radius=6)
    assert c["as_expected"]
    assert gdist.combing_check("kleinfour", radius=3)["as_expected"]
    assert gdist.cover_table(6)["as_expected"]
    v = gdist.verify_hom({"source": "c2", "target": "sl2z", "images": {"x": "a a"}, "J": "a a"})
    assert v["as_expected"]
    b = gdist.ball("heis3", 2)
    assert b["tables"]["ball"].startswith("key,distance,witness_word\n")


def test_thread_count_does_not_change_tables():
    one = gdist.ball("braid3", 5, threads=1)["tables"]
    four = gdist.ball("braid3", 5, threads=4)["tables"]
    assert one == four


def test_errors():
    with pytest.raises(gdist.GdistError):
        gdist.word_length("no-such-group", "x")
    with pytest.raises(gdist.GdistError):
        gdist.ball("free2", 12, max_elements=100)
    json.loads(json.dumps(gdist.cover_table(3)))
