"""Descriptor grammar, element parsing/formatting, trivial-extension structure."""

import pytest

from edrkit import (
    ElementSyntaxError,
    RingError,
    element,
    enumerate_elements,
    format_element,
    is_unit,
    make_ring,
    parse_element,
    ring_catalog,
)
from conftest import random_element


def test_make_ring_examples():
    entry = make_ring("z")
    assert entry.expression() == "z" and not entry.finite and entry.bezout_total
    entry = make_ring("zmod:6")
    assert entry.finite and entry.bezout_total
    entry = make_ring("text:z,q")
    assert not entry.finite and entry.bezout_total
    entry = make_ring("series:8")
    assert not entry.finite and not entry.bezout_total
    entry = make_ring("product:zmod:2,zmod:3")
    assert entry.finite


def test_make_ring_rejects_malformed():
    for bad in ["zmod:1", "zmod:0", "gfpoly:4", "gfpoly:1", "series:0",
                "product:", "text:z", "text:z,x", "text:zmod:6,q", "nope", "",
                "zmod:6,extra"]:
        with pytest.raises(RingError):
            make_ring(bad)


def test_structural_equality_of_descriptors():
    assert make_ring("zmod:6").ring == make_ring("zmod:6").ring
    assert make_ring("zmod:6").ring != make_ring("zmod:7").ring
    assert make_ring("text:z,q").ring == make_ring("text:z,q").ring


def test_parse_examples():
    assert parse_element(make_ring("zmod:6"), "11").value == 5
    assert parse_element(make_ring("gfpoly:5"), "[1,0,3]").value == (1, 0, 3)
    got = parse_element(make_ring("text:z,q"), '[2, "3/4"]')
    from fractions import Fraction
    assert got.value == (2, Fraction(3, 4))


def test_parse_errors_carry_position():
    with pytest.raises(ElementSyntaxError) as err:
        parse_element(make_ring("z"), "12x4")
    assert "position" in str(err.value)
    with pytest.raises(ElementSyntaxError):
        parse_element(make_ring("gfpoly:5"), "[1, 0,")


def test_format_examples():
    assert format_element(element(make_ring("zmod:6").ring, 5)) == "5"
    assert format_element(element(make_ring("gfpoly:5").ring, ())) == "[]"
    te = make_ring("text:z,self").ring
    assert format_element(element(te, (8, 22))) == "[8, 22]"


PARSE_FORMAT_RINGS = ["z", "zmod:12", "gfpoly:5", "product:zmod:2,zmod:3",
                      "text:z,q", "text:zmod:4,self", "series:6"]


@pytest.mark.parametrize("expr", PARSE_FORMAT_RINGS)
def test_parse_format_roundtrip(expr, rng):
    entry = make_ring(expr)
    for _ in range(60):
        el = random_element(entry.ring, rng, span=40)
        assert parse_element(entry, format_element(el)) == el


def test_trivial_extension_square_zero_ideal(rng):
    from fractions import Fraction
    for expr in ["text:z,q", "text:z,self", "text:zmod:6,self"]:
        ring = make_ring(expr).ring
        for _ in range(40):
            e = random_element(ring, rng, span=9)
            f = random_element(ring, rng, span=9)
            ze = element(ring, (ring.base.zero, e.value[1]))
            zf = element(ring, (ring.base.zero, f.value[1]))
            assert (ze * zf).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_trivial_extension_units_exhaustive(n):
    ring = make_ring(f"text:zmod:{n},self").ring
    base = ring.base
    for el in enumerate_elements(ring):
        assert is_unit(el) == base.is_unit(el.value[0])


def test_ring_catalog_is_deterministic():
    assert ring_catalog() == ring_catalog()
    exprs = [e["expression"] for e in ring_catalog()]
    assert "z" in exprs and "series:8" in exprs


def test_nested_product_inside_text():
    entry = make_ring("product:text:z,q,zmod:6")
    assert entry.ring.factors[0].expression() == "text:z,q"
    assert entry.ring.factors[1].expression() == "zmod:6"
