from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _util import F4, F9, FIXTURES, random_code
from hermself.fileformat import (
    ParseError,
    _split_header,
    field_from_params,
    format_code,
    format_field,
    parse_code_text,
    parse_element,
    parse_poly,
)
from hermself.gf import GF

def test_element_syntax_variants():
    F = F9
    e = F.e
    assert parse_element("0", F) == 0
    assert parse_element("2", F) == 2
    assert parse_element("e", F) == e
    assert parse_element("e^2", F) == int(F.mul(e, e))
    assert parse_element("1+2*e", F) == int(F.add(1, F.mul(2, e)))
    assert parse_element("2e+1", F) == parse_element("1+2*e", F)
    assert parse_element("-1", F) == 2

def test_poly_constant_first_and_implicit_products():
    F = F4
    g = parse_poly("x^7 + e x^5 + x^4 + x^3 + e^2x^2 + 1", F)
    e2 = int(F.mul(F.e, F.e))
    assert g == [1, 0, e2, 1, 1, F.e, 0, 1]

def test_field_params_and_modulus_normalisation():
    F = field_from_params({"p": "3", "h": "1", "mod2": "x^2-x-1"})
    assert F.mod_q2 == (2, 2, 1)
    # a non-monic modulus is rescaled
    G = field_from_params({"p": "3", "mod2": "2x^2+x+1"})
    assert G.mod_q2 == (2, 2, 1)
    with pytest.raises(ParseError):
        field_from_params({"p": "2", "h": "2", "mod2": "x^2+x+w"})
    with pytest.raises(ParseError):
        field_from_params({"p": "4"})

def test_format_field_round_trip():
    for F in (F4, F9, GF(2, 2), GF(3, mod_q2=(2, 2, 1))):
        text = format_field(F)

        _, params = _split_header(text, 1)
        assert field_from_params(params) == F

@settings(max_examples=30, deadline=None)
@given(st.sampled_from([F4, F9, GF(2, 2)]), st.integers(1, 3), st.integers(0, 2**31))
def test_code_file_round_trip(F, k, seed):
    C = random_code(F, k, k + 3, np.random.default_rng(seed))
    back = parse_code_text(format_code(C, "a comment")).build()
    assert back.field == F
    assert np.array_equal(back.gen, C.gen)

def test_malformed_token_is_named_with_its_line():
    text = "code n=3 k=1\nfield p=2 h=1\n1 e q7\n"
    with pytest.raises(ParseError) as info:
        parse_code_text(text)
    assert "q7" in str(info.value)
    assert info.value.line == 3

@pytest.mark.parametrize(
    "text",
    [
        "code n=3 k=2\nfield p=2\n1 0 1\n",  # missing row
        "code n=3 k=1\nfield p=2\n1 0\n",  # short row
        "code n=3\nfield p=2\n1 0 1\n",  # no k
        "code n=3 k=1\nfiled p=2\n1 0 1\n",  # misspelt field line
        "cyclic n=5 g=\"x+1\" delete=4..9\nfield p=2\n",
        "cyclic n=5 g=\"x+1\" delete=4-5\nfield p=2\n",
        "blah n=3\nfield p=2\n",
        "code n=2 k=1\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_code_text(text)

def test_cyclic_spec_with_dual_and_delete():
    src = parse_code_text((FIXTURES / "cyclic73_dual_60.cyc").read_text())
    assert src.kind == "cyclic" and src.dual and src.delete == (61, 73)
    C = src.build()
    assert (C.n, C.k) == (60, 7)

def test_every_fixture_loads():
    from hermself.fileformat import load_code

    names = sorted(p.name for p in FIXTURES.iterdir())
    assert len(names) == 6
    for name in names:
        assert load_code(FIXTURES / name).build().k > 0
