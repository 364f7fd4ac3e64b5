import json

import pytest

from errors import DomainError
from algebra.hyperalg import HyperAlgebra, hyperdet_normalized
from algebra.ncalg import GenId, NCPoly
from algebra.qseries import q_pow
from algebra.render import gen_to_latex, gen_to_text, poly_from_json, poly_to_json, poly_to_latex, poly_to_text


def test_generator_names():
    assert gen_to_text(GenId(0, "a", (1, 2))) == "a[1,2]"
    assert gen_to_text(GenId(1, "b", (3, 4))) == "b[3,4]@1"
    assert gen_to_latex(GenId(0, "a", (1, 2, 1))) == "a_{121}"
    assert gen_to_latex(GenId(0, "a", (1, 12))) == "a_{1,12}"


def test_text_uses_signed_monomial_coefficients():
    x, y = NCPoly.of(GenId(0, "a", (1,))), NCPoly.of(GenId(0, "a", (2,)))
    p = x * y - (y * x).scale(q_pow(1))
    assert poly_to_text(p) == "a[1].a[2] - q*a[2].a[1]"
    assert poly_to_text(NCPoly.zero()) == "0"


def test_latex_pulls_out_the_common_denominator():
    det = hyperdet_normalized(HyperAlgebra.cube(2, 3))
    latex = poly_to_latex(det)
    assert latex.startswith("\\frac{1}{1 + q^{2}}")
    assert "a_{111}a_{222}" in latex


def test_json_reparses_to_an_equal_polynomial():
    det = hyperdet_normalized(HyperAlgebra.cube(2, 3))
    payload = json.dumps(poly_to_json(det))
    assert poly_from_json(payload) == det


def test_malformed_json_is_a_domain_error():
    with pytest.raises(DomainError):
        poly_from_json([{"word": []}])
    with pytest.raises(DomainError):
        poly_from_json([{"word": [{"comp": 0}], "coeff": {"num": [[0, 1]], "den": [[0, 1]]}}])
    with pytest.raises(DomainError):
        poly_from_json("{not json")
