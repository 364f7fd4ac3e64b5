"""Text, LaTeX and JSON forms of coefficients and polynomials."""

import json
from typing import Any

from errors import DomainError
from algebra.qseries import LaurentV, RationalFn, ONE_V, common_denominator
from algebra.ncalg import GenId, NCPoly, PolyBuilder, Word


# -- text ---------------------------------------------------------------------

def gen_to_text(g: GenId) -> str:
    body = f"{g.name}[{','.join(str(i) for i in g.index)}]"
    return f"{body}@{g.component}" if g.component else body


def word_to_text(word: Word) -> str:
    return ".".join(gen_to_text(g) for g in word) if word else "1"


def _split_sign(c: RationalFn) -> tuple[bool, RationalFn]:
    """(negative, magnitude) when the coefficient is a signed monomial."""
    if c.den.is_one() and c.num.is_monomial():
        (e, x), = c.num.items()
        if x < 0:
            return True, RationalFn._raw(LaurentV({e: -x}), ONE_V)
    return False, c


def poly_to_text(p: NCPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for word, c in p.sorted_terms():
        negative, mag = _split_sign(c)
        simple = mag.den.is_one() and mag.num.is_monomial()
        if not word:
            body = mag.to_text() if simple else f"({mag.to_text()})"
        elif mag.is_one():
            body = word_to_text(word)
        elif simple:
            body = f"{mag.to_text()}*{word_to_text(word)}"
        else:
            body = f"({mag.to_text()})*{word_to_text(word)}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


# -- LaTeX ----------------------------------------------------------------------

def _latex_mono(e: int) -> str:
    if e == 0:
        return ""
    if e % 2:
        return f"q^{{{e}/2}}"
    k = e // 2
    return "q" if k == 1 else f"q^{{{k}}}"


def laurent_to_latex(p: LaurentV) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.items():
        mono, mag = _latex_mono(e), abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


def coeff_to_latex(c: RationalFn) -> str:
    if c.den.is_one():
        return laurent_to_latex(c.num)
    return f"\\frac{{{laurent_to_latex(c.num)}}}{{{laurent_to_latex(c.den)}}}"


def gen_to_latex(g: GenId) -> str:
    if all(i < 10 for i in g.index):
        sub = "".join(str(i) for i in g.index)
    else:
        sub = ",".join(str(i) for i in g.index)
    return f"{g.name}_{{{sub}}}"


def word_to_latex(word: Word) -> str:
    if not word:
        return "1"
    groups: list[list[str]] = []
    last = None
    for g in word:
        if g.component != last:
            groups.append([])
            last = g.component
        groups[-1].append(gen_to_latex(g))
    return " \\otimes ".join("".join(group) for group in groups)


def poly_to_latex(p: NCPoly) -> str:
    """
    LaTeX with subscripts in the a_{121} style.

    When the coefficients share a nontrivial denominator it is pulled out
    in front as \\frac{1}{D}.
    """
    if p.is_zero():
        return "0"
    terms = p.sorted_terms()
    denom = common_denominator(c for _, c in terms)
    scale = RationalFn.from_laurent(denom)
    parts = []
    for word, c in terms:
        c = c * scale
        negative, mag = _split_sign(c)
        simple = mag.den.is_one() and mag.num.is_monomial()
        if mag.is_one():
            body = word_to_latex(word)
        elif simple:
            body = coeff_to_latex(mag) + ("" if not word else word_to_latex(word))
        else:
            body = f"\\left({coeff_to_latex(mag)}\\right)" + ("" if not word else word_to_latex(word))
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    body = " ".join(parts)
    if denom.is_one():
        return body
    return f"\\frac{{1}}{{{laurent_to_latex(denom)}}}\\left({body}\\right)"


# -- JSON -----------------------------------------------------------------------

def coeff_to_json(c: RationalFn) -> dict:
    return {"num": [[e, x] for e, x in c.num.items()], "den": [[e, x] for e, x in c.den.items()]}


def coeff_from_json(data: dict) -> RationalFn:
    try:
        num = LaurentV({int(e): int(x) for e, x in data["num"]})
        den = LaurentV({int(e): int(x) for e, x in data["den"]})
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed coefficient: {data!r}") from exc
    return RationalFn(num, den)


def gen_to_json(g: GenId) -> dict:
    return {"comp": g.component, "name": g.name, "idx": list(g.index)}


def gen_from_json(data: dict) -> GenId:
    try:
        return GenId(int(data["comp"]), str(data["name"]), tuple(int(i) for i in data["idx"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed generator: {data!r}") from exc


def poly_to_json(p: NCPoly) -> list[dict[str, Any]]:
    return [
        {"coeff": coeff_to_json(c), "word": [gen_to_json(g) for g in word]}
        for word, c in p.sorted_terms()
    ]


def poly_from_json(data: list[dict[str, Any]] | str) -> NCPoly:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise DomainError(f"not a JSON polynomial: {exc}") from exc
    builder = PolyBuilder()
    for term in data:
        try:
            word, coeff = term["word"], term["coeff"]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed term: {term!r}") from exc
        builder.add_term([gen_from_json(g) for g in word], coeff_from_json(coeff))
    return builder.build()
