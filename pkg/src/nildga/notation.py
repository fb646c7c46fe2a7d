"""Salamon shorthand: parse "(0,0,0,12,13+42,14+23)" style listings, print them back,
and serve the built-in catalog h1..h17.

A term is an optional unsigned integer coefficient followed by exactly two digits;
"42" normalizes to coefficient -1 on the pair (2,4).  A leading '-' (or '+') on the
first term of an entry is accepted.
"""

from __future__ import annotations

import re as _re

from .exterior import BasisSpace, Multivector, bits
from .lie import LieAlgebra, check_jacobi


class ParseError(ValueError):
    """Syntax error; carries the 0-based offset into the input text."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class ForwardReference(ValueError):
    def __init__(self, entry, index):
        super().__init__(
            f"entry {entry} references e{index}, violating the filtration"
        )
        self.entry = entry
        self.index = index


class NonIntegerCoefficient(ValueError):
    pass


class UnknownName(KeyError):
    pass


def _parse_term(text, pos):
    m = _re.fullmatch(r"(\d+)", text)
    if not m or len(text) < 2:
        raise ParseError(f"malformed term {text!r}", pos)
    coeff_s, i_s, j_s = text[:-2], text[-2], text[-1]
    coeff = int(coeff_s) if coeff_s else 1
    if coeff == 0:
        raise ParseError("zero coefficient", pos)
    i, j = int(i_s), int(j_s)
    if i == 0 or j == 0:
        raise ParseError("basis indices start at 1", pos)
    if i == j:
        raise ParseError(f"repeated index in pair {i}{j}", pos)
    if i > j:
        i, j = j, i
        coeff = -coeff
    return coeff, i, j


def parse(text: str, malcev: bool = False) -> LieAlgebra:
    """Parse a structure-equation listing into a LieAlgebra over Q."""
    s = text.strip()
    if not s:
        raise ParseError("empty input", 0)
    base = text.index(s[0])
    if not s.startswith("(") or not s.endswith(")"):
        raise ParseError("expected parenthesized listing", base)
    inner = s[1:-1]
    entries = []
    pos = base + 1
    for part in inner.split(","):
        entries.append((part, pos))
        pos += len(part) + 1
    dim = len(entries)
    if not 1 <= dim <= 8:
        raise ParseError(f"{dim} entries; supported range is 1..8", base)
    space = BasisSpace(dim)
    d1 = []
    for k, (part, ppos) in enumerate(entries):
        body = part.strip()
        tpos = ppos + (len(part) - len(part.lstrip()))
        if not body:
            raise ParseError("empty entry", ppos)
        if body == "0":
            d1.append(Multivector.zero(space))
            continue
        terms = {}
        # split into signed chunks, allowing one leading sign
        chunks = _re.findall(r"[+-]?[^+-]+", body)
        if "".join(chunks) != body:
            raise ParseError(f"malformed entry {body!r}", tpos)
        for chunk in chunks:
            sign = 1
            raw = chunk
            if raw[0] in "+-":
                sign = -1 if raw[0] == "-" else 1
                raw = raw[1:]
            coeff, i, j = _parse_term(raw, tpos)
            if j > dim:
                raise ParseError(f"index {j} exceeds dimension {dim}", tpos)
            if malcev and j > k:
                raise ForwardReference(k + 1, j)
            key = (i - 1, j - 1)
            terms[key] = terms.get(key, 0) + sign * coeff
            tpos += len(chunk)
        mv = Multivector.zero(space)
        for (i, j), c in terms.items():
            if c:
                mv = mv + Multivector.mono(space, (i, j), c)
        d1.append(mv)
    return LieAlgebra(space, d1, field="Q", malcev=malcev)


def print_algebra(g: LieAlgebra) -> str:
    """Canonical listing: ascending pairs, explicit signs, coefficient 1 implicit."""
    entries = []
    for dk in g.d1:
        if dk.is_zero():
            entries.append("0")
            continue
        parts = []
        for mask in sorted(dk.coeffs):
            c = dk.coeffs[mask]
            if c.im != 0 or c.re.denominator != 1:
                raise NonIntegerCoefficient(f"coefficient {c} is not an integer")
            n = c.re.numerator
            i, j = list(bits(mask))
            body = f"{i + 1}{j + 1}" if abs(n) == 1 else f"{abs(n)}{i + 1}{j + 1}"
            if n < 0:
                parts.append("-" + body)
            elif parts:
                parts.append("+" + body)
            else:
                parts.append(body)
        entries.append("".join(parts))
    return "(" + ",".join(entries) + ")"


CATALOG_EQUATIONS = {
    "h1": "(0,0,0,0,0,0)",
    "h2": "(0,0,0,0,12,34)",
    "h3": "(0,0,0,0,0,12+34)",
    "h4": "(0,0,0,0,12,14+23)",
    "h5": "(0,0,0,0,13+42,14+23)",
    "h6": "(0,0,0,0,12,13)",
    "h7": "(0,0,0,12,13,23)",
    "h8": "(0,0,0,0,0,12)",
    "h9": "(0,0,0,0,12,14+25)",
    "h10": "(0,0,0,12,13,14)",
    "h11": "(0,0,0,12,13,14+23)",
    "h12": "(0,0,0,12,13,24)",
    "h13": "(0,0,0,12,13+14,24)",
    "h14": "(0,0,0,12,14,13+24)",
    "h15": "(0,0,0,12,13+42,14+23)",
    "h16": "(0,0,0,12,14,24)",
    "h17": "(0,0,0,0,12,15)",
}

_CATALOG = None


def catalog() -> dict:
    global _CATALOG
    if _CATALOG is None:
        built = {}
        for name, eq in CATALOG_EQUATIONS.items():
            g = parse(eq, malcev=True)
            if not check_jacobi(g):
                raise AssertionError(f"catalog entry {name} fails Jacobi")
            built[name] = g
        _CATALOG = built
    return dict(_CATALOG)


def catalog_lookup(name: str) -> LieAlgebra:
    try:
        return catalog()[name]
    except KeyError:
        raise UnknownName(name) from None
