"""Exact Laurent polynomials in one variable v over the integers.

The coefficient ring for everything in this package is Z[v, v^-1].  A
polynomial is stored as a sparse map from exponent to nonzero integer
coefficient, so arithmetic is exact for arbitrarily large coefficients
and exponent spans.  The zero polynomial is the empty map.

>>> p = parse_poly("v^-1 - v")
>>> print(p * p)
v^-2-2+v^2
>>> print(p.bar())
-v^-1+v
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "LaurentPolynomial",
    "PolyParseError",
    "parse_poly",
    "format_poly",
    "ZERO",
    "ONE",
    "V",
    "V_INV",
]


class PolyParseError(ValueError):
    """Malformed polynomial text; carries the 0-based offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class LaurentPolynomial:
    """An element of Z[v, v^-1] in canonical sparse form.

    Instances are immutable values: all operations return new objects and
    never store a zero coefficient.  They may be shared freely between
    threads and used as dictionary keys.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, int], Iterable[tuple[int, int]]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        data: dict[int, int] = {}
        for exp, coeff in items:
            if coeff:
                data[exp] = data.get(exp, 0) + coeff
                if not data[exp]:
                    del data[exp]
        object.__setattr__(self, "_terms", data)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def monomial(cls, coeff: int, exp: int = 0) -> "LaurentPolynomial":
        return cls({exp: coeff}) if coeff else cls()

    # -- inspection ---------------------------------------------------------

    def coeff(self, exp: int) -> int:
        """Coefficient of v**exp (0 when absent)."""
        return self._terms.get(exp, 0)

    def items(self) -> tuple[tuple[int, int], ...]:
        """Terms as (exponent, coefficient) pairs in ascending exponent order."""
        return tuple(sorted(self._terms.items()))

    def exponents(self) -> Iterator[int]:
        return iter(sorted(self._terms))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def is_nonnegative(self) -> bool:
        """True when every stored coefficient is positive (vacuously for 0)."""
        return all(c > 0 for c in self._terms.values())

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        data = dict(self._terms)
        for exp, coeff in other._terms.items():
            new = data.get(exp, 0) + coeff
            if new:
                data[exp] = new
            else:
                data.pop(exp, None)
        return _raw(data)

    __radd__ = __add__

    def __sub__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> "LaurentPolynomial":
        return _raw({e: -c for e, c in self._terms.items()})

    def __mul__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        data: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                new = data.get(e, 0) + c1 * c2
                if new:
                    data[e] = new
                else:
                    del data[e]
        return _raw(data)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            raise ValueError("negative powers of a general polynomial are not defined")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def bar(self) -> "LaurentPolynomial":
        """The ring involution sending v to v^-1 (every exponent is negated)."""
        return _raw({-e: c for e, c in self._terms.items()})

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({format_poly(self)!r})"


def _raw(data: dict[int, int]) -> LaurentPolynomial:
    """Wrap an already-canonical dict without copying."""
    poly = LaurentPolynomial.__new__(LaurentPolynomial)
    object.__setattr__(poly, "_terms", data)
    object.__setattr__(poly, "_hash", None)
    return poly


def _coerce(value: "LaurentPolynomial | int"):
    if isinstance(value, LaurentPolynomial):
        return value
    if isinstance(value, int):
        return _raw({0: value}) if value else ZERO
    return NotImplemented


ZERO = LaurentPolynomial()
ONE = LaurentPolynomial({0: 1})
V = LaurentPolynomial({1: 1})
V_INV = LaurentPolynomial({-1: 1})


def format_poly(poly: LaurentPolynomial) -> str:
    """Render in the bit-exact text form, ascending exponent order.

    >>> format_poly(parse_poly("1 + v^2"))
    '1+v^2'
    >>> format_poly(ZERO)
    '0'
    """
    if poly.is_zero:
        return "0"
    parts: list[str] = []
    for exp, coeff in poly.items():
        mag = abs(coeff)
        if exp == 0:
            body = str(mag)
        else:
            vpow = "v" if exp == 1 else f"v^{exp}"
            body = vpow if mag == 1 else f"{mag}*{vpow}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"-{body}" if coeff < 0 else f"+{body}")
    return "".join(parts)


def parse_poly(text: str) -> LaurentPolynomial:
    """Parse the polynomial grammar; raises PolyParseError with a position.

    Grammar: poly := "0" | term (("+"|"-") term)*, term := uint | uint "*"
    vpow | vpow, vpow := "v" | "v^" int.  Whitespace around operators is
    ignored and the leading term may carry a "-" sign.

    >>> parse_poly("v^-1 - v").items()
    ((-1, 1), (1, -1))
    """
    pos = 0
    end = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < end and text[pos].isspace():
            pos += 1

    def parse_uint() -> int:
        nonlocal pos
        start = pos
        while pos < end and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise PolyParseError("expected an unsigned integer", start)
        return int(text[start:pos])

    def parse_int() -> int:
        nonlocal pos
        neg = False
        if pos < end and text[pos] == "-":
            neg = True
            pos += 1
        value = parse_uint()
        return -value if neg else value

    def parse_vpow() -> int:
        nonlocal pos
        if pos >= end or text[pos] != "v":
            raise PolyParseError("expected 'v'", pos)
        pos += 1
        if pos < end and text[pos] == "^":
            pos += 1
            return parse_int()
        return 1

    def parse_term() -> tuple[int, int]:
        nonlocal pos
        if pos >= end:
            raise PolyParseError("expected a term", pos)
        if text[pos] == "v":
            return parse_vpow(), 1
        if text[pos].isdigit():
            coeff = parse_uint()
            mark = pos
            skip_ws()
            if pos < end and text[pos] == "*":
                pos += 1
                skip_ws()
                return parse_vpow(), coeff
            pos = mark
            return 0, coeff
        raise PolyParseError("expected a term", pos)

    terms: dict[int, int] = {}
    skip_ws()
    sign = 1
    if pos < end and text[pos] == "-":
        sign = -1
        pos += 1
        skip_ws()
    exp, coeff = parse_term()
    terms[exp] = terms.get(exp, 0) + sign * coeff
    while True:
        skip_ws()
        if pos >= end:
            break
        op = text[pos]
        if op not in "+-":
            raise PolyParseError("expected '+' or '-'", pos)
        pos += 1
        skip_ws()
        exp, coeff = parse_term()
        delta = coeff if op == "+" else -coeff
        terms[exp] = terms.get(exp, 0) + delta
    return LaurentPolynomial(terms)
