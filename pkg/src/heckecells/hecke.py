"""The Hecke algebra in the standard basis.

Elements are finitely supported maps from group elements to Laurent
polynomials.  Products are computed by peeling generators off normal
forms and applying the quadratic relation H_s^2 = (v^-1 - v) H_s + 1;
the bar involution uses H_s^-1 = H_s + (v - v^-1) along reduced words
and is memoized per basis element.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

from .coxeter import CoxeterElement, CoxeterError, CoxeterSystem, word_to_str
from .laurent import LaurentPolynomial, ONE, V, V_INV, ZERO, format_poly

__all__ = [
    "HeckeElement",
    "std_multiply",
    "mult_gen_right",
    "mult_gen_left",
    "bar_involution",
    "iota",
    "parabolic_embed",
    "parabolic_restrict",
]

_QUAD = V_INV - V  # coefficient in H_s^2 = (v^-1 - v) H_s + 1
_BAR_GEN = V - V_INV  # bar(H_s) = H_s + (v - v^-1) H_e

Scalar = Union[LaurentPolynomial, int]


class HeckeElement:
    """A finitely supported Z[v,v^-1]-combination of standard basis elements."""

    __slots__ = ("system", "_coeffs")

    def __init__(
        self,
        system: CoxeterSystem,
        coeffs: Mapping[CoxeterElement, Scalar] = (),
    ):
        data: dict[CoxeterElement, LaurentPolynomial] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for x, c in items:
            if isinstance(c, int):
                c = LaurentPolynomial.monomial(c)
            if not c.is_zero:
                data[x] = data.get(x, ZERO) + c
                if data[x].is_zero:
                    del data[x]
        self.system = system
        self._coeffs = data

    @classmethod
    def zero(cls, system: CoxeterSystem) -> "HeckeElement":
        return cls(system)

    @classmethod
    def std(cls, x: CoxeterElement) -> "HeckeElement":
        """The standard basis element H_x."""
        return cls(x.system, {x: ONE})

    @classmethod
    def unit(cls, system: CoxeterSystem) -> "HeckeElement":
        return cls(system, {system.identity: ONE})

    # -- inspection ---------------------------------------------------------

    def coeff(self, x: CoxeterElement) -> LaurentPolynomial:
        return self._coeffs.get(x, ZERO)

    def support(self) -> tuple[CoxeterElement, ...]:
        return tuple(sorted(self._coeffs, key=lambda x: x.sort_key()))

    def items(self) -> tuple[tuple[CoxeterElement, LaurentPolynomial], ...]:
        return tuple((x, self._coeffs[x]) for x in self.support())

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        data = dict(self._coeffs)
        for x, c in other._coeffs.items():
            new = data.get(x, ZERO) + c
            if new.is_zero:
                data.pop(x, None)
            else:
                data[x] = new
        return _raw(self.system, data)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def __neg__(self) -> "HeckeElement":
        return _raw(self.system, {x: -c for x, c in self._coeffs.items()})

    def scale(self, scalar: Scalar) -> "HeckeElement":
        if isinstance(scalar, int):
            scalar = LaurentPolynomial.monomial(scalar)
        if scalar.is_zero:
            return HeckeElement.zero(self.system)
        return _raw(self.system, {x: c * scalar for x, c in self._coeffs.items()})

    def __mul__(self, other: "HeckeElement | Scalar") -> "HeckeElement":
        if isinstance(other, HeckeElement):
            return std_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other: Scalar) -> "HeckeElement":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HeckeElement):
            return self.system == other.system and self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.system, frozenset(self._coeffs.items())))

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for x in sorted(self._coeffs, key=lambda el: el.sort_key(), reverse=True):
            c = self._coeffs[x]
            text = format_poly(c)
            if len(c.items()) > 1 or text.startswith("-"):
                text = f"({text})"
            parts.append(f"{text}*H({word_to_str(x.word)})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"HeckeElement({self})"

    def _check(self, other: "HeckeElement") -> None:
        if self.system != other.system:
            raise CoxeterError("Hecke elements belong to different systems")


def _raw(system: CoxeterSystem, data: dict) -> HeckeElement:
    el = HeckeElement.__new__(HeckeElement)
    el.system = system
    el._coeffs = data
    return el


def _add_term(data: dict, x: CoxeterElement, c: LaurentPolynomial) -> None:
    new = data.get(x, ZERO) + c
    if new.is_zero:
        data.pop(x, None)
    else:
        data[x] = new


def mult_gen_right(a: HeckeElement, s: int) -> HeckeElement:
    """a * H_s."""
    data: dict[CoxeterElement, LaurentPolynomial] = {}
    for x, c in a._coeffs.items():
        xs = x.times_gen(s)
        _add_term(data, xs, c)
        if xs.length < x.length:
            _add_term(data, x, c * _QUAD)
    return _raw(a.system, data)


def mult_gen_left(a: HeckeElement, s: int) -> HeckeElement:
    """H_s * a."""
    data: dict[CoxeterElement, LaurentPolynomial] = {}
    for x, c in a._coeffs.items():
        sx = x.gen_times(s)
        _add_term(data, sx, c)
        if sx.length < x.length:
            _add_term(data, x, c * _QUAD)
    return _raw(a.system, data)


def std_multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product in the standard basis, peeling generators off b's normal forms."""
    a._check(b)
    total: dict[CoxeterElement, LaurentPolynomial] = {}
    for y, c in b.items():
        partial = a
        for s in y.word:
            partial = mult_gen_right(partial, s)
        for x, d in partial._coeffs.items():
            _add_term(total, x, d * c)
    return _raw(a.system, total)


def _bar_std(system: CoxeterSystem, x: CoxeterElement) -> HeckeElement:
    """bar(H_x) = bar(H_s1) ... bar(H_sk) along the normal form, memoized.

    Safe under concurrent use: inserts are idempotent values.
    """
    cache = system.caches.setdefault("hecke_bar_std", {})
    found = cache.get(x.word)
    if found is not None:
        return found
    if x.is_identity:
        result = HeckeElement.unit(system)
    else:
        prefix = system._intern(x.word[:-1])  # prefix of a normal form is one
        s = x.word[-1]
        left = _bar_std(system, prefix)
        result = mult_gen_right(left, s) + left.scale(_BAR_GEN)
    cache[x.word] = result
    return result


def bar_involution(a: HeckeElement) -> HeckeElement:
    """The Z-linear ring involution with v -> v^-1 and H_x -> (H_{x^-1})^-1."""
    total: dict[CoxeterElement, LaurentPolynomial] = {}
    for x, c in a._coeffs.items():
        cbar = c.bar()
        for y, d in _bar_std(a.system, x)._coeffs.items():
            _add_term(total, y, d * cbar)
    return _raw(a.system, total)


def iota(a: HeckeElement) -> HeckeElement:
    """The Z[v,v^-1]-linear anti-involution fixing the generators: H_x -> H_{x^-1}."""
    return _raw(a.system, {x.inverse(): c for x, c in a._coeffs.items()})


def _subsystem_of(ambient: CoxeterSystem, labels: Iterable[int]) -> CoxeterSystem:
    return ambient.subsystem(tuple(sorted(set(labels))))


def parabolic_embed(a: HeckeElement, ambient: CoxeterSystem) -> HeckeElement:
    """Relabel an element of H(W_I, I) into H(W, S) along W_I <= W.

    Normal forms in the parabolic subgroup are normal forms in the ambient
    group, so this is a coefficient-preserving word relabeling.
    """
    sub = a.system
    expected = _subsystem_of(ambient, sub.labels)
    if sub != expected:
        raise CoxeterError(
            "element's system is not the standard parabolic subsystem "
            f"of the ambient system on labels {sub.labels}"
        )
    return _raw(ambient, {ambient._intern(x.word): c for x, c in a._coeffs.items()})


def parabolic_restrict(a: HeckeElement, I: Iterable[int]) -> HeckeElement:
    """Inverse relabeling onto H(W_I, I); support must lie in W_I."""
    I = tuple(sorted(set(int(s) for s in I)))
    sub = a.system.subsystem(I)
    allowed = set(I)
    data = {}
    for x, c in a._coeffs.items():
        if not set(x.word) <= allowed:
            raise CoxeterError(
                f"support element {x} lies outside the parabolic subgroup on {I}"
            )
        data[sub._intern(x.word)] = c
    return _raw(sub, data)
