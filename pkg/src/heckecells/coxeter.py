"""Crystallographic Coxeter systems with exact reduced-word arithmetic.

A system is built from a symmetric Coxeter matrix (bond labels in
{2, 3, 4, 6, inf}) or from a generalized Cartan matrix.  Every group
element is carried in its unique ShortLex-minimal reduced word, so
equality of elements is equality of words.

All word manipulation goes through the integer root action: for a Cartan
matrix A the generator s_i acts on a root written in simple-root
coordinates by c_i -> c_i - sum_j A[i][j] c_j.  Real roots have all
coordinates of one sign, which gives exact descent tests, the exchange
deletion, and hence length-aware multiplication.  Coxeter-matrix input is
realized by a synthesized crystallographic Cartan matrix so the same
integer machinery applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "INF",
    "CoxeterError",
    "InfiniteSystemError",
    "CoxeterSystem",
    "CoxeterElement",
    "ParabolicDecomposition",
    "DeodharCase",
    "build_system",
    "preset_system",
    "load_system",
    "parse_system_text",
    "PRESETS",
    "from_word",
    "multiply",
    "length",
    "inverse",
    "descents",
    "bruhat_leq",
    "enumerate_elements",
    "minimal_reps",
    "coset_decompose",
    "deodhar_case",
    "parse_word",
    "word_to_str",
]

INF = math.inf

# bond label m_{s,t} determined by the product a_st * a_ts
_BOND_FROM_PRODUCT = {0: 2, 1: 3, 2: 4, 3: 6}
# integer realization of a bond for pure Coxeter-matrix input
_CARTAN_FROM_BOND = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3), INF: (-2, -2)}

_CRYSTALLOGRAPHIC_BONDS = (2, 3, 4, 6, INF)


class CoxeterError(ValueError):
    """Invalid Coxeter data or an operation outside its precondition."""


class InfiniteSystemError(CoxeterError):
    """An enumeration hit the element cap, so the group is treated as infinite."""


class CoxeterSystem:
    """A crystallographic Coxeter system (W, S).

    Generators carry positive integer labels.  Two systems compare equal
    when they have the same labels and the same Coxeter matrix; the Cartan
    matrix only drives the internal root model.
    """

    def __init__(
        self,
        labels: Sequence[int],
        coxeter_matrix: Sequence[Sequence[float]],
        cartan_matrix: Optional[Sequence[Sequence[int]]] = None,
        max_elements: int = 2_000_000,
    ):
        labels = tuple(int(s) for s in labels)
        if len(set(labels)) != len(labels):
            raise CoxeterError("generator labels must be distinct")
        if any(s <= 0 for s in labels):
            raise CoxeterError("generator labels must be positive integers")
        if sorted(labels) != list(labels):
            raise CoxeterError("generator labels must be listed in increasing order")
        n = len(labels)
        matrix = tuple(tuple(row) for row in coxeter_matrix)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise CoxeterError("Coxeter matrix shape does not match the labels")
        for i in range(n):
            if matrix[i][i] != 1:
                raise CoxeterError("Coxeter matrix must have diagonal 1")
            for j in range(i + 1, n):
                m = matrix[i][j]
                if m != matrix[j][i]:
                    raise CoxeterError("Coxeter matrix must be symmetric")
                if m not in _CRYSTALLOGRAPHIC_BONDS:
                    raise CoxeterError(
                        f"bond m={m} between {labels[i]} and {labels[j]} is not "
                        "crystallographic (allowed: 2, 3, 4, 6, inf)"
                    )
        if cartan_matrix is None:
            cartan = [[2] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    a, b = _CARTAN_FROM_BOND[matrix[i][j]]
                    cartan[i][j] = a
                    cartan[j][i] = b
            cartan_matrix = cartan
        self.labels = labels
        self.coxeter = matrix
        self.cartan = tuple(tuple(int(x) for x in row) for row in cartan_matrix)
        self.max_elements = max_elements
        self._idx = {s: i for i, s in enumerate(labels)}
        self._key = (labels, matrix)
        self._key_hash = hash(self._key)
        self._roots = tuple(
            tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
        )
        self._interned: dict[tuple[int, ...], CoxeterElement] = {}
        self._rmul_cache: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = {}
        self._lmul_cache: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = {}
        self._bruhat_cache: dict[tuple[tuple[int, ...], tuple[int, ...]], bool] = {}
        self._elements: Optional[tuple[CoxeterElement, ...]] = None
        self._known_infinite = False
        self._subsystems: dict[tuple[int, ...], CoxeterSystem] = {}
        self.caches: dict[str, dict] = {}

    # -- construction -------------------------------------------------------

    @classmethod
    def from_cartan(
        cls,
        cartan_matrix: Sequence[Sequence[int]],
        labels: Optional[Sequence[int]] = None,
        max_elements: int = 2_000_000,
    ) -> "CoxeterSystem":
        """Build the Weyl group of a generalized Cartan matrix."""
        matrix = [list(row) for row in cartan_matrix]
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise CoxeterError("Cartan matrix must be square")
        for i in range(n):
            if matrix[i][i] != 2:
                raise CoxeterError("Cartan matrix must have diagonal 2")
            for j in range(n):
                if i != j:
                    if matrix[i][j] > 0:
                        raise CoxeterError("Cartan off-diagonal entries must be <= 0")
                    if (matrix[i][j] == 0) != (matrix[j][i] == 0):
                        raise CoxeterError(
                            "Cartan matrix entries a_st and a_ts must vanish together"
                        )
        if labels is None:
            labels = range(1, n + 1)
        coxeter = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                if i != j:
                    product = matrix[i][j] * matrix[j][i]
                    coxeter[i][j] = _BOND_FROM_PRODUCT.get(product, INF)
        return cls(labels, coxeter, matrix, max_elements=max_elements)

    @classmethod
    def from_coxeter(
        cls,
        coxeter_matrix: Sequence[Sequence[float]],
        labels: Optional[Sequence[int]] = None,
        max_elements: int = 2_000_000,
    ) -> "CoxeterSystem":
        if labels is None:
            labels = range(1, len(coxeter_matrix) + 1)
        return cls(labels, coxeter_matrix, None, max_elements=max_elements)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CoxeterSystem):
            return self._key == other._key
        return NotImplemented

    def __hash__(self) -> int:
        return self._key_hash

    def __repr__(self) -> str:
        return f"CoxeterSystem(labels={self.labels})"

    @property
    def rank(self) -> int:
        return len(self.labels)

    def bond(self, s: int, t: int) -> float:
        return self.coxeter[self._idx[s]][self._idx[t]]

    # -- root action --------------------------------------------------------

    def _apply_gen(self, i: int, vec: tuple[int, ...]) -> tuple[int, ...]:
        row = self.cartan[i]
        pairing = sum(row[j] * vec[j] for j in range(len(vec)))
        if pairing:
            out = list(vec)
            out[i] -= pairing
            return tuple(out)
        return vec

    # -- word engine --------------------------------------------------------
    #
    # Words are tuples of generator labels; every word stored in an element
    # or used as a cache key is a ShortLex-minimal reduced word.

    def _check_letter(self, s: int) -> int:
        try:
            return self._idx[s]
        except KeyError:
            raise CoxeterError(f"unknown generator label {s!r}") from None

    def _rmul_word(self, word: tuple[int, ...], s: int) -> tuple[int, ...]:
        """Normal form of w*s given the normal form of w."""
        key = (word, s)
        cached = self._rmul_cache.get(key)
        if cached is not None:
            return cached
        si = self._check_letter(s)
        vec = self._roots[si]
        reduced = None
        for pos in range(len(word) - 1, -1, -1):
            i = self._idx[word[pos]]
            if vec == self._roots[i]:
                reduced = word[:pos] + word[pos + 1 :]
                break
            vec = self._apply_gen(i, vec)
        if reduced is None:
            reduced = word + (s,)
        result = self._shortlex(reduced)
        self._rmul_cache[key] = result
        return result

    def _lmul_word(self, word: tuple[int, ...], s: int) -> tuple[int, ...]:
        """Normal form of s*w given the normal form of w."""
        key = (word, s)
        cached = self._lmul_cache.get(key)
        if cached is not None:
            return cached
        si = self._check_letter(s)
        vec = self._roots[si]
        reduced = None
        for pos, letter in enumerate(word):
            i = self._idx[letter]
            if vec == self._roots[i]:
                reduced = word[:pos] + word[pos + 1 :]
                break
            vec = self._apply_gen(i, vec)
        if reduced is None:
            reduced = (s,) + word
        result = self._shortlex(reduced)
        self._lmul_cache[key] = result
        return result

    def _shortlex(self, reduced: tuple[int, ...]) -> tuple[int, ...]:
        """ShortLex normal form of a word known to be reduced.

        Repeatedly emits the smallest left descent; the forward exchange
        scan that certifies the descent also yields the deletion.
        """
        out: list[int] = []
        word = reduced
        while word:
            for s in self.labels:
                si = self._idx[s]
                vec = self._roots[si]
                deleted = None
                for pos, letter in enumerate(word):
                    i = self._idx[letter]
                    if vec == self._roots[i]:
                        deleted = word[:pos] + word[pos + 1 :]
                        break
                    vec = self._apply_gen(i, vec)
                if deleted is not None:
                    out.append(s)
                    word = deleted
                    break
            else:  # pragma: no cover - impossible for a reduced word
                raise AssertionError("nonempty reduced word without a left descent")
        return tuple(out)

    def _has_right_descent(self, word: tuple[int, ...], s: int) -> bool:
        si = self._check_letter(s)
        vec = self._roots[si]
        for pos in range(len(word) - 1, -1, -1):
            i = self._idx[word[pos]]
            if vec == self._roots[i]:
                return True
            vec = self._apply_gen(i, vec)
        return False

    def _has_left_descent(self, word: tuple[int, ...], s: int) -> bool:
        si = self._check_letter(s)
        vec = self._roots[si]
        for letter in word:
            i = self._idx[letter]
            if vec == self._roots[i]:
                return True
            vec = self._apply_gen(i, vec)
        return False

    # -- elements -----------------------------------------------------------

    def _intern(self, word: tuple[int, ...]) -> "CoxeterElement":
        el = self._interned.get(word)
        if el is None:
            el = CoxeterElement(self, word)
            self._interned[word] = el
        return el

    @property
    def identity(self) -> "CoxeterElement":
        return self._intern(())

    def generator(self, s: int) -> "CoxeterElement":
        self._check_letter(s)
        return self._intern((s,))

    def element(self, word: Union[str, Iterable[int]]) -> "CoxeterElement":
        """Normal form of the product of the listed generators."""
        if isinstance(word, str):
            word = parse_word(self, word)
        nf: tuple[int, ...] = ()
        for s in word:
            nf = self._rmul_word(nf, int(s))
        return self._intern(nf)

    # -- enumeration --------------------------------------------------------

    def elements(self) -> tuple["CoxeterElement", ...]:
        """All elements sorted by (length, ShortLex); InfiniteSystemError if capped."""
        if self._known_infinite:
            raise InfiniteSystemError(
                f"system exceeded the element cap ({self.max_elements})"
            )
        if self._elements is not None:
            return self._elements
        seen = {()}
        out: list[tuple[int, ...]] = [()]
        frontier: list[tuple[int, ...]] = [()]
        while frontier:
            step: set[tuple[int, ...]] = set()
            for word in frontier:
                for s in self.labels:
                    longer = self._rmul_word(word, s)
                    if len(longer) > len(word) and longer not in seen:
                        seen.add(longer)
                        step.add(longer)
                        if len(seen) > self.max_elements:
                            self._known_infinite = True
                            raise InfiniteSystemError(
                                "enumeration exceeded the element cap "
                                f"({self.max_elements}); treating the system as infinite"
                            )
            frontier = sorted(step)
            out.extend(frontier)
        self._elements = tuple(self._intern(w) for w in out)
        return self._elements

    def is_finite(self) -> bool:
        try:
            self.elements()
            return True
        except InfiniteSystemError:
            return False

    def order(self) -> int:
        return len(self.elements())

    @property
    def finiteness(self) -> tuple[str, Optional[int]]:
        return ("finite", self.order()) if self.is_finite() else ("infinite", None)

    def longest_element(self) -> "CoxeterElement":
        return self.elements()[-1]

    # -- parabolic subsystems -------------------------------------------------

    def subsystem(self, I: Iterable[int]) -> "CoxeterSystem":
        """The standard parabolic system on the generator subset I."""
        key = tuple(sorted(set(int(s) for s in I)))
        for s in key:
            self._check_letter(s)
        sub = self._subsystems.get(key)
        if sub is None:
            idx = [self._idx[s] for s in key]
            cartan = [[self.cartan[i][j] for j in idx] for i in idx]
            sub = CoxeterSystem.from_cartan(
                cartan, labels=key, max_elements=self.max_elements
            )
            self._subsystems[key] = sub
        return sub


class CoxeterElement:
    """A group element in ShortLex-minimal reduced normal form.

    Do not construct directly; use ``system.element`` / ``from_word`` or the
    arithmetic on existing elements.
    """

    __slots__ = ("system", "word", "_hash")

    def __init__(self, system: CoxeterSystem, word: tuple[int, ...]):
        self.system = system
        self.word = word
        self._hash = hash((system._key_hash, word))

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_identity(self) -> bool:
        return not self.word

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CoxeterElement):
            return self.word == other.word and self.system._key == other.system._key
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "CoxeterElement") -> bool:
        _require_same_system(self, other)
        return (len(self.word), self.word) < (len(other.word), other.word)

    def __le__(self, other: "CoxeterElement") -> bool:
        return self == other or self < other

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.word), self.word)

    def __mul__(self, other: "CoxeterElement") -> "CoxeterElement":
        return multiply(self, other)

    def times_gen(self, s: int) -> "CoxeterElement":
        """Right multiplication by a generator."""
        return self.system._intern(self.system._rmul_word(self.word, s))

    def gen_times(self, s: int) -> "CoxeterElement":
        """Left multiplication by a generator."""
        return self.system._intern(self.system._lmul_word(self.word, s))

    def inverse(self) -> "CoxeterElement":
        rev = tuple(reversed(self.word))
        return self.system._intern(self.system._shortlex(rev))

    def descents(self, side: str = "right") -> tuple[int, ...]:
        if side == "right":
            test = self.system._has_right_descent
        elif side == "left":
            test = self.system._has_left_descent
        else:
            raise CoxeterError(f"side must be 'left' or 'right', not {side!r}")
        return tuple(s for s in self.system.labels if test(self.word, s))

    def __str__(self) -> str:
        return word_to_str(self.word)

    def __repr__(self) -> str:
        return f"<{word_to_str(self.word)}>"


@dataclass(frozen=True)
class ParabolicDecomposition:
    """w = left_factor * right_factor with additive length.

    For the left quotient the left factor lies in W_I and the right factor
    in the minimal representatives of W_I\\W; for the right quotient the
    roles are mirrored.
    """

    left_factor: CoxeterElement
    right_factor: CoxeterElement
    side: str

    @property
    def product(self) -> CoxeterElement:
        return multiply(self.left_factor, self.right_factor)


@dataclass(frozen=True)
class DeodharCase:
    """Outcome of multiplying a minimal representative y by a generator s.

    kind is "longer" or "shorter" when ys stays a minimal representative,
    and "folds" when ys = ty for the generator t = y s y^{-1} in I.
    """

    kind: str
    element: CoxeterElement
    fold: Optional[int] = None


def _require_same_system(a: CoxeterElement, b: CoxeterElement) -> None:
    if a.system._key != b.system._key:
        raise CoxeterError("elements belong to different Coxeter systems")


# -- public operations --------------------------------------------------------


def from_word(system: CoxeterSystem, word: Union[str, Iterable[int]]) -> CoxeterElement:
    """Normal form of the product of the listed generators."""
    return system.element(word)


def multiply(a: CoxeterElement, b: CoxeterElement) -> CoxeterElement:
    _require_same_system(a, b)
    word = a.word
    system = a.system
    for s in b.word:
        word = system._rmul_word(word, s)
    return system._intern(word)


def length(a: CoxeterElement) -> int:
    return a.length


def inverse(a: CoxeterElement) -> CoxeterElement:
    return a.inverse()


def descents(a: CoxeterElement, side: str = "right") -> tuple[int, ...]:
    return a.descents(side)


def bruhat_leq(a: CoxeterElement, b: CoxeterElement) -> bool:
    """Bruhat order via the lifting property.

    For a right descent s of b: a <= b iff (as <= bs when s descends a,
    else a <= bs).  Recursion on the length of b, memoized per system.
    """
    _require_same_system(a, b)
    system = a.system
    cache = system._bruhat_cache
    stack: list[tuple[tuple[int, ...], tuple[int, ...]]] = [(a.word, b.word)]
    # iterative evaluation of the descent recursion; each pair reduces b by one
    while stack:
        wa, wb = stack[-1]
        key = (wa, wb)
        if key in cache:
            stack.pop()
            continue
        if not wa:
            cache[key] = True
            stack.pop()
            continue
        if len(wa) > len(wb):
            cache[key] = False
            stack.pop()
            continue
        s = wb[-1]
        wbs = wb[:-1]  # prefix of a ShortLex form is again a ShortLex form
        if system._has_right_descent(wa, s):
            sub = (system._rmul_word(wa, s), wbs)
        else:
            sub = (wa, wbs)
        if sub in cache:
            cache[key] = cache[sub]
            stack.pop()
        else:
            stack.append(sub)
    return cache[(a.word, b.word)]


def enumerate_elements(system: CoxeterSystem) -> tuple[CoxeterElement, ...]:
    """All elements of a finite system, sorted by (length, ShortLex)."""
    return system.elements()


def _is_minimal_rep(system: CoxeterSystem, word: tuple[int, ...], I: tuple[int, ...], side: str) -> bool:
    if side == "left":
        return not any(system._has_left_descent(word, t) for t in I)
    return not any(system._has_right_descent(word, t) for t in I)


def minimal_reps(
    system: CoxeterSystem,
    I: Iterable[int],
    side: str = "left",
    max_length: Optional[int] = None,
) -> tuple[CoxeterElement, ...]:
    """Minimal coset representatives, sorted by (length, ShortLex).

    side "left" gives the representatives of W_I\\W (no left descent in I)
    and side "right" those of W/W_I.  Infinite systems require max_length.
    """
    I = tuple(sorted(set(int(s) for s in I)))
    if side not in ("left", "right"):
        raise CoxeterError(f"side must be 'left' or 'right', not {side!r}")
    if I and not system.subsystem(I).is_finite():
        raise CoxeterError(f"I={I} is not finitary (W_I is infinite)")
    if max_length is None and not system.is_finite():
        raise InfiniteSystemError(
            "minimal_reps on an infinite system requires max_length"
        )
    extend = system._rmul_word if side == "left" else system._lmul_word
    seen = {()}
    out: list[tuple[int, ...]] = [()]
    frontier: list[tuple[int, ...]] = [()]
    while frontier:
        step: set[tuple[int, ...]] = set()
        for word in frontier:
            if max_length is not None and len(word) >= max_length:
                continue
            for s in system.labels:
                longer = extend(word, s)
                if (
                    len(longer) > len(word)
                    and longer not in seen
                    and _is_minimal_rep(system, longer, I, side)
                ):
                    seen.add(longer)
                    step.add(longer)
        frontier = sorted(step)
        out.extend(frontier)
    return tuple(system._intern(w) for w in out)


def coset_decompose(
    system: CoxeterSystem,
    I: Iterable[int],
    w: CoxeterElement,
    side: str = "left",
) -> ParabolicDecomposition:
    """Unique factorization w = x*y (x in W_I, y minimal) or its mirror."""
    I = tuple(sorted(set(int(s) for s in I)))
    if w.system._key != system._key:
        raise CoxeterError("element does not belong to the given system")
    for t in I:
        system._check_letter(t)
    if side == "left":
        y = w.word
        x: list[int] = []
        while True:
            for t in I:
                if system._has_left_descent(y, t):
                    y = system._lmul_word(y, t)
                    x.append(t)
                    break
            else:
                break
        left = system.element(x)
        right = system._intern(y)
        return ParabolicDecomposition(left, right, "left")
    if side == "right":
        y = w.word
        x: list[int] = []
        while True:
            for t in I:
                if system._has_right_descent(y, t):
                    y = system._rmul_word(y, t)
                    x.append(t)
                    break
            else:
                break
        right = system.element(reversed(x))
        left = system._intern(y)
        return ParabolicDecomposition(left, right, "right")
    raise CoxeterError(f"side must be 'left' or 'right', not {side!r}")


def deodhar_case(
    system: CoxeterSystem,
    I: Iterable[int],
    y: CoxeterElement,
    s: int,
) -> DeodharCase:
    """Trichotomy for y in the minimal representatives and a generator s."""
    I = tuple(sorted(set(int(t) for t in I)))
    if y.system._key != system._key:
        raise CoxeterError("element does not belong to the given system")
    if not _is_minimal_rep(system, y.word, I, "left"):
        raise CoxeterError(f"{y} is not a minimal representative for I={I}")
    ys = y.times_gen(s)
    if _is_minimal_rep(system, ys.word, I, "left"):
        kind = "longer" if ys.length > y.length else "shorter"
        return DeodharCase(kind, ys)
    t = multiply(multiply(y, system.generator(s)), y.inverse())
    if t.length != 1 or t.word[0] not in I:
        raise AssertionError(f"Deodhar fold y s y^-1 = {t} is not a generator of I")
    if ys.length != y.length + 1:
        raise AssertionError("Deodhar fold without the expected length increase")
    return DeodharCase("folds", ys, fold=t.word[0])


# -- word text form -----------------------------------------------------------


def word_to_str(word: Sequence[int]) -> str:
    """Compact digits for labels 1..9, comma-separated otherwise; identity is "e"."""
    if not word:
        return "e"
    if all(1 <= s <= 9 for s in word):
        return "".join(str(s) for s in word)
    return ",".join(str(s) for s in word)


def parse_word(system: CoxeterSystem, text: str) -> tuple[int, ...]:
    """Inverse of word_to_str; accepts "e" and "id" for the identity."""
    text = text.strip()
    if text in ("e", "id", ""):
        return ()
    if "," in text:
        letters = tuple(int(part.strip()) for part in text.split(","))
    else:
        if not text.isdigit():
            raise CoxeterError(f"cannot parse word {text!r}")
        letters = tuple(int(ch) for ch in text)
    for s in letters:
        system._check_letter(s)
    return letters


# -- presets and system files ---------------------------------------------------

PRESETS: dict[str, tuple[tuple[int, ...], ...]] = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    "B2": ((2, -2), (-1, 2)),
    "C3": ((2, -2, 0), (-1, 2, -1), (0, -1, 2)),
    "G2": ((2, -1), (-3, 2)),
}

_preset_instances: dict[str, CoxeterSystem] = {}


def preset_system(name: str) -> CoxeterSystem:
    key = name.strip().upper()
    if key not in PRESETS:
        raise CoxeterError(
            f"unknown system preset {name!r} (available: {', '.join(sorted(PRESETS))})"
        )
    if key not in _preset_instances:
        _preset_instances[key] = CoxeterSystem.from_cartan(PRESETS[key])
    return _preset_instances[key]


def build_system(spec: Union[str, Path, Sequence[Sequence[int]]], kind: str = "auto") -> CoxeterSystem:
    """Build a system from a preset name, a file path, or a matrix.

    A matrix argument is interpreted per ``kind``: "cartan", "coxeter", or
    "auto" (diagonal 2 means Cartan, diagonal 1 means Coxeter).
    """
    if isinstance(spec, (str, Path)):
        text = str(spec)
        if text.strip().upper() in PRESETS:
            return preset_system(text)
        path = Path(text)
        if not path.exists():
            raise CoxeterError(
                f"{text!r} is neither a preset ({', '.join(sorted(PRESETS))}) "
                "nor an existing system file"
            )
        return load_system(path)
    rows = [list(row) for row in spec]
    if kind == "auto":
        if rows and rows[0] and rows[0][0] == 2:
            kind = "cartan"
        elif rows and rows[0] and rows[0][0] == 1:
            kind = "coxeter"
        else:
            raise CoxeterError("cannot infer matrix kind from the diagonal")
    if kind == "cartan":
        return CoxeterSystem.from_cartan(rows)
    if kind == "coxeter":
        return CoxeterSystem.from_coxeter(rows)
    raise CoxeterError(f"unknown matrix kind {kind!r}")


def parse_system_text(text: str, source: str = "<string>") -> CoxeterSystem:
    """Parse the system file format (fields: labels, then cartan or coxeter)."""
    labels: Optional[list[int]] = None
    matrix_kind: Optional[str] = None
    matrix_rows: list[list[float]] = []
    expecting_rows = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("labels"):
            _, _, rest = line.partition(":")
            if not rest.strip():
                raise CoxeterError(f"{source}:{lineno}: empty labels field")
            labels = [int(tok) for tok in rest.replace(",", " ").split()]
            expecting_rows = False
            continue
        if line.rstrip(":") in ("cartan", "coxeter"):
            if matrix_kind is not None:
                raise CoxeterError(
                    f"{source}:{lineno}: exactly one of cartan/coxeter is allowed"
                )
            matrix_kind = line.rstrip(":")
            expecting_rows = True
            continue
        if expecting_rows:
            row: list[float] = []
            for tok in line.replace(",", " ").split():
                if tok.lower() in ("inf", "infinity"):
                    row.append(INF)
                else:
                    row.append(int(tok))
            matrix_rows.append(row)
            continue
        raise CoxeterError(f"{source}:{lineno}: unrecognized line {raw!r}")
    if labels is None:
        raise CoxeterError(f"{source}: missing labels field")
    if matrix_kind is None or not matrix_rows:
        raise CoxeterError(f"{source}: missing cartan or coxeter matrix")
    if matrix_kind == "cartan":
        if any(x == INF for row in matrix_rows for x in row):
            raise CoxeterError(f"{source}: 'inf' is only allowed in a coxeter matrix")
        return CoxeterSystem.from_cartan(
            [[int(x) for x in row] for row in matrix_rows], labels=labels
        )
    return CoxeterSystem.from_coxeter(matrix_rows, labels=labels)


def load_system(path: Union[str, Path]) -> CoxeterSystem:
    path = Path(path)
    return parse_system_text(path.read_text(), source=str(path))
