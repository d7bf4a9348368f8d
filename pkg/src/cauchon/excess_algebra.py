"""The excess group and the mod-3 quotient algebra that detects primitivity.

An element of the excess group is ``(v, h, sign)`` with ``v`` and ``h`` row
parity vectors (stored as bitmasks, bit ``i - 1`` for row ``i``) and ``v`` of
even weight.  Group-algebra elements over GF(3) are kept modulo the ideal that
identifies ``(0, 0, -1)`` with ``-1``, so a basis element ``(v, h, -1)`` is
folded to ``-(v, h, +1)`` and an element is a coefficient vector indexed by
the ``2 ** (2m - 1)`` pairs ``(v, h)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable

from .diagram import Diagram, letter_of, row_parity_mask
from .pfaffian import Decomposition, decomposition_sign, decompositions, excess

MAX_STATS_ROWS = 5


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _as_mask(bits: int | Iterable[int]) -> int:
    if isinstance(bits, int):
        return bits
    mask = 0
    for i, b in enumerate(bits):
        if b % 2:
            mask |= 1 << i
    return mask


@dataclass(frozen=True, order=True)
class ExcessElement:
    m: int
    v: int
    h: int
    sign: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("excess group needs m >= 1")
        full = (1 << self.m) - 1
        if self.v & ~full or self.h & ~full or self.v < 0 or self.h < 0:
            raise ValueError(f"parity vectors out of range for m={self.m}")
        if _popcount(self.v) % 2:
            raise ValueError(f"v = {self.v_vector} must have even weight")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    @classmethod
    def of(cls, v: Iterable[int], h: Iterable[int], sign: int = 1) -> ExcessElement:
        v, h = tuple(v), tuple(h)
        if len(v) != len(h):
            raise ValueError("v and h have different lengths")
        return cls(len(v), _as_mask(v), _as_mask(h), sign)

    @property
    def v_vector(self) -> tuple[int, ...]:
        return tuple(self.v >> i & 1 for i in range(self.m))

    @property
    def h_vector(self) -> tuple[int, ...]:
        return tuple(self.h >> i & 1 for i in range(self.m))

    def __mul__(self, other: ExcessElement) -> ExcessElement:
        return ex_mul(self, other)

    def __repr__(self) -> str:
        v = "".join(map(str, self.v_vector))
        h = "".join(map(str, self.h_vector))
        return f"ExcessElement(v={v}, h={h}, {'+' if self.sign > 0 else '-'}1)"


def _twist(m: int, v: int, h: int, v2: int, h2: int) -> int:
    """Parity of sum_{i<j} v_j (v2_i + h2_i) + sum_{i<=j} v2_j h_i."""
    total = 0
    for j in range(m):
        below = (1 << j) - 1
        if v >> j & 1:
            total += _popcount(v2 & below) + _popcount(h2 & below)
        if v2 >> j & 1:
            total += _popcount(h & (below | 1 << j))
    return total & 1


def ex_mul(a: ExcessElement, b: ExcessElement) -> ExcessElement:
    if a.m != b.m:
        raise ValueError(f"cannot multiply elements of Ex_{a.m} and Ex_{b.m}")
    sign = a.sign * b.sign
    if _twist(a.m, a.v, a.h, b.v, b.h):
        sign = -sign
    return ExcessElement(a.m, a.v ^ b.v, a.h ^ b.h, sign)


def ex_identity(m: int) -> ExcessElement:
    return ExcessElement(m, 0, 0, 1)


def ex_inverse(a: ExcessElement) -> ExcessElement:
    # every element has order dividing 4
    return a * a * a


def even_masks(m: int) -> list[int]:
    return [v for v in range(1 << m) if _popcount(v) % 2 == 0]


def group_elements(m: int) -> list[ExcessElement]:
    return [
        ExcessElement(m, v, h, s)
        for v in even_masks(m)
        for h in range(1 << m)
        for s in (1, -1)
    ]


def center(m: int) -> list[ExcessElement]:
    elems = group_elements(m)
    return [z for z in elems if all(z * g == g * z for g in elems)]


def commutator_subgroup(m: int) -> set[ExcessElement]:
    elems = group_elements(m)
    gens = {a * b * ex_inverse(a) * ex_inverse(b) for a in elems for b in elems}
    closure = set(gens) | {ex_identity(m)}
    frontier = list(closure)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g
            if y not in closure:
                closure.add(y)
                frontier.append(y)
    return closure


def conjugacy_classes(m: int) -> list[frozenset[ExcessElement]]:
    elems = group_elements(m)
    inverses = {g: ex_inverse(g) for g in elems}
    remaining = set(elems)
    classes = []
    for x in elems:
        if x not in remaining:
            continue
        cls = frozenset(g * x * inverses[g] for g in elems)
        remaining -= cls
        classes.append(cls)
    return classes


def group_stats(m: int) -> tuple[int, int, int, int]:
    """``(order, |center|, |commutator subgroup|, number of conjugacy classes)`` by brute force."""
    if m > MAX_STATS_ROWS:
        raise ValueError(f"group_stats enumerates 4**m elements; refusing m={m} > {MAX_STATS_ROWS}")
    return (
        len(group_elements(m)),
        len(center(m)),
        len(commutator_subgroup(m)),
        len(conjugacy_classes(m)),
    )


# Generators of Ex_3
G1 = ExcessElement.of((1, 1, 0), (0, 0, 0), +1)
G2 = ExcessElement.of((0, 1, 1), (0, 0, 0), +1)
G3 = ExcessElement.of((0, 0, 0), (1, 1, 1), +1)
G4 = ExcessElement.of((0, 0, 0), (1, 1, 0), +1)
G5 = ExcessElement.of((0, 0, 0), (0, 1, 1), +1)
G6 = ExcessElement.of((0, 0, 0), (0, 0, 0), -1)
GENERATORS_EX3 = (G1, G2, G3, G4, G5, G6)


# ---------------------------------------------------------------------------
# Quotient algebra GF(3)[Ex_m] / J_m


@functools.lru_cache(maxsize=None)
def basis(m: int) -> tuple[tuple[int, int], ...]:
    """Normal-form basis keys ``(v, h)``, ``v`` of even weight."""
    return tuple((v, h) for v in even_masks(m) for h in range(1 << m))


@functools.lru_cache(maxsize=None)
def _key_index(m: int) -> dict[tuple[int, int], int]:
    return {key: i for i, key in enumerate(basis(m))}


@functools.lru_cache(maxsize=None)
def _mul_table(m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """table[i][j] = (k, s): basis_i * basis_j = s * basis_k in the quotient."""
    keys = basis(m)
    index = _key_index(m)
    rows = []
    for v, h in keys:
        a = ExcessElement(m, v, h, 1)
        row = []
        for v2, h2 in keys:
            p = a * ExcessElement(m, v2, h2, 1)
            row.append((index[p.v, p.h], p.sign))
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class AlgebraElement:
    """An element of GF(3)[Ex_m]/J_m as a dense coefficient tuple over :func:`basis`."""

    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        size = len(basis(self.m))
        if len(self.coeffs) != size:
            raise ValueError(f"expected {size} coefficients for m={self.m}")
        object.__setattr__(self, "coeffs", tuple(c % 3 for c in self.coeffs))

    @classmethod
    def zero(cls, m: int) -> AlgebraElement:
        return cls(m, (0,) * len(basis(m)))

    @classmethod
    def one(cls, m: int) -> AlgebraElement:
        return cls.from_group(ex_identity(m))

    @classmethod
    def from_group(cls, g: ExcessElement, coefficient: int = 1) -> AlgebraElement:
        coeffs = [0] * len(basis(g.m))
        coeffs[_key_index(g.m)[g.v, g.h]] = coefficient * g.sign
        return cls(g.m, tuple(coeffs))

    @classmethod
    def from_terms(cls, m: int, terms: Iterable[tuple[int, ExcessElement]]) -> AlgebraElement:
        coeffs = [0] * len(basis(m))
        index = _key_index(m)
        for c, g in terms:
            if g.m != m:
                raise ValueError("term from a different excess group")
            coeffs[index[g.v, g.h]] += c * g.sign
        return cls(m, tuple(coeffs))

    @classmethod
    def sum_of(cls, m: int, elements: Iterable[ExcessElement]) -> AlgebraElement:
        return cls.from_terms(m, ((1, g) for g in elements))

    def coefficient(self, v: int | Iterable[int], h: int | Iterable[int]) -> int:
        """Normal-form coefficient of ``(v, h, +1)``; 0 when ``v`` has odd weight."""
        key = (_as_mask(v), _as_mask(h))
        i = _key_index(self.m).get(key)
        return 0 if i is None else self.coeffs[i]

    def terms(self) -> dict[tuple[int, int], int]:
        return {key: c for key, c in zip(basis(self.m), self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        _same_m(self, other)
        return AlgebraElement(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.m, tuple(-c for c in self.coeffs))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, c: int) -> AlgebraElement:
        return AlgebraElement(self.m, tuple(c * x for x in self.coeffs))

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        return alg_mul(self, other)

    def __repr__(self) -> str:
        m = self.m
        parts = []
        for (v, h), c in self.terms().items():
            vb = "".join(str(v >> i & 1) for i in range(m))
            hb = "".join(str(h >> i & 1) for i in range(m))
            parts.append(f"{c}·({vb},{hb})")
        return f"AlgebraElement[m={m}](" + (" + ".join(parts) or "0") + ")"


def _same_m(x: AlgebraElement, y: AlgebraElement) -> None:
    if x.m != y.m:
        raise ValueError(f"algebra elements for m={x.m} and m={y.m} do not mix")


def alg_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _same_m(x, y)
    table = _mul_table(x.m)
    out = [0] * len(x.coeffs)
    ys = [(j, c) for j, c in enumerate(y.coeffs) if c]
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        row = table[i]
        for j, b in ys:
            k, s = row[j]
            out[k] += s * a * b
    return AlgebraElement(x.m, tuple(out))


def decomposition_element(d: Diagram, dec: Decomposition) -> ExcessElement:
    """``(excess(V), excess(H), sgn(V, H))`` for a decomposition of ``d``."""
    return ExcessElement(d.rows, excess(d, dec.V), excess(d, dec.H), decomposition_sign(d, dec))


def decomposition_image(d: Diagram, max_white: int | None = None) -> AlgebraElement:
    """Sum of ``f(V, H)`` over every decomposition of ``d``, computed directly."""
    return AlgebraElement.sum_of(
        d.rows, (decomposition_element(d, dec) for dec in decompositions(d, max_white))
    )


@functools.lru_cache(maxsize=None)
def _column_image(m: int, letter: int) -> AlgebraElement:
    return decomposition_image(Diagram(m, (letter,)))


def column_image(m: int, rows: int | Iterable[int]) -> AlgebraElement:
    """Image of the single column whose white rows are ``rows`` (a bitmask or row numbers)."""
    letter = rows if isinstance(rows, int) else letter_of(m, rows)
    return _column_image(m, letter)


def diagram_image(d: Diagram) -> AlgebraElement:
    """Left-to-right product of the column images."""
    acc = AlgebraElement.one(d.rows)
    for letter in d.columns:
        acc = acc * _column_image(d.rows, letter)
    return acc


def pfaffian_mod3_of(image: AlgebraElement, parity: int) -> int:
    if _popcount(parity) % 2:
        return 0
    return image.coefficient(parity, 0)


def pfaffian_mod3(d: Diagram) -> int:
    """Pfaffian of ``d`` reduced mod 3, read off the ``(c, 0)`` coefficient of its image."""
    return pfaffian_mod3_of(diagram_image(d), row_parity_mask(d))


def is_primitive_fast(d: Diagram) -> bool:
    return pfaffian_mod3(d) != 0


def image_closure(m: int, bound: int = 10_000) -> set[AlgebraElement]:
    """Every value of the image map on ``m``-row diagrams (breadth-first over words)."""
    gens = [_column_image(m, letter) for letter in range(1 << m)]
    seen = {AlgebraElement.one(m)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    if len(seen) > bound:
                        raise RuntimeError(f"image closure for m={m} exceeds {bound} elements")
                    nxt.append(y)
        frontier = nxt
    return seen


def word_product(elements: Iterable[ExcessElement], m: int) -> ExcessElement:
    acc = ex_identity(m)
    for g in elements:
        acc = acc * g
    return acc


def generator_word(*indices: int) -> ExcessElement:
    """Product ``g_{i1} g_{i2} ...`` of Ex_3 generators, 1-based."""
    return word_product((GENERATORS_EX3[i - 1] for i in indices), 3)
