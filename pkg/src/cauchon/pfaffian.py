"""Skew-adjacency matrices of diagrams and exact ways to evaluate them.

Labels are 1-based positions in :func:`cauchon.diagram.white_squares` order.
The Pfaffian is available three ways: as the signed sum over perfect
matchings, as the signed sum over decompositions with even horizontal
excess, and (squared) as the determinant of the skew-adjacency matrix.
"""

from __future__ import annotations

import enum
import itertools
from typing import Iterator, NamedTuple, Sequence

from .diagram import BudgetExceeded, Diagram, white_squares

DEFAULT_MAX_WHITE = 20

Matrix = list[list[int]]
Matching = tuple[tuple[int, int], ...]


class Decomposition(NamedTuple):
    V: frozenset[int]
    H: frozenset[int]


class DecompositionError(ValueError):
    pass


def _shares_line(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] == b[0] or a[1] == b[1]


def skew_adjacency(d: Diagram) -> Matrix:
    """``M[i][j] = 1`` when square i is left of / above square j in its row / column.

    In label order the earlier square of a same-row or same-column pair is
    always the one to the left or above, so the upper triangle is all +1.
    """
    squares = white_squares(d)
    k = len(squares)
    mat = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if _shares_line(squares[i], squares[j]):
                mat[i][j] = 1
                mat[j][i] = -1
    return mat


def determinant(mat: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by Bareiss fraction-free elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in mat]
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (pivot * row_i[j] - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _check_budget(d: Diagram, max_white: int | None) -> None:
    if max_white is not None and d.white_count > max_white:
        raise BudgetExceeded(d.white_count, max_white, "white squares")


def perfect_matchings(d: Diagram) -> Iterator[Matching]:
    """Every perfect matching once, edges as label pairs ``(i, j)`` with ``i < j``.

    The smallest unmatched label is always paired first, so each matching is
    produced exactly once with its edges sorted.
    """
    squares = white_squares(d)
    k = len(squares)
    if k % 2:
        return
    partners = [
        [j for j in range(i + 1, k) if _shares_line(squares[i], squares[j])]
        for i in range(k)
    ]
    used = [False] * k
    edges: list[tuple[int, int]] = []

    def extend(start: int) -> Iterator[Matching]:
        i = start
        while i < k and used[i]:
            i += 1
        if i == k:
            yield tuple(edges)
            return
        used[i] = True
        for j in partners[i]:
            if used[j]:
                continue
            used[j] = True
            edges.append((i + 1, j + 1))
            yield from extend(i + 1)
            edges.pop()
            used[j] = False
        used[i] = False

    yield from extend(0)


def inversions(seq: Sequence[int]) -> int:
    return sum(1 for x, y in itertools.combinations(seq, 2) if x > y)


def matching_sign(pm: Sequence[tuple[int, int]]) -> int:
    """Sign of the permutation ``(1..2m) -> (i1, j1, ..., im, jm)``."""
    flat = []
    for i, j in pm:
        if i >= j:
            raise ValueError(f"matching edge {(i, j)} must be stored with i < j")
        flat.extend((i, j))
    return -1 if inversions(flat) % 2 else 1


def pfaffian_matchings(d: Diagram, max_white: int | None = DEFAULT_MAX_WHITE) -> int:
    _check_budget(d, max_white)
    return sum(matching_sign(pm) for pm in perfect_matchings(d))


def decompositions(d: Diagram, max_white: int | None = DEFAULT_MAX_WHITE) -> Iterator[Decomposition]:
    """All ``(V, H)`` splits of the labels with an even number of V-labels in each column."""
    _check_budget(d, max_white)
    squares = white_squares(d)
    by_column: dict[int, list[int]] = {c: [] for c in range(1, d.cols + 1)}
    for label, (_, c) in enumerate(squares, start=1):
        by_column[c].append(label)
    choices = []
    for labels in by_column.values():
        even = [
            frozenset(subset)
            for size in range(0, len(labels) + 1, 2)
            for subset in itertools.combinations(labels, size)
        ]
        choices.append(even)
    everything = frozenset(range(1, len(squares) + 1))
    for parts in itertools.product(*choices):
        V = frozenset().union(*parts)
        yield Decomposition(V, everything - V)


def is_decomposition(d: Diagram, dec: Decomposition) -> bool:
    squares = white_squares(d)
    labels = set(range(1, len(squares) + 1))
    V, H = set(dec.V), set(dec.H)
    if V & H or V | H != labels:
        return False
    per_column: dict[int, int] = {}
    for v in V:
        c = squares[v - 1][1]
        per_column[c] = per_column.get(c, 0) + 1
    return all(count % 2 == 0 for count in per_column.values())


def concat_decomposition(
    left: Diagram, dec_left: Decomposition, right: Diagram, dec_right: Decomposition
) -> Decomposition:
    """The decomposition of ``left * right`` made of the squares of both parts."""
    joined = white_squares(left * right)
    index = {sq: label for label, sq in enumerate(joined, start=1)}
    left_sq, right_sq = white_squares(left), white_squares(right)
    shift = left.cols

    def relabel(labels_left, labels_right):
        out = {index[left_sq[i - 1]] for i in labels_left}
        for i in labels_right:
            r, c = right_sq[i - 1]
            out.add(index[(r, c + shift)])
        return frozenset(out)

    return Decomposition(relabel(dec_left.V, dec_right.V), relabel(dec_left.H, dec_right.H))


def _southwest(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Square ``b`` lies strictly below and strictly left of square ``a``."""
    return b[0] > a[0] and b[1] < a[1]


def decomposition_sign(d: Diagram, dec: Decomposition) -> int:
    """``(-1) ** (inv(V) + inv(V|H))``."""
    if not is_decomposition(d, dec):
        raise DecompositionError(f"{dec} is not a decomposition of {d}")
    squares = white_squares(d)
    V = sorted(dec.V)
    inv_v = sum(
        1 for i, j in itertools.combinations(V, 2) if _southwest(squares[i - 1], squares[j - 1])
    )
    inv_vh = sum(1 for v in dec.V for h in dec.H if h < v)
    return -1 if (inv_v + inv_vh) % 2 else 1


def excess(d: Diagram, labels: frozenset[int] | set[int]) -> int:
    """Row-parity bitmask of a set of labels."""
    squares = white_squares(d)
    mask = 0
    for label in labels:
        mask ^= 1 << (squares[label - 1][0] - 1)
    return mask


def pfaffian_decompositions(d: Diagram, max_white: int | None = DEFAULT_MAX_WHITE) -> int:
    return sum(
        decomposition_sign(d, dec)
        for dec in decompositions(d, max_white)
        if excess(d, dec.H) == 0
    )


def is_primitive_oracle(d: Diagram) -> bool:
    return determinant(skew_adjacency(d)) != 0


class PowerKind(enum.Enum):
    ZERO = "zero"
    POWER_OF_FOUR = "power_of_four"
    VIOLATION = "violation"


class PowerClass(NamedTuple):
    kind: PowerKind
    exponent: int | None = None


def power_of_four_class(x: int) -> PowerClass:
    if x == 0:
        return PowerClass(PowerKind.ZERO)
    if x > 0 and x & (x - 1) == 0:
        bits = x.bit_length() - 1
        if bits % 2 == 0:
            return PowerClass(PowerKind.POWER_OF_FOUR, bits // 2)
    return PowerClass(PowerKind.VIOLATION)


def is_zero_or_signed_power_of_two(x: int) -> bool:
    y = abs(x)
    return y == 0 or y & (y - 1) == 0
