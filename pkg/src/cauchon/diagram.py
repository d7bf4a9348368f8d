"""Black/white grid diagrams stored as words over the column alphabet.

A diagram with ``m`` rows is a tuple of column letters.  Each letter is a
bitmask of the rows that are white in that column: bit ``i - 1`` is set when
row ``i`` is white.  Rows and columns are numbered from 1, top row first.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator

WHITE = "."
BLACK = "#"

DEFAULT_ENUMERATION_BUDGET = 1 << 24


class DiagramError(ValueError):
    pass


class DiagramParseError(DiagramError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class BudgetExceeded(ValueError):
    """An exhaustive computation would exceed the caller's work budget."""

    def __init__(self, required: int, budget: int, what: str = "items"):
        super().__init__(f"refusing to generate {required} {what}; budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class Diagram:
    rows: int
    columns: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.rows, int) or self.rows < 1:
            raise DiagramError(f"a diagram needs at least one row, got {self.rows!r}")
        object.__setattr__(self, "columns", tuple(self.columns))
        full = (1 << self.rows) - 1
        for letter in self.columns:
            if not isinstance(letter, int) or letter < 0 or letter & ~full:
                raise DiagramError(f"column letter {letter!r} is not a subset of rows 1..{self.rows}")

    @property
    def cols(self) -> int:
        return len(self.columns)

    def is_white(self, row: int, col: int) -> bool:
        return bool(self.columns[col - 1] >> (row - 1) & 1)

    @property
    def white_count(self) -> int:
        return sum(bin(letter).count("1") for letter in self.columns)

    def __mul__(self, other: Diagram) -> Diagram:
        return concat(self, other)

    def grid(self) -> list[str]:
        return [
            "".join(WHITE if self.is_white(r, c) else BLACK for c in range(1, self.cols + 1))
            for r in range(1, self.rows + 1)
        ]

    def to_text(self) -> str:
        return "\n".join(self.grid())

    def to_inline(self) -> str:
        return "/".join(self.grid())

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "grid": self.grid()}

    def __str__(self) -> str:
        return self.to_inline()


def column(m: int, white_rows: Iterable[int] = ()) -> Diagram:
    """The ``m x 1`` diagram whose white squares are exactly ``white_rows``."""
    return Diagram(m, (letter_of(m, white_rows),))


def letter_of(m: int, white_rows: Iterable[int]) -> int:
    mask = 0
    for r in white_rows:
        if not 1 <= r <= m:
            raise DiagramError(f"row {r} out of range 1..{m}")
        mask |= 1 << (r - 1)
    return mask


def letter_rows(letter: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(letter.bit_length()) if letter >> i & 1)


def alphabet(m: int) -> range:
    """All ``2**m`` column letters, as bitmasks."""
    return range(1 << m)


def empty(m: int) -> Diagram:
    return Diagram(m, ())


def from_grid(lines: list[str]) -> Diagram:
    if not lines:
        raise DiagramParseError("diagram has zero rows")
    width = len(lines[0])
    columns = [0] * width
    for r, line in enumerate(lines, start=1):
        if len(line) != width:
            raise DiagramParseError(
                f"ragged rows: expected {width} cells, found {len(line)}", line=r
            )
        for c, ch in enumerate(line, start=1):
            if ch == WHITE:
                columns[c - 1] |= 1 << (r - 1)
            elif ch != BLACK:
                raise DiagramParseError(f"illegal character {ch!r}", line=r, column=c)
    return Diagram(len(lines), tuple(columns))


def parse_diagram(text: str) -> Diagram:
    """Parse '.'/'#' rows separated by newlines or by '/'.

    Surrounding whitespace and blank trailing lines are ignored.
    """
    stripped = text.strip()
    if not stripped:
        raise DiagramParseError("diagram has zero rows")
    if "\n" in stripped:
        lines = [line.strip() for line in stripped.splitlines()]
        while lines and not lines[-1]:
            lines.pop()
    else:
        lines = stripped.split("/")
    for r, line in enumerate(lines, start=1):
        if not line:
            raise DiagramParseError("empty row", line=r)
    return from_grid(lines)


def diagram_from_json(obj: dict | str) -> Diagram:
    if isinstance(obj, str):
        obj = json.loads(obj)
    grid = obj["grid"]
    if not grid:
        # a 0-column diagram renders as empty row strings
        return Diagram(int(obj["rows"]), ())
    d = from_grid(list(grid))
    if d.rows != obj["rows"] or d.cols != obj["cols"]:
        raise DiagramParseError("rows/cols fields disagree with grid")
    return d


def concat(a: Diagram, b: Diagram) -> Diagram:
    """``a ⋆ b``: place ``b`` immediately to the right of ``a``."""
    if a.rows != b.rows:
        raise DiagramError(f"cannot concatenate a {a.rows}-row and a {b.rows}-row diagram")
    return Diagram(a.rows, a.columns + b.columns)


def is_cauchon(d: Diagram) -> bool:
    """Every black square has only black squares to its left or only black squares above it."""
    seen = 0  # rows holding a white square in some earlier column
    for letter in d.columns:
        for i in range(d.rows):
            if letter >> i & 1:
                continue
            white_left = seen >> i & 1
            white_above = letter & ((1 << i) - 1)
            if white_left and white_above:
                return False
        seen |= letter
    return True


def white_squares(d: Diagram) -> list[tuple[int, int]]:
    """White squares in label order: top row first, left to right within a row."""
    return [
        (r, c)
        for r in range(1, d.rows + 1)
        for c in range(1, d.cols + 1)
        if d.is_white(r, c)
    ]


def row_parity_mask(d: Diagram) -> int:
    mask = 0
    for letter in d.columns:
        mask ^= letter
    return mask


def row_parity(d: Diagram) -> tuple[int, ...]:
    """Per-row parity of the number of white squares."""
    mask = row_parity_mask(d)
    return tuple(mask >> i & 1 for i in range(d.rows))


def count_diagrams(m: int, n: int) -> int:
    return 1 << (m * n)


def enumerate_diagrams(m: int, n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[Diagram]:
    """Yield every ``m x n`` diagram once, lexicographically by column letters."""
    if m < 1 or n < 0:
        raise DiagramError(f"need m >= 1 and n >= 0, got m={m}, n={n}")
    required = count_diagrams(m, n)
    if required > budget:
        raise BudgetExceeded(required, budget, "diagrams")
    return (Diagram(m, word) for word in itertools.product(alphabet(m), repeat=n))


def enumerate_with_prefix(m: int, n: int, prefix: tuple[int, ...]) -> Iterator[Diagram]:
    """Diagrams of width ``n`` starting with the given column letters (for partitioned sweeps)."""
    rest = n - len(prefix)
    if rest < 0:
        raise DiagramError("prefix longer than the diagram")
    return (Diagram(m, prefix + word) for word in itertools.product(alphabet(m), repeat=rest))
