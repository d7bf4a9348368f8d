"""Finite automata over the column alphabet, word counting, and recurrences.

A word over the ``m``-row column alphabet is a diagram read left to right;
letters are row bitmasks ``0 .. 2**m - 1``.  States are numbered
``0 .. len(states) - 1``; ``labels`` keeps a readable name for each one.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .excess_algebra import AlgebraElement, column_image, pfaffian_mod3_of

DEFAULT_MAX_STATES = 50_000


class StateExplosion(RuntimeError):
    pass


@dataclass(frozen=True)
class Dfa:
    rows: int
    labels: tuple[Hashable, ...]
    transitions: tuple[tuple[int, ...], ...]
    accepting: frozenset[int]
    start: int = 0

    def __post_init__(self):
        n = len(self.labels)
        if len(self.transitions) != n:
            raise ValueError("one transition row per state is required")
        if not 0 <= self.start < n:
            raise ValueError("start state missing")
        width = 1 << self.rows
        for row in self.transitions:
            if len(row) != width or any(not 0 <= t < n for t in row):
                raise ValueError("transition function must be total over the alphabet")
        if any(not 0 <= q < n for q in self.accepting):
            raise ValueError("accepting states must be states")

    @property
    def alphabet_size(self) -> int:
        return 1 << self.rows

    def __len__(self) -> int:
        return len(self.labels)

    def run(self, word: Iterable[int], state: int | None = None) -> int:
        q = self.start if state is None else state
        for letter in word:
            q = self.transitions[q][letter]
        return q

    def accepts(self, word: Iterable[int]) -> bool:
        return self.run(word) in self.accepting

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "states": [str(label) for label in self.labels],
            "start": self.start,
            "accepting": sorted(self.accepting),
            "transitions": [
                [q, letter, target]
                for q, row in enumerate(self.transitions)
                for letter, target in enumerate(row)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict | str) -> Dfa:
        if isinstance(obj, str):
            obj = json.loads(obj)
        rows = obj["rows"]
        n = len(obj["states"])
        table = [[-1] * (1 << rows) for _ in range(n)]
        for q, letter, target in obj["transitions"]:
            table[q][letter] = target
        return cls(
            rows,
            tuple(obj["states"]),
            tuple(map(tuple, table)),
            frozenset(obj["accepting"]),
            obj["start"],
        )


def explore(
    rows: int,
    start: Hashable,
    step: Callable[[Hashable, int], Hashable],
    accept: Callable[[Hashable], bool],
    max_states: int = DEFAULT_MAX_STATES,
) -> Dfa:
    """Build the DFA of states reachable from ``start`` under ``step``."""
    index = {start: 0}
    labels = [start]
    table: list[tuple[int, ...]] = []
    queue = deque([start])
    while queue:
        label = queue.popleft()
        row = []
        for letter in range(1 << rows):
            nxt = step(label, letter)
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(labels)
                if j >= max_states:
                    raise StateExplosion(f"more than {max_states} reachable states")
                labels.append(nxt)
                queue.append(nxt)
            row.append(j)
        table.append(tuple(row))
    accepting = frozenset(i for i, label in enumerate(labels) if accept(label))
    return Dfa(rows, tuple(labels), tuple(table), accepting)


REJECT = "r"


def _cauchon_step(m: int) -> Callable[[Hashable, int], Hashable]:
    drop_first = ~1

    def step(state, letter):
        if state == REJECT:
            return REJECT
        seen = state
        for i in range(1, m):
            if seen >> i & 1 and not letter >> i & 1 and letter & ((1 << i) - 1):
                # black in row i+1 with white to its left and white above
                return REJECT
        return (seen | letter) & drop_first

    return step


def build_cauchon_dfa(m: int) -> Dfa:
    """Accepts exactly the Cauchon diagrams with ``m`` rows.

    Accepting states record which rows 2..m have shown a white square so far
    (as a bitmask), plus one absorbing reject state.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    step = _cauchon_step(m)
    # every subset of rows 2..m is reachable from q{} by reading C(S); r is
    # included even for m = 1, where nothing reaches it
    states = [mask for mask in range(1 << m) if not mask & 1] + [REJECT]
    index = {q: i for i, q in enumerate(states)}
    table = tuple(tuple(index[step(q, letter)] for letter in range(1 << m)) for q in states)
    return Dfa(
        m,
        tuple(map(cauchon_state_name, states)),
        table,
        frozenset(range(len(states) - 1)),
    )


def cauchon_state_name(state) -> str:
    if state == REJECT:
        return REJECT
    rows = [str(i + 1) for i in range(state.bit_length()) if state >> i & 1]
    return "q{" + ",".join(rows) + "}"


def primitive_acceptor(element: AlgebraElement, parity: int) -> bool:
    return pfaffian_mod3_of(element, parity) != 0


def build_image_dfa(
    m: int,
    accept_predicate: Callable[[AlgebraElement, int], bool] = primitive_acceptor,
    max_states: int = DEFAULT_MAX_STATES,
) -> Dfa:
    """DFA whose state is (image of the word read so far, running row parity).

    With the default predicate a word is accepted iff the diagram is primitive.
    """
    images = [column_image(m, letter) for letter in range(1 << m)]

    def step(state, letter):
        element, parity = state
        return element * images[letter], parity ^ letter

    return explore(
        m,
        (AlgebraElement.one(m), 0),
        step,
        lambda state: accept_predicate(*state),
        max_states,
    )


def all_words_dfa(m: int) -> Dfa:
    return Dfa(m, ("*",), ((0,) * (1 << m),), frozenset({0}))


def empty_language_dfa(m: int) -> Dfa:
    return Dfa(m, ("∅",), ((0,) * (1 << m),), frozenset())


def intersect(a: Dfa, b: Dfa) -> Dfa:
    """Product automaton on the pairs reachable from the start pair."""
    if a.rows != b.rows:
        raise ValueError(f"alphabet mismatch: {a.rows} rows vs {b.rows} rows")
    product = explore(
        a.rows,
        (a.start, b.start),
        lambda pair, letter: (a.transitions[pair[0]][letter], b.transitions[pair[1]][letter]),
        lambda pair: pair[0] in a.accepting and pair[1] in b.accepting,
        max_states=len(a) * len(b) + 1,
    )
    return Dfa(
        product.rows,
        tuple((a.labels[i], b.labels[j]) for i, j in product.labels),
        product.transitions,
        product.accepting,
    )


def primitive_cauchon_dfa(m: int) -> Dfa:
    return intersect(build_cauchon_dfa(m), build_image_dfa(m))


def minimize(dfa: Dfa) -> Dfa:
    """Moore partition refinement; states unreachable from the start are dropped."""
    block = [1 if q in dfa.accepting else 0 for q in range(len(dfa))]
    while True:
        signatures = {}
        refined = []
        for q, row in enumerate(dfa.transitions):
            sig = (block[q], tuple(block[t] for t in row))
            refined.append(signatures.setdefault(sig, len(signatures)))
        if len(signatures) == len(set(block)):
            break
        block = refined
    # renumber so the start state's block is 0, in BFS order
    order = {}
    queue = deque([dfa.start])
    order[block[dfa.start]] = 0
    rep = {0: dfa.start}
    while queue:
        q = queue.popleft()
        for t in dfa.transitions[q]:
            if block[t] not in order:
                order[block[t]] = len(order)
                rep[order[block[t]]] = t
                queue.append(t)
    n = len(order)
    table = tuple(tuple(order[block[t]] for t in dfa.transitions[rep[i]]) for i in range(n))
    accepting = frozenset(i for i in range(n) if rep[i] in dfa.accepting)
    return Dfa(dfa.rows, tuple(dfa.labels[rep[i]] for i in range(n)), table, accepting)


def transfer_matrix(dfa: Dfa) -> list[list[int]]:
    """``T[q][q']`` = number of letters moving state ``q`` to ``q'``."""
    n = len(dfa)
    mat = [[0] * n for _ in range(n)]
    for q, row in enumerate(dfa.transitions):
        for t in row:
            mat[q][t] += 1
    return mat


def _step_vector(vec: list[int], sparse_rows: list[list[tuple[int, int]]]) -> list[int]:
    out = [0] * len(vec)
    for q, x in enumerate(vec):
        if x:
            for t, w in sparse_rows[q]:
                out[t] += x * w
    return out


def _sparse(dfa: Dfa) -> list[list[tuple[int, int]]]:
    return [[(t, w) for t, w in enumerate(row) if w] for row in transfer_matrix(dfa)]


def count_words(dfa: Dfa, n: int) -> int:
    """Number of accepted words of length ``n``: start vector times ``T**n`` times the accept indicator."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    sparse = _sparse(dfa)
    vec = [0] * len(dfa)
    vec[dfa.start] = 1
    for _ in range(n):
        vec = _step_vector(vec, sparse)
    return sum(vec[q] for q in dfa.accepting)


def count_sequence(dfa: Dfa, N: int) -> list[int]:
    """``[count_words(dfa, 1), ..., count_words(dfa, N)]``."""
    if N < 1:
        raise ValueError("need N >= 1")
    sparse = _sparse(dfa)
    vec = [0] * len(dfa)
    vec[dfa.start] = 1
    out = []
    for _ in range(N):
        vec = _step_vector(vec, sparse)
        out.append(sum(vec[q] for q in dfa.accepting))
    return out


# ---------------------------------------------------------------------------
# Linear recurrences


class RecurrenceError(ValueError):
    pass


@dataclass(frozen=True)
class Recurrence:
    """``a(n) = c_1 a(n-1) + ... + c_d a(n-d)``."""

    coefficients: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def next_term(self, history: Sequence) -> Fraction:
        return sum(
            (c * history[-i] for i, c in enumerate(self.coefficients, start=1)),
            Fraction(0),
        )

    def fits(self, seq: Sequence[int]) -> bool:
        d = self.order
        return all(self.next_term(seq[:k]) == seq[k] for k in range(d, len(seq)))

    def extend(self, seq: Sequence[int], count: int) -> list[Fraction]:
        """The next ``count`` terms after ``seq``."""
        if len(seq) < self.order:
            raise RecurrenceError(f"need {self.order} initial terms, got {len(seq)}")
        hist = [Fraction(x) for x in seq]
        out = []
        for _ in range(count):
            x = self.next_term(hist)
            hist.append(x)
            out.append(x)
        return out

    def characteristic_polynomial(self) -> list[Fraction]:
        """Coefficients of ``x**d - c_1 x**(d-1) - ... - c_d``, highest degree first."""
        return [Fraction(1)] + [-c for c in self.coefficients]

    def to_json(self) -> dict:
        return {"order": self.order, "coefficients": [str(c) for c in self.coefficients]}

    def __str__(self) -> str:
        if not self.coefficients:
            return "a(n) = 0"
        out = ""
        for i, c in enumerate(self.coefficients, start=1):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            term = f"a(n-{i})" if mag == 1 else f"{mag}·a(n-{i})"
            out += f" {sign} {term}" if out else (f"-{term}" if c < 0 else term)
        return "a(n) = " + (out or "0")


def find_recurrence(seq: Sequence[int]) -> Recurrence:
    """Shortest linear recurrence over Q generating ``seq`` (Berlekamp–Massey, exact).

    The result is only trusted when the sequence holds at least
    ``2 * order + 2`` terms; shorter inputs raise :class:`RecurrenceError`.
    """
    s = [Fraction(x) for x in seq]
    conn = [Fraction(1)]   # connection polynomial C(x), C[0] = 1
    prev = [Fraction(1)]
    length = 0
    shift = 1
    last_disc = Fraction(1)
    for n, term in enumerate(s):
        disc = term + sum((conn[i] * s[n - i] for i in range(1, length + 1)), Fraction(0))
        if disc == 0:
            shift += 1
            continue
        scale = disc / last_disc
        updated = conn + [Fraction(0)] * max(0, len(prev) + shift - len(conn))
        for i, p in enumerate(prev):
            updated[i + shift] -= scale * p
        if 2 * length <= n:
            prev, conn = conn, updated
            length = n + 1 - length
            last_disc = disc
            shift = 1
        else:
            conn = updated
            shift += 1
    if len(s) < 2 * length + 2:
        raise RecurrenceError(
            f"{len(s)} terms cannot certify a recurrence of order {length}; "
            f"supply at least {2 * length + 2}"
        )
    conn += [Fraction(0)] * (length + 1 - len(conn))
    rec = Recurrence(tuple(-conn[i] for i in range(1, length + 1)))
    if not rec.fits(seq):
        raise RecurrenceError("synthesised recurrence does not reproduce the sequence")
    return rec


def recommended_terms(dfa: Dfa) -> int:
    """Enough terms to certify any recurrence the automaton's language count can satisfy."""
    return 2 * len(minimize(dfa)) + 4
