"""Three-row specialisations: the 4x4 matrix representations over GF(3), the
image group of 3-row diagrams, its quotient onto S4 x {+1, -1}, and the
closed form for the number of primitive 3 x n Cauchon diagrams.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Iterable, NamedTuple

from .diagram import Diagram, DiagramError, letter_of, parse_diagram
from .pfaffian import determinant
from .excess_algebra import (
    G1, G2, G3, G4, G5, G6, GENERATORS_EX3,
    AlgebraElement, ExcessElement, basis, column_image, ex_identity,
)

log = logging.getLogger(__name__)

Mat4 = tuple[tuple[int, ...], ...]


class MatrixPair(NamedTuple):
    plus: Mat4   # representation with g3 -> +I
    minus: Mat4  # representation with g3 -> -I

    def __mul__(self, other: MatrixPair) -> MatrixPair:  # type: ignore[override]
        return MatrixPair(mat_mul(self.plus, other.plus), mat_mul(self.minus, other.minus))


def mat(rows: Iterable[Iterable[int]]) -> Mat4:
    return tuple(tuple(x % 3 for x in row) for row in rows)


def mat_mul(a: Mat4, b: Mat4) -> Mat4:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % 3 for j in range(n))
        for i in range(n)
    )


def mat_add(a: Mat4, b: Mat4) -> Mat4:
    return tuple(tuple((x + y) % 3 for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Mat4, c: int) -> Mat4:
    return tuple(tuple(c * x % 3 for x in row) for row in a)


def det_mod3(a: Mat4) -> int:
    return determinant(a) % 3


IDENTITY4 = mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
ZERO4 = mat([[0] * 4] * 4)
NEG_IDENTITY4 = mat_scale(IDENTITY4, -1)

PHI_G1 = mat([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
PHI_G2 = mat([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
PHI_G4 = mat([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
PHI_G5 = mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
PHI_G6 = NEG_IDENTITY4

PHI_GENERATORS: tuple[MatrixPair, ...] = (
    MatrixPair(PHI_G1, PHI_G1),
    MatrixPair(PHI_G2, PHI_G2),
    MatrixPair(IDENTITY4, NEG_IDENTITY4),
    MatrixPair(PHI_G4, PHI_G4),
    MatrixPair(PHI_G5, PHI_G5),
    MatrixPair(PHI_G6, PHI_G6),
)


def _same(a: Mat4) -> MatrixPair:
    return MatrixPair(a, a)


COLUMN_MATRICES: dict[int, MatrixPair] = {
    letter_of(3, ()): _same(IDENTITY4),
    letter_of(3, (1,)): MatrixPair(
        mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]),
        mat([[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    ),
    letter_of(3, (2,)): MatrixPair(
        mat([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]),
        mat([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
    ),
    letter_of(3, (3,)): MatrixPair(
        mat([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
        mat([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]),
    ),
    letter_of(3, (1, 2)): _same(
        mat([[1, 0, 1, 0], [0, -1, 0, 1], [-1, 0, 1, 0], [0, -1, 0, -1]])
    ),
    letter_of(3, (1, 3)): _same(
        mat([[1, 0, 0, -1], [0, -1, 1, 0], [0, -1, -1, 0], [1, 0, 0, 1]])
    ),
    letter_of(3, (2, 3)): _same(
        mat([[1, 1, 0, 0], [-1, 1, 0, 0], [0, 0, -1, -1], [0, 0, 1, -1]])
    ),
    # Odd white count, so the two components differ by a sign.  The symmetric
    # candidate (B, B), B below, is the image of 1 + g1g4 + g2g5 - g1g2g4g5
    # (no g3, last sign flipped) and does not match the column image.
    letter_of(3, (1, 2, 3)): MatrixPair(
        mat([[1, 1, 1, -1], [-1, 1, -1, -1], [-1, 1, 1, 1], [1, 1, -1, 1]]),
        mat([[-1, -1, -1, 1], [1, -1, 1, 1], [1, -1, -1, -1], [-1, -1, 1, -1]]),
    ),
}

SYMMETRIC_C123_CANDIDATE = mat([[1, 1, 1, 1], [-1, 1, 1, -1], [-1, -1, 1, 1], [-1, 1, -1, 1]])


def _word(*gens: ExcessElement) -> ExcessElement:
    acc = ex_identity(3)
    for g in gens:
        acc = acc * g
    return acc


def _alg(*words: tuple[ExcessElement, ...]) -> AlgebraElement:
    return AlgebraElement.sum_of(3, (_word(*w) for w in words))


# Column images as expressions in the generators (mod J_3).
COLUMN_GENERATOR_EXPRESSIONS: dict[int, AlgebraElement] = {
    letter_of(3, ()): _alg(()),
    letter_of(3, (1,)): _alg((G3, G5)),
    letter_of(3, (2,)): _alg((G3, G4, G5)),
    letter_of(3, (3,)): _alg((G3, G4)),
    letter_of(3, (1, 2)): _alg((G1,), (G4,)),
    letter_of(3, (1, 3)): _alg((G1, G2), (G4, G5)),
    letter_of(3, (2, 3)): _alg((G2,), (G5,)),
    letter_of(3, (1, 2, 3)): _alg((G3,), (G3, G1, G4), (G3, G2, G5), (G3, G1, G2, G4, G5)),
}


def column_matrix(rows: int | Iterable[int]) -> MatrixPair:
    letter = rows if isinstance(rows, int) else letter_of(3, rows)
    return COLUMN_MATRICES[letter]


# ---------------------------------------------------------------------------
# Relations of the generator matrices


def _commutator(a: Mat4, b: Mat4, inv_a: Mat4, inv_b: Mat4) -> Mat4:
    return mat_mul(mat_mul(mat_mul(a, b), inv_a), inv_b)


def phi_relation_failures(gens: tuple[MatrixPair, ...] = PHI_GENERATORS) -> list[str]:
    """Names of the generator relations that the given matrices violate, in check order."""
    failures = []
    for side in ("plus", "minus"):
        g = [getattr(pair, side) for pair in gens]
        # every generator squares to +-I, so g^-1 = g^3
        inv = [mat_mul(mat_mul(x, x), x) for x in g]

        def check(ok: bool, name: str) -> None:
            if not ok:
                failures.append(f"{side}: {name}")

        for idx in (2, 5):
            name = f"g{idx + 1}"
            check(mat_mul(g[idx], g[idx]) == IDENTITY4, f"{name} has order two")
            for j, other in enumerate(g):
                check(mat_mul(g[idx], other) == mat_mul(other, g[idx]), f"{name} commutes with g{j + 1}")
        check(g[5] != IDENTITY4, "g6 is not the identity")
        check(mat_mul(g[0], g[0]) == g[5], "g1^2 = g6")
        check(mat_mul(g[1], g[1]) == g[5], "g2^2 = g6")
        check(mat_mul(g[3], g[3]) == IDENTITY4, "g4^2 = 1")
        check(mat_mul(g[4], g[4]) == IDENTITY4, "g5^2 = 1")
        for a, b, expected in ((0, 1, g[5]), (0, 4, g[5]), (1, 3, g[5]),
                               (0, 3, IDENTITY4), (1, 4, IDENTITY4), (3, 4, IDENTITY4)):
            got = _commutator(g[a], g[b], inv[a], inv[b])
            check(got == expected, f"[g{a + 1}, g{b + 1}] = {'g6' if expected == g[5] else '1'}")
    plus3, minus3 = gens[2]
    if minus3 != mat_scale(plus3, -1):
        failures.append("g3 differs between the representations by a global sign")
    return failures


def verify_phi_relations(gens: tuple[MatrixPair, ...] = PHI_GENERATORS) -> bool:
    failures = phi_relation_failures(gens)
    if failures:
        log.warning("generator relation violated: %s", failures[0])
    return not failures


def _group_rep_table(gens: tuple[MatrixPair, ...] = PHI_GENERATORS) -> dict[ExcessElement, MatrixPair]:
    """Matrix pair of every element of Ex_3, by breadth-first extension from the generators.

    Raises if two words for the same group element reach different matrices,
    i.e. if the generator assignment does not define a homomorphism.
    """
    table = {ex_identity(3): MatrixPair(IDENTITY4, IDENTITY4)}
    queue = deque(table)
    while queue:
        x = queue.popleft()
        for g, pg in zip(GENERATORS_EX3, gens):
            y = x * g
            py = table[x] * pg
            if y in table:
                if table[y] != py:
                    raise ValueError(f"generator matrices are inconsistent at {y}")
            else:
                table[y] = py
                queue.append(y)
    if len(table) != 64:
        raise ValueError("generators do not reach all of Ex_3")
    return table


_REP_TABLE: dict[ExcessElement, MatrixPair] | None = None


def phi(x: AlgebraElement) -> MatrixPair:
    """Apply the pair of 4-dimensional representations to an element of the quotient algebra."""
    global _REP_TABLE
    if x.m != 3:
        raise ValueError("phi is defined for three-row algebra elements only")
    if _REP_TABLE is None:
        _REP_TABLE = _group_rep_table()
    plus, minus = ZERO4, ZERO4
    for (v, h), c in zip(basis(3), x.coeffs):
        if c:
            pair = _REP_TABLE[ExcessElement(3, v, h, 1)]
            plus = mat_add(plus, mat_scale(pair.plus, c))
            minus = mat_add(minus, mat_scale(pair.minus, c))
    return MatrixPair(plus, minus)


def column_constant_mismatches() -> list[int]:
    """Column letters whose stored data disagrees with the computed image or its matrices."""
    bad = []
    for letter, pair in COLUMN_MATRICES.items():
        image = column_image(3, letter)
        if image != COLUMN_GENERATOR_EXPRESSIONS[letter] or phi(image) != pair:
            bad.append(letter)
    return bad


def g3_closure(bound: int = 10_000) -> tuple[int, frozenset[AlgebraElement]]:
    """Breadth-first closure of the eight column images under multiplication."""
    gens = [column_image(3, letter) for letter in range(8)]
    seen = {AlgebraElement.one(3)}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                if len(seen) > bound:
                    raise RuntimeError(f"closure exceeded {bound} elements")
                queue.append(y)
    return len(seen), frozenset(seen)


def matrix_closure(bound: int = 10_000) -> set[MatrixPair]:
    gens = [COLUMN_MATRICES[letter] for letter in range(8)]
    seen = {MatrixPair(IDENTITY4, IDENTITY4)}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                if len(seen) > bound:
                    raise RuntimeError(f"closure exceeded {bound} elements")
                queue.append(y)
    return seen


# ---------------------------------------------------------------------------
# Signed permutations of {1, 2, 3, 4}


class SignedPermutation(NamedTuple):
    perm: tuple[int, ...]  # perm[i - 1] is the image of i
    sign: int = 1

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:  # type: ignore[override]
        """Composition ``self ∘ other``: ``other`` acts on points first."""
        return SignedPermutation(
            tuple(self.perm[other.perm[i] - 1] for i in range(len(self.perm))),
            self.sign * other.sign,
        )

    def inverse(self) -> SignedPermutation:
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm, start=1):
            inv[p - 1] = i
        return SignedPermutation(tuple(inv), self.sign)

    def cycle_type(self) -> tuple[int, ...]:
        n = len(self.perm)
        seen = [False] * n
        lengths = []
        for start in range(n):
            if seen[start]:
                continue
            length, i = 0, start
            while not seen[i]:
                seen[i] = True
                i = self.perm[i] - 1
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths, reverse=True))

    def cycles(self) -> str:
        n = len(self.perm)
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start] or self.perm[start] == start + 1:
                seen[start] = True
                continue
            cyc, i = [], start
            while not seen[i]:
                seen[i] = True
                cyc.append(str(i + 1))
                i = self.perm[i] - 1
            out.append("(" + "".join(cyc) + ")")
        return "".join(out) or "id"

    def __str__(self) -> str:
        return f"({self.cycles()},{'+1' if self.sign > 0 else '-1'})"


def parse_cycles(text: str, n: int = 4) -> tuple[int, ...]:
    """Cycle notation such as ``"(13)(24)"`` or ``"id"``; ``(124)`` sends 1->2, 2->4, 4->1."""
    perm = list(range(1, n + 1))
    text = text.replace(" ", "").replace(",", "")
    if text in ("", "id", "()"):
        return tuple(perm)
    for chunk in text.strip("()").split(")("):
        points = [int(ch) for ch in chunk]
        if len(set(points)) != len(points) or not all(1 <= p <= n for p in points):
            raise ValueError(f"bad cycle {chunk!r}")
        for a, b in zip(points, points[1:] + points[:1]):
            perm[a - 1] = b
    return tuple(perm)


def signed(cycles: str, sign: int = 1) -> SignedPermutation:
    return SignedPermutation(parse_cycles(cycles), sign)


SIGNED_IDENTITY = signed("id", 1)

PSI_TABLE: dict[int, SignedPermutation] = {
    letter_of(3, (1, 2, 3)): signed("(124)", -1),
    letter_of(3, (1, 2)): signed("(1243)", 1),
    letter_of(3, (1, 3)): signed("(1324)", 1),
    letter_of(3, (2, 3)): signed("(1234)", 1),
    letter_of(3, (1,)): signed("(13)(24)", -1),
    letter_of(3, (2,)): signed("(12)(34)", -1),
    letter_of(3, (3,)): signed("(14)(23)", -1),
    letter_of(3, ()): SIGNED_IDENTITY,
}

# (cycle type, sign) of the classes whose preimages are exactly the primitive diagrams
PRIMITIVE_CLASSES = frozenset({
    ((1, 1, 1, 1), 1),
    ((3, 1), 1),
    ((4,), 1),
})


def psi_letter(rows: int | Iterable[int]) -> SignedPermutation:
    letter = rows if isinstance(rows, int) else letter_of(3, rows)
    return PSI_TABLE[letter]


def _require_three_rows(d: Diagram) -> None:
    if d.rows != 3:
        raise DiagramError(f"expected a 3-row diagram, got {d.rows} rows")


def h_image(d: Diagram) -> SignedPermutation:
    """Image in S4 x {+1, -1}: the product of the letter images in word order.

    The product is ordinary composition, so on points of {1, 2, 3, 4} the
    last column acts first.  The opposite order misclassifies diagrams:
    C({1}) ⋆ C({1,2}) ⋆ C({1,2,3}) is not primitive and maps to ((12), +1)
    here, but would map to the 4-cycle (1234) the other way round.
    """
    _require_three_rows(d)
    acc = SIGNED_IDENTITY
    for letter in d.columns:
        acc = acc * PSI_TABLE[letter]
    return acc


def same_class(a: SignedPermutation, b: SignedPermutation) -> bool:
    return a.sign == b.sign and a.cycle_type() == b.cycle_type()


def is_primitive_s4(d: Diagram) -> bool:
    x = h_image(d)
    return (x.cycle_type(), x.sign) in PRIMITIVE_CLASSES


def closed_form_P3(n: int) -> int:
    """Number of primitive 3 x n Cauchon diagrams."""
    if n < 1:
        raise ValueError("the closed form holds for n >= 1")
    total = 15 * 4**n - 18 * 3**n + 13 * 2**n - 6 * (-1) ** n + 3 * (-2) ** n
    q, r = divmod(total, 8)
    if r:
        raise ArithmeticError(f"closed form not divisible by 8 at n={n}")
    return q


# The five representative diagrams, with the expected primitivity of each.
TEST_DIAGRAMS: tuple[tuple[Diagram, bool], ...] = (
    (parse_diagram("#/#/#"), True),
    (parse_diagram("././#"), True),
    (parse_diagram(".#/#./##"), False),
    (parse_diagram("../../.."), True),
    (parse_diagram(".#./.../..."), False),
)
