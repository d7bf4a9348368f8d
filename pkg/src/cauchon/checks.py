"""Self-verification suites behind ``cauchon verify``.

Each check is a module-level function returning ``(ok, detail)`` so that
checks can be shipped to worker processes.  Results always come back in
declaration order, whatever the number of workers.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import automata, excess_algebra as ex, pfaffian as pf, rep3
from .diagram import Diagram, enumerate_diagrams, is_cauchon

DEFAULT_SEED = 20_240_917
SUITES = ("pfaffian", "group", "rep3", "automata")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"[{self.suite}] {self.name}: {status}{tail}"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "ok": self.ok,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


def random_diagram(rng: random.Random, m: int, n: int) -> Diagram:
    full = (1 << m) - 1
    return Diagram(m, tuple(rng.randint(0, full) for _ in range(n)))


def small_diagrams(max_m: int, max_n: int):
    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            yield from enumerate_diagrams(m, n)


def _first(bad: list, total: int) -> tuple[bool, str]:
    if bad:
        return False, f"{len(bad)} of {total} failed, first: {bad[0]}"
    return True, f"{total} cases"


# -- pfaffian -----------------------------------------------------------------


def _identity_failures(d: Diagram) -> list[str]:
    det = pf.determinant(pf.skew_adjacency(d))
    by_matching = pf.pfaffian_matchings(d)
    out = []
    if by_matching * by_matching != det:
        out.append("square")
    if pf.pfaffian_decompositions(d) != by_matching:
        out.append("decomposition")
    if not pf.is_zero_or_signed_power_of_two(by_matching):
        out.append("pfaffian-power")
    if pf.power_of_four_class(det).kind is pf.PowerKind.VIOLATION:
        out.append("det-power")
    if (by_matching == 0) != (by_matching % 3 == 0):
        out.append("mod3")
    if d.rows <= 4 and ex.pfaffian_mod3(d) != by_matching % 3:
        out.append("algebra-mod3")
    return out


def _identity_sweep(diagrams, keep: Callable[[str], bool]) -> tuple[bool, str]:
    bad = []
    total = 0
    for d in diagrams:
        total += 1
        fails = [f for f in _identity_failures(d) if keep(f)]
        if fails:
            bad.append(f"{d.to_inline()} {fails}")
    return _first(bad, total)


def check_square_exhaustive(seed: int) -> tuple[bool, str]:
    return _identity_sweep(small_diagrams(3, 3), lambda f: f == "square")


def check_sums_exhaustive(seed: int) -> tuple[bool, str]:
    return _identity_sweep(small_diagrams(3, 3), lambda f: f == "decomposition")


def check_powers_exhaustive(seed: int) -> tuple[bool, str]:
    return _identity_sweep(small_diagrams(3, 3), lambda f: f.endswith("power"))


def check_mod3_exhaustive(seed: int) -> tuple[bool, str]:
    return _identity_sweep(small_diagrams(3, 3), lambda f: "mod3" in f)


def check_random_4x4(seed: int, count: int = 200) -> tuple[bool, str]:
    rng = random.Random(seed)
    diagrams = [random_diagram(rng, 4, 4) for _ in range(count)]
    ok, detail = _identity_sweep(diagrams, lambda f: True)
    return ok, f"{detail}, seed {seed}"


def check_triple_oracle(seed: int) -> tuple[bool, str]:
    bad = []
    total = 0
    for n in range(0, 5):
        for d in enumerate_diagrams(3, n):
            total += 1
            verdicts = (pf.is_primitive_oracle(d), ex.is_primitive_fast(d), rep3.is_primitive_s4(d))
            if len(set(verdicts)) != 1:
                bad.append(f"{d.to_inline()} {verdicts}")
    return _first(bad, total)


# -- group --------------------------------------------------------------------


def check_group_orders(seed: int) -> tuple[bool, str]:
    sizes = [len(ex.group_elements(m)) for m in range(1, 5)]
    return sizes == [4 ** m for m in range(1, 5)], f"orders {sizes}"


def check_exponent_four(seed: int) -> tuple[bool, str]:
    bad = []
    for m in range(1, 4):
        e = ex.ex_identity(m)
        bad += [x for x in ex.group_elements(m) if x * x * x * x != e]
    return _first(bad, sum(4 ** m for m in range(1, 4)))


def check_group_stats(seed: int) -> tuple[bool, str]:
    got = {m: ex.group_stats(m) for m in (2, 3)}
    want = {m: (4 ** m, 4, 2, 2 ** (2 * m - 1) + 2) for m in (2, 3)}
    return got == want, f"(order, center, commutator, classes) = {got}"


def check_homomorphism(seed: int, count: int = 500) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        a = random_diagram(rng, 3, rng.randint(0, 4))
        b = random_diagram(rng, 3, rng.randint(0, 4))
        if ex.diagram_image(a * b) != ex.diagram_image(a) * ex.diagram_image(b):
            bad.append(f"{a.to_inline()} * {b.to_inline()}")
    ok, detail = _first(bad, count)
    return ok, f"{detail}, seed {seed}"


def check_direct_image(seed: int) -> tuple[bool, str]:
    bad = []
    total = 0
    for d in small_diagrams(3, 3):
        total += 1
        if ex.diagram_image(d) != ex.decomposition_image(d):
            bad.append(d.to_inline())
    return _first(bad, total)


def check_image_closure(seed: int) -> tuple[bool, str]:
    closures = [ex.image_closure(m) for m in (1, 2, 3)]
    sizes = [len(c) for c in closures]
    up_to_sign = [len({frozenset((x, -x)) for x in c}) for c in closures]
    ok = sizes == [2, 32, 384] and up_to_sign == [2, 16, 192]
    return ok, f"orders {sizes}, up to sign {up_to_sign}"


# -- rep3 ---------------------------------------------------------------------


def check_column_expressions(seed: int) -> tuple[bool, str]:
    bad = [
        letter for letter in range(8)
        if ex.column_image(3, letter) != rep3.COLUMN_GENERATOR_EXPRESSIONS[letter]
    ]
    return not bad, f"mismatched letters {bad}" if bad else "8 columns"


def check_column_matrices(seed: int) -> tuple[bool, str]:
    bad = rep3.column_constant_mismatches()
    return not bad, f"mismatched letters {bad}" if bad else "8 columns"


def check_phi_relations(seed: int) -> tuple[bool, str]:
    fails = rep3.phi_relation_failures()
    return not fails, "; ".join(fails) if fails else "all relations"


def check_g3_order(seed: int) -> tuple[bool, str]:
    order, _ = rep3.g3_closure()
    return order == 384, f"order {order}"


def check_matrix_image_order(seed: int) -> tuple[bool, str]:
    order = len(rep3.matrix_closure())
    return order == 384, f"order {order}"


def check_test_diagrams(seed: int) -> tuple[bool, str]:
    got = []
    ok = True
    for d, want in rep3.TEST_DIAGRAMS:
        verdicts = {pf.is_primitive_oracle(d), ex.is_primitive_fast(d), rep3.is_primitive_s4(d)}
        ok &= verdicts == {want}
        got.append("P" if pf.is_primitive_oracle(d) else "N")
    return ok, " ".join(got)


# -- automata -----------------------------------------------------------------


def check_cauchon_dfa(seed: int) -> tuple[bool, str]:
    bad = []
    total = 0
    for m in range(1, 5):
        dfa = automata.build_cauchon_dfa(m)
        for n in range(0, 5):
            for d in enumerate_diagrams(m, n):
                total += 1
                if dfa.accepts(d.columns) != is_cauchon(d):
                    bad.append(d.to_inline())
    return _first(bad, total)


def check_cauchon_counts(seed: int) -> tuple[bool, str]:
    c1 = automata.count_sequence(automata.build_cauchon_dfa(1), 10)
    c31 = automata.count_words(automata.build_cauchon_dfa(3), 1)
    c22 = automata.count_words(automata.build_cauchon_dfa(2), 2)
    ok = c1 == [2 ** n for n in range(1, 11)] and c31 == 8 and c22 == 14
    return ok, f"C(1,1..10)={c1}, C(3,1)={c31}, C(2,2)={c22}"


def check_primitive_dfa(seed: int) -> tuple[bool, str]:
    bad = []
    total = 0
    for m in range(1, 4):
        dfa = automata.primitive_cauchon_dfa(m)
        for n in range(0, 5):
            for d in enumerate_diagrams(m, n):
                total += 1
                want = is_cauchon(d) and pf.is_primitive_oracle(d)
                if dfa.accepts(d.columns) != want:
                    bad.append(d.to_inline())
    return _first(bad, total)


def check_closed_form(seed: int) -> tuple[bool, str]:
    counts = automata.count_sequence(automata.primitive_cauchon_dfa(3), 12)
    want = [rep3.closed_form_P3(n) for n in range(1, 13)]
    return counts == want, f"P(3,1..3) = {counts[:3]}"


def check_recurrence_m3(seed: int) -> tuple[bool, str]:
    counts = automata.count_sequence(automata.primitive_cauchon_dfa(3), 24)
    rec = automata.find_recurrence(counts[:14])
    ok = rec.coefficients == (6, -1, -36, 20, 48) and rec.extend(counts[:14], 10) == counts[14:]
    return ok, str(rec)


def check_recurrence_small(seed: int) -> tuple[bool, str]:
    notes = []
    ok = True
    for m in (1, 2):
        dfa = automata.primitive_cauchon_dfa(m)
        k = automata.recommended_terms(dfa)
        counts = automata.count_sequence(dfa, k + 10)
        rec = automata.find_recurrence(counts[:k])
        ok &= rec.extend(counts[:k], 10) == counts[k:]
        notes.append(f"m={m}: order {rec.order}")
    return ok, ", ".join(notes)


CHECKS: dict[str, list[tuple[str, Callable[[int], tuple[bool, str]]]]] = {
    "pfaffian": [
        ("Pfaffian² = det (exhaustive 3×3)", check_square_exhaustive),
        ("matching sum = decomposition sum (exhaustive 3×3)", check_sums_exhaustive),
        ("Pfaffian ∈ {0, ±2^k}, det ∈ {0, 4^k} (exhaustive 3×3)", check_powers_exhaustive),
        ("Pfaffian = 0 ⇔ Pfaffian ≡ 0 mod 3 (exhaustive 3×3)", check_mod3_exhaustive),
        ("all identities on 200 random 4×4", check_random_4x4),
        ("oracle = fast = s4 (3×n, n ≤ 4)", check_triple_oracle),
    ],
    "group": [
        ("|Ex_m| = 4^m (m ≤ 4)", check_group_orders),
        ("x⁴ = e (m ≤ 3)", check_exponent_four),
        ("center 4, commutator 2, 2^(2m−1)+2 classes (m = 2, 3)", check_group_stats),
        ("[a⋆b] = [a]·[b] (500 random 3-row pairs)", check_homomorphism),
        ("diagram_image = decomposition sum (m, n ≤ 3)", check_direct_image),
        ("image orders 2, 32, 384 (16 up to sign at m = 2)", check_image_closure),
    ],
    "rep3": [
        ("column images = generator expressions", check_column_expressions),
        ("column matrices = Φ(column images)", check_column_matrices),
        ("Φ relations", check_phi_relations),
        ("|G₃| = 384", check_g3_order),
        ("|Φ(G₃)| = 384", check_matrix_image_order),
        ("test diagrams classify P P N P N", check_test_diagrams),
    ],
    "automata": [
        ("DFA ≡ is_cauchon (m ≤ 4, n ≤ 4)", check_cauchon_dfa),
        ("C(1,n) = 2^n, C(3,1) = 8, C(2,2) = 14", check_cauchon_counts),
        ("primitive DFA ≡ cauchon ∧ oracle (m ≤ 3, n ≤ 4)", check_primitive_dfa),
        ("P(3,n) = closed form (n ≤ 12)", check_closed_form),
        ("P(3,n) recurrence (6, −1, −36, 20, 48)", check_recurrence_m3),
        ("m = 1, 2 recurrences predict 10 more terms", check_recurrence_small),
    ],
}


def _run_one(suite: str, index: int, seed: int) -> CheckResult:
    name, fn = CHECKS[suite][index]
    start = time.perf_counter()
    try:
        ok, detail = fn(seed)
    except Exception as exc:  # a crashing check is a failing check
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(suite, name, bool(ok), detail, time.perf_counter() - start)


def run_suite(suite: str = "all", seed: int = DEFAULT_SEED, threads: int = 1) -> list[CheckResult]:
    if suite == "all":
        names = list(SUITES)
    elif suite in CHECKS:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; choose all or one of {', '.join(SUITES)}")
    jobs = [(s, i) for s in names for i in range(len(CHECKS[s]))]
    if threads <= 1:
        return [_run_one(s, i, seed) for s, i in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_run_one, s, i, seed) for s, i in jobs]
        return [f.result() for f in futures]
