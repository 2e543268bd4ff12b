"""Acceptance criteria 1-11, each checked exactly and against its time budget.

Run under pytest for one PASS/FAIL line per criterion in the terminal summary,
or directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import io
import itertools
import sys
import time
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cobarkit import cli, dual  # noqa: E402
from cobarkit.adams import (column_dims, e2_direct_vs_model, lam, pi_rank, sn_report)  # noqa: E402
from cobarkit.cobar import (CobarComplex, check_d_squared, class_Q, cobar_d, cotor_dims,  # noqa: E402
                            expected_q_image, q_model_dims, quotient_chain_map)
from cobarkit.comodules import (UNIT, coaction_msu, ComodulePoly, gen, poly_basis,  # noqa: E402
                                poly_coaction_mono, poly_mono_mul, verify_G_iso)
from cobarkit.fp import vec_add  # noqa: E402
from cobarkit.steenrod import SteenrodElement, from_word, generator_words, product  # noqa: E402

from cli_cases import CASES  # noqa: E402

RESULTS: dict[int, tuple[bool, float, float, str]] = {}


def criterion_1():
    checks = [
        from_word("Sq1 Sq1", 2).terms == {},
        from_word("Sq1 Sq2", 2).terms == {(3,): 1},
        from_word("Sq2 Sq2", 2).terms == {(3, 1): 1},
        from_word("P1 P1", 3).terms == {(0, 2, 0): 2},
    ]
    for p in (2, 3, 5):
        gens = [SteenrodElement(p, {w: 1}) for w in generator_words(p, 24)]
        checks.append(all(product(product(a, b), c).terms == product(a, product(b, c)).terms
                          for a, b, c in itertools.product(gens, repeat=3)))
    return all(checks)


def _hopf_ok(m, p):
    delta = dual.coproduct_mono(m, p)
    if {b: c for (a, b), c in delta.items() if a == dual.ONE} != {m: 1}:
        return False
    if {a: c for (a, b), c in delta.items() if b == dual.ONE} != {m: 1}:
        return False
    left: dict = {}
    right: dict = {}
    for (x, y), c in delta.items():
        for (a, b), cc in dual.coproduct_mono(x, p).items():
            vec_add(left, {(a, b, y): cc}, p, c)
        for (b, z), cc in dual.coproduct_mono(y, p).items():
            vec_add(right, {(x, b, z): cc}, p, c)
    if left != right:
        return False
    anti: dict = {}
    for (x, y), c in delta.items():
        vec_add(anti, dual.mul(dual.antipode_mono(x, p), {y: 1}, p), p, c)
    return anti == ({dual.ONE: 1} if m == dual.ONE else {})


def criterion_2():
    for p, bound in ((3, 2 * (3 ** 3 - 1)), (5, 2 * (5 ** 2 - 1))):
        for t in range(bound + 1):
            if not all(_hopf_ok(m, p) for m in dual.milnor_basis(p, t)):
                return False
    return True


def criterion_3():
    p = 3
    bound = 2 * (p ** 3 - 1)
    for k in (-1, 0, 1, 2, 3):
        series = dual.xibar_series_power(k, bound, p)
        for t in range(bound + 1):
            if dual.xibar_power_component(k, t, p) != dual.component(series, p, t):
                return False
    for t in (1, 2, 3):
        if dual.xibar_power_component(-1, 2 * (p ** t - 1), p) != {dual.xi(t): 1}:
            return False
        special = {p ** t - p ** s for s in range(t + 1)}
        for i in range(1, p ** t):
            comp = dual.xibar_power_component(i - 1, 2 * (p ** t - i - 1), p)
            if i not in special and comp:
                return False
            if i in special and len(comp) != 1:
                return False
    return True


def criterion_4():
    p = 3
    ms = [m for t in range(0, 41, 2) for m in poly_basis("MSU", p, t)]
    for m in ms:
        rho = poly_coaction_mono("Y", m, p)
        if {x: c for (a, x), c in rho.items() if a == dual.ONE} != {m: 1}:
            return False
        lhs: dict = {}
        rhs: dict = {}
        for (a, x), c in rho.items():
            for (a1, a2), cc in dual.coproduct_mono(a, p).items():
                vec_add(lhs, {(a1, a2, x): cc}, p, c)
            for (b, y), cc in poly_coaction_mono("Y", x, p).items():
                vec_add(rhs, {(a, b, y): cc}, p, c)
        if lhs != rhs:
            return False
    for a, b in itertools.combinations_with_replacement(ms, 2):
        if sum(2 * n * e for n, e in a + b) > 40:
            continue
        lhs = poly_coaction_mono("Y", poly_mono_mul(a, b), p)
        rhs: dict = {}
        for (x, u), c in poly_coaction_mono("Y", a, p).items():
            for (y, v), cc in poly_coaction_mono("Y", b, p).items():
                r = dual.mono_mul(x, y)
                if r is not None:
                    vec_add(rhs, {(r[1], poly_mono_mul(u, v)): r[0] * c * cc}, p)
        if lhs != rhs:
            return False
    y2 = coaction_msu(ComodulePoly.generator(2, p))
    if y2 != {(dual.xi(1), UNIT): 1, (dual.ONE, gen(2)): 1}:
        return False
    # -conj(xi_2)⊗1 + conj(xi_1)⊗Y_2^3 + 1⊗Y_8 with conj(xi_2) = xi_1^4 - xi_2, conj(xi_1) = -xi_1
    y8 = {(dual.xi(2), UNIT): 1, (((4,), ()), UNIT): 2, (dual.xi(1), gen(2, 3)): 2,
          (dual.ONE, gen(8)): 1}
    return coaction_msu(ComodulePoly.generator(8, p)) == y8


def criterion_5():
    return verify_G_iso(3, 40)["ok"] and verify_G_iso(5, 32)["ok"]


def criterion_6():
    pairs = [("full", "trivial"), ("full", "MSU"), ("full", "APrime_tensor_PH"),
             ("A_mod_A_prime", "trivial"), ("Lambda_tau0", "trivial")]
    if not all(check_d_squared(CobarComplex(3, a, m), 2, 20) for a, m in pairs):
        return False
    for p, ts in ((3, (0, 1, 2)), (5, (0, 1))):
        for t in ts:
            for comodule in ("APrime_tensor_PH", "MSU"):
                q = class_Q(t, p, comodule)
                if not q or cobar_d(q):
                    return False
                if quotient_chain_map(q) != expected_q_image(t, p, comodule):
                    return False
    return True


def criterion_7():
    lam_t0 = cotor_dims("Lambda_tau0", "trivial", 4, 12, 3)
    if any(d != (1 if s == t else 0) for (s, t), d in lam_t0.entries.items()):
        return False
    ext = cotor_dims("A_mod_A_prime", "trivial", 3, 18, 3)
    if ext.entries != q_model_dims(3, 3, 18).entries:
        return False
    acyc = cotor_dims("full", "extended", 2, 12, 3)
    return all(acyc[s, t] == 0 for s in (1, 2) for t in range(13))


def criterion_8():
    report = e2_direct_vs_model(3, 2, 14)
    return report["equal"] and report["odd_t_minus_s_zero"]


def _partitions(n, smallest=2):
    if n == 0:
        return 1
    return sum(_partitions(n - k, k) for k in range(smallest, n + 1))


def criterion_9():
    expected = [1, 1, 2, 2, 4, 4, 7]
    if [pi_rank(n) for n in range(2, 9)] != expected:
        return False
    if [_partitions(n) for n in range(2, 9)] != expected:
        return False
    for p in (3, 5):
        for n, r in zip(range(2, 9), expected):
            if any(c != r for c in column_dims(p, n, n + 3)[n:]):
                return False
    return True


def _prime_power_base(m):
    for q in range(2, m + 1):
        if all(q % d for d in range(2, q)):
            x = q
            while x < m:
                x *= q
            if x == m:
                return q
    return None


def criterion_10():
    for n in range(1, 21):
        if lam(n) != (_prime_power_base(n + 1) or 1):
            return False
    if [sn_report(n).sn_odd_part for n in (2, 4, 8, 9)] != [3, 5, 3, 3]:
        return False
    for n in range(2, 101):
        sq = sn_report(n).square
        if sq["top"] * sq["right"] != sq["left"] * sq["bottom"]:
            return False
        if sq["left"] * sq["bottom"] != lam(n) * lam(n - 1):
            return False
    return True


def _run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue()


def criterion_11(tmp_dir: Path | None = None):
    import os
    import tempfile
    saved = os.environ.pop("COBARKIT_CACHE", None)
    try:
        with tempfile.TemporaryDirectory(dir=tmp_dir) as cache:
            for argv in CASES.values():
                runs = [_run_cli(argv), _run_cli(argv), _run_cli(argv + ["--no-cache"]),
                        _run_cli(argv + ["--cache-dir", cache]),
                        _run_cli(argv + ["--cache-dir", cache])]
                if any(code != 0 for code, _ in runs) or len({out for _, out in runs}) != 1:
                    return False
    finally:
        if saved is not None:
            os.environ["COBARKIT_CACHE"] = saved
    return True


CRITERIA = [
    (1, "Adem relations and associativity", 10, criterion_1),
    (2, "Hopf axioms at p=3,5", 60, criterion_2),
    (3, "closed conjugation formula", 60, criterion_3),
    (4, "MSU coaction", 60, criterion_4),
    (5, "splitting isomorphism", 120, criterion_5),
    (6, "cobar d^2 and Q_t cycles", 120, criterion_6),
    (7, "Cotor tables", 300, criterion_7),
    (8, "change of rings and E2", 600, criterion_8),
    (9, "additive Novikov check", 60, criterion_9),
    (10, "generator arithmetic", 1, criterion_10),
    (11, "CLI determinism", 60, criterion_11),
]


def evaluate(number, name, limit, func):
    start = time.perf_counter()
    try:
        ok = bool(func())
        note = ""
    except Exception as exc:  # noqa: BLE001
        ok, note = False, f" ({type(exc).__name__}: {exc})"
    elapsed = time.perf_counter() - start
    passed = ok and elapsed < limit
    if ok and not passed:
        note = " (over time budget)"
    line = (f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  "
            f"{elapsed:8.2f}s / {limit}s  {name}{note}")
    RESULTS[number] = (passed, elapsed, limit, line)
    return passed, line


@pytest.mark.parametrize("number,name,limit,func", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(number, name, limit, func):
    passed, line = evaluate(number, name, limit, func)
    print(line)
    assert passed, line


if __name__ == "__main__":
    failures = 0
    for crit in CRITERIA:
        passed, line = evaluate(*crit)
        print(line, flush=True)
        failures += not passed
    sys.exit(1 if failures else 0)
