"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest -v tests/test_acceptance.py` (or `-s` to see the lines as
they print).  Timing criteria are measured with perf_counter after a warm-up
call, taking the best of several runs where sub-millisecond budgets apply.
"""

import time
from collections import Counter
from fractions import Fraction

from srexpr import (
    LEADING_TERM_COEFFICIENTS,
    SubExprKey,
    asymptotic_check,
    base_expression,
    basic,
    build_sr,
    check_fingerprint,
    closed_form,
    derived_dipterous_count,
    dipterous_count,
    discrepancy_report,
    enumerate_paths,
    expand,
    expression,
    from_json,
    generate,
    induced_subgraph,
    literal_count,
    lower,
    single_leaf_count,
    sr_count,
    to_json,
    to_text,
    upper,
)
from srexpr.expr import iter_expansion

GOLDEN_SR3 = "(b1+e1*e2+d1*d2)*(b2+e3*e4+d3*d4)+e1*c1*e4+d1*a1*d4"
REFERENCE_COLUMN = {4: 41, 5: 66, 6: 119, 7: 172, 8: 247, 9: 322, 10: 439}


def announce(number: int, description: str) -> None:
    print(f"[PASS] criterion {number}: {description}")


def test_c01_golden_expression():
    expr = generate(3)
    assert to_text(expr) == GOLDEN_SR3
    assert literal_count(expr) == 16
    # the printed text corresponds to exactly this normalized AST
    assert from_json(to_json(expr)) == expr

    generate(3)  # warm-up
    best = min(
        _timed(lambda: to_text(generate(3)))
        for _ in range(20)
    )
    assert best < 1e-3, f"generation+printing took {best * 1e3:.3f} ms"
    announce(1, f"size-3 expression matches the golden text, 16 literals, {best * 1e6:.0f} us")


def _timed(thunk):
    start = time.perf_counter()
    thunk()
    return time.perf_counter() - start


def test_c02_reference_column():
    generate(4)  # warm-up
    start = time.perf_counter()
    counts = {n: literal_count(generate(n)) for n in range(4, 11)}
    elapsed = time.perf_counter() - start
    assert counts == REFERENCE_COLUMN
    assert elapsed < 0.1, f"column took {elapsed:.3f} s"
    announce(2, f"literal counts for sizes 4..10 match the reference column in {elapsed * 1e3:.0f} ms")


def test_c03_exact_oracle_equivalence():
    start = time.perf_counter()
    for n in range(1, 11):
        monomials = Counter(iter_expansion(generate(n)))
        assert all(count == 1 for count in monomials.values()), n
        paths = Counter(enumerate_paths(build_sr(n), limit=10**6))
        assert monomials == paths, n
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"exact sweep took {elapsed:.2f} s"
    announce(3, f"exact expansion equals the path multiset for sizes 1..10 in {elapsed:.2f} s")


def test_c04_fingerprint_equivalence():
    start = time.perf_counter()
    for n in (16, 32, 64, 128):
        report = check_fingerprint(generate(n), build_sr(n), trials=10, seed=42)
        assert report.passed, (n, report.witness)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"fingerprint sweep took {elapsed:.2f} s"
    announce(4, f"10 seeded trials agree with DP evaluation at sizes 16/32/64/128 in {elapsed:.2f} s")


def test_c05_recurrence_generation_agreement():
    for n in range(2, 65):
        assert sr_count(n) == literal_count(generate(n)), n
    announce(5, "recurrence values equal generated literal counts for sizes 2..64")


def test_c06_closed_form_agreement():
    for k in range(2, 7):
        n = 1 << k
        assert closed_form(n) == (sr_count(n), single_leaf_count(n), dipterous_count(n)), n
    assert closed_form(4)[0] == 41
    assert closed_form(8)[0] == 247
    announce(6, "closed forms are integers equal to recurrence values for n = 4..64")


def test_c07_trapezoid_parallelogram_counts():
    for size in range(3, 9):
        ambient = size + 2
        trapezoid = literal_count(expression(ambient, SubExprKey(upper(1), upper(size + 1))))
        parallelogram = literal_count(expression(ambient, SubExprKey(lower(1), upper(size + 1))))
        assert trapezoid == parallelogram, size
    trapezoid2 = literal_count(expression(4, SubExprKey(upper(1), upper(3))))
    parallelogram2 = literal_count(expression(4, SubExprKey(upper(1), lower(3))))
    assert (trapezoid2, parallelogram2) == (11, 12)
    announce(7, "dipterous counts coincide for sizes 3..8 and split 11 vs 12 at size 2")


def test_c08_base_relation_soundness():
    cases = [
        (lambda p: (basic(p), basic(p)), range(1, 9)),
        (lambda p: (basic(p), upper(p)), range(1, 8)),
        (lambda p: (basic(p), lower(p)), range(1, 8)),
        (lambda p: (upper(p), basic(p + 1)), range(1, 8)),
        (lambda p: (lower(p), basic(p + 1)), range(1, 8)),
        (lambda p: (upper(p), upper(p + 1)), range(1, 7)),
        (lambda p: (upper(p), lower(p + 1)), range(1, 7)),
        (lambda p: (lower(p), upper(p + 1)), range(1, 7)),
        (lambda p: (lower(p), lower(p + 1)), range(1, 7)),
        (lambda p: (basic(p), basic(p + 1)), range(1, 8)),
        (lambda p: (basic(p), upper(p + 1)), range(1, 7)),
        (lambda p: (basic(p), lower(p + 1)), range(1, 7)),
        (lambda p: (upper(p), basic(p + 2)), range(1, 7)),
        (lambda p: (lower(p), basic(p + 2)), range(1, 7)),
        (lambda p: (upper(p), upper(p + 2)), range(1, 6)),
        (lambda p: (upper(p), lower(p + 2)), range(1, 6)),
        (lambda p: (lower(p), upper(p + 2)), range(1, 6)),
        (lambda p: (lower(p), lower(p + 2)), range(1, 6)),
    ]
    g = build_sr(8)
    swept = 0
    for pair, positions in cases:
        for p in positions:
            src, dst = pair(p)
            expanded = Counter(expand(base_expression(SubExprKey(src, dst))))
            paths = Counter(enumerate_paths(induced_subgraph(g, src, dst)))
            assert expanded == paths, (str(src), str(dst))
            swept += 1
    announce(8, f"all 18 base relations expand to their subgraph path sets ({swept} positions)")


def test_c09_discrepancies_reproduced():
    report = discrepancy_report()
    by_id = {entry["id"]: entry for entry in report["discrepancies"]}

    size6 = by_id["dipterous-base-size-6"]
    assert size6["reference_value"] == 50
    assert size6["agrees"] is False
    # the derived value is whatever generation yields, recomputed here
    assert size6["derived_value"] == derived_dipterous_count(6)
    assert size6["derived_value"] == literal_count(
        expression(8, SubExprKey(upper(1), upper(7)))
    )

    for name in ("upper-trapezoid-size-2-base", "lower-trapezoid-size-2-base"):
        entry = by_id[name]
        assert entry["reference_passes_oracle"] is False
        assert entry["validated_passes_oracle"] is True
    announce(9, "report flags the size-6 dipterous base and both letter-swapped trapezoid forms")


def test_c10_asymptotic_sanity():
    target = LEADING_TERM_COEFFICIENTS["1-VDA"]
    for ratio in asymptotic_check([16, 32, 64]):
        assert abs(ratio - target) / target < Fraction(5, 100), ratio
    announce(10, "size 16/32/64 ratios lie within 5% of 154/135")
