"""Expression AST: counting, expansion, evaluation, printing, serialization."""

import json
import random

import pytest

from srexpr import (
    CapacityError,
    DEFAULT_PRIME,
    EMPTY_MONOMIAL,
    EdgeLabel,
    Lit,
    Monomial,
    ONE,
    Prod,
    Sum,
    UnboundLabelError,
    evaluate,
    expand,
    expansion_size,
    from_json,
    generate,
    lit,
    literal_count,
    make_product,
    make_sum,
    to_json,
    to_text,
)


def sr2_expr(p=1):
    """b_p + e_(2p-1) e_(2p) + d_(2p-1) d_(2p), written out by hand."""
    return make_sum(
        [
            lit(f"b{p}"),
            make_product([lit(f"e{2 * p - 1}"), lit(f"e{2 * p}")]),
            make_product([lit(f"d{2 * p - 1}"), lit(f"d{2 * p}")]),
        ]
    )


def sr3_expr():
    """The size-3 whole-graph expression, written out by hand."""
    return make_sum(
        [
            make_product([sr2_expr(1), sr2_expr(2)]),
            make_product([lit("e1"), lit("c1"), lit("e4")]),
            make_product([lit("d1"), lit("a1"), lit("d4")]),
        ]
    )


class TestNormalization:
    def test_product_drops_units(self):
        assert make_product([ONE, lit("b1"), ONE]) == lit("b1")
        assert make_product([ONE, ONE]) == ONE
        assert make_product([]) == ONE

    def test_single_child_collapses(self):
        assert make_sum([lit("a1")]) == lit("a1")
        assert make_product([lit("a1")]) == lit("a1")

    def test_nested_nodes_flatten(self):
        nested = make_sum([make_sum([lit("a1"), lit("a2")]), lit("b1")])
        assert nested == Sum((lit("a1"), lit("a2"), lit("b1")))
        nested = make_product([make_product([lit("a1"), lit("a2")]), lit("b1")])
        assert nested == Prod((lit("a1"), lit("a2"), lit("b1")))

    def test_empty_sum_rejected(self):
        with pytest.raises(ValueError):
            make_sum([])

    def test_arity_invariant(self):
        def check(node):
            if isinstance(node, (Sum, Prod)):
                assert len(node.children) >= 2
                if isinstance(node, Prod):
                    assert not any(isinstance(c, (Prod,)) for c in node.children)
                    assert ONE not in node.children
                for child in node.children:
                    check(child)

        check(generate(9))


class TestLiteralCount:
    def test_unit(self):
        assert literal_count(ONE) == 0

    def test_sr2(self):
        assert literal_count(sr2_expr()) == 5

    def test_sr3(self):
        assert literal_count(sr3_expr()) == 16

    def test_unit_elimination_preserves_count(self):
        wrapped = make_product([ONE, sr2_expr(), ONE])
        assert literal_count(wrapped) == 5


class TestExpand:
    def test_sr2(self):
        monomials = {str(m) for m in expand(sr2_expr())}
        assert monomials == {"b1", "e1*e2", "d1*d2"}

    def test_unit(self):
        assert expand(ONE) == [EMPTY_MONOMIAL]

    def test_sr3_has_eleven_distinct_monomials(self):
        monomials = expand(sr3_expr())
        assert len(monomials) == 11
        assert len(set(monomials)) == 11
        texts = {str(m) for m in monomials}
        assert {"b1*b2", "c1*e1*e4", "a1*d1*d4"} <= texts

    def test_multiplicative_and_additive_sizes(self):
        x, y = sr2_expr(1), sr2_expr(2)
        prod = make_product([x, y])
        assert expansion_size(prod) == expansion_size(x) * expansion_size(y)
        assert len(expand(prod)) == 9
        total = make_sum([x, y])
        assert expansion_size(total) == expansion_size(x) + expansion_size(y)

    def test_capacity_limit(self):
        with pytest.raises(CapacityError):
            expand(generate(6), limit=100)

    def test_monomial_labels_are_sorted(self):
        for monomial in expand(sr3_expr()):
            assert list(monomial.labels) == sorted(monomial.labels)


class TestEvaluate:
    def test_worked_example(self):
        assignment = {
            EdgeLabel("b", 1): 2,
            EdgeLabel("e", 1): 3,
            EdgeLabel("e", 2): 5,
            EdgeLabel("d", 1): 7,
            EdgeLabel("d", 2): 11,
        }
        # 2 + 15 + 77
        assert evaluate(sr2_expr(), assignment) == 94

    def test_unit_is_one(self):
        assert evaluate(ONE, {}) == 1
        assert evaluate(ONE, {}, prime=97) == 1

    def test_all_ones_counts_monomials(self):
        e = sr3_expr()
        ones = {label: 1 for m in expand(e) for label in m.labels}
        assert evaluate(e, ones) == 11

    def test_missing_label(self):
        with pytest.raises(UnboundLabelError):
            evaluate(sr2_expr(), {EdgeLabel("b", 1): 2})

    @pytest.mark.parametrize("n", range(2, 7))
    def test_matches_expansion(self, n):
        # evaluation must agree with sum-of-products over the expansion
        e = generate(n)
        monomials = expand(e)
        labels = sorted({label for m in monomials for label in m.labels})
        rng = random.Random(1000 + n)
        for _ in range(3):
            assignment = {label: rng.randrange(1, DEFAULT_PRIME) for label in labels}
            direct = evaluate(e, assignment)
            via_monomials = 0
            for m in monomials:
                term = 1
                for label in m.labels:
                    term = term * assignment[label] % DEFAULT_PRIME
                via_monomials = (via_monomials + term) % DEFAULT_PRIME
            assert direct == via_monomials


class TestToText:
    def test_sr2(self):
        assert to_text(sr2_expr()) == "b1+e1*e2+d1*d2"

    def test_juxtaposed(self):
        assert to_text(sr2_expr(), product_separator="") == "b1+e1e2+d1d2"

    def test_sr3(self):
        assert (
            to_text(sr3_expr())
            == "(b1+e1*e2+d1*d2)*(b2+e3*e4+d3*d4)+e1*c1*e4+d1*a1*d4"
        )

    def test_unit(self):
        assert to_text(ONE) == "1"

    def test_distinct_normalized_asts_print_distinctly(self):
        seen: dict[str, object] = {}

        def walk(node):
            text = to_text(node)
            if text in seen:
                assert seen[text] == node
            else:
                seen[text] = node
            if isinstance(node, (Sum, Prod)):
                for child in node.children:
                    walk(child)

        for n in range(1, 9):
            walk(generate(n))
        assert len(seen) > 50


class TestJson:
    def test_shapes(self):
        assert to_json(lit("b1")) == {"lit": "b1"}
        assert to_json(ONE) == {"one": True}
        assert to_json(sr2_expr()) == {
            "sum": [
                {"lit": "b1"},
                {"prod": [{"lit": "e1"}, {"lit": "e2"}]},
                {"prod": [{"lit": "d1"}, {"lit": "d2"}]},
            ]
        }

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_round_trip(self, n):
        e = generate(n)
        assert from_json(json.loads(json.dumps(to_json(e)))) == e

    def test_malformed_rejected(self):
        for obj in ({}, {"lit": "x9"}, {"one": False}, {"mul": []}, {"lit": "b1", "one": True}):
            with pytest.raises(ValueError):
                from_json(obj)


class TestMonomial:
    def test_of_sorts(self):
        m = Monomial.of([EdgeLabel("e", 2), EdgeLabel("a", 10), EdgeLabel("d", 1)])
        assert str(m) == "a10*d1*e2"

    def test_empty_prints_as_unit(self):
        assert str(EMPTY_MONOMIAL) == "1"

    def test_ordering(self):
        a = Monomial.of([EdgeLabel("a", 1)])
        b = Monomial.of([EdgeLabel("a", 1), EdgeLabel("b", 1)])
        assert a < b
