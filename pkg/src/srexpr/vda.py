"""One-vertex decomposition: factored expressions for square rhomboids.

Every subgraph between two terminals is either a base case (sizes 1 and 2,
written out literally below) or is split at a basic vertex i strictly between
the endpoints.  A path from src to dst passes through vertex i, through the
bridging upper edge c_(i-1), or through the bridging lower edge a_(i-1), so

    E(src, dst) = E(src, i) E(i, dst)
                + E(src, upper(i-1)) c_(i-1) E(upper(i), dst)
                + E(src, lower(i-1)) a_(i-1) E(lower(i), dst)

with the split vertex chosen at the midpoint: i = ceil((p+q)/2) for families
with a basic endpoint, i = ceil((p+q+1)/2) for the dipterous families (floor
is available as a config knob; the literal counts match either way).

Two of the size-2 trapezoidal base expressions circulate in a letter-swapped
form whose second addend names edges that do not exist in the subgraph; the
forms below are the ones validated against the path-sum oracle.  The swapped
variants are kept (`reference_trap_base_variant`) so the discrepancy report
can demonstrate the inconsistency.

Generation is a pure function of (n, src, dst, rounding); the memo table
lives inside a single call, so concurrent calls are independent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BaseCaseExpectedError, InvalidSizeError, RangeError
from .expr import Expr, Lit, ONE, make_product, make_sum
from .graph import (
    Family,
    SubgraphKind,
    Terminal,
    TerminalKind,
    basic,
    classify,
    lower,
    make_label,
    upper,
)


@dataclass(frozen=True)
class SubExprKey:
    """Terminal pair identifying one subexpression; the memoization key."""

    src: Terminal
    dst: Terminal


def _e(i: int) -> Lit:
    return Lit(make_label("e", i))


def _d(i: int) -> Lit:
    return Lit(make_label("d", i))


def _a(i: int) -> Lit:
    return Lit(make_label("a", i))


def _b(i: int) -> Lit:
    return Lit(make_label("b", i))


def _c(i: int) -> Lit:
    return Lit(make_label("c", i))


def _sr_size2(p: int) -> Expr:
    # b_p + e_(2p-1) e_(2p) + d_(2p-1) d_(2p)
    return make_sum(
        [
            _b(p),
            make_product([_e(2 * p - 1), _e(2 * p)]),
            make_product([_d(2 * p - 1), _d(2 * p)]),
        ]
    )


def _trap_upper_size1(p: int) -> Expr:
    # c_p + e_(2p) e_(2p+1)
    return make_sum([_c(p), make_product([_e(2 * p), _e(2 * p + 1)])])


def _trap_lower_size1(p: int) -> Expr:
    # a_p + d_(2p) d_(2p+1)
    return make_sum([_a(p), make_product([_d(2 * p), _d(2 * p + 1)])])


def _sl_basic_upper_size2(p: int) -> Expr:
    # (b_p + d_(2p-1) d_(2p)) e_(2p+1) + e_(2p-1) (c_p + e_(2p) e_(2p+1))
    left = make_sum([_b(p), make_product([_d(2 * p - 1), _d(2 * p)])])
    return make_sum(
        [
            make_product([left, _e(2 * p + 1)]),
            make_product([_e(2 * p - 1), _trap_upper_size1(p)]),
        ]
    )


def _sl_basic_lower_size2(p: int) -> Expr:
    # (b_p + e_(2p-1) e_(2p)) d_(2p+1) + d_(2p-1) (a_p + d_(2p) d_(2p+1))
    left = make_sum([_b(p), make_product([_e(2 * p - 1), _e(2 * p)])])
    return make_sum(
        [
            make_product([left, _d(2 * p + 1)]),
            make_product([_d(2 * p - 1), _trap_lower_size1(p)]),
        ]
    )


def _sl_upper_basic_size2(p: int) -> Expr:
    # (c_p + e_(2p) e_(2p+1)) e_(2p+2) + e_(2p) (b_(p+1) + d_(2p+1) d_(2p+2))
    right = make_sum([_b(p + 1), make_product([_d(2 * p + 1), _d(2 * p + 2)])])
    return make_sum(
        [
            make_product([_trap_upper_size1(p), _e(2 * p + 2)]),
            make_product([_e(2 * p), right]),
        ]
    )


def _sl_lower_basic_size2(p: int) -> Expr:
    # (a_p + d_(2p) d_(2p+1)) d_(2p+2) + d_(2p) (b_(p+1) + e_(2p+1) e_(2p+2))
    right = make_sum([_b(p + 1), make_product([_e(2 * p + 1), _e(2 * p + 2)])])
    return make_sum(
        [
            make_product([_trap_lower_size1(p), _d(2 * p + 2)]),
            make_product([_d(2 * p), right]),
        ]
    )


def _trap_upper_size2(p: int) -> Expr:
    # e_(2p) (b_(p+1) + d_(2p+1) d_(2p+2)) e_(2p+3)
    #   + (c_p + e_(2p) e_(2p+1)) (c_(p+1) + e_(2p+2) e_(2p+3))
    middle = make_sum([_b(p + 1), make_product([_d(2 * p + 1), _d(2 * p + 2)])])
    return make_sum(
        [
            make_product([_e(2 * p), middle, _e(2 * p + 3)]),
            make_product([_trap_upper_size1(p), _trap_upper_size1(p + 1)]),
        ]
    )


def _trap_lower_size2(p: int) -> Expr:
    # d_(2p) (b_(p+1) + e_(2p+1) e_(2p+2)) d_(2p+3)
    #   + (a_p + d_(2p) d_(2p+1)) (a_(p+1) + d_(2p+2) d_(2p+3))
    middle = make_sum([_b(p + 1), make_product([_e(2 * p + 1), _e(2 * p + 2)])])
    return make_sum(
        [
            make_product([_d(2 * p), middle, _d(2 * p + 3)]),
            make_product([_trap_lower_size1(p), _trap_lower_size1(p + 1)]),
        ]
    )


def _para_upper_lower_size2(p: int) -> Expr:
    # e_(2p) (b_(p+1) d_(2p+3) + d_(2p+1) (a_(p+1) + d_(2p+2) d_(2p+3)))
    #   + (c_p + e_(2p) e_(2p+1)) e_(2p+2) d_(2p+3)
    inner = make_sum(
        [
            make_product([_b(p + 1), _d(2 * p + 3)]),
            make_product([_d(2 * p + 1), _trap_lower_size1(p + 1)]),
        ]
    )
    return make_sum(
        [
            make_product([_e(2 * p), inner]),
            make_product([_trap_upper_size1(p), _e(2 * p + 2), _d(2 * p + 3)]),
        ]
    )


def _para_lower_upper_size2(p: int) -> Expr:
    # d_(2p) (b_(p+1) e_(2p+3) + e_(2p+1) (c_(p+1) + e_(2p+2) e_(2p+3)))
    #   + (a_p + d_(2p) d_(2p+1)) d_(2p+2) e_(2p+3)
    inner = make_sum(
        [
            make_product([_b(p + 1), _e(2 * p + 3)]),
            make_product([_e(2 * p + 1), _trap_upper_size1(p + 1)]),
        ]
    )
    return make_sum(
        [
            make_product([_d(2 * p), inner]),
            make_product([_trap_lower_size1(p), _d(2 * p + 2), _e(2 * p + 3)]),
        ]
    )


_BASE_BUILDERS = {
    (Family.SR, 1): lambda p: ONE,
    (Family.SR, 2): _sr_size2,
    (Family.SL_BASIC_UPPER, 1): lambda p: _e(2 * p - 1),
    (Family.SL_BASIC_LOWER, 1): lambda p: _d(2 * p - 1),
    (Family.SL_UPPER_BASIC, 1): lambda p: _e(2 * p),
    (Family.SL_LOWER_BASIC, 1): lambda p: _d(2 * p),
    (Family.TRAP_UPPER_UPPER, 1): _trap_upper_size1,
    (Family.TRAP_LOWER_LOWER, 1): _trap_lower_size1,
    (Family.PARA_UPPER_LOWER, 1): lambda p: make_product([_e(2 * p), _d(2 * p + 1)]),
    (Family.PARA_LOWER_UPPER, 1): lambda p: make_product([_d(2 * p), _e(2 * p + 1)]),
    (Family.SL_BASIC_UPPER, 2): _sl_basic_upper_size2,
    (Family.SL_BASIC_LOWER, 2): _sl_basic_lower_size2,
    (Family.SL_UPPER_BASIC, 2): _sl_upper_basic_size2,
    (Family.SL_LOWER_BASIC, 2): _sl_lower_basic_size2,
    (Family.TRAP_UPPER_UPPER, 2): _trap_upper_size2,
    (Family.TRAP_LOWER_LOWER, 2): _trap_lower_size2,
    (Family.PARA_UPPER_LOWER, 2): _para_upper_lower_size2,
    (Family.PARA_LOWER_UPPER, 2): _para_lower_upper_size2,
}


def base_expression(key: SubExprKey) -> Expr:
    """The literal base expression for a size-1 or size-2 subgraph."""
    kind = classify(key.src, key.dst)
    builder = _BASE_BUILDERS.get((kind.family, kind.size))
    if builder is None:
        raise BaseCaseExpectedError(f"{key.src}->{key.dst} (size {kind.size}) is not a base case")
    return builder(key.src.index)


def reference_trap_base_variant(key: SubExprKey) -> Expr:
    """Letter-swapped variant of a size-2 trapezoidal base expression.

    This is the variant with the upper/lower second addends exchanged between
    the two trapezoid orientations.  It has the same literal count (11) as
    the validated form but names edges outside the subgraph, so it fails the
    path-set check; it exists solely to feed the discrepancy report.
    """
    kind = classify(key.src, key.dst)
    if kind.size != 2 or not kind.is_trapezoidal:
        raise ValueError(f"{key.src}->{key.dst} is not a size-2 trapezoid")
    p = key.src.index
    middle = (
        make_sum([_b(p + 1), make_product([_d(2 * p + 1), _d(2 * p + 2)])])
        if kind.family is Family.TRAP_UPPER_UPPER
        else make_sum([_b(p + 1), make_product([_e(2 * p + 1), _e(2 * p + 2)])])
    )
    if kind.family is Family.TRAP_UPPER_UPPER:
        first = make_product([_e(2 * p), middle, _e(2 * p + 3)])
        second = make_product([_trap_lower_size1(p), _trap_lower_size1(p + 1)])
    else:
        first = make_product([_d(2 * p), middle, _d(2 * p + 3)])
        second = make_product([_trap_upper_size1(p), _trap_upper_size1(p + 1)])
    return make_sum([first, second])


def choose_split(kind: SubgraphKind, p: int, q: int, rounding: str = "ceil") -> int:
    """Index of the basic decomposition vertex for a size >= 3 subgraph.

    Dipterous subgraphs split at the midpoint of (p+q+1); everything else at
    the midpoint of (p+q).  The `rounding` option picks a side for even spans
    on the whole-graph and dipterous rules, where either midpoint is valid;
    single-leaf splits are always the ceiling, because flooring them would
    produce an empty bridge-side piece at size 3 with a non-basic source.
    Raises BaseCaseExpectedError when the subgraph is small enough to be a
    base case.
    """
    if rounding not in ("ceil", "floor"):
        raise ValueError(f"rounding must be 'ceil' or 'floor', got {rounding!r}")
    if kind.size < 3:
        raise BaseCaseExpectedError(
            f"size-{kind.size} {kind.family.value} subgraph has no decomposition vertex"
        )
    total = p + q + 1 if kind.is_dipterous else p + q
    if rounding == "ceil" or kind.is_single_leaf:
        i = (total + 1) // 2
    else:
        i = total // 2
    assert p < i < q, f"split {i} escaped the open interval ({p}, {q})"
    return i


def _validate_key(n: int, key: SubExprKey) -> None:
    for terminal in (key.src, key.dst):
        bound = n if terminal.kind is TerminalKind.BASIC else n - 1
        if not 1 <= terminal.index <= bound:
            raise RangeError(f"{terminal} is outside a size-{n} square rhomboid")
    classify(key.src, key.dst)  # raises OrderingError for an empty span


def expression(n: int, key: SubExprKey, rounding: str = "ceil", memoize: bool = True) -> Expr:
    """Factored expression for the subgraph of SR(n) between key.src and key.dst."""
    if n < 1:
        raise InvalidSizeError(f"square rhomboid size must be >= 1, got {n}")
    _validate_key(n, key)
    memo: dict[SubExprKey, Expr] | None = {} if memoize else None

    def build(k: SubExprKey) -> Expr:
        if memo is not None:
            hit = memo.get(k)
            if hit is not None:
                return hit
        kind = classify(k.src, k.dst)
        if kind.size <= 2:
            result = base_expression(k)
        else:
            i = choose_split(kind, k.src.index, k.dst.index, rounding)
            result = make_sum(
                [
                    make_product([build(SubExprKey(k.src, basic(i))), build(SubExprKey(basic(i), k.dst))]),
                    make_product(
                        [
                            build(SubExprKey(k.src, upper(i - 1))),
                            _c(i - 1),
                            build(SubExprKey(upper(i), k.dst)),
                        ]
                    ),
                    make_product(
                        [
                            build(SubExprKey(k.src, lower(i - 1))),
                            _a(i - 1),
                            build(SubExprKey(lower(i), k.dst)),
                        ]
                    ),
                ]
            )
        if memo is not None:
            memo[k] = result
        return result

    return build(key)


def generate(n: int, rounding: str = "ceil", memoize: bool = True) -> Expr:
    """Factored expression of the whole square rhomboid of size n.

    The result is algebraically equivalent to the sum over all source-to-sink
    paths of the product of edge labels along the path; the `oracle` module
    checks that equivalence independently.
    """
    if n < 1:
        raise InvalidSizeError(f"square rhomboid size must be >= 1, got {n}")
    return expression(n, SubExprKey(basic(1), basic(n)), rounding=rounding, memoize=memoize)
