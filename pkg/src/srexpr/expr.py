"""Expression ASTs over edge-label literals.

Expressions are sums and products of literals, plus the formal unit One used
for the empty subgraph.  Nodes are immutable; the smart constructors
`make_sum` / `make_product` normalize on the way in:

  * nested sums/products of the same type are flattened,
  * One is dropped from products (an empty product collapses to One),
  * single-child nodes collapse to the child.

After normalization every Sum/Prod has at least two children and printed text
is in one-to-one correspondence with the AST.  Literal counting is by tree
occurrence, so counts are unaffected by internal structure sharing.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import CapacityError, UnboundLabelError
from .graph import EdgeLabel

_SORT_ORDINAL = operator.attrgetter("sort_ordinal")

#: Default field modulus for evaluation: the Mersenne prime 2**61 - 1.
DEFAULT_PRIME = (1 << 61) - 1


class Expr:
    """Base class for expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Lit(Expr):
    label: EdgeLabel


@dataclass(frozen=True)
class One(Expr):
    """The formal unit: the expression of a single-vertex subgraph."""


@dataclass(frozen=True)
class Sum(Expr):
    children: tuple[Expr, ...]


@dataclass(frozen=True)
class Prod(Expr):
    children: tuple[Expr, ...]


ONE = One()


def make_sum(children: Iterable[Expr]) -> Expr:
    """Normalized n-ary sum: flattens nested sums, collapses a single child."""
    flat: list[Expr] = []
    for child in children:
        if isinstance(child, Sum):
            flat.extend(child.children)
        else:
            flat.append(child)
    if not flat:
        raise ValueError("a sum needs at least one addend")
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


def make_product(children: Iterable[Expr]) -> Expr:
    """Normalized n-ary product: flattens nested products and drops units."""
    flat: list[Expr] = []
    for child in children:
        if isinstance(child, Prod):
            flat.extend(child.children)
        elif isinstance(child, One):
            continue
        else:
            flat.append(child)
    if not flat:
        return ONE
    if len(flat) == 1:
        return flat[0]
    return Prod(tuple(flat))


def lit(text: str) -> Lit:
    """Literal from short text, e.g. lit("b1")."""
    return Lit(EdgeLabel.parse(text))


@dataclass(frozen=True, order=True)
class Monomial:
    """A canonically sorted sequence of edge labels; one per graph path.

    The label tuple must already be sorted by (letter, index); use `of` to
    sort arbitrary input.  Paths never repeat an edge, so monomials of graph
    expressions are squarefree, but the type itself allows repeats.
    """

    labels: tuple[EdgeLabel, ...]

    @classmethod
    def of(cls, labels: Iterable[EdgeLabel]) -> "Monomial":
        return cls(tuple(sorted(labels, key=_SORT_ORDINAL)))

    def __str__(self) -> str:
        return "*".join(str(label) for label in self.labels) if self.labels else "1"


EMPTY_MONOMIAL = Monomial(())


def literal_count(e: Expr) -> int:
    """Total number of literal occurrences, counted over the expression tree.

    Shared subterms are counted once per occurrence (the count is what you
    would get by writing the expression out in full).
    """
    memo: dict[int, int] = {}

    def count(node: Expr) -> int:
        key = id(node)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if isinstance(node, Lit):
            result = 1
        elif isinstance(node, One):
            result = 0
        else:
            result = sum(count(child) for child in node.children)
        memo[key] = result
        return result

    return count(e)


def expansion_size(e: Expr) -> int:
    """Number of monomials (with multiplicity) in the full expansion."""
    memo: dict[int, int] = {}

    def size(node: Expr) -> int:
        key = id(node)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if isinstance(node, (Lit, One)):
            result = 1
        elif isinstance(node, Sum):
            result = sum(size(child) for child in node.children)
        else:
            result = 1
            for child in node.children:
                result *= size(child)
        memo[key] = result
        return result

    return size(e)


def iter_expansion(e: Expr) -> Iterator[Monomial]:
    """Stream the distributive expansion of `e`, one monomial at a time.

    Sums stream their addends; products materialize each factor's expansion
    (memoized across shared subterms) and stream the merged combinations, so
    peak memory is bounded by the factor expansions, not the output.
    """
    memo: dict[int, list[Monomial]] = {}

    def listed(node: Expr) -> list[Monomial]:
        key = id(node)
        cached = memo.get(key)
        if cached is None:
            cached = list(stream(node))
            memo[key] = cached
        return cached

    def stream(node: Expr) -> Iterator[Monomial]:
        if isinstance(node, Lit):
            yield Monomial((node.label,))
        elif isinstance(node, One):
            yield EMPTY_MONOMIAL
        elif isinstance(node, Sum):
            for child in node.children:
                yield from stream(child)
        else:
            factor_lists = [listed(child) for child in node.children]
            for combo in itertools.product(*factor_lists):
                merged: list[EdgeLabel] = []
                for part in combo:
                    merged.extend(part.labels)
                merged.sort(key=_SORT_ORDINAL)
                yield Monomial(tuple(merged))

    return stream(e)


def expand(e: Expr, limit: int = 10**6) -> list[Monomial]:
    """Full distributive expansion as a list of monomials.

    Raises CapacityError if the expansion would exceed `limit` monomials
    (checked before any monomial is built).
    """
    size = expansion_size(e)
    if size > limit:
        raise CapacityError(f"expansion of {size} monomials exceeds the limit {limit}")
    return list(iter_expansion(e))


def evaluate(e: Expr, assignment: Mapping[EdgeLabel, int], prime: int = DEFAULT_PRIME) -> int:
    """Value of the expression over the integers modulo `prime`.

    Every label occurring in `e` must be present in `assignment`; a missing
    label raises UnboundLabelError.
    """
    memo: dict[int, int] = {}

    def ev(node: Expr) -> int:
        key = id(node)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if isinstance(node, Lit):
            try:
                result = assignment[node.label] % prime
            except KeyError:
                raise UnboundLabelError(str(node.label)) from None
        elif isinstance(node, One):
            result = 1 % prime
        elif isinstance(node, Sum):
            result = sum(ev(child) for child in node.children) % prime
        else:
            result = 1
            for child in node.children:
                result = (result * ev(child)) % prime
        memo[key] = result
        return result

    return ev(e)


def to_text(e: Expr, product_separator: str = "*") -> str:
    """Infix rendering: `+` between addends, factors joined by the separator,
    parentheses exactly around sum factors.  Pass "" to juxtapose factors.
    """

    def render(node: Expr) -> str:
        if isinstance(node, Lit):
            return str(node.label)
        if isinstance(node, One):
            return "1"
        if isinstance(node, Sum):
            return "+".join(render(child) for child in node.children)
        parts = []
        for child in node.children:
            text = render(child)
            parts.append(f"({text})" if isinstance(child, Sum) else text)
        return product_separator.join(parts)

    return render(e)


def to_json(e: Expr) -> dict:
    """AST as JSON-serializable nesting: {"lit": "b1"} | {"one": true} |
    {"sum": [...]} | {"prod": [...]}."""
    if isinstance(e, Lit):
        return {"lit": str(e.label)}
    if isinstance(e, One):
        return {"one": True}
    if isinstance(e, Sum):
        return {"sum": [to_json(child) for child in e.children]}
    return {"prod": [to_json(child) for child in e.children]}


def from_json(obj: dict) -> Expr:
    """Inverse of `to_json`; the result is renormalized on the way in."""
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"malformed expression node: {obj!r}")
    if "lit" in obj:
        return Lit(EdgeLabel.parse(obj["lit"]))
    if "one" in obj:
        if obj["one"] is not True:
            raise ValueError('the unit node must be {"one": true}')
        return ONE
    if "sum" in obj:
        return make_sum(from_json(child) for child in obj["sum"])
    if "prod" in obj:
        return make_product(from_json(child) for child in obj["prod"])
    raise ValueError(f"unknown expression node: {obj!r}")
