"""Square-rhomboid two-terminal DAGs and their subgraphs.

A square rhomboid of size n is the st-dag with n basic vertices on the middle
row, n-1 upper and n-1 lower vertices, and five edge families:

    b_p : basic p  -> basic p+1        (p = 1..n-1)
    e_(2p-1) : basic p -> upper p      e_(2p) : upper p -> basic p+1
    d_(2p-1) : basic p -> lower p      d_(2p) : lower p -> basic p+1
    c_p : upper p  -> upper p+1        (p = 1..n-2)
    a_p : lower p  -> lower p+1        (p = 1..n-2)

Subgraphs are always taken between two terminals and are path-induced: they
contain exactly the vertices and edges lying on some directed path between the
endpoints.  Edge labels keep their global indices inside subgraphs, so
subexpressions compose without relabeling.

Graphs are immutable after construction and all operations here are pure
functions; everything is safe to share across threads.
"""

from __future__ import annotations

import enum
import heapq
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import (
    CapacityError,
    EmptySubgraphError,
    InvalidSizeError,
    OrderingError,
    RangeError,
)

_LETTERS = ("a", "b", "c", "d", "e")
_LABEL_RE = re.compile(r"^([abcde])([1-9][0-9]*)$")
_TERMINAL_RE = re.compile(r"^([bul])([1-9][0-9]*)$")


@dataclass(frozen=True, eq=False)
class EdgeLabel:
    """A named edge: one of the letters a..e plus a positive index.

    Labels are totally ordered by (letter, index); that ordering is the
    canonical sort key for monomials and for all deterministic output.
    Comparison and hashing go through a precomputed integer ordinal: exact
    expansions hash and compare millions of labels, so this is a hot path.
    """

    letter: str
    index: int

    def __post_init__(self) -> None:
        if self.letter not in _LETTERS:
            raise ValueError(f"edge letter must be one of {_LETTERS}, got {self.letter!r}")
        if self.index < 1:
            raise ValueError(f"edge index must be positive, got {self.index}")
        ordinal = (ord(self.letter) << 32) | self.index
        object.__setattr__(self, "sort_ordinal", ordinal)
        object.__setattr__(self, "_hash", hash(ordinal))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeLabel):
            return NotImplemented
        return self.sort_ordinal == other.sort_ordinal

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "EdgeLabel") -> bool:
        return self.sort_ordinal < other.sort_ordinal

    def __le__(self, other: "EdgeLabel") -> bool:
        return self.sort_ordinal <= other.sort_ordinal

    def __gt__(self, other: "EdgeLabel") -> bool:
        return self.sort_ordinal > other.sort_ordinal

    def __ge__(self, other: "EdgeLabel") -> bool:
        return self.sort_ordinal >= other.sort_ordinal

    def __str__(self) -> str:
        return f"{self.letter}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "EdgeLabel":
        m = _LABEL_RE.match(text)
        if m is None:
            raise ValueError(f"cannot parse edge label {text!r}")
        return make_label(m.group(1), int(m.group(2)))


@lru_cache(maxsize=None)
def make_label(letter: str, index: int) -> EdgeLabel:
    """Interned EdgeLabel constructor.

    All labels built by this package come through here, so equal labels are
    the same object and bulk monomial comparisons hit the interpreter's
    identity fast path.
    """
    return EdgeLabel(letter, index)


class TerminalKind(enum.Enum):
    """Row of a vertex: basic (middle), upper, or lower."""

    BASIC = "b"
    UPPER = "u"
    LOWER = "l"


_KIND_RANK = {TerminalKind.BASIC: 0, TerminalKind.UPPER: 1, TerminalKind.LOWER: 2}


@dataclass(frozen=True, eq=False)
class Terminal:
    """A vertex, identified by its row and its index within the row.

    Ordered by (index, row) so that iteration follows the drawing left to
    right; like EdgeLabel, hashing is precomputed because terminals key every
    adjacency lookup.
    """

    kind: TerminalKind
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"terminal index must be positive, got {self.index}")
        ordinal = (self.index << 2) | _KIND_RANK[self.kind]
        object.__setattr__(self, "sort_ordinal", ordinal)
        object.__setattr__(self, "_hash", hash(ordinal))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Terminal):
            return NotImplemented
        return self.sort_ordinal == other.sort_ordinal

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Terminal") -> bool:
        return self.sort_ordinal < other.sort_ordinal

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "Terminal":
        """Parse the short form used on the command line: b1, u3, l5."""
        m = _TERMINAL_RE.match(text)
        if m is None:
            raise ValueError(f"cannot parse terminal {text!r} (expected e.g. b1, u3, l5)")
        return _interned_terminal(TerminalKind(m.group(1)), int(m.group(2)))


@lru_cache(maxsize=None)
def _interned_terminal(kind: TerminalKind, index: int) -> Terminal:
    return Terminal(kind, index)


def basic(index: int) -> Terminal:
    return _interned_terminal(TerminalKind.BASIC, index)


def upper(index: int) -> Terminal:
    return _interned_terminal(TerminalKind.UPPER, index)


def lower(index: int) -> Terminal:
    return _interned_terminal(TerminalKind.LOWER, index)


class Family(enum.Enum):
    """The nine subgraph families, classified by the (source, sink) rows.

    Upper/upper and lower/lower pairs are trapezoidal; mixed upper/lower pairs
    are parallelograms.  A single-leaf family has exactly one non-basic
    endpoint.
    """

    SR = "sr"
    SL_BASIC_UPPER = "sl-basic-upper"
    SL_UPPER_BASIC = "sl-upper-basic"
    SL_BASIC_LOWER = "sl-basic-lower"
    SL_LOWER_BASIC = "sl-lower-basic"
    TRAP_UPPER_UPPER = "trap-upper-upper"
    TRAP_LOWER_LOWER = "trap-lower-lower"
    PARA_LOWER_UPPER = "para-lower-upper"
    PARA_UPPER_LOWER = "para-upper-lower"


_FAMILY_OF = {
    (TerminalKind.BASIC, TerminalKind.BASIC): Family.SR,
    (TerminalKind.BASIC, TerminalKind.UPPER): Family.SL_BASIC_UPPER,
    (TerminalKind.UPPER, TerminalKind.BASIC): Family.SL_UPPER_BASIC,
    (TerminalKind.BASIC, TerminalKind.LOWER): Family.SL_BASIC_LOWER,
    (TerminalKind.LOWER, TerminalKind.BASIC): Family.SL_LOWER_BASIC,
    (TerminalKind.UPPER, TerminalKind.UPPER): Family.TRAP_UPPER_UPPER,
    (TerminalKind.LOWER, TerminalKind.LOWER): Family.TRAP_LOWER_LOWER,
    (TerminalKind.LOWER, TerminalKind.UPPER): Family.PARA_LOWER_UPPER,
    (TerminalKind.UPPER, TerminalKind.LOWER): Family.PARA_UPPER_LOWER,
}

_DIPTEROUS = {
    Family.TRAP_UPPER_UPPER,
    Family.TRAP_LOWER_LOWER,
    Family.PARA_LOWER_UPPER,
    Family.PARA_UPPER_LOWER,
}


@dataclass(frozen=True)
class SubgraphKind:
    """Family plus size (the number of basic vertices the subgraph spans)."""

    family: Family
    size: int

    @property
    def is_dipterous(self) -> bool:
        return self.family in _DIPTEROUS

    @property
    def is_trapezoidal(self) -> bool:
        return self.family in (Family.TRAP_UPPER_UPPER, Family.TRAP_LOWER_LOWER)

    @property
    def is_parallelogram(self) -> bool:
        return self.family in (Family.PARA_LOWER_UPPER, Family.PARA_UPPER_LOWER)

    @property
    def is_single_leaf(self) -> bool:
        return self.family not in _DIPTEROUS and self.family is not Family.SR


def classify(src: Terminal, dst: Terminal) -> SubgraphKind:
    """Classify the subgraph spanned by a terminal pair.

    The size counts basic vertices: q-p+1 when the source is basic, q-p when
    it is upper or lower (the source row shifts which basics are included).
    Raises OrderingError when the sink does not follow the source.
    """
    family = _FAMILY_OF[(src.kind, dst.kind)]
    size = dst.index - src.index + (1 if src.kind is TerminalKind.BASIC else 0)
    if size < 1:
        raise OrderingError(f"sink {dst} does not follow source {src}")
    return SubgraphKind(family, size)


class LabeledDigraph:
    """An edge-labeled st-dag: one source, one sink, everything on a path.

    The constructor validates the st-dag invariants (acyclic; the source is
    the unique in-degree-0 vertex and the sink the unique out-degree-0 vertex;
    every vertex lies on a source-to-sink path; labels are distinct).
    Vertices and edges are stored sorted, so all iteration is deterministic.
    """

    def __init__(
        self,
        vertices: Iterable[Terminal],
        edges: Iterable[tuple[Terminal, Terminal, EdgeLabel]],
        source: Terminal,
        sink: Terminal,
    ) -> None:
        self.vertices: tuple[Terminal, ...] = tuple(sorted(set(vertices)))
        self.edges: tuple[tuple[Terminal, Terminal, EdgeLabel], ...] = tuple(
            sorted(edges, key=lambda e: e[2])
        )
        self.source = source
        self.sink = sink

        vertex_set = set(self.vertices)
        if source not in vertex_set or sink not in vertex_set:
            raise ValueError("source and sink must be vertices of the graph")

        labels = [label for _, _, label in self.edges]
        if len(labels) != len(set(labels)):
            raise ValueError("edge labels must be distinct")

        out: dict[Terminal, list[tuple[Terminal, EdgeLabel]]] = {v: [] for v in self.vertices}
        inc: dict[Terminal, list[tuple[Terminal, EdgeLabel]]] = {v: [] for v in self.vertices}
        for tail, head, label in self.edges:
            if tail not in vertex_set or head not in vertex_set:
                raise ValueError(f"edge {label} has an endpoint outside the vertex set")
            out[tail].append((head, label))
            inc[head].append((tail, label))
        self._out = {v: tuple(pairs) for v, pairs in out.items()}
        self._in = {v: tuple(pairs) for v, pairs in inc.items()}

        self._topo = self._topological_order()
        self._check_st_dag()

    def _topological_order(self) -> tuple[Terminal, ...]:
        indegree = {v: len(self._in[v]) for v in self.vertices}
        ready = [v for v in self.vertices if indegree[v] == 0]
        heapq.heapify(ready)
        order: list[Terminal] = []
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for head, _ in self._out[v]:
                indegree[head] -= 1
                if indegree[head] == 0:
                    heapq.heappush(ready, head)
        if len(order) != len(self.vertices):
            raise ValueError("graph has a directed cycle")
        return tuple(order)

    def _check_st_dag(self) -> None:
        sources = [v for v in self.vertices if not self._in[v]]
        sinks = [v for v in self.vertices if not self._out[v]]
        if sources != [self.source]:
            raise ValueError(f"expected a unique in-degree-0 vertex {self.source}, got {sources}")
        if sinks != [self.sink]:
            raise ValueError(f"expected a unique out-degree-0 vertex {self.sink}, got {sinks}")
        forward = self._reach(self.source, self._out)
        backward = self._reach(self.sink, self._in)
        if forward != set(self.vertices) or backward != set(self.vertices):
            raise ValueError("every vertex must lie on a source-to-sink path")

    def _reach(
        self,
        start: Terminal,
        adjacency: dict[Terminal, tuple[tuple[Terminal, EdgeLabel], ...]],
    ) -> set[Terminal]:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w, _ in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    @property
    def topological_order(self) -> tuple[Terminal, ...]:
        return self._topo

    def out_edges(self, v: Terminal) -> tuple[tuple[Terminal, EdgeLabel], ...]:
        return self._out[v]

    def in_edges(self, v: Terminal) -> tuple[tuple[Terminal, EdgeLabel], ...]:
        return self._in[v]

    def labels(self) -> tuple[EdgeLabel, ...]:
        return tuple(label for _, _, label in self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledDigraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.source == other.source
            and self.sink == other.sink
        )

    def __repr__(self) -> str:
        return (
            f"LabeledDigraph({len(self.vertices)} vertices, {len(self.edges)} edges, "
            f"{self.source}->{self.sink})"
        )


def build_sr(n: int) -> LabeledDigraph:
    """Build the square rhomboid of size n (n basic vertices, 3n-2 total).

    For n >= 2 the graph has 7n-9 edges; n = 1 is the degenerate single
    vertex.  Raises InvalidSizeError for n < 1.
    """
    if n < 1:
        raise InvalidSizeError(f"square rhomboid size must be >= 1, got {n}")
    vertices = [basic(p) for p in range(1, n + 1)]
    vertices += [upper(p) for p in range(1, n)]
    vertices += [lower(p) for p in range(1, n)]
    edges: list[tuple[Terminal, Terminal, EdgeLabel]] = []
    for p in range(1, n):
        edges.append((basic(p), basic(p + 1), make_label("b", p)))
        edges.append((basic(p), upper(p), make_label("e", 2 * p - 1)))
        edges.append((upper(p), basic(p + 1), make_label("e", 2 * p)))
        edges.append((basic(p), lower(p), make_label("d", 2 * p - 1)))
        edges.append((lower(p), basic(p + 1), make_label("d", 2 * p)))
    for p in range(1, n - 1):
        edges.append((upper(p), upper(p + 1), make_label("c", p)))
        edges.append((lower(p), lower(p + 1), make_label("a", p)))
    return LabeledDigraph(vertices, edges, basic(1), basic(n))


def induced_subgraph(g: LabeledDigraph, src: Terminal, dst: Terminal) -> LabeledDigraph:
    """The subgraph of everything lying on a directed src-to-dst path.

    In a DAG an edge (u, v) is on such a path exactly when u is reachable
    from src and v reaches dst, so the subgraph is computed from one forward
    and one backward reachability sweep.  Raises RangeError if an endpoint is
    not a vertex of g and EmptySubgraphError if no path exists.
    """
    vertex_set = set(g.vertices)
    if src not in vertex_set or dst not in vertex_set:
        raise RangeError(f"{src} or {dst} is not a vertex of {g!r}")
    forward = g._reach(src, g._out)
    backward = g._reach(dst, g._in)
    kept = forward & backward
    if not kept:
        raise EmptySubgraphError(f"no directed path from {src} to {dst}")
    edges = [
        (tail, head, label)
        for tail, head, label in g.edges
        if tail in kept and head in kept
    ]
    return LabeledDigraph(kept, edges, src, dst)


def path_count(g: LabeledDigraph) -> int:
    """Number of distinct source-to-sink paths, by DP over topological order."""
    count = {v: 0 for v in g.vertices}
    count[g.source] = 1
    for v in g.topological_order:
        for head, _ in g.out_edges(v):
            count[head] += count[v]
    return count[g.sink]


def path_length_range(g: LabeledDigraph) -> tuple[int, int]:
    """(shortest, longest) source-to-sink path length in edges."""
    shortest = {v: None for v in g.vertices}
    longest = {v: None for v in g.vertices}
    shortest[g.source] = longest[g.source] = 0
    for v in g.topological_order:
        if shortest[v] is None:
            continue
        for head, _ in g.out_edges(v):
            if shortest[head] is None or shortest[v] + 1 < shortest[head]:
                shortest[head] = shortest[v] + 1
            if longest[head] is None or longest[v] + 1 > longest[head]:
                longest[head] = longest[v] + 1
    return shortest[g.sink], longest[g.sink]


def _iter_path_labels(g: LabeledDigraph) -> Iterator[tuple[EdgeLabel, ...]]:
    """Yield the label sequence of every source-to-sink path (DFS order)."""
    sink = g.sink
    if g.source == sink:
        yield ()
        return
    out = g._out
    # Explicit DFS stack of (vertex, next out-edge index); `labels` holds the
    # labels of the edges taken to reach the current frame.
    stack: list[tuple[Terminal, int]] = [(g.source, 0)]
    labels: list[EdgeLabel] = []
    while stack:
        v, idx = stack[-1]
        edges = out[v]
        if idx == len(edges):
            stack.pop()
            if stack:
                labels.pop()
            continue
        stack[-1] = (v, idx + 1)
        head, label = edges[idx]
        if head == sink:
            labels.append(label)
            yield tuple(labels)
            labels.pop()
        else:
            labels.append(label)
            stack.append((head, 0))


def enumerate_paths(g: LabeledDigraph, limit: int = 10**6) -> list:
    """One Monomial per source-to-sink path, as a sorted list.

    Distinct paths always yield distinct monomials here, because an edge set
    that forms a path determines the path.  Raises CapacityError when the
    path count exceeds `limit`; fingerprint verification should be used
    instead at that scale.
    """
    from .expr import Monomial  # deferred: expr imports labels from this module

    n_paths = path_count(g)
    if n_paths > limit:
        raise CapacityError(f"{n_paths} paths exceed the enumeration limit {limit}")
    key = lambda label: label.sort_ordinal
    monomials = [Monomial(tuple(sorted(labels, key=key))) for labels in _iter_path_labels(g)]
    monomials.sort(key=lambda m: tuple(label.sort_ordinal for label in m.labels))
    return monomials


def to_dot(g: LabeledDigraph) -> str:
    """Render the graph as DOT text (deterministic: edges sorted by label)."""
    lines = ["digraph sr {", "  rankdir=LR;"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for tail, head, label in g.edges:
        lines.append(f'  "{tail}" -> "{head}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
