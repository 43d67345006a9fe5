"""Ground-truth verification of generated expressions.

Two independent oracles:

  * `check_exact` expands the expression and compares the monomial multiset
    against the graph's path enumeration.  Unarguable, but exponential in n.
  * `check_fingerprint` compares random evaluations of the expression against
    a dynamic program over the graph that computes the same polynomial
    without ever expanding it.  Scales to any n; per-trial false-pass
    probability is at most deg/prime with deg <= 2(n-1).

Random assignments come from a seeded split-mix generator (same seed, same
sequence, on every platform) and exclude 0 so absent literals cannot hide
inside products.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .errors import CapacityError, UnboundLabelError
from .expr import (
    DEFAULT_PRIME,
    EdgeLabel,
    Expr,
    Monomial,
    evaluate,
    expansion_size,
    iter_expansion,
)
from .graph import LabeledDigraph, _iter_path_labels, path_count

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit mixing generator (split-mix construction).

    The contract is reproducibility: the same seed yields the same sequence
    everywhere, so verification transcripts can be replayed exactly.
    """

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def field_element(self, prime: int) -> int:
        """A nonzero element of Z_prime (the modulo bias is negligible)."""
        return 1 + self.next_u64() % (prime - 1)


def dp_eval(
    g: LabeledDigraph, assignment: Mapping[EdgeLabel, int], prime: int = DEFAULT_PRIME
) -> int:
    """Evaluate the path-sum polynomial of `g` without expanding it.

    Forward recurrence over topological order: value(source) = 1 and
    value(v) = sum over in-edges (u, v, l) of value(u) * assignment(l).  By
    distributivity the sink value equals the evaluated sum over all paths of
    the product of edge labels.
    """
    value = {v: 0 for v in g.vertices}
    value[g.source] = 1 % prime
    for v in g.topological_order:
        if v == g.source:
            continue
        total = 0
        for tail, label in g.in_edges(v):
            try:
                weight = assignment[label]
            except KeyError:
                raise UnboundLabelError(str(label)) from None
            total += value[tail] * weight
        value[v] = total % prime
    return value[g.sink]


@dataclass
class VerificationReport:
    """Outcome of one oracle run; a failure always carries a witness."""

    mode: str  # "exact" | "fingerprint"
    result: str  # "pass" | "fail"
    trials: int | None = None
    seed: int | None = None
    prime: int | None = None
    witness: dict | None = None
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.result == "pass"

    def to_json(self) -> dict:
        obj = {
            "mode": self.mode,
            "result": self.result,
            "trials": self.trials,
            "seed": self.seed,
            "prime": self.prime,
        }
        if self.witness is not None:
            obj["witness"] = self.witness
        return obj

    def summary(self) -> str:
        if self.mode == "exact":
            text = (
                f"exact {self.result}: {self.detail.get('expression_monomials')} expression "
                f"monomials vs {self.detail.get('graph_paths')} graph paths"
            )
        else:
            text = f"fingerprint {self.result}: {self.trials} trials, seed {self.seed}"
        if self.witness is not None:
            text += f"; witness: {self.witness}"
        return text


def check_exact(e: Expr, g: LabeledDigraph, limit: int = 10**6) -> VerificationReport:
    """Pass iff the expansion of `e` equals the path-monomial multiset of `g`
    and contains no duplicate monomials.

    Raises CapacityError when either side would exceed `limit` monomials.
    """
    n_paths = path_count(g)
    if n_paths > limit:
        raise CapacityError(f"{n_paths} paths exceed the limit {limit}; use the fingerprint check")
    n_monomials = expansion_size(e)
    if n_monomials > limit:
        raise CapacityError(f"{n_monomials} monomials exceed the limit {limit}")

    key = lambda label: label.sort_ordinal
    expanded = Counter(iter_expansion(e))
    paths = Counter(
        Monomial(tuple(sorted(labels, key=key))) for labels in _iter_path_labels(g)
    )
    detail = {"expression_monomials": n_monomials, "graph_paths": n_paths}

    duplicates = sorted(m for m, count in expanded.items() if count > 1)
    if duplicates:
        witness = {"monomial": str(duplicates[0]), "side": "duplicate-in-expression"}
        return VerificationReport("exact", "fail", witness=witness, detail=detail)
    if expanded != paths:
        only_expr = sorted(m for m in expanded if expanded[m] > paths[m])
        only_graph = sorted(m for m in paths if paths[m] > expanded[m])
        if only_expr:
            witness = {"monomial": str(only_expr[0]), "side": "expression-only"}
        else:
            witness = {"monomial": str(only_graph[0]), "side": "graph-only"}
        return VerificationReport("exact", "fail", witness=witness, detail=detail)
    return VerificationReport("exact", "pass", detail=detail)


def _assignment_digest(assignment: Mapping[EdgeLabel, int]) -> str:
    payload = ",".join(f"{label}={assignment[label]}" for label in sorted(assignment))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def check_fingerprint(
    e: Expr,
    g: LabeledDigraph,
    trials: int = 10,
    seed: int = 42,
    prime: int = DEFAULT_PRIME,
) -> VerificationReport:
    """Randomized identity test of `e` against the path-sum polynomial of `g`.

    Runs `trials` independent rounds.  Each round draws a fresh nonzero
    assignment for every edge label of `g` (labels in sorted order, from a
    per-trial generator seeded off the master seed) and compares `evaluate`
    against `dp_eval`.  The transcript of every round is kept in the report
    detail, so identical (seed, trials, prime) yield identical reports.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    labels = g.labels()
    master = SplitMix64(seed)
    transcript: list[dict] = []
    witness = None
    for trial in range(trials):
        trial_seed = master.next_u64()
        rng = SplitMix64(trial_seed)
        assignment = {label: rng.field_element(prime) for label in labels}
        expr_value = evaluate(e, assignment, prime)
        graph_value = dp_eval(g, assignment, prime)
        row = {
            "trial": trial,
            "trial_seed": trial_seed,
            "assignment_digest": _assignment_digest(assignment),
            "expression_value": expr_value,
            "graph_value": graph_value,
        }
        transcript.append(row)
        if expr_value != graph_value:
            witness = row
            break
    result = "pass" if witness is None else "fail"
    return VerificationReport(
        "fingerprint",
        result,
        trials=trials,
        seed=seed,
        prime=prime,
        witness=witness,
        detail={"transcript": transcript},
    )
