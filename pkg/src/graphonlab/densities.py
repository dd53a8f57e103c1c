"""Exact homomorphism-type densities of patterns in stepfunctions.

Densities are exact sums over all assignments of pattern nodes to steps,
evaluated as tensor contractions. Rooted ("partial") variants fix some
nodes at given steps; per our convention rooted nodes carry no measure
factor, only the unassigned nodes are integrated.
"""

from __future__ import annotations

import math
import string
from typing import Iterable, Mapping

import numpy as np

from .core import Bigraph, Graph, StepBigraphon, StepGraphon
from .errors import InvalidInputError, SizeLimitError

#: assignments guard: reject patterns with |V| * log2(k) above this
PATTERN_GUARD_BITS = 40.0

_LETTERS = string.ascii_letters

#: a rooted assignment is a plain mapping node -> step index
StepAssignment = Mapping[int, int]


def _guard(n_nodes: int, k: int) -> None:
    if n_nodes * math.log2(max(k, 1)) > PATTERN_GUARD_BITS:
        raise SizeLimitError(
            f"pattern too large: {n_nodes} nodes over {k} steps exceeds the "
            f"2^{PATTERN_GUARD_BITS:.0f}-assignment guard")
    if n_nodes > len(_LETTERS):
        raise SizeLimitError("pattern too large for tensor contraction")


def _integrate(free_nodes, factors, fixed, weight_of) -> float:
    """Sum over assignments of the free nodes of a product of pair factors.

    ``factors`` is a list of (matrix, (a, b)) pairs; fixed nodes index into
    the matrix, free nodes become contraction axes weighted by their
    measure vector.
    """
    letter = {v: _LETTERS[i] for i, v in enumerate(free_nodes)}
    scalar = 1.0
    operands, subs = [], []
    for mat, (a, b) in factors:
        fa, fb = a in fixed, b in fixed
        if fa and fb:
            scalar *= float(mat[fixed[a], fixed[b]])
        elif fa:
            operands.append(mat[fixed[a], :])
            subs.append(letter[b])
        elif fb:
            operands.append(mat[:, fixed[b]])
            subs.append(letter[a])
        else:
            operands.append(mat)
            subs.append(letter[a] + letter[b])
    for v in free_nodes:
        operands.append(weight_of(v))
        subs.append(letter[v])
    if not operands:
        return scalar
    return scalar * float(np.einsum(",".join(subs) + "->", *operands, optimize=True))


def _graph_factors(f: Graph, w: StepGraphon, induced: bool):
    factors = [(w.w, e) for e in sorted(f.edges)]
    if induced:
        comp = 1.0 - w.w
        for u in range(f.n):
            for v in range(u + 1, f.n):
                if (u, v) not in f.edges:
                    factors.append((comp, (u, v)))
    return factors


def _check_assignment(x: StepAssignment, s, k: int, side: str = "") -> dict:
    s = set(int(v) for v in s)
    x = {int(a): int(b) for a, b in x.items()}
    if set(x) != s:
        raise InvalidInputError(f"assignment must cover exactly the rooted set {side}".rstrip())
    for v, step in x.items():
        if not (0 <= step < k):
            raise InvalidInputError(f"assigned step {step} out of range for node {v}")
    return x


def density(f: Graph, w: StepGraphon) -> float:
    """Homomorphism density t(F, W)."""
    return partial_density(f, (), {}, w, induced=False)


def induced_density(f: Graph, w: StepGraphon) -> float:
    """Induced density t_ind(F, W): non-adjacent pairs contribute (1 - W)."""
    return partial_density(f, (), {}, w, induced=True)


def partial_density(f: Graph, s: Iterable[int], x: StepAssignment,
                    w: StepGraphon, induced: bool = False) -> float:
    """Rooted density t_S(F, W; x): integrate only over V \\ S."""
    if f.n == 0:
        raise InvalidInputError("pattern graph has no nodes")
    _guard(f.n, w.k)
    fixed = _check_assignment(x, s, w.k)
    for v in fixed:
        if not (0 <= v < f.n):
            raise InvalidInputError(f"rooted node {v} is not a pattern node")
    free = [v for v in range(f.n) if v not in fixed]
    return _integrate(free, _graph_factors(f, w, induced), fixed, lambda v: w.mu)


def bigraph_density(f: Bigraph, w: StepBigraphon, induced: bool = False) -> float:
    """Bigraph density t^b(F, W), or t^b_ind with ``induced``."""
    return partial_bigraph_density(f, (), (), {}, {}, w, induced=induced)


def partial_bigraph_density(f: Bigraph, s1: Iterable[int], s2: Iterable[int],
                            x: StepAssignment, y: StepAssignment,
                            w: StepBigraphon, induced: bool = False) -> float:
    """Rooted bigraph density integrating only over the unassigned nodes."""
    if f.n1 == 0 and f.n2 == 0:
        raise InvalidInputError("pattern bigraph has no nodes")
    _guard(f.n1 + f.n2, max(w.k1, w.k2))
    x = _check_assignment(x, s1, w.k1, "of class 1")
    y = _check_assignment(y, s2, w.k2, "of class 2")
    for v in x:
        if not (0 <= v < f.n1):
            raise InvalidInputError(f"rooted node {v} is not in class 1")
    for v in y:
        if not (0 <= v < f.n2):
            raise InvalidInputError(f"rooted node {v} is not in class 2")

    fixed = {("x", u): st for u, st in x.items()}
    fixed.update({("y", v): st for v, st in y.items()})
    factors = [(w.w, (("x", u), ("y", v))) for u, v in sorted(f.edges)]
    if induced:
        comp = 1.0 - w.w
        for u in range(f.n1):
            for v in range(f.n2):
                if (u, v) not in f.edges:
                    factors.append((comp, (("x", u), ("y", v))))
    free = [("x", u) for u in range(f.n1) if ("x", u) not in fixed]
    free += [("y", v) for v in range(f.n2) if ("y", v) not in fixed]
    weight = lambda node: w.mu1 if node[0] == "x" else w.mu2
    return _integrate(free, factors, fixed, weight)
