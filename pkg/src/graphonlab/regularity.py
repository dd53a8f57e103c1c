"""Regularity partitions and their error functionals.

Weak partitions come from average nets in the similarity metric via
Voronoi cells; ultra-strong (L1) partitions from a greedy ball cover of
the neighborhood metric refined by value bands; thin 0-1 graphons get the
sharper Boolean-atom refinement, which also drives the bounded-edit
blow-up approximation of pattern-free graphs.

Every report carries both the certified bound the construction promises
and the exactly measured error, so callers can assert the guarantee
rather than the construction's luck.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (CUT_NORM_MAX_STEPS, Graph, Partition, StepGraphon, aggregate,
                   as_bigraphon, check_basis, cut_norm, difference, graphon_from_graph,
                   l1_norm)
from .densities import bigraph_density
from .errors import (CertificationError, HypothesisError, InvalidInputError,
                     SizeLimitError)
from .metrics import MetricView, average_net, neighborhood_metric, similarity_metric, \
    voronoi_partition

SZEMEREDI_MAX_STEPS = 20
MAX_CLASSES = 1_000_000
SLACK = 1e-9


@dataclass(frozen=True)
class PartitionReport:
    """Partition plus its measured errors and the certified bound.

    ``exact`` says whether cut_error is the exact cut norm (k <= 24) or a
    heuristic lower bound. ``atom_count``/``sauer_bound`` are filled by the
    thin variant only.
    """

    partition: Partition
    cut_error: float
    l1_error: float
    centers: list | None = None
    szemeredi_error: float | None = None
    net_cost: float | None = None
    certified_bound: float | None = None
    exact: bool = True
    atom_count: int | None = None
    sauer_bound: int | None = None

    def __post_init__(self):
        if self.cut_error > self.l1_error + 1e-12:
            raise CertificationError("cut norm exceeded the L1 norm")

    @property
    def class_count(self) -> int:
        return self.partition.c

    def certified(self, measured: str = "cut") -> bool:
        if self.certified_bound is None:
            return True
        value = self.cut_error if measured == "cut" else self.l1_error
        return value <= self.certified_bound + SLACK

    def to_dict(self) -> dict:
        d = {
            "classes": self.partition.classes(),
            "centers": list(self.centers) if self.centers is not None else None,
            "cut_error": self.cut_error,
            "l1_error": self.l1_error,
            "szemeredi_error": self.szemeredi_error,
            "net_cost": self.net_cost,
            "certified_bound": self.certified_bound,
            "exact": self.exact,
        }
        if self.atom_count is not None:
            d["atom_count"] = self.atom_count
            d["sauer_bound"] = self.sauer_bound
        return d


def _measured_cut(w: StepGraphon, p: Partition, cut_mode: str = "auto") -> tuple[float, bool]:
    r = difference(w, aggregate(w, p))
    if cut_mode == "auto":
        cut_mode = "exact" if w.k <= CUT_NORM_MAX_STEPS else "heuristic"
    return cut_norm(r, mode=cut_mode), cut_mode == "exact"


def partition_cut_error(w: StepGraphon, p: Partition, mode: str = "exact") -> float:
    """Cut norm of W - W_P (exact needs k <= 24)."""
    check_basis(p, w)
    return cut_norm(difference(w, aggregate(w, p)), mode=mode)


def weak_partition_via_net(w: StepGraphon, eps_net: float,
                           cut_mode: str = "auto") -> PartitionReport:
    """Weak regularity partition from an average eps-net in the similarity
    metric; the Voronoi cells of the net have cut error at most
    8 sqrt(achieved net cost)."""
    if eps_net < 0:
        raise InvalidInputError("eps_net must be nonnegative")
    sim = similarity_metric(w)
    centers, cost = average_net(sim, eps_net)
    part = voronoi_partition(sim, centers)
    cut, exact = _measured_cut(w, part, cut_mode)
    return PartitionReport(
        partition=part,
        cut_error=cut,
        l1_error=l1_norm(difference(w, aggregate(w, part))),
        centers=centers,
        net_cost=cost,
        certified_bound=8.0 * math.sqrt(cost),
        exact=exact,
    )


def _one_sided_rectangle_max(a: np.ndarray) -> float:
    """max over S subseteq rows, T subseteq cols of sum_{S x T} a (>= 0)."""
    rows = a.shape[0]
    total = 1 << rows
    chunk = 1 << min(16, rows)
    shifts = np.arange(rows, dtype=np.int64)
    best = 0.0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        members = ((idx[:, None] >> shifts) & 1).astype(float)
        cols = members @ a
        best = max(best, float(np.maximum(cols, 0.0).sum(axis=1).max()))
    return best


def szemeredi_error(w: StepGraphon, p: Partition) -> float:
    """Exact supremum of |<W - W_P, H>| over 0-1 H supported on one product
    set per (ordered) class pair.

    By linearity the supremum splits into per-block one-sided optima: take
    every block's best positive rectangle (or leave it empty), and
    likewise for the negative sign; the result is the larger total.
    """
    check_basis(p, w)
    if w.k > SZEMEREDI_MAX_STEPS:
        raise SizeLimitError(f"exact Szemeredi error limited to {SZEMEREDI_MAX_STEPS} steps")
    r = difference(w, aggregate(w, p))
    a = r.mu[:, None] * r.mu[None, :] * r.w
    cls = p.classes()
    pos = neg = 0.0
    for si in cls:
        for sj in cls:
            block = a[np.ix_(si, sj)]
            pos += _one_sided_rectangle_max(block)
            neg += _one_sided_rectangle_max(-block)
    return max(pos, neg)


def net_from_partition(w: StepGraphon, p: Partition) -> tuple[list[int], float]:
    """Average-net centers extracted from a weak regularity partition.

    Per class the step minimizing F(x) = sum_z mu_z |sum_s mu_s R(x,s) W(s,z)|
    is "below average", and the selected set is an average 4 eps-net in the
    similarity metric when the partition has cut error eps. The inequality
    net_cost <= 4 * exact cut error is re-checked whenever the exact cut
    norm is available.
    """
    check_basis(p, w)
    r = difference(w, aggregate(w, p))
    inner = r.w @ (w.mu[:, None] * w.w)
    f = np.abs(inner) @ w.mu
    centers = []
    for cl in p.classes():
        best = min(cl, key=lambda i: (f[i], i))
        centers.append(int(best))
    sim = similarity_metric(w)
    mind = np.min(sim.dist[:, centers], axis=1)
    cost = float(mind @ w.mu)
    if w.k <= CUT_NORM_MAX_STEPS:
        cut = cut_norm(r, mode="exact")
        if cost > 4.0 * cut + SLACK:
            raise CertificationError(
                f"net cost {cost} exceeded 4x cut error {cut}")
    return centers, cost


def _ball_cover(metric: MetricView, radius: float) -> tuple[list[int], Partition]:
    """Maximal radius-separated centers (greedy farthest point) and the
    partition into their Voronoi cells; every point is within < radius of
    its center."""
    start = int(np.argmax(metric.dist @ metric.mu))
    centers = [start]
    mind = metric.dist[start].copy()
    while True:
        i = int(np.argmax(mind))
        if mind[i] < radius:
            break
        centers.append(i)
        mind = np.minimum(mind, metric.dist[i])
    return centers, voronoi_partition(metric, centers)


def ultra_strong_partition(w: StepGraphon, eps: float,
                           cut_mode: str = "auto") -> PartitionReport:
    """Ultra-strong (L1) regularity partition with error eps.

    Covers (J, r_W) by balls of radius eps/4 around maximal-packing
    centers, then refines by value bands of the center rows (ceil(1/eps)
    bands at multiples of eps). The class count is at most
    m ceil(1/eps)^m for m centers; the L1 error of the aggregated
    stepfunction is measured exactly and certified against eps.
    """
    if not (0.0 < eps < 1.0):
        raise InvalidInputError("eps must lie in (0, 1)")
    if w.k > MAX_CLASSES:
        raise SizeLimitError("too many steps for the class-count guard")
    rw = neighborhood_metric(w)
    centers, cover = _ball_cover(rw, eps / 4.0)
    m = len(centers)
    nbands = math.ceil(1.0 / eps)
    bands = np.minimum((w.w[centers] / eps).astype(int), nbands - 1)
    keys = {}
    assign = []
    for z in range(w.k):
        key = (cover.assign[z],) + tuple(bands[:, z])
        assign.append(keys.setdefault(key, len(keys)))
    part = Partition(w.mu, assign, len(keys))
    diff = difference(w, aggregate(w, part))
    cut, exact = _measured_cut(w, part, cut_mode)
    report = PartitionReport(
        partition=part,
        cut_error=cut,
        l1_error=l1_norm(diff),
        centers=centers,
        certified_bound=eps,
        exact=exact,
    )
    if part.c > m * nbands ** m:
        raise CertificationError("class count exceeded m ceil(1/eps)^m")
    return report


def _sauer_sum(m: int, kmax_exclusive: int) -> int:
    return sum(math.comb(m, i) for i in range(0, min(kmax_exclusive, m + 1)))


def thin_ultra_partition(w: StepGraphon, f, eps: float,
                         cut_mode: str = "auto") -> PartitionReport:
    """Ultra-strong partition of a 0-1 graphon excluding the bigraph f.

    Verifies t^b_ind(f, W) = 0 exactly, covers (J, r_W) by eps/4 balls and
    intersects the cells with the positive-measure atoms of the Boolean
    algebra generated by the center-row supports. The atom count obeys the
    Sauer-Shelah certificate sum_{i < |V(f)|} C(m, i), and the aggregated
    L1 error is at most eps (the ball cover alone gives eps/2).
    """
    if not (0.0 < eps < 1.0):
        raise InvalidInputError("eps must lie in (0, 1)")
    if not w.is_zero_one():
        raise HypothesisError("thin partitioning requires a 0-1 stepfunction")
    excluded = bigraph_density(f, as_bigraphon(w), induced=True)
    if excluded != 0.0:
        raise HypothesisError(
            f"pattern is not excluded: t^b_ind = {excluded:.6g} > 0")
    rw = neighborhood_metric(w)
    centers, cover = _ball_cover(rw, eps / 4.0)
    m = len(centers)
    supports = w.w[centers] == 1.0
    atoms = set()
    keys = {}
    assign = []
    for z in range(w.k):
        sig = tuple(bool(b) for b in supports[:, z])
        atoms.add(sig)
        key = (cover.assign[z], sig)
        assign.append(keys.setdefault(key, len(keys)))
    part = Partition(w.mu, assign, len(keys))
    n_nodes = f.n1 + f.n2
    bound = _sauer_sum(m, n_nodes)
    if len(atoms) > bound:
        raise CertificationError(
            f"atom count {len(atoms)} exceeded the Sauer-Shelah bound {bound}")
    cut, exact = _measured_cut(w, part, cut_mode)
    report = PartitionReport(
        partition=part,
        cut_error=cut,
        l1_error=l1_norm(difference(w, aggregate(w, part))),
        centers=centers,
        certified_bound=eps,
        exact=exact,
        atom_count=len(atoms),
        sauer_bound=bound,
    )
    if not report.certified("l1"):
        raise CertificationError("L1 error exceeded eps in the thin construction")
    return report


def equalize(w: StepGraphon, p: Partition, eps: float) -> tuple[StepGraphon, Partition]:
    """Equitable repartition: class measures within 1/ceil(c/eps) of equal,
    at most c ceil(1/eps) classes, cut error at most doubled.

    Each class gets a seat count apportioned by measure (largest
    remainder, at least one seat each); every step of a class is split
    into that many twin copies and the copies are dealt round-robin, so
    each new class is an exact 1/n_T-scaled copy of its parent. The
    aggregated stepfunction W_P is therefore unchanged and the cut error
    is preserved exactly, well inside the 2x contract.
    """
    if not (0.0 < eps < 1.0):
        raise InvalidInputError("eps must lie in (0, 1)")
    check_basis(p, w)
    c = p.c
    target = c * math.ceil(1.0 / eps)
    tol = 1.0 / math.ceil(c / eps)
    masses = p.class_measures()
    if float(np.max(np.abs(masses - 1.0 / c))) <= 1e-12:
        return w, p

    ideal = masses * target
    seats = np.maximum(1, np.floor(ideal).astype(int))
    while seats.sum() > target:
        ratios = np.where(seats > 1, seats / ideal, -np.inf)
        seats[int(np.argmax(ratios))] -= 1
    while seats.sum() < target:
        seats[int(np.argmax(ideal - seats))] += 1

    offsets = np.concatenate(([0], np.cumsum(seats))).astype(int)
    idx, mu_new, assign = [], [], []
    for i in range(w.k):
        cls = p.assign[i]
        n = int(seats[cls])
        for r in range(n):
            idx.append(i)
            mu_new.append(w.mu[i] / n)
            assign.append(int(offsets[cls]) + r)
    new_w = StepGraphon(np.array(mu_new), w.w[np.ix_(idx, idx)])
    new_p = Partition(new_w.mu, assign, int(seats.sum()))

    dev = float(np.max(np.abs(new_p.class_measures() - 1.0 / new_p.c)))
    if dev > tol + 1e-12:
        raise CertificationError(
            f"equalized class measures deviate by {dev:.3g} > {tol:.3g}")
    if w.k <= CUT_NORM_MAX_STEPS and new_w.k <= CUT_NORM_MAX_STEPS:
        before = partition_cut_error(w, p)
        after = partition_cut_error(new_w, new_p)
        if after > 2.0 * before + SLACK:
            raise CertificationError("equalize more than doubled the cut error")
    return new_w, new_p


@dataclass(frozen=True)
class BlowupApprox:
    """Bounded-edit blow-up approximation of a pattern-free 0-1 graphon.

    ``edits`` counts changed unordered node pairs; ``changed_cells`` counts
    changed ordered matrix cells including the diagonal (this is what the
    eps n^2 guarantee bounds).
    """

    graph: Graph
    quotient: Graph
    sizes: tuple
    internal: tuple
    edits: int
    changed_cells: int
    report: PartitionReport


def edit_blowup_approx(g: Graph | StepGraphon, f, eps: float) -> BlowupApprox:
    """Edit a pattern-free graph into a blow-up, changing <= eps n^2 cells.

    Accepts a Graph (adjacency stepfunction, zero diagonal) or directly a
    uniform-step 0-1 StepGraphon such as the half graphon, whose diagonal
    carries the threshold structure. Runs the thin ultra-strong partition,
    rounds each block of W_P to its majority value, and realizes the
    rounded stepfunction as a blow-up of the quotient graph (diagonal
    blocks become the internal clique flags).
    """
    if isinstance(g, Graph):
        w0 = graphon_from_graph(g)
    elif isinstance(g, StepGraphon):
        w0 = g
    else:
        raise InvalidInputError("expected a Graph or a StepGraphon")
    n = w0.k
    if float(np.max(np.abs(w0.mu - 1.0 / n))) > 1e-9:
        raise InvalidInputError(
            "cannot realize as a blow-up: step measures are not multiples of 1/n")
    if not w0.is_zero_one():
        raise HypothesisError("edit approximation requires a 0-1 input")

    report = thin_ultra_partition(w0, f, eps)
    part = report.partition
    assign = np.array(part.assign, dtype=int)
    wp = aggregate(w0, part)
    reps = [cl[0] for cl in part.classes()]
    block = wp.w[np.ix_(reps, reps)]
    rounded = (block >= 0.5).astype(float)
    expanded = rounded[np.ix_(assign, assign)]

    changed = int(np.sum(w0.w != expanded))
    if changed > eps * n * n:
        raise CertificationError(
            f"{changed} changed cells exceed eps n^2 = {eps * n * n:.6g}")
    edits = int(np.sum(np.triu(w0.w != expanded, k=1)))

    sizes = tuple(len(cl) for cl in part.classes())
    internal = tuple(bool(rounded[a, a]) for a in range(part.c))
    quotient = Graph(part.c, [(a, b) for a in range(part.c)
                              for b in range(a + 1, part.c) if rounded[a, b] == 1.0])
    edited = Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)
                       if expanded[i, j] == 1.0])
    return BlowupApprox(graph=edited, quotient=quotient, sizes=sizes,
                        internal=internal, edits=edits, changed_cells=changed,
                        report=report)
