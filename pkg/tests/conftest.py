"""Shared fixtures and independent brute-force oracles.

The oracles deliberately avoid the library's algorithms: densities are
plain loops over assignments, the cut norm enumerates every subset pair,
packing/VC go through itertools. Expected values in the tests come from
these, not from the code under test.
"""

import itertools

import numpy as np
import pytest

import graphonlab as gl


# -- corpora -----------------------------------------------------------------

def rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def random_bigraphon(k1, k2, seed):
    r = rng(seed)
    mu1 = r.random(k1) + 0.2
    mu2 = r.random(k2) + 0.2
    return gl.StepBigraphon(mu1 / mu1.sum(), mu2 / mu2.sum(), r.random((k1, k2)))


def random_partition(base, c, seed):
    r = rng(seed)
    k = len(base)
    c = min(c, k)
    assign = list(range(c)) + [int(r.integers(0, c)) for _ in range(k - c)]
    r.shuffle(assign)
    return gl.Partition(base, assign, c)


def random_graph(n, seed, p=0.5):
    r = rng(seed)
    return gl.Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                        if r.random() < p])


def random_bigraph(n1, n2, seed, p=0.5):
    r = rng(seed)
    return gl.Bigraph(n1, n2, [(u, v) for u in range(n1) for v in range(n2)
                               if r.random() < p])


# -- oracles -----------------------------------------------------------------

def brute_cut_norm(kernel):
    """Full enumeration over all 2^k x 2^k subset pairs."""
    k = kernel.k
    a = kernel.mu[:, None] * kernel.mu[None, :] * kernel.w
    subsets = np.array([[(s >> i) & 1 for i in range(k)] for s in range(1 << k)],
                       dtype=float)
    vals = subsets @ a @ subsets.T
    return float(np.max(np.abs(vals)))


def brute_density(f, w, induced=False):
    """Loop over all assignments of pattern nodes to steps."""
    total = 0.0
    pairs = [(u, v) for u in range(f.n) for v in range(u + 1, f.n)]
    for x in itertools.product(range(w.k), repeat=f.n):
        term = 1.0
        for u, v in pairs:
            val = w.w[x[u], x[v]]
            if f.has_edge(u, v):
                term *= val
            elif induced:
                term *= 1.0 - val
        for xu in x:
            term *= w.mu[xu]
        total += term
    return total


def brute_bigraph_density(f, w, induced=False):
    total = 0.0
    for x in itertools.product(range(w.k1), repeat=f.n1):
        for y in itertools.product(range(w.k2), repeat=f.n2):
            term = 1.0
            for u in range(f.n1):
                for v in range(f.n2):
                    val = w.w[x[u], y[v]]
                    if (u, v) in f.edges:
                        term *= val
                    elif induced:
                        term *= 1.0 - val
            for xu in x:
                term *= w.mu1[xu]
            for yv in y:
                term *= w.mu2[yv]
            total += term
    return total


def brute_hom_count(f, g):
    """Number of adjacency-preserving maps V(f) -> V(g) (loops absent)."""
    adj = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges:
        adj[u, v] = adj[v, u] = True
    count = 0
    for x in itertools.product(range(g.n), repeat=f.n):
        if all(adj[x[u], x[v]] for u, v in f.edges):
            count += 1
    return count


def brute_packing(m, eps):
    """Maximum eps-separated subset by exhaustive search."""
    best = 0
    for size in range(m.k, 0, -1):
        for combo in itertools.combinations(range(m.k), size):
            if all(m.dist[a, b] >= eps for a, b in itertools.combinations(combo, 2)):
                best = size
                break
        if best:
            break
    return best


def brute_vc(h):
    """Largest shattered subset via direct trace enumeration."""
    best = -1
    for size in range(h.m + 1):
        for combo in itertools.combinations(range(h.m), size):
            mask = 0
            for e in combo:
                mask |= 1 << e
            if h.sets and len({s & mask for s in h.sets}) == (1 << size):
                best = max(best, size)
    return best


@pytest.fixture
def k2_graphon():
    return gl.graphon_from_graph(gl.Graph(2, [(0, 1)]))


@pytest.fixture
def constant_half():
    return gl.StepGraphon(np.array([1.0]), np.array([[0.5]]))
