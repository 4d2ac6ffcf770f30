"""Random instance generators and brute-force oracles shared by the tests."""
import itertools

import numpy as np

from handlegrowth.freegroup import FreeEndomorphism, compose_endos, elementary_nielsen
from handlegrowth.graphs import Graph, GraphMap, Token

M_GENUS4 = [[3, 1, 1, 0], [4, 1, 3, 2], [1, 0, 2, 1], [1, 0, 1, 1]]
M_TIGHTENED = [[3, 1, 1, 0], [2, 1, 1, 2], [1, 0, 2, 1], [1, 0, 1, 1]]
MOVE_ROW = 1
MOVE_DELTA = (-2, 0, -2, 0)

GOLDEN = (3 + 5**0.5) / 2


def eig_oracle(m):
    """Spectral radius by dense eigen solve (independent of power iteration)."""
    return float(np.max(np.abs(np.linalg.eigvals(np.array(m, dtype=float)))))


def reachability_oracle(m):
    """Boolean transitive closure of the positivity digraph, reflexive."""
    a = np.array(m) > 0
    n = len(a)
    r = a | np.eye(n, dtype=bool)
    for _ in range(n):
        r = r | ((r.astype(int) @ r.astype(int)) > 0)
    return r


def irreducible_oracle(m):
    """(I+M)^(n-1) > 0 with exact integer arithmetic; n = 1 needs a positive entry."""
    n = len(m)
    if n == 1:
        return m[0][0] > 0
    a = np.array(m, dtype=object) + np.eye(n, dtype=object)
    p = np.eye(n, dtype=object)
    for _ in range(n - 1):
        p = p.dot(a)
    return bool(np.all(p > 0))


def random_irreducible(rng, n, high=4, density=0.5):
    """Random nonnegative integer matrix, made irreducible by a random cycle."""
    m = rng.integers(0, high, size=(n, n)) * (rng.random((n, n)) < density)
    perm = rng.permutation(n)
    for k in range(n):
        i, j = perm[k], perm[(k + 1) % n]
        m[i, j] = max(m[i, j], 1)
    if n == 1:
        m[0, 0] = max(m[0, 0], 1)
    return m.tolist()


# -- graphs -------------------------------------------------------------


def small_graphs():
    """Connected test graphs with at most four edges."""
    return [
        Graph.rose(1),
        Graph.rose(2),
        Graph.rose(3),
        Graph.rose(4),
        Graph(["u", "v"], [("a", "u", "v"), ("b", "u", "v"), ("c", "u", "v")]),
        Graph(["u", "v"], [("a", "u", "u"), ("b", "u", "v"), ("c", "v", "v")]),
        Graph(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w"), ("c", "w", "u"), ("d", "u", "u")]),
    ]


def random_walk(rng, g, start, end, max_len, reduced=False, tries=200):
    """Random edge path from ``start`` to ``end`` of length 1..max_len (rejection sampling)."""
    for _ in range(tries):
        length = int(rng.integers(1, max_len + 1))
        cur, path = start, []
        for _ in range(length):
            options = g.tokens_at(cur)
            if reduced and path:
                options = [t for t in options if t != path[-1].inverse()] or options
            t = options[int(rng.integers(len(options)))]
            path.append(t)
            cur = g.terminal(t)
        if cur == end:
            return tuple(path)
    return None


def random_endomorphism(rng, g=None, max_len=5, reduced=False):
    if g is None:
        graphs = small_graphs()
        g = graphs[int(rng.integers(len(graphs)))]
    while True:
        vmap = {v: g.vertices[int(rng.integers(len(g.vertices)))] for v in g.vertices}
        emap = {}
        for e in g.edges:
            u, v = g.endpoints(e)
            p = random_walk(rng, g, vmap[u], vmap[v], max_len, reduced=reduced)
            if p is None:
                break
            emap[e] = p
        else:
            return GraphMap(g, g, vmap, emap)


def count_matrix(g, images):
    """Recount incidences token by token (oracle for incidence_matrix)."""
    k = len(g.edges)
    m = [[0] * k for _ in range(k)]
    for i, e in enumerate(g.edges):
        for t in images[e]:
            m[i][g.edges.index(t.edge)] += 1
    return m


# -- free groups -----------------------------------------------------------


def random_nielsen_product(rng, rank, length):
    """Random product of elementary Nielsen automorphisms plus its inverse."""
    gens = elementary_nielsen(rank)
    inverses = [_nielsen_inverse(e) for e in gens]
    e = FreeEndomorphism.identity(rank)
    inv = FreeEndomorphism.identity(rank)
    for _ in range(length):
        k = int(rng.integers(len(gens)))
        e = compose_endos(gens[k], e)
        inv = compose_endos(inv, inverses[k])
    return e, inv


def _nielsen_inverse(e):
    """Inverse of an elementary Nielsen move (they are all involutions except x_i -> x_i x_j)."""
    imgs = list(e.images)
    for i, w in enumerate(imgs):
        if len(w) == 2 and w[0] == i + 1:
            imgs[i] = (i + 1, -w[1])
            return FreeEndomorphism(imgs)
    return e


def random_word(rng, rank, max_len=6):
    n = int(rng.integers(0, max_len + 1))
    return tuple(int(rng.choice([-1, 1])) * int(rng.integers(1, rank + 1)) for _ in range(n))


def all_moves_2x2(m, max_delta=2):
    """Exhaustive list of (row, delta) for a 2x2 matrix within the bound."""
    out = []
    for i in range(2):
        for d in itertools.product(range(-max_delta, max_delta + 1), repeat=2):
            if any(d) and all(m[i][j] + d[j] >= 0 for j in range(2)):
                out.append((i, d))
    return out


__all__ = [name for name in dir() if not name.startswith("_")] + ["Token"]
