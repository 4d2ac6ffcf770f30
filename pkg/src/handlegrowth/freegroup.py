"""Free group words and endomorphisms.

A word is a tuple of nonzero integers: ``k`` stands for the generator
``x_k`` and ``-k`` for its inverse.  On the wire words are strings of
tokens ``"x1 x2- x1"`` (the trailing ``-`` marks an inverse).

Composition convention: ``compose_endos(e1, e2)`` is ``e1∘e2``, so
``apply_endo(compose_endos(e1, e2), w) == apply_endo(e1, apply_endo(e2, w))``
and ``abelianization(e1∘e2) == abelianization(e2) @ abelianization(e1)``
(row ``i`` of the abelianization holds the exponent sums of ``e(x_i)``).

These are the fundamental-group level checks available for an automorphism
of a handlebody: whether the induced map is an automorphism at all, and its
action on homology.  Deciding irreducibility of an outer automorphism is
not attempted.
"""
import re
from collections import deque

import numpy as np

from .errors import GraphError, WordError
from .graphs import Token, validate_graph

__all__ = [
    "parse_word",
    "format_word",
    "reduce_word",
    "inverse_word",
    "FreeEndomorphism",
    "apply_endo",
    "compose_endos",
    "abelianization",
    "is_surjective",
    "folded_core",
    "elementary_nielsen",
    "induced_pi1_map",
]

_TOKEN = re.compile(r"x(\d+)(-?)")


def parse_word(text, rank=None):
    """Parse ``"x1 x2- x1"`` (spaces optional) into a tuple of letters."""
    if not isinstance(text, str):
        word = tuple(int(x) for x in text)
    else:
        compact = "".join(text.split())
        pos, letters = 0, []
        while pos < len(compact):
            m = _TOKEN.match(compact, pos)
            if not m:
                raise WordError(f"unknown generator symbol at position {pos} in {text!r}")
            k = int(m.group(1))
            letters.append(-k if m.group(2) else k)
            pos = m.end()
        word = tuple(letters)
    _check_letters(word, rank)
    return word


def format_word(word):
    return " ".join(f"x{abs(k)}" + ("-" if k < 0 else "") for k in word)


def _check_letters(word, rank):
    for k in word:
        if k == 0 or (rank is not None and abs(k) > rank):
            raise WordError(f"unknown generator x{abs(k)}" + (f" for rank {rank}" if rank else ""))


def reduce_word(word, rank=None):
    word = parse_word(word, rank) if isinstance(word, str) else tuple(word)
    _check_letters(word, rank)
    out = []
    for k in word:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def inverse_word(word):
    return tuple(-k for k in reversed(word))


class FreeEndomorphism:
    """Endomorphism of the free group of rank ``rank`` given by generator images."""

    def __init__(self, images, rank=None):
        images = [parse_word(w) if isinstance(w, str) else tuple(w) for w in images]
        self.rank = len(images) if rank is None else rank
        if len(images) != self.rank:
            raise WordError(f"expected {self.rank} images, got {len(images)}")
        self.images = tuple(reduce_word(w, self.rank) for w in images)

    @classmethod
    def identity(cls, rank):
        return cls([(i,) for i in range(1, rank + 1)])

    def __call__(self, word):
        return apply_endo(self, word)

    def __eq__(self, other):
        if not isinstance(other, FreeEndomorphism):
            return NotImplemented
        return self.rank == other.rank and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        body = ", ".join(f"x{i + 1}->{format_word(w) or '1'}" for i, w in enumerate(self.images))
        return f"FreeEndomorphism({body})"


def apply_endo(e, word):
    word = reduce_word(word, None)
    if any(abs(k) > e.rank for k in word):
        raise WordError("word uses generators beyond the rank of the endomorphism")
    out = []
    for k in word:
        out.extend(e.images[k - 1] if k > 0 else inverse_word(e.images[-k - 1]))
    return reduce_word(out)


def compose_endos(e1, e2):
    """``e1∘e2`` (apply ``e2`` first)."""
    if e1.rank != e2.rank:
        raise WordError("rank mismatch")
    return FreeEndomorphism([apply_endo(e1, w) for w in e2.images])


def abelianization(e):
    a = np.zeros((e.rank, e.rank), dtype=int)
    for i, w in enumerate(e.images):
        for k in w:
            a[i, abs(k) - 1] += 1 if k > 0 else -1
    return a


def folded_core(words, rank):
    """Stallings folding of the wedge of loops spelling ``words``.

    Returns ``(vertices, edges)`` of the folded graph after pruning hanging
    trees away from the base vertex ``0``; edges are ``(u, label, v)`` with
    positive labels.
    """
    edges = []
    nxt = 1
    for w in words:
        w = reduce_word(w, rank)
        if not w:
            continue
        cur = 0
        for pos, k in enumerate(w):
            end = 0 if pos == len(w) - 1 else nxt
            if end:
                nxt += 1
            edges.append((cur, k, end) if k > 0 else (end, -k, cur))
            cur = end

    parent = list(range(nxt))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    changed = True
    while changed:
        changed = False
        slots = {}
        for u, a, v in edges:
            ru, rv = find(u), find(v)
            for key, target in (((ru, a), rv), ((rv, -a), ru)):
                other = slots.get(key)
                if other is None:
                    slots[key] = target
                elif find(other) != find(target):
                    parent[find(other)] = find(target)
                    changed = True

    folded = sorted({(find(u), a, find(v)) for u, a, v in edges})
    verts = {find(0)} | {x for u, _, v in folded for x in (u, v)}
    base = find(0)
    # prune degree-1 vertices other than the base
    while True:
        deg = {x: 0 for x in verts}
        for u, _, v in folded:
            deg[u] += 1
            deg[v] += 1
        leaves = {x for x, d in deg.items() if d <= 1 and x != base}
        if not leaves:
            break
        verts -= leaves
        folded = [(u, a, v) for u, a, v in folded if u not in leaves and v not in leaves]
    return verts, folded


def is_surjective(e):
    """True when the images generate the whole free group.

    Free groups are Hopfian, so for an endomorphism this is the same as
    being an automorphism.
    """
    verts, edges = folded_core(e.images, e.rank)
    return len(verts) == 1 and len(edges) == e.rank


def elementary_nielsen(rank):
    """The elementary Nielsen automorphisms: inversions, transpositions, ``x_i -> x_i x_j``."""
    gens = []
    ident = [(i,) for i in range(1, rank + 1)]
    for i in range(rank):
        imgs = list(ident)
        imgs[i] = (-(i + 1),)
        gens.append(FreeEndomorphism(imgs))
        for j in range(rank):
            if i == j:
                continue
            imgs = list(ident)
            imgs[i] = (i + 1, j + 1)
            gens.append(FreeEndomorphism(imgs))
            if i < j:
                imgs = list(ident)
                imgs[i], imgs[j] = imgs[j], imgs[i]
                gens.append(FreeEndomorphism(imgs))
    return gens


def _tree_paths(graph, tree, base):
    """Path from ``base`` to every vertex inside the spanning ``tree``."""
    tree = set(tree)
    unknown = tree - set(graph.edges)
    if unknown:
        raise GraphError(f"tree edges {sorted(unknown)} are not edges of the graph")
    if len(tree) != len(graph.vertices) - 1:
        raise GraphError("tree must have one edge fewer than the graph has vertices")
    paths = {base: ()}
    queue = deque([base])
    while queue:
        x = queue.popleft()
        for t in graph.tokens_at(x):
            if t.edge in tree:
                y = graph.terminal(t)
                if y not in paths:
                    paths[y] = paths[x] + (t,)
                    queue.append(y)
    if len(paths) != len(graph.vertices):
        raise GraphError("tree does not span the graph")
    return paths


def induced_pi1_map(f, tree=(), basepoint=None):
    """Induced map on the fundamental group of a graph endomorphism.

    The free basis consists of the non-tree edges in canonical order
    (``x1, x2, ...``); the generator for edge ``e`` is the loop running
    through the tree from the base vertex to the start of ``e``, across
    ``e`` and back.  Since ``f`` may move the base vertex, images are
    conjugated back along the tree path to ``f(base)``.
    """
    g = f.source
    if not f.is_endomorphism:
        raise GraphError("induced_pi1_map needs an endomorphism")
    report = validate_graph(g)
    if not report.ok:
        raise GraphError("invalid graph: " + "; ".join(report.violations))
    base = g.vertices[0] if basepoint is None else basepoint
    paths = _tree_paths(g, tree, base)
    tree = set(tree)
    gens = [e for e in g.edges if e not in tree]
    index = {e: i + 1 for i, e in enumerate(gens)}

    def to_word(path):
        return reduce_word([index[t.edge] * (-1 if t.inverted else 1) for t in path if t.edge not in tree])

    def inv(path):
        return tuple(t.inverse() for t in reversed(path))

    back = paths[f.vertex_map[base]]
    images = []
    for e in gens:
        u, v = g.endpoints(e)
        loop = paths[u] + (Token(e),) + inv(paths[v])
        images.append(to_word(back + f.apply(loop) + inv(back)))
    return FreeEndomorphism(images, rank=len(gens))
