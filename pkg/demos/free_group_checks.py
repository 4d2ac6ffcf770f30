"""
Is the induced map an automorphism?
===================================

A graph map that comes from a homeomorphism must induce an automorphism of
the fundamental group.  Stallings folding decides surjectivity, and the
abelianization gives a quick necessary condition.
"""
import numpy as np

from handlegrowth import (
    FreeEndomorphism,
    Graph,
    GraphMap,
    abelianization,
    format_word,
    induced_pi1_map,
    is_surjective,
    parse_word,
)

# A barbell: loops a and c joined by the bar b.  The map swaps the two ends.
g = Graph(["u", "v"], [("a", "u", "u"), ("b", "u", "v"), ("c", "v", "v")])
f = GraphMap(g, g, {"u": "v", "v": "u"}, {"a": "c", "b": "~b", "c": "a"})
e = induced_pi1_map(f, tree=["b"])
print([format_word(w) for w in e.images], is_surjective(e))

#%%
# Determinant one is not enough.  The second image below is a commutator
# times x2, so homology sees the identity but folding finds a proper subgroup.
h = FreeEndomorphism([parse_word("x1"), parse_word("x2 x1 x2 x1- x2-")])
print(round(np.linalg.det(abelianization(h))), is_surjective(h))

#%%
sq = FreeEndomorphism([parse_word("x1 x1"), parse_word("x2")])
print(round(np.linalg.det(abelianization(sq))), is_surjective(sq))
