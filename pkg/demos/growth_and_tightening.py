"""
Growth rate of a handlebody map and one tightening move
=======================================================

A map of a genus four handlebody sends each handle disc across the others a
fixed number of times.  Those counts form a nonnegative integer matrix and
its Perron-Frobenius eigenvalue is the growth rate of the map.
"""
import numpy as np

from handlegrowth import (
    NonNegMatrix,
    TighteningMove,
    evaluate_move,
    is_irreducible,
    pf_eigen,
    search_moves,
    standard_weights,
    subinvariance_test,
)

M = NonNegMatrix([[3, 1, 1, 0],
                  [4, 1, 3, 2],
                  [1, 0, 2, 1],
                  [1, 0, 1, 1]])
labels = "abcd"

#%%
# Irreducibility comes first, since the eigenvector is only unique and
# positive for irreducible matrices.  Here the square is already positive.
print("irreducible:", is_irreducible(M))
print(np.array(M.power(2).tolist()))

#%%
# Power iteration gives the eigenvalue together with a bracket from the
# Collatz-Wielandt bounds, so the printed value is certified to the tolerance.
pf = pf_eigen(M)
print(f"lambda = {pf.eigenvalue:.6f} after {pf.iterations} iterations")
print("weights:", np.round(pf.vector, 4))

#%%
# A disc in the image of handle b can be swapped for one that crosses
# fewer handles.  The row of b loses two crossings with a and two with c.
move = TighteningMove(labels.index("b"), (-2, 0, -2, 0))
w = standard_weights(M)
out = evaluate_move(M, move, weights=w)
print(np.array(out.matrix_after.tolist()))
print(f"gain {out.gain:.4f}: lambda {out.growth_before:.3f} -> {out.growth_after:.3f}")

#%%
# The drop is predicted before any eigenvalue is recomputed: the old weights
# already satisfy M' w < lambda w in some row and <= everywhere else.
print(subinvariance_test(out.matrix_after, w.weights, w.eigenvalue))

#%%
# Searching a catalog ranks every admissible move by the growth it leaves.
for o in search_moves(M, catalog="swap")[:3]:
    print(labels[o.move.row], o.move.delta, round(o.growth_after, 4), o.branch)
