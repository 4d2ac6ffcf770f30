"""
When a move makes the matrix reducible
======================================

Removing a crossing can disconnect the transition graph.  The growth is
then carried by the strong component with the largest spectral radius.
"""
from handlegrowth import (
    TighteningMove,
    evaluate_move,
    scc_decomposition,
    spectral_radius_reducible,
)

out = evaluate_move([[1, 1], [1, 1]], TighteningMove(0, (0, -1)))
print(out.matrix_after, out.branch)
print("blocks:", out.blocks)
print(f"growth {out.growth_before:.3f} -> {out.growth_after:.3f}")

#%%
# The same decomposition is available directly.
m = [[2, 1, 0], [0, 1, 1], [0, 1, 1]]
print(scc_decomposition(m))
print(spectral_radius_reducible(m))
