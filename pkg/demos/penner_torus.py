"""
Boundary dilatation from twists on a punctured torus
====================================================

Two curves meeting once fill the once-punctured torus.  Twisting positively
along one and negatively along the other gives a pseudo-Anosov map whose
dilatation is the golden ratio squared.
"""
from handlegrowth import (
    DualArc,
    PennerPair,
    build_boundary_pair,
    compare_growth,
    penner_product,
    twist_matrix,
    validate_pair,
)

pair = PennerPair(["alpha0"], ["alpha1"], {("alpha0", "alpha1"): 1},
                  genus=1, boundary=1, certificates={"fills": True})
rep = validate_pair(pair)
print(rep.ok, rep.notes)

#%%
# Each twist acts on curve weights by an elementary matrix.
print(twist_matrix(pair, "alpha0"), twist_matrix(pair, "alpha1"))

#%%
word = [("alpha1", +1), ("alpha0", -1)]
prod = penner_product(pair, word)
print(prod.matrix, prod.lambda_boundary, (3 + 5 ** 0.5) / 2)

#%%
# Doubling the torus along an arc that crosses alpha0 once gives a pair of
# curve systems on a closed genus two surface, with the boundary of the
# band-summed disc added to one side.
bp = build_boundary_pair(pair, DualArc("alpha0"))
print("Q =", bp.Q)
print("R =", bp.R)
print(bp.intersections)
print(validate_pair(bp.to_pair()).ok)

#%%
# A handle growth rate above the boundary dilatation cannot come from a
# tight lamination.
for lam in (2.0, 3.0):
    print(lam, compare_growth(lam, pair, word).message)
