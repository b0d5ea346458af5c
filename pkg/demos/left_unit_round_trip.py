# %% [markdown]
# # From a left unit to a bilinear product and back
#
# For 3x3 matrices with the product XY^TZ + ZY^TX - YX^TZ the identity matrix
# is a left unit. Fixing it in the middle slot gives a bilinear product that
# determines the whole triple product.

# %%
import numpy as np

from gjts import build_dnk, extract_circle, make_context, peirce_decompose, reconstruct_triple
from gjts.left_unit import check_bilinear_equations, check_circle_properties, split_circle
from gjts.linalg import inverse
from gjts.scalar import Scalar

s, e, _ = build_dnk(3, 3, 3)
ctx = make_context(s, e)
c = extract_circle(ctx, peirce_decompose(ctx))
print("graded dims (U11+, U11-, U13+, U13-):", c.space.dims)

# %% [markdown]
# In matrix terms the product is XY + YX - X^T Y.

# %%
X = np.array([[1, 2, 0], [0, -1, 3], [4, 0, 1]])
Y = np.array([[0, 1, 1], [2, 0, -1], [1, 1, 0]])
B, Binv = c.basis, inverse(c.basis)
flat = lambda M: tuple(Scalar(int(v)) for v in M.ravel())
got = B.apply(c.circle(Binv.apply(flat(X)), Binv.apply(flat(Y))))
print(np.array([int(x.to_fraction()) for x in got]).reshape(3, 3))
print(X @ Y + Y @ X - X.T @ Y)

# %% [markdown]
# Symmetric inputs split into a symmetric and a skew part.

# %%
A1, A3 = split_circle(c, Binv.apply(flat(X + X.T)), Binv.apply(flat(Y + Y.T)))
print("A1 part:", [str(x) for x in B.apply(A1)])
print("A3 part:", [str(x) for x in B.apply(A3)])

# %%
props = check_circle_properties(c)
eqs = check_bilinear_equations(c, weakly_commutative=True)
print("properties:", {k: r.holds for k, r in props.items()})
print("equations:", all(r.holds for r in eqs.values()), "over", sum(r.checked for r in eqs.values()), "pairs")
print("reconstruction equals the original:", reconstruct_triple(c) == s)
