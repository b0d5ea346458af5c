# %% [markdown]
# # A tour of the Peirce decomposition
#
# Square matrix pairs of order 6 carry a tripotent whose ten Peirce
# components are all nonzero. We build it, split the space exactly and look
# at what comes out.

# %%
from gjts import build_ann_ann, build_dnk, make_context, peirce_decompose
from gjts.identities import check_weak_commutativity
from gjts.labels import LABEL_ORDER, WEAK_VANISHING
from gjts.peirce import check_invariants, check_operator_relations

s, e, desc = build_ann_ann(2)
print(s.label, "dim", s.dim, "nonzero constants", s.nnz())
print("tripotent entries used:", sorted({str(x) for x in e}))

# %%
ctx = make_context(s, e)
d = peirce_decompose(ctx)
for lab in LABEL_ORDER:
    print(f"{lab.name:<12} lambda={str(lab.lam):<5} mu={str(lab.mu):<5} dim {d.components[lab].dim}")
print("total", sum(d.dims().values()))

# %% [markdown]
# Q/sqrt3 swaps the two components whose R-eigenvalues are 3/2 and 2.

# %%
print("tau is", d.tau_matrix.shape, "and undoes itself:", (d.tau_inverse @ d.tau_matrix).is_identity())
print("invariants:", check_invariants(d))

# %% [markdown]
# Weak commutativity decides whether four of the components may appear.

# %%
rel = check_operator_relations(ctx)
print("1.42 holds here:", rel["1.42"].holds)
wc = check_weak_commutativity(s, seed=0, count=2000)
print("weakly commutative:", wc.passed)

s2, e2, _ = build_dnk(4, 3, 2)
d2 = peirce_decompose(make_context(s2, e2))
print(s2.label, "weakly commutative:", check_weak_commutativity(s2).passed)
print("components forced to vanish:", {lab.name: d2.components[lab].dim for lab in WEAK_VANISHING})
