# %% [markdown]
# # Building triple systems from a bilinear product
#
# Any product on a graded space with symmetric A1, the (-3)^p rule for A3 and
# tilde as an automorphism solves the bilinear equations. Whether the
# resulting triple product satisfies the defining identities is a separate
# question, answered here instance by instance.

# %%
import random

from gjts.left_unit import (
    GradedSpace,
    check_bilinear_equations,
    mutate,
    random_admissible_circle,
    synthesize_from_circle,
)

rng = random.Random(11)
space = GradedSpace(2, 1, 1, 0)
c = random_admissible_circle(space, rng)
print("nonzero basis products:", len(c.table))

# %%
s, rep = synthesize_from_circle(space, c, seed=0)
print("(a) admissible:", rep.a_passed)
print("(b) equations :", rep.b_passed)
print("(c) axioms    :", rep.c_passed)
print("left unit found:", rep.left_unit["found"])

# %% [markdown]
# Breaking one property breaks some equation.

# %%
for kind in ("3.39", "3.40", "3.42"):
    m = mutate(c, kind, rng)
    if m is None:
        print(kind, "no room in this grading")
        continue
    bad = [k for k, r in check_bilinear_equations(m).items() if not r.holds]
    print(kind, "mutated -> failing equations", bad)

# %%
tally = {"instances": 0, "equations": 0, "axioms": 0}
for seed in range(30):
    sp = GradedSpace(*random.Random(seed).choice([(1, 1, 0, 0), (2, 0, 1, 0), (1, 1, 1, 1), (3, 0, 0, 1)]))
    _, r = synthesize_from_circle(sp, random_admissible_circle(sp, seed), seed=seed)
    tally["instances"] += 1
    tally["equations"] += r.b_passed
    tally["axioms"] += r.c_passed
print(tally)
