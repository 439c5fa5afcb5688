"""Classify the two worked example sets and evaluate grids built from them."""

# %%
import numpy as np

from holant3 import apply_orthogonal, classify_set, decompose, eval_brute, eval_tractable
from holant3.fixtures import EXAMPLE1_T, example1, example2
from holant3.generators import random_closed_grid
from holant3.sigcore import support

np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# Four signatures: three ternaries and one binary.  None of the ternaries
# vanishes anywhere, so no plane structure is visible in standard coordinates.

# %%
S1 = example1()
for name, sig in S1.items():
    print(name, np.real(sig.values))

# %%
v1 = classify_set(S1)
print(v1.status, v1.cls)
print(v1.witness_T)

# %% [markdown]
# After the fixed orthogonal change of basis each ternary lives on its own
# coordinate plane.

# %%
for name in ("F1", "G1", "H1"):
    image = apply_orthogonal(EXAMPLE1_T, S1[name])
    letters = sorted({"BGR"[i] for m in support(image) for i in m})
    print(name, "support letters:", "".join(letters), "->", decompose(image).kind)

# %% [markdown]
# The class algorithm agrees with exhaustive summation on random grids.

# %%
rng = np.random.default_rng(0)
for _ in range(5):
    g = random_closed_grid(rng, S1, max_edges=8)
    fast, slow = eval_tractable(g, v1), eval_brute(g)
    print(f"{len(g.edges):2d} edges  class {fast.value.real: .6g}  brute {slow.value.real: .6g}")

# %%
S2 = example2()
v2 = classify_set(S2)
print(v2.status, v2.cls)
g = random_closed_grid(rng, S2, max_edges=8)
print(eval_tractable(g, v2).value, eval_brute(g).value)
