"""The two-letter dichotomy, single-signature hardness and timing of the class algorithms."""

# %%
import time

import numpy as np

from holant3 import BoolSig, classify_bool_set, classify_set, classify_single, eval_brute, eval_tractable
from holant3.fixtures import hard_conjugate_pair, hard_real_pair
from holant3.generators import CLASS_SETS, random_closed_grid

# %%
for S in ([BoolSig([1, 0, 0, 1])], [BoolSig([1, 2, -1, -2])], [BoolSig([1, 0, 0, 1]), BoolSig([0, 1, 0])], [BoolSig([1, 0, 0, 1]), BoolSig([0, 1, 1, 0])]):
    v = classify_bool_set(S)
    print([np.real(s.values).tolist() for s in S], v.status, v.case, v.ab)

# %% [markdown]
# Two ternaries built from non-orthogonal vectors.  Each one is hard by itself;
# the verdict names the rule that fired.

# %%
for F in (hard_real_pair(), hard_conjugate_pair()):
    v = classify_single(F)
    print(v.status, v.hard_evidence["rule"])

# %% [markdown]
# Cost of the class algorithms against exhaustive summation as grids grow.

# %%
rng = np.random.default_rng(2)
for cls, make in CLASS_SETS.items():
    S = make(rng)
    v = classify_set(S)
    for edges in (6, 10, 14):
        g = random_closed_grid(rng, S, max_edges=edges, max_vertices=12)
        t0 = time.perf_counter()
        fast = eval_tractable(g, v).value
        t1 = time.perf_counter()
        slow = eval_brute(g).value
        t2 = time.perf_counter()
        print(f"class {cls} {len(g.edges):2d} edges: class {1e3 * (t1 - t0):6.2f} ms  brute {1e3 * (t2 - t1):8.2f} ms  |diff| {abs(fast - slow):.1e}")
