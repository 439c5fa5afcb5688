"""Gadget constructions: contraction with dangling edges and three realizations."""

# %%
import numpy as np

from holant3 import (
    contract_unary,
    eval_brute,
    local_holographic,
    realize_coeff_geneq,
    realize_plane_equality,
    realize_z_arity4,
)
from holant3.fixtures import beta_form, example1, geneq
from holant3.gadgetlab import z4_expected, z4_gadget
from holant3.generators import class_e_set, random_closed_grid
from holant3.sigcore import OH

np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# The arity-four gadget is a path of three copies of the ternary with a unary on
# the middle copy.  Its axis coefficient is the cube of the input's.

# %%
g = z4_gadget(beta_form(2))
print(g.vertices)
for lam in (0.0, 1.0, 2.0, 3.0):
    Z = realize_z_arity4(beta_form(lam))
    err = np.max(np.abs(Z.values - z4_expected(lam).values))
    print(f"lam={lam}: RRRR={Z['RRRR'].real:.6g}  deviation from closed form {err:.1e}")

# %% [markdown]
# Capping one leg again with (sqrt2, 0, 1) returns the ternary; (1, 0, 1) does
# not, because it halves the weight of the pair relative to the axis.

# %%
Z = realize_z_arity4(beta_form(1))
print(contract_unary(Z, [np.sqrt(2), 0, 1]).projectively_equal(beta_form(1)))
print(contract_unary(Z, [1, 0, 1]).projectively_equal(beta_form(1)))

# %%
print(realize_plane_equality(geneq([1, 1])))
print(realize_plane_equality(beta_form(0)))

# %% [markdown]
# A local change of basis at one vertex, undone on its edges, keeps the value.

# %%
rng = np.random.default_rng(1)
g = random_closed_grid(rng, class_e_set(rng))
v = g.vertices[0][0]
for M in (np.eye(3), OH[17], rng.normal(size=(3, 3))):
    print(eval_brute(g).value, eval_brute(local_holographic(g, v, M), cap=40).value)

# %% [markdown]
# Reweighting the three directions of a real orthogonal ternary.

# %%
F1 = example1()["F1"]
print(np.real(realize_coeff_geneq(F1, 2.0, -1.0).values))
