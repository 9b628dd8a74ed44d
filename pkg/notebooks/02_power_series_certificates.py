# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Power series over an order with non-radical conductor
#
# K is the cubic field of x^3 + 4x - 1, P the degree-two prime above 3 and
# R = Z + P^2.  R is associated and half-factorial, yet R[[x]] fails to be:
# we build the certificates at low truncation degree.

# %%
from orderlab import (
    TruncSeries,
    association_obstruction,
    bundled_field,
    hfd_evidence,
    hfd_violation_witness,
    irreducibility_cert_deg1,
    order_z_plus_ideal,
    split_prime,
    unit_index,
)
from orderlab.ideals import ideal_pow

K = bundled_field("cubic")
Q, P = split_prime(3, K)
R = order_z_plus_ideal(K, ideal_pow(P, 2))
beta = K.parse("2-4a+a^2")
print("P^2 = (beta):", ideal_pow(P, 2) == R.conductor, " unit index:", unit_index(R))

# %% [markdown]
# ## Half-factoriality of R on a box of small elements

# %%
ev = hfd_evidence(R, 3000)
print(ev.reason, "- irreducibles checked:", ev.checked)

# %% [markdown]
# ## 3 + a x has no associate in R[[x]]
#
# The search runs over unit classes u_0 and fails by degree one.

# %%
cert = association_obstruction(TruncSeries([K.rational(3), K.gen], 1), R)
print("obstructed at degree", cert.level, "after", cert.nodes, "nodes")

# %% [markdown]
# ## An irreducible of R[[x]]
#
# f = beta * (3 + a x).  Each splitting of the constant term leaves a
# degree-one equation with no solution; the functional below proves it.

# %%
f = TruncSeries([beta * 3, beta * K.gen], 1)
ic = irreducibility_cert_deg1(f, R)
for b in ic.branches:
    c = b["certificate"]
    print(f"g0 = {b['g0']}:  functional {c.functional} gives {c.value} mod {c.modulus}")

# %% [markdown]
# ## Two factorizations of different lengths
#
# f^36 = beta^36 (3 + a x)^36, and the second factor is a polynomial over R.

# %%
w = hfd_violation_witness(f, TruncSeries([beta], 1), K.rational(3), K.gen, P, R)
print("m =", w.m, " k =", w.k, " coefficients in R:", w.all_in_order)
print("lengths:", w.left_length, "versus at least", w.right_length_at_least)
