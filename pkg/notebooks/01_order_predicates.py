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
# # Three predicates on orders
#
# For an order R with conductor I we check whether R is associated,
# ideal-preserving and locally associated, and read off its class number
# from the unit counts of O/I and R/I.

# %%
from collections import Counter

import numpy as np

from orderlab import bundled_field, order_z_plus, property_report
from orderlab.corpus import generate_corpus

sqrt2 = bundled_field("Q-sqrt2")

# %% [markdown]
# ## Z + 5O inside Q(sqrt 2)
#
# 5 is inert, so O/5O is the field with 25 elements and has 24 units, while
# R/5O = Z/5 has 4.  The unit index is 3, and 3 * 4 falls short of 24.

# %%
rep = property_report(order_z_plus(sqrt2, 5))
print("quadruple (index, |U(O/I)|, |U(R/I)|, h(R)):", rep.quadruple)
print("ideal-preserving:", rep.ideal_preserving.verdict)
print("locally associated:", rep.locally_associated.verdict)

# %% [markdown]
# ## Z + 2O
#
# Here the conductor is (sqrt 2)^2 and R meets (sqrt 2) only inside its
# square, which breaks ideal preservation.

# %%
rep2 = property_report(order_z_plus(sqrt2, 2))
print(rep2.ideal_preserving.certificate["kind"], rep2.locally_associated.verdict)

# %% [markdown]
# ## Across the corpus
#
# Tally the verdict triples over every generated order.

# %%
corpus = generate_corpus()
triples = Counter()
class_numbers = []
for entry in corpus:
    r = property_report(entry.order)
    triples[(r.associated.verdict, r.ideal_preserving.verdict, r.locally_associated.verdict)] += 1
    class_numbers.append(r.quadruple[3])

for (a, ip, la), n in sorted(triples.items()):
    print(f"assoc={a!s:5} ip={ip!s:5} la={la!s:5}  {n}")

# %%
h = np.array(class_numbers)
print("orders:", len(h), " median h(R):", np.median(h), " max h(R):", h.max())
