# coding: utf-8

# # Strata and staircase normal forms
#
# A representation of Lambda(m, n) is a triple (A, B, C) with A, B nilpotent.
# Fixing the Jordan types p of A and q of B cuts out a stratum, and C becomes
# a matrix of truncated polynomials between Jordan blocks.

# In[1]:

import random

from lambdamn import Field, labeled_to_triple, is_isomorphic
from lambdamn.reduce import random_labeled, reduce_to_normal_form
from lambdamn.strata import Stratum, normal_form


# The stratum of p = (4, 1), q = (3, 2) inside Lambda(4, 3): its dimension is
# the two orbit dimensions plus h(p, q), the number of free coefficients in C.

# In[2]:

s = Stratum(4, 3, (4, 1), (3, 2))
print(s.to_json())


# The normal form has T^* on the staircase and zeros elsewhere.

# In[3]:

N = normal_form(4, 3, (4, 1), (3, 2))
print(N.pretty())


# Draw a random point of the stratum over F_10007 and run the reduction.
# Every step is a legal row or column operation.

# In[4]:

F = Field(10007)
M = random_labeled((4, 1), (3, 2), F, random.Random(0))
print(M.pretty())

tr = reduce_to_normal_form(M, 4, 3)
print(len(tr.steps), "operations")
for op in tr.steps[:4]:
    print(" ", op.to_json())
print(tr.result.pretty())


# The trace replays, and the input is isomorphic to its normal form as a
# representation.

# In[5]:

print("replays:", tr.replay())
print("isomorphic:", is_isomorphic(labeled_to_triple(M, 4, 3), labeled_to_triple(tr.result, 4, 3)))
