# coding: utf-8

# # Degenerations and duality
#
# M_{(k+1),(1)} degenerates to M_{(k,1),(1)}.  The necessary conditions
# (End grows, word ranks drop) hold in that direction and fail in the other.

# In[1]:

import random

from lambdamn.exactla import Field, Matrix, inverse
from lambdamn.ktmod import dual_labeled, labeled_to_triple
from lambdamn.modrep import degeneration_necessary
from lambdamn.reduce import random_labeled
from lambdamn.strata import general_indecomposable, staircase, transpose_dual


# In[2]:

k = 3
M = labeled_to_triple(staircase((k + 1,), (1,)), k + 1, 2)
N = labeled_to_triple(staircase((k, 1), (1,)), k + 1, 2)
fwd = degeneration_necessary(M, N)
back = degeneration_necessary(N, M)
print("forward:", fwd.to_json()["conditions"])
print("reverse:", back.to_json()["conditions"])


# Vector space duality swaps the two vertices and turns Lambda(m, n) into
# Lambda(n, m).  On labeled matrices it transposes the staircase.

# In[3]:

g = general_indecomposable(5, 4, (5, 3, 1), (4, 2))
t = transpose_dual(g)
print(g.label, "->", t.label)
print(t.normal_form.pretty())
print(t.normal_form == dual_labeled(g.normal_form), transpose_dual(t) == g)


# Base change commutes with duality once (g1, g2) is replaced by
# (g2^-t, g1^-t).

# In[4]:

F = Field(101)
R = labeled_to_triple(random_labeled((3, 1), (2,), F, random.Random(1)), 3, 2)
g1 = Matrix.identity(F, 4)
g1.rows[1][0] = F(5)
g2 = Matrix(F, [[1, 3], [0, 2]])
print(R.act(g1, g2).dual() == R.dual().act(inverse(g2).T, inverse(g1).T))
