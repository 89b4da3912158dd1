# coding: utf-8

# # A one-parameter family without a dense orbit
#
# With n loops and radical square zero, the 2-dimensional modules
# (E12, l_1 E12, ..., l_{n-1} E12) are pairwise non-isomorphic, so the
# component they sweep out has dimension (n - 1) + orbit.

# In[1]:

from fractions import Fraction

from lambdamn.modrep import local_family, local_is_isomorphic, local_tangent


# In[2]:

for n in range(2, 6):
    t = local_tangent(local_family(n))
    print(n, t.to_json())


# Two different parameter choices give different modules.

# In[3]:

a = local_family(3, [1, 2])
b = local_family(3, [1, Fraction(7, 3)])
print(local_is_isomorphic(a, a), local_is_isomorphic(a, b))
