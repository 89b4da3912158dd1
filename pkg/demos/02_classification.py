# coding: utf-8

# # The list of general indecomposables
#
# For each (m, n) the classified strata come in five staircase shapes plus
# their transposes.  The list has 9mn - 18(m + n) + 42 entries once m, n >= 3.

# In[1]:

from collections import Counter

from lambdamn.classify import classify, count_formula, list_general_indecomposables


# In[2]:

for m, n in [(3, 3), (5, 5), (7, 4), (10, 10)]:
    print(m, n, len(list_general_indecomposables(m, n)), count_formula(m, n))


# How the entries for Lambda(4, 4) split by shape:

# In[3]:

print(Counter(g.label + ("'" if g.transposed else "") for g in list_general_indecomposables(4, 4)))


# Certificates: the endomorphism ring is local over Q (so the module is
# indecomposable) and the orbit is as large as the stratum (so it is dense).

# In[4]:

rep = classify(4, 4, certified=True)
for c in rep.certificates[-5:]:
    print(c.entry.label, tuple(c.entry.p), tuple(c.entry.q),
          "End", c.endo_dim, "orbit", c.orbit_dim, "stratum", c.stratum_dim, c.certified)
print("all certified:", all(c.certified for c in rep.certificates), "wild:", rep.wild)


# The CSV report has one row per entry.

# In[5]:

print(rep.to_csv().splitlines()[0])
print(rep.to_csv().splitlines()[-1])
