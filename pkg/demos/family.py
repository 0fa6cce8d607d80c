"""A family of braids on n+4 strands whose stretch factors decrease with n."""

from artifact import automaton as au
from artifact.ring import valuate
from artifact.teich import stretch_factor, teichmuller_polynomial

print(" n  strands  stretch       Theta")
for n in range(1, 9):
    lp = au.family_loop(n)
    r = teichmuller_polynomial(lp)
    lam = stretch_factor(r, (0, 1))
    print(f"{n:2d}  {n + 4:7d}  {lam:.10f}  {r.theta.format_grouped()}")

lp = au.family_loop(2)
print("\nmoves for n=2:", lp.describe())
print("braid word:", lp.braid)
print("integer characteristic polynomial:",
      valuate(teichmuller_polynomial(lp).theta, (0, 1)).format())
