"""Enumerate short loops of the four-strand automaton and rank the pseudo-Anosov ones."""

from artifact import automaton as au
from artifact.teich import certify_pseudo_anosov, teichmuller_polynomial

a = au.build(au.seed_b4())
rows = []
for lp in au.loops(a, 4):
    cert = certify_pseudo_anosov(lp)
    if cert.certified:
        r = teichmuller_polynomial(lp)
        rows.append((cert.eigenvalue, lp.describe(), lp.braid, r.theta.format_grouped()))
rows.sort()
print(f"{len(rows)} certified loops of length <= 4")
for lam, moves, braid, theta in rows[:12]:
    print(f"{lam:.8f}  {moves:40}  {braid}\n            {theta}")
