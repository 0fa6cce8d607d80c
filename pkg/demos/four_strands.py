"""The four-strand braid s1^-1 s2 s3, whose invariant track carries a trigon."""

from artifact import automaton as au
from artifact.burau import BraidWord, alexander_polynomial, homological_dilatation
from artifact.fiber import fiber_report
from artifact.norms import thurston_norm_on_cone
from artifact.teich import certify_pseudo_anosov, stretch_factor, teichmuller_polynomial

loop = au.b4_loop()
print("seed track:\n", loop.start)
for mv in loop.moves:
    print("  ", mv.label(), "case", mv.case)
print("relabeling", loop.relabel)
print("integer matrix\n", loop.integer_matrix())

cert = certify_pseudo_anosov(loop)
print(f"\ncertified {cert.certified}: power {cert.power}, PF eigenvalue {cert.eigenvalue:.12f}")
print("PF weights", dict(zip(loop.labels, (round(x, 6) for x in cert.vector))))

r = teichmuller_polynomial(loop)
print("\nTheta =", r.theta.format_grouped())
print("stretch factor at (0,1):", stretch_factor(r, (0, 1)))

delta = alexander_polynomial(BraidWord.parse("-1 2 3", 4))
print("Delta =", delta.format_grouped())
print("homological dilatation at (0,1):", homological_dilatation(delta, (0, 1)))
print("Teichmüller width at (0,1):", thurston_norm_on_cone(r.theta, (0, 1), kind="teichmuller"),
      " Thurston norm:", thurston_norm_on_cone(delta, (0, 1)))
print()
print(fiber_report(loop, (0, 1)).text())

a = au.build(au.seed_b4())
print(f"\nfull automaton from the seed: {len(a.vertices)} vertices, {len(a.edges)} edges")
