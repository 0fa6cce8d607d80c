"""Walk through the three-strand braid s1^-1 s2 end to end."""

from artifact import automaton as au
from artifact.burau import BraidWord, alexander_polynomial, orientability_test
from artifact.fiber import fiber_report
from artifact.norms import NormBall, fibered_face, norm
from artifact.teich import lifted_vectors, stretch_factor, teichmuller_polynomial, w_text

a = au.build(au.seed_b3())
print(f"automaton: {len(a.vertices)} vertex, {len(a.edges)} edges")
for e in a.edges:
    print("  ", e.label())

loop = au.b3_loop((-1, 2))
print("\nloop", loop.describe(), "braid", loop.braid)
for mv, w in zip(loop.moves, lifted_vectors(loop)):
    print(f"  w = {w_text(w, loop.labels)}")

r = teichmuller_polynomial(loop)
print("\nlifted matrix", r.lifted_matrix)
print("Theta =", r.theta.format_grouped())

delta = alexander_polynomial(BraidWord.parse("-1 2", 3))
face = fibered_face(r.theta, (0, 1))
print("fibered face", face.vertices, "opposite", face.opposite)

print("\n class    stretch        homological    T-norm  A-norm  verdict")
for alpha in [(0, 1), (1, 2), (-1, 2), (1, 3), (2, 3), (2, 5)]:
    o = orientability_test(r.theta, delta, alpha)
    print(f"{str(alpha):8} {stretch_factor(r, alpha):.10f}  {o['homological']:.10f}  "
          f"{norm(face.ball, alpha):6d}  {norm(NormBall.of(delta, 'alexander'), alpha):6d}  {o['result']}")

print()
for alpha in [(0, 1), (1, 2), (1, 4), (0, 2)]:
    print(fiber_report(loop, alpha).text())
