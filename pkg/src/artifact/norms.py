"""Norm balls from Newton polytopes: support widths, fibered faces, cone tests."""

from dataclasses import dataclass

from .ring import newton_polytope


class ConeError(ValueError):
    pass


def _pair(alpha, e):
    return sum(a * b for a, b in zip(alpha, e))


@dataclass(frozen=True)
class NormBall:
    source: object
    polytope: tuple          # vertices of the Newton polytope
    kind: str = "teichmuller"

    @classmethod
    def of(cls, p, kind="teichmuller"):
        if kind not in ("alexander", "teichmuller"):
            raise ValueError(f"unknown norm kind {kind}")
        if not p.terms:
            raise ValueError("zero polynomial has no norm")
        return cls(p, tuple(newton_polytope(p)), kind)

    def support_norm(self, alpha):
        """Same width computed over the full support (used as a cross-check)."""
        vals = [_pair(alpha, e) for e in self.source.terms]
        return max(vals) - min(vals)


def _check_arity(ball, alpha):
    if len(alpha) != ball.source.arity:
        raise ValueError(f"class {tuple(alpha)} has wrong arity for {ball.source.names}")


def norm(ball, alpha):
    """sup over support pairs of alpha.(g - h), read off the polytope vertices."""
    _check_arity(ball, alpha)
    vals = [_pair(alpha, v) for v in ball.polytope]
    return max(vals) - min(vals)


def maximizers(vertices, alpha):
    vals = [_pair(alpha, v) for v in vertices]
    top = max(vals)
    return tuple(v for v, x in zip(vertices, vals) if x == top)


@dataclass(frozen=True)
class FiberedFace:
    vertices: tuple          # polytope vertices maximizing the reference pairing
    opposite: tuple          # vertices minimizing it
    ref: tuple
    ball: NormBall

    def contains(self, alpha):
        """Open cone test: alpha is maximized exactly on this face."""
        _check_arity(self.ball, alpha)
        return maximizers(self.ball.polytope, alpha) == self.vertices


def fibered_face(theta, ref, kind="teichmuller"):
    ball = NormBall.of(theta, kind)
    _check_arity(ball, ref)
    face = maximizers(ball.polytope, ref)
    if len(face) == len(ball.polytope):
        raise ValueError(f"class {tuple(ref)} pairs constantly on the polytope; no face")
    neg = tuple(-a for a in ref)
    return FiberedFace(face, maximizers(ball.polytope, neg), tuple(ref), ball)


def default_ref(p):
    return (0,) * (p.arity - 1) + (1,)


def thurston_norm_on_cone(p, alpha, ref=None, kind="alexander"):
    """Norm of ``alpha`` from ``p`` after checking alpha lies in the cone of ``ref``.

    On the fibered cone this is the Thurston norm when ``p`` is the Alexander
    polynomial, or the Teichmüller polynomial of a track with no interior
    polygons.
    """
    alpha = tuple(int(a) for a in alpha)
    face = fibered_face(p, ref or default_ref(p), kind)
    if not face.contains(alpha):
        raise ConeError(f"class {alpha} is outside the fibered cone")
    return norm(face.ball, alpha)
