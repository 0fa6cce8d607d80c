"""Teichmüller polynomial of a decorated automaton loop.

Pipeline: the loop's composite puncture permutation gives the t-map (one
variable per cycle), the eta recursion carries each decoration vector back to
the start frame, and the lifted matrix M = M(T1) D1 ... M(Tk) Dk M(R) has
characteristic polynomial det(u Id - M).
"""

from dataclasses import dataclass

import numpy as np

from .automaton import relabel_matrix
from .ring import LaurentPoly, PolyMatrix, canonical_unit_form, char_poly, largest_root, valuate
from .track import LETTERS, prong_letter, switch_violation


class CertificationError(ValueError):
    pass


@dataclass(frozen=True)
class TMap:
    cycles: tuple            # tuples of prong letters
    variable_of: dict        # prong letter -> variable index
    names: tuple             # variable names, one per cycle

    @property
    def rank(self):
        return len(self.cycles)

    def monomial(self, letter, sign, var_names):
        """t(letter^sign) as a LaurentPoly over ``var_names``."""
        e = [0] * len(var_names)
        if letter is not None and sign:
            e[self.variable_of[letter]] = sign
        return LaurentPoly.monomial(e, 1, var_names)


def perm_cycles(perm):
    """Cycles of a permutation given as a sequence i -> perm[i]."""
    n = len(perm)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        out.append(tuple(cyc))
    return out


def t_map(perm):
    """One variable per cycle of the puncture permutation.

    A single cycle gets the variable ``t``; otherwise cycle c is named
    ``t_X`` after its first letter.
    """
    cycles = perm_cycles(list(perm))
    if sorted(j for c in cycles for j in c) != list(range(len(perm))):
        raise ValueError("not a permutation")
    letters = tuple(tuple(prong_letter(i) for i in c) for c in cycles)
    if len(cycles) == 1:
        names = ("t",)
    else:
        names = tuple("t_" + c[0] for c in letters)
    variable_of = {x: k for k, c in enumerate(letters) for x in c}
    return TMap(letters, variable_of, names)


def eta_sequence(loop):
    """eta_1 .. eta_{k+1}; eta_i maps a prong position in the source of move i
    to (start-frame prong, accumulated rotation).  eta_{i+1} = eta_i o pi_i.
    """
    n = len(loop.moves[0].pi)
    eta = tuple((i, 0) for i in range(n))
    out = [eta]
    for mv in loop.moves:
        nxt = []
        for letter, rot in mv.pi:
            orig, r0 = eta[LETTERS.index(letter)]
            nxt.append((orig, r0 + rot))
        eta = tuple(nxt)
        out.append(eta)
    return out


def loop_permutation(loop):
    """Composite permutation of puncture positions, i -> start position held at i."""
    return [orig for orig, _ in eta_sequence(loop)[-1]]


def lifted_vectors(loop):
    """w_i = eta_i(v_i) as dicts label -> (start-frame letter, sign)."""
    etas = eta_sequence(loop)
    out = []
    for eta, mv in zip(etas, loop.moves):
        w = {}
        for lab, (x, sign) in mv.v.items():
            w[lab] = (prong_letter(eta[LETTERS.index(x)][0]), sign)
        out.append(w)
    return out


def w_text(w, labels):
    parts = []
    for lab in labels:
        if lab in w:
            x, s = w[lab]
            parts.append(f"{x}{'+' if s > 0 else '-'}")
        else:
            parts.append("1")
    return "(" + ",".join(parts) + ")"


def lifted_matrix(loop, tmap=None):
    if tmap is None:
        tmap = t_map(loop_permutation(loop))
    labels = loop.labels
    names = tmap.names
    M = PolyMatrix.identity(len(labels), names)
    for mv, w in zip(loop.moves, lifted_vectors(loop)):
        if mv.matrix.shape != (len(labels), len(labels)):
            raise ValueError("dimension mismatch")
        D = PolyMatrix.diag([tmap.monomial(*w.get(lab, (None, 0)), names) for lab in labels], names)
        M = M @ PolyMatrix.from_int(mv.matrix, names) @ D
    return M @ PolyMatrix.from_int(relabel_matrix(loop), names)


# certification

@dataclass
class Certification:
    certified: bool
    primitive: bool
    power: int = None            # first power with all entries positive
    eigenvalue: float = None
    vector: tuple = None         # PF weights on the start track's labels
    violation: float = None
    reason: str = ""

    def to_dict(self):
        return {"certified": self.certified, "primitive": self.primitive, "power": self.power,
                "eigenvalue": self.eigenvalue,
                "vector": None if self.vector is None else list(self.vector),
                "violation": self.violation, "reason": self.reason}


def primitivity_power(M):
    """Smallest k <= (d-1)^2 + 1 with M^k > 0, or None (exact, on the sign pattern)."""
    A = (np.asarray(M, dtype=object) != 0).astype(np.int64)
    if (np.asarray(M, dtype=object) < 0).any():
        raise ValueError("matrix has negative entries")
    d = A.shape[0]
    P = A.copy()
    for k in range(1, (d - 1) ** 2 + 2):
        if P.all():
            return k
        P = ((P @ A) > 0).astype(np.int64)
    return None


def perron_vector(M, tol=1e-12, max_iter=100000):
    """Power iteration for the PF eigenpair of a primitive nonnegative matrix.

    Returns (eigenvalue, vector normalized to sum 1).
    """
    A = np.asarray(M, dtype=float)
    x = np.ones(A.shape[0]) / A.shape[0]
    lam = 0.0
    for _ in range(max_iter):
        y = A @ x
        s = y.sum()
        y = y / s
        if np.abs(y - x).max() < tol:
            return float(s), y
        x = y
        lam = s
    raise ValueError(f"power iteration did not converge (last estimate {lam})")


def certify_pseudo_anosov(loop, tol=1e-9):
    """Primitive integer matrix plus a PF weight vector satisfying the switch conditions.

    The weights of the invariant measure are a left eigenvector of M(loop),
    since M(loop) sends start-track weights to end-track weights by rows.
    """
    M = loop.integer_matrix()
    power = primitivity_power(M)
    if power is None:
        return Certification(False, False, reason="matrix is not primitive")
    lam, vec = perron_vector(np.asarray(M, dtype=float).T)
    w = dict(zip(loop.labels, vec))
    viol = switch_violation(loop.start, w)
    ok = viol <= tol and lam > 1
    reason = "" if ok else ("PF vector violates the switch conditions" if viol > tol
                            else "PF eigenvalue is not > 1")
    return Certification(ok, True, power, lam, tuple(float(x) for x in vec), viol, reason)


@dataclass
class TeichResult:
    theta: LaurentPoly
    lifted_matrix: PolyMatrix
    loop: object
    tmap: TMap
    certified: bool
    certification: Certification = None

    def text(self):
        return self.theta.format_grouped()


def teichmuller_polynomial(loop, override=False):
    cert = certify_pseudo_anosov(loop)
    if not cert.certified and not override:
        raise CertificationError(f"loop is not certified pseudo-Anosov: {cert.reason}")
    tmap = t_map(loop_permutation(loop))
    M = lifted_matrix(loop, tmap)
    theta = char_poly(M, "u")
    return TeichResult(theta, M, loop, tmap, cert.certified, cert)


def loop_class(result):
    """The class (0, ..., 0, 1) of the loop itself."""
    return (0,) * result.tmap.rank + (1,)


def stretch_factor(result, alpha, override=False):
    """Dominant root of Theta valuated at ``alpha``."""
    alpha = tuple(alpha)
    if not override:
        from .norms import fibered_face
        face = fibered_face(result.theta, loop_class(result))
        if not face.contains(alpha):
            raise ValueError(f"class {alpha} is outside the fibered cone")
    return largest_root(valuate(result.theta, alpha))


def canonical_theta(result):
    return canonical_unit_form(result.theta)
