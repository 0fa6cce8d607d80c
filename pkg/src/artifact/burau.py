"""Reduced Burau representation and the single-variable Alexander polynomial."""

from dataclasses import dataclass
from functools import lru_cache
import re

from .ring import LaurentPoly, PolyMatrix, canonical_unit_form, char_poly, same_up_to_unit, spectral_radius, valuate

T = ("t",)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple           # ((i, sign), ...) meaning sigma_i^sign

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("need at least one strand")
        for i, s in self.letters:
            if not 1 <= i <= self.strands - 1 or s not in (1, -1):
                raise ValueError(f"bad letter sigma_{i}^{s} for {self.strands} strands")

    @classmethod
    def parse(cls, text, strands):
        """Whitespace or comma separated signed generator indices, e.g. "-1 2"."""
        tokens = [x for x in re.split(r"[\s,]+", text.strip()) if x]
        letters = []
        for tok in tokens:
            if not re.fullmatch(r"[+-]?\d+", tok) or int(tok) == 0:
                raise ValueError(f"bad braid letter {tok!r}")
            k = int(tok)
            letters.append((abs(k), 1 if k > 0 else -1))
        return cls(strands, tuple(letters))

    @classmethod
    def from_ints(cls, word, strands):
        return cls(strands, tuple((abs(k), 1 if k > 0 else -1) for k in word))

    def ints(self):
        return tuple(i * s for i, s in self.letters)

    def __str__(self):
        return " ".join(str(k) for k in self.ints()) or "1"

    def __mul__(self, other):
        if self.strands != other.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self):
        return BraidWord(self.strands, tuple((i, -s) for i, s in reversed(self.letters)))

    def permutation(self):
        """perm[k] = final position of the strand starting at position k (0-based)."""
        pos = list(range(self.strands))       # pos[p] = strand currently at position p
        for i, _ in self.letters:
            pos[i - 1], pos[i] = pos[i], pos[i - 1]
        perm = [0] * self.strands
        for p, strand in enumerate(pos):
            perm[strand] = p
        return perm

    def cycles(self):
        perm = self.permutation()
        seen, out = set(), []
        for i in range(self.strands):
            if i in seen:
                continue
            c, j = [], i
            while j not in seen:
                seen.add(j)
                c.append(j)
                j = perm[j]
            out.append(tuple(c))
        return out


@lru_cache(maxsize=None)
def generator_matrix(n, i, sign):
    """Reduced Burau image of sigma_i^sign in dimension n-1."""
    d = n - 1
    t = LaurentPoly.var("t", T)
    ti = LaurentPoly.monomial((-1,), 1, T)
    rows = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
    k = i - 1
    if sign > 0:
        rows[k][k] = -t
        if k > 0:
            rows[k][k - 1] = t
        if k < d - 1:
            rows[k][k + 1] = 1
    else:
        rows[k][k] = -ti
        if k > 0:
            rows[k][k - 1] = 1
        if k < d - 1:
            rows[k][k + 1] = ti
    return PolyMatrix(rows, T)


def reduced_burau(word):
    """Product of generator images in word order (left to right)."""
    n = word.strands
    if n < 2:
        raise ValueError("reduced Burau needs at least two strands")
    M = PolyMatrix.identity(n - 1, T)
    for i, s in word.letters:
        M = M @ generator_matrix(n, i, s)
    return M


def alexander_polynomial(word):
    """Canonical form of det(u Id - reduced Burau) for a braid whose
    permutation is a single cycle."""
    if len(word.cycles()) != 1:
        raise ValueError("Alexander polynomial is only supported when the strand permutation is one cycle")
    return canonical_unit_form(char_poly(reduced_burau(word), "u"))


def homological_dilatation(delta, alpha):
    """Spectral radius of the Alexander polynomial valuated at ``alpha``.

    Roots here need not be real, so this is the largest modulus.
    """
    q = valuate(delta, alpha)
    if len(q.terms) < 2:
        raise ValueError("valuated polynomial is a monomial; no dilatation")
    return spectral_radius(q)


def _negate_variable(q):
    return LaurentPoly({e: c * (-1) ** e[0] for e, c in q.terms.items()}, q.names)


def orientability_test(theta, delta, alpha, rel_tol=1e-9):
    """Compare homological dilatation with the stretch factor at ``alpha``.

    ``parity`` records whether delta(-X) equals theta(X) up to a unit after
    valuation, which forces orientability when it holds.
    """
    from .ring import largest_root
    stretch = largest_root(valuate(theta, alpha))
    hom = homological_dilatation(delta, alpha)
    orientable = abs(hom - stretch) < rel_tol * stretch
    pt, pd = valuate(theta, alpha), valuate(delta, alpha)
    parity = same_up_to_unit(_negate_variable(pd), pt) or same_up_to_unit(pd, pt)
    return {"result": "orientable" if orientable else "non_orientable",
            "homological": hom, "stretch": stretch, "parity_rule": parity}
