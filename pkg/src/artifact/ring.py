"""Sparse multivariate Laurent polynomials with integer coefficients.

Exponent vectors are tuples with one slot per variable.  The last variable
plays the role of the fibration variable ``u`` and is the most significant
one in the term order, followed by the others in their natural order.
"""

from fractions import Fraction
import re

import numpy as np


def term_key(exps):
    """Sort key for exponent vectors: last variable first, then the rest."""
    return (exps[-1],) + tuple(exps[:-1]) if exps else ()


class LaurentPoly:
    """Immutable sparse Laurent polynomial over the integers.

    ``terms`` maps exponent tuples to nonzero ints, ``names`` fixes the
    variables (and therefore the arity).
    """

    __slots__ = ("names", "terms", "_hash")

    def __init__(self, terms=None, names=("t", "u")):
        names = tuple(names)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != len(names):
                raise ValueError(f"exponent {e} does not match variables {names}")
            if c:
                clean[e] = clean.get(e, 0) + int(c)
                if clean[e] == 0:
                    del clean[e]
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("LaurentPoly is immutable")

    # constructors

    @classmethod
    def const(cls, c, names=("t", "u")):
        return cls({(0,) * len(names): c}, names)

    @classmethod
    def monomial(cls, exps, coef=1, names=("t", "u")):
        return cls({tuple(exps): coef}, names)

    @classmethod
    def var(cls, name, names=("t", "u")):
        names = tuple(names)
        e = [0] * len(names)
        e[names.index(name)] = 1
        return cls({tuple(e): 1}, names)

    @classmethod
    def parse(cls, text, names=None):
        """Parse ``text``; variables default to those appearing, in order seen."""
        return _Parser(text, names).parse()

    # basic queries

    @property
    def arity(self):
        return len(self.names)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_unit(self):
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def constant_value(self):
        """The integer value if the polynomial is constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            e, c = next(iter(self.terms.items()))
            if not any(e):
                return c
        return None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: term_key(kv[0]), reverse=True)

    def degree_in(self, i):
        """(min, max) exponent of variable ``i``; (0, 0) for zero."""
        if not self.terms:
            return (0, 0)
        vals = [e[i] for e in self.terms]
        return (min(vals), max(vals))

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.names != self.names:
                if other.arity != self.arity:
                    raise ValueError(f"arity mismatch: {self.names} vs {other.names}")
                raise ValueError(f"variable mismatch: {self.names} vs {other.names}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.names)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out, self.names)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_unit():
                raise ValueError("only unit monomials have Laurent inverses")
            (e, c), = self.terms.items()
            return LaurentPoly({tuple(k * x for x in e): c ** (-k)}, self.names)
        out = LaurentPoly.const(1, self.names)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.constant_value() == other
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.names, frozenset(self.terms.items()))))
        return self._hash

    # transformations

    def shift(self, exps):
        """Multiply by the monomial with exponent vector ``exps``."""
        return LaurentPoly({tuple(a + b for a, b in zip(e, exps)): c
                            for e, c in self.terms.items()}, self.names)

    def substitute(self, images, names):
        """Replace each variable by a LaurentPoly over ``names``.

        ``images`` maps a variable name to its image; unnamed variables must
        not occur.  Negative exponents require unit images.
        """
        names = tuple(names)
        out = LaurentPoly({}, names)
        one = LaurentPoly.const(1, names)
        for e, c in self.terms.items():
            m = one * c
            for name, k in zip(self.names, e):
                if k:
                    if name not in images:
                        raise ValueError(f"no image for variable {name}")
                    m = m * images[name] ** k
            out = out + m
        return out

    def evaluate(self, values):
        """Numeric value at ``values`` (a sequence, one number per variable)."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(values, e):
                term = term * x ** k
            total = total + term
        return total

    def specialize(self, values, keep):
        """Set every variable not in ``keep`` to the given integer in ``values``.

        ``values`` maps names to ints (1 or -1 are the only values that keep
        the result a Laurent polynomial with integer coefficients, which is all
        that is needed here).
        """
        keep = tuple(keep)
        out = {}
        idx = [self.names.index(k) for k in keep]
        for e, c in self.terms.items():
            coef = c
            for name, k in zip(self.names, e):
                if name not in keep:
                    v = values[name]
                    if v not in (1, -1):
                        raise ValueError("specialization values must be +-1")
                    coef *= v ** abs(k)
            ne = tuple(e[i] for i in idx)
            out[ne] = out.get(ne, 0) + coef
        return LaurentPoly(out, keep)

    def rename(self, names):
        names = tuple(names)
        if len(names) != self.arity:
            raise ValueError("arity mismatch")
        return LaurentPoly(self.terms, names)

    # text

    def _format_monomial(self, e, c, mult="*"):
        factors = []
        for name, k in zip(self.names, e):
            if k == 1:
                factors.append(name)
            elif k:
                factors.append(f"{name}^{k}")
        body = mult.join(factors)
        if not body:
            return str(abs(c))
        if abs(c) == 1:
            return body
        return f"{abs(c)}{mult}{body}"

    def format(self, mult="*"):
        """Canonical text: terms in decreasing term order."""
        if not self.terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = self._format_monomial(e, c, mult)
            if i == 0:
                parts.append(mono if c > 0 else "-" + mono)
            else:
                parts.append(("+ " if c > 0 else "- ") + mono)
        return " ".join(parts)

    def format_grouped(self):
        """Group by the last variable, e.g. ``u^2 - (1 + t + t^-1)*u + 1``."""
        if not self.terms:
            return "0"
        groups = {}
        for e, c in self.terms.items():
            groups.setdefault(e[-1], {})[e[:-1]] = c
        inner = self.names[:-1]
        last = self.names[-1]
        parts = []
        for k in sorted(groups, reverse=True):
            coef = LaurentPoly(groups[k], inner) if inner else None
            sign = 1
            if coef is None:
                c = groups[k][()]
                sign = 1 if c > 0 else -1
                cstr = str(abs(c)) if abs(c) != 1 or k == 0 else ""
            else:
                items = sorted(coef.terms.items(),
                               key=lambda kv: (sum(abs(x) for x in kv[0]), tuple(-x for x in kv[0])))
                if all(c < 0 for _, c in items):
                    sign = -1
                    items = [(e, -c) for e, c in items]
                if len(items) == 1:
                    e, c = items[0]
                    if c < 0:
                        sign, c = -sign, -c
                    cstr = LaurentPoly({e: c}, inner)._format_monomial(e, c)
                    if cstr == "1" and k != 0:
                        cstr = ""
                else:
                    cstr = "(" + LaurentPoly(dict(items), inner)._join(items) + ")"
            ustr = "" if k == 0 else (last if k == 1 else f"{last}^{k}")
            if cstr and ustr:
                body = f"{cstr}*{ustr}"
            else:
                body = cstr or ustr
            if not parts:
                parts.append(body if sign > 0 else "-" + body)
            else:
                parts.append(("+ " if sign > 0 else "- ") + body)
        return " ".join(parts)

    def _join(self, items):
        parts = []
        for i, (e, c) in enumerate(items):
            mono = self._format_monomial(e, c)
            if i == 0:
                parts.append(mono if c > 0 else "-" + mono)
            else:
                parts.append(("+ " if c > 0 else "- ") + mono)
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentPoly({self.format()!r}, names={self.names})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _Parser:
    def __init__(self, text, names):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            num, name, sym = m.groups()
            if num is not None:
                self.tokens.append(("int", int(num)))
            elif name is not None:
                self.tokens.append(("name", name))
            elif sym is not None:
                if sym not in "+-*^()":
                    raise ValueError(f"unexpected character {sym!r} in {text!r}")
                self.tokens.append(("sym", sym))
            pos = m.end()
        self.i = 0
        self.text = text
        if names is None:
            seen = []
            for kind, val in self.tokens:
                if kind == "name" and val not in seen:
                    seen.append(val)
            if "u" in seen:
                seen.remove("u")
                seen.append("u")
            names = tuple(seen)
        self.names = tuple(names)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ValueError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        sign = 1
        while self.peek() in (("sym", "+"), ("sym", "-")):
            if self.take()[1] == "-":
                sign = -sign
        p = self.factor()
        while self.peek() == ("sym", "*"):
            self.take()
            p = p * self.factor()
        return p if sign > 0 else -p

    def factor(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            sign = 1
            if self.peek() == ("sym", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "int":
                raise ValueError(f"bad exponent in {self.text!r}")
            base = base ** (sign * val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return LaurentPoly.const(val, self.names)
        if kind == "name":
            if val not in self.names:
                raise ValueError(f"unknown variable {val!r}")
            return LaurentPoly.var(val, self.names)
        if (kind, val) == ("sym", "("):
            p = self.expr()
            if self.take() != ("sym", ")"):
                raise ValueError(f"unbalanced parenthesis in {self.text!r}")
            return p
        raise ValueError(f"unexpected token {val!r} in {self.text!r}")


def poly_arith(a, b, op):
    """Exact ``a op b`` for op in add, sub, mul."""
    if a.arity != b.arity:
        raise ValueError(f"arity mismatch: {a.arity} vs {b.arity}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


class PolyMatrix:
    """Dense square matrix of LaurentPoly entries sharing one variable set."""

    def __init__(self, rows, names=("t",)):
        names = tuple(names)
        rows = [[e if isinstance(e, LaurentPoly) else LaurentPoly.const(e, names) for e in row]
                for row in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        for row in rows:
            for e in row:
                if e.names != names:
                    raise ValueError("entries must share variables")
        self.rows = rows
        self.names = names

    @property
    def dim(self):
        return len(self.rows)

    @classmethod
    def identity(cls, n, names=("t",)):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], names)

    @classmethod
    def diag(cls, entries, names=("t",)):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], names)

    @classmethod
    def from_int(cls, mat, names=("t",)):
        return cls([[int(x) for x in row] for row in mat], names)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        if self.names != other.names:
            raise ValueError("variable mismatch")
        n = self.dim
        zero = LaurentPoly({}, self.names)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a = self.rows[i][k]
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.names)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.names == other.names and self.rows == other.rows

    def specialize_to_int(self):
        """Integer matrix obtained by setting every variable to 1."""
        return np.array([[sum(e.terms.values()) for e in row] for row in self.rows], dtype=object)

    def __repr__(self):
        return "PolyMatrix([" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows) + "])"


def determinant(M):
    """Exact determinant by row expansion memoized on the set of free columns."""
    n = M.dim
    rows = M.rows
    nz = [[j for j in range(n) if rows[i][j]] for i in range(n)]
    memo = {}
    one = LaurentPoly.const(1, M.names)
    zero = LaurentPoly({}, M.names)

    def rec(i, mask):
        if i == n:
            return one
        if mask in memo:
            return memo[mask]
        acc = zero
        for j in nz[i]:
            bit = 1 << j
            if mask & bit:
                sub = rec(i + 1, mask & ~bit)
                if sub:
                    below = bin(mask & (bit - 1)).count("1")
                    term = rows[i][j] * sub
                    acc = acc - term if below & 1 else acc + term
        memo[mask] = acc
        return acc

    return rec(0, (1 << n) - 1)


def char_poly(M, var="u"):
    """det(u*Id - M) as a polynomial in M's variables plus ``var``."""
    if var in M.names:
        i = M.names.index(var)
        for row in M.rows:
            for e in row:
                if any(k[i] for k in e.terms):
                    raise ValueError(f"matrix entries already depend on {var}")
        raise ValueError(f"variable {var} already in use")
    names = M.names + (var,)
    u = LaurentPoly.var(var, names)
    rows = []
    for i, row in enumerate(M.rows):
        new = []
        for j, e in enumerate(row):
            x = -LaurentPoly({k + (0,): c for k, c in e.terms.items()}, names)
            if i == j:
                x = x + u
            new.append(x)
        rows.append(new)
    return determinant(PolyMatrix(rows, names))


def valuate(p, alpha, var="X"):
    """Pair each exponent vector with ``alpha``; result is univariate in ``var``."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != p.arity:
        raise ValueError(f"class {alpha} has wrong arity for {p.names}")
    out = {}
    for e, c in p.terms.items():
        k = sum(a * b for a, b in zip(e, alpha))
        out[(k,)] = out.get((k,), 0) + c
    return LaurentPoly(out, (var,))


def _ascending_coeffs(q):
    if q.arity != 1:
        raise ValueError("expected a univariate polynomial")
    if not q.terms:
        raise ValueError("zero polynomial")
    lo, hi = q.degree_in(0)
    coeffs = [0] * (hi - lo + 1)
    for (k,), c in q.terms.items():
        coeffs[k - lo] = c
    # a root at zero is not a root of the Laurent polynomial
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) < 2:
        raise ValueError("polynomial has no roots after shifting")
    return coeffs


def _sign_at(coeffs, x):
    """Exact sign of sum coeffs[i] x^i at a rational x."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    d = len(coeffs) - 1
    total = sum(c * num ** i * den ** (d - i) for i, c in enumerate(coeffs))
    return (total > 0) - (total < 0)


def cauchy_bound(coeffs):
    lead = abs(coeffs[-1])
    return 1 + max(Fraction(abs(c), lead) for c in coeffs[:-1])


def _bisect_largest(coeffs, estimate, tol):
    """Largest positive real root, bracketed between an estimate and the Cauchy bound."""
    hi = cauchy_bound(coeffs)
    lead = 1 if coeffs[-1] > 0 else -1
    lo = Fraction(estimate) * (1 - Fraction(1, 10 ** 6)) - Fraction(1, 10 ** 9)
    lo = max(lo, Fraction(0))
    s_lo = _sign_at(coeffs, lo)
    if s_lo == 0:
        return float(lo)
    if s_lo == lead:
        raise ValueError("dominant root has even multiplicity; no sign change to bracket")
    while hi - lo > Fraction(tol) / 4:
        mid = (lo + hi) / 2
        s = _sign_at(coeffs, mid)
        if s == 0:
            return float(mid)
        if s == lead:
            hi = mid
        else:
            lo = mid
    return float((lo + hi) / 2)


def _dominant(coeffs):
    roots = np.roots(coeffs[::-1])
    mods = np.abs(roots)
    rmax = float(mods.max())
    near = roots[mods >= rmax * (1 - 1e-9)]
    return roots, rmax, near


def largest_root(q, tol=1e-12):
    """Maximal-modulus root of ``q`` when that root is real and positive.

    The root is localized with a companion-matrix eigenvalue estimate and
    refined by exact bisection with the Cauchy bound as upper end.
    """
    coeffs = _ascending_coeffs(q)
    roots, rmax, near = _dominant(coeffs)
    real_pos = [r for r in near if abs(r.imag) <= 1e-9 * max(1.0, rmax) and r.real > 0]
    if len(real_pos) != len(near) or not real_pos:
        raise ValueError(f"dominant root of {q} is not real positive (modulus {rmax:.12g})")
    return _bisect_largest(coeffs, min(r.real for r in real_pos), tol)


def spectral_radius(q, tol=1e-12):
    """Largest modulus of a root of ``q``; refined by bisection when that root is real."""
    coeffs = _ascending_coeffs(q)
    roots, rmax, near = _dominant(coeffs)
    if all(abs(r.imag) <= 1e-9 * max(1.0, rmax) for r in near):
        if all(r.real > 0 for r in near):
            return _bisect_largest(coeffs, min(r.real for r in near), tol)
        if all(r.real < 0 for r in near):
            flipped = [c if i % 2 == 0 else -c for i, c in enumerate(coeffs)]
            return _bisect_largest(flipped, min(-r.real for r in near), tol)
    return rmax


def _affine_frame(points):
    pts = np.array(points, dtype=float)
    origin = pts[0]
    diffs = pts - origin
    if not np.any(diffs):
        return origin, np.zeros((0, pts.shape[1])), 0
    _, s, vt = np.linalg.svd(diffs)
    rank = int(np.sum(s > 1e-9 * s[0]))
    return origin, vt[:rank], rank


def newton_polytope(p):
    """Vertices of the convex hull of the exponent vectors, sorted."""
    if not p.terms:
        raise ValueError("zero polynomial has no Newton polytope")
    points = sorted(p.terms)
    if len(points) == 1:
        return points
    origin, frame, rank = _affine_frame(points)
    if rank == 0:
        return points[:1]
    coords = (np.array(points, dtype=float) - origin) @ frame.T
    if rank == 1:
        x = coords[:, 0]
        return sorted({points[int(np.argmin(x))], points[int(np.argmax(x))]})
    from scipy.spatial import ConvexHull
    hull = ConvexHull(coords)
    return sorted({points[i] for i in hull.vertices})


def canonical_unit_form(p):
    """Representative of ``p`` modulo units +-monomial.

    Every variable's minimal exponent is shifted to zero and the sign is
    chosen so the greatest term (in term order) is positive.
    """
    if not p.terms:
        raise ValueError("zero polynomial")
    mins = tuple(min(e[i] for e in p.terms) for i in range(p.arity))
    q = p.shift(tuple(-m for m in mins))
    top = max(q.terms, key=term_key)
    return -q if q.terms[top] < 0 else q


def same_up_to_unit(p, q):
    return p.names == q.names and canonical_unit_form(p) == canonical_unit_form(q)

