"""Topology of the fibers in the fibered cone of a braid's mapping torus.

The 3-manifold is the complement of the braid closure together with the
braid axis.  A class c pairs with the linking matrix A to give, on each
boundary torus j, the curve (a_j, b_j) = ((cA)_j, c_j); the fiber meets that
torus in gcd(a_j, b_j) parallel curves of slope (a_j, b_j)/gcd.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
import json

import numpy as np

from .automaton import canonical
from .burau import BraidWord, alexander_polynomial
from .norms import thurston_norm_on_cone
from .teich import eta_sequence, loop_permutation, perm_cycles, teichmuller_polynomial
from .track import prong_letter


@dataclass
class LinkData:
    components: list          # strand orbits (tuples of start positions) then "axis"
    A: np.ndarray             # linking numbers
    B: np.ndarray             # identity

    @property
    def size(self):
        return len(self.components)

    def names(self):
        out = []
        for c in self.components:
            out.append("axis" if c == "axis" else "T" + "".join(prong_letter(i) for i in c))
        return out


def linking_data(word):
    """Strand orbits of the closure plus the axis, with pairwise linking numbers.

    Lk between two orbits is half the signed count of crossings between their
    strands; an orbit links the axis once per strand.
    """
    perm = word.permutation()
    orbits = perm_cycles(perm)
    orbit_of = {s: k for k, c in enumerate(orbits) for s in c}
    m = len(orbits)
    twice = np.zeros((m + 1, m + 1), dtype=np.int64)
    pos = list(range(word.strands))
    for i, s in word.letters:
        x, y = orbit_of[pos[i - 1]], orbit_of[pos[i]]
        if x != y:
            twice[x, y] += s
            twice[y, x] += s
        pos[i - 1], pos[i] = pos[i], pos[i - 1]
    if (twice % 2).any():
        raise ValueError("odd crossing count between orbits")
    A = twice // 2
    for k, c in enumerate(orbits):
        A[k, m] = A[m, k] = len(c)
    return LinkData(list(orbits) + ["axis"], A, np.eye(m + 1, dtype=np.int64))


def boundary_components(data, alpha):
    """Per torus: (count, slope (p, q)) with a = cA and b = cB."""
    c = np.array([int(x) for x in alpha], dtype=np.int64)
    if len(c) != data.size:
        raise ValueError(f"class {tuple(alpha)} needs {data.size} coordinates")
    a, b = c @ data.A, c @ data.B
    out = []
    for j in range(data.size):
        aj, bj = int(a[j]), int(b[j])
        if aj == 0 and bj == 0:
            raise ValueError(f"class {tuple(alpha)} does not meet torus {data.names()[j]}")
        g = gcd(aj, bj)
        out.append((g, (aj // g, bj // g)))
    return out


def singular_orbit_slopes(loop, axis_slope=(1, 0)):
    """Per orbit torus (p_s, q_s): rotation exponents summed over the cycle, over 1.

    The axis torus gets ``axis_slope``.
    """
    final = eta_sequence(loop)[-1]
    out = []
    for cyc in perm_cycles(loop_permutation(loop)):
        out.append((sum(final[i][1] for i in cyc), 1))
    out.append(tuple(axis_slope))
    return out


def outer_cusps(track):
    return sum(k for kind, k in track.cusp_census() if kind == "outer")


@dataclass
class InteriorOrbit:
    polygons: tuple           # polygon labels along the orbit
    sides: int
    period: int
    rotation: int


def puncture_interior(loop):
    """Orbits of the interior polygons under the loop.

    End polygons are matched to start polygons through the canonical form, and
    the rotation is the shift of the first-met corner.  Each orbit is a closed
    singular orbit of the suspension flow with ``sides`` prongs.
    """
    c0 = canonical(loop.start)[0]
    c1 = canonical(loop.end)[0]
    if not c0.polygons:
        return []
    back = {c1.polygons[j][0]: c0.polygons[j][0] for j in range(len(c0.polygons))}
    sides = dict(c0.polygons)
    seen, out = set(), []
    for lab, _ in c0.polygons:
        if lab in seen:
            continue
        cyc, x = [], lab
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = back[x]
        out.append(InteriorOrbit(tuple(cyc), sides[lab], len(cyc), 0))
    return out


def prong_report(link, alpha, orbit_slopes, prong_base):
    """Per torus: list of prong counts (one per boundary component)."""
    out = []
    for (count, (p, q)), (ps, qs), k in zip(boundary_components(link, alpha), orbit_slopes, prong_base):
        prongs = k * abs(ps * q - qs * p)
        if prongs == 0:
            raise ValueError("zero prong count: boundary slope equals the singular slope")
        out.append((count, prongs))
    return out


def genus(alpha, norm_value, total_boundary):
    twice = norm_value - total_boundary + 2
    if twice % 2:
        raise ValueError(f"parity violation at {tuple(alpha)}: norm {norm_value}, boundary {total_boundary}")
    return twice // 2


@dataclass
class FiberReport:
    cls: tuple
    tori: list                # names
    boundary: list            # per torus (count, (p, q))
    prongs: list              # per torus (count, prongs)
    interior: list            # per interior orbit (points, prongs)
    norm: int
    genus: int
    components: int           # number of connected pieces of the fiber (gcd of the class)
    component_genus: int
    euler_ok: bool
    slopes: list = field(default_factory=list)

    @property
    def total_boundary(self):
        return sum(c for c, _ in self.boundary)

    def euler_sum(self):
        return (sum(c * (2 - p) for c, p in self.prongs)
                + sum(c * (2 - p) for c, p in self.interior))

    def to_dict(self):
        return {
            "class": list(self.cls),
            "tori": [{"name": n, "components": c, "slope": f"{p}/{q}", "singular_slope": f"{ps}/{qs}",
                      "prongs": pr}
                     for n, (c, (p, q)), (_, pr), (ps, qs)
                     in zip(self.tori, self.boundary, self.prongs, self.slopes)],
            "interior": [{"points": c, "prongs": p} for c, p in self.interior],
            "total_boundary": self.total_boundary,
            "norm": self.norm,
            "genus": self.genus,
            "components": self.components,
            "component_genus": self.component_genus,
            "euler_sum": self.euler_sum(),
            "euler_ok": self.euler_ok,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def text(self):
        lines = [f"class {self.cls}: norm {self.norm}, genus {self.genus}, "
                 f"boundary {self.total_boundary}, components {self.components}"]
        for n, (c, (p, q)), (_, pr) in zip(self.tori, self.boundary, self.prongs):
            lines.append(f"  {n}: {c} x slope {p}/{q}, {pr}-prong")
        for c, p in self.interior:
            lines.append(f"  interior: {c} x {p}-prong")
        lines.append(f"  Euler-Poincare: 4-4g = {4 - 4 * self.genus}, sum(2-p) = {self.euler_sum()}"
                     f" -> {'ok' if self.euler_ok else 'FAIL'}")
        return "\n".join(lines)


def fiber_report(loop, alpha, slope_override=None, norm_value=None, theta=None):
    """Full fiber topology for the class ``alpha`` = (orbit coordinates..., axis coordinate).

    The Thurston norm comes from the Alexander polynomial when the braid
    permutation is one cycle and otherwise from the Teichmüller polynomial,
    which is only valid without interior polygons.  ``slope_override`` maps a
    torus name (or index) to a singular slope (p, q).
    """
    alpha = tuple(int(a) for a in alpha)
    word = BraidWord.from_ints(loop.braid, loop.start.n)
    link = linking_data(word)
    names = link.names()
    slopes = singular_orbit_slopes(loop)
    for key, val in (slope_override or {}).items():
        j = names.index(key) if isinstance(key, str) else int(key)
        slopes[j] = tuple(val)
    base = [1] * (link.size - 1) + [outer_cusps(loop.start)]
    boundary = boundary_components(link, alpha)
    prongs = prong_report(link, alpha, slopes, base)

    interior = []
    for orb in puncture_interior(loop):
        # the orbit links the axis once per period; its linking with the
        # closure is not tracked, so only classes vanishing there are supported
        if any(alpha[:-1]):
            raise ValueError("interior orbit linking with the closure is unavailable; "
                             "use a class supported on the axis or a slope override")
        pts = abs(alpha[-1]) * orb.period
        if pts:
            interior.append((pts, orb.sides))

    if norm_value is None:
        if len(link.components) == 2:
            norm_value = thurston_norm_on_cone(alexander_polynomial(word), alpha)
        else:
            if interior:
                raise ValueError("Thurston norm needs the Alexander polynomial for this braid")
            if theta is None:
                theta = teichmuller_polynomial(loop, override=True).theta
            norm_value = thurston_norm_on_cone(theta, alpha, kind="teichmuller")
    total = sum(c for c, _ in boundary)
    g = genus(alpha, norm_value, total)
    k = 0
    for a in alpha:
        k = gcd(k, a)
    comp_g = genus(alpha, norm_value // k, total // k) if norm_value % k == 0 and total % k == 0 else None
    rep = FiberReport(alpha, names, boundary, prongs, interior, norm_value, g, k, comp_g, False, slopes)
    rep.euler_ok = rep.euler_sum() == 4 - 4 * g
    return rep
