"""Standard train tracks on the punctured disc as ribbon graphs.

A track is a tree of infinitesimal polygons joined by real edges.  Every
puncture sits inside a monogon whose single switch is on the axis; interior
k-gons (k >= 3) have one switch per corner.  Switch names:

    "p<i>"     monogon around the puncture at position i (0-based)
    "g<j>.<c>" corner c of interior polygon j (corners numbered ccw)

At each switch the real germs are stored in clockwise order, which for a
puncture switch is left to right.  The full clockwise rotation at corner c
is ``reals + [side toward c-1, side toward c+1]``.

The only non-standard tracks handled are the ones produced by a fold that
wraps an edge once around a puncture; those carry a ``below`` flag
``(edge, puncture)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import json
import string

import numpy as np

LETTERS = string.ascii_uppercase


def prong_letter(i):
    if i >= len(LETTERS):
        raise ValueError("at most 26 punctures are supported")
    return LETTERS[i]


def puncture_switch(i):
    return f"p{i}"


def corner_switch(j, c):
    return f"g{j}.{c}"


def parse_switch(s):
    """("p", i, 0) or ("g", j, c)."""
    if s.startswith("p"):
        return ("p", int(s[1:]), 0)
    j, c = s[1:].split(".")
    return ("g", int(j), int(c))


@dataclass(frozen=True)
class FoldSpec:
    from_edge: str
    onto_edge: str
    shared_vertex: str


@dataclass(frozen=True)
class TrainTrack:
    n: int
    edges: tuple            # ((label, switch, switch), ...)
    germs: tuple            # ((switch, (label, ...)), ...) clockwise order
    polygons: tuple = ()    # ((label, sides), ...)
    below: tuple = ()       # ((edge label, puncture position), ...)
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    # construction helpers

    @classmethod
    def build(cls, n, edges, germs, polygons=(), below=()):
        edges = tuple(sorted((lab,) + tuple(sorted((a, b))) for lab, a, b in edges))
        germs = tuple(sorted((s, tuple(g)) for s, g in dict(germs).items()))
        return cls(n, edges, germs, tuple(tuple(p) for p in polygons), tuple(below))

    def with_changes(self, edges=None, germs=None, polygons=None, below=None):
        return TrainTrack.build(
            self.n,
            self.edges if edges is None else edges,
            dict(self.germs) if germs is None else germs,
            self.polygons if polygons is None else polygons,
            self.below if below is None else below,
        )

    # lookups

    @property
    def edge_map(self):
        if "edge_map" not in self._cache:
            self._cache["edge_map"] = {lab: (a, b) for lab, a, b in self.edges}
        return self._cache["edge_map"]

    @property
    def germ_map(self):
        if "germ_map" not in self._cache:
            self._cache["germ_map"] = dict(self.germs)
        return self._cache["germ_map"]

    @property
    def labels(self):
        return sorted(self.edge_map)

    @property
    def prong_labels(self):
        return [prong_letter(i) for i in range(self.n)]

    def sides(self, node):
        """Number of sides of the polygon around a node ("p", i) or ("g", j)."""
        kind, idx = node
        return 1 if kind == "p" else self.polygons[idx][1]

    def switches(self):
        out = [puncture_switch(i) for i in range(self.n)]
        for j, (_, k) in enumerate(self.polygons):
            out += [corner_switch(j, c) for c in range(k)]
        return out

    def reals_at(self, s):
        return list(self.germ_map.get(s, ()))

    def other_end(self, label, s):
        a, b = self.edge_map[label]
        if a == s:
            return b
        if b == s:
            return a
        raise ValueError(f"edge {label} does not end at {s}")

    @staticmethod
    def node_of(s):
        kind, i, _ = parse_switch(s)
        return (kind, i)

    def corner_shift(self, s, step):
        kind, j, c = parse_switch(s)
        if kind == "p":
            return s
        k = self.polygons[j][1]
        return corner_switch(j, (c + step) % k)

    def is_standard(self):
        return not self.below and self.outer_order() == list(range(self.n))

    # ribbon structure

    def _node_switch(self, node, c):
        return puncture_switch(node[1]) if node[0] == "p" else corner_switch(node[1], c)

    def rotation(self, s):
        """Clockwise cyclic list of darts at switch ``s``.

        Darts are ("r", label) or ("i", node, side, end) where infinitesimal
        side j joins corner j (end 0) to corner j+1 (end 1).
        """
        kind, j, c = parse_switch(s)
        node = (kind, j)
        k = self.sides(node)
        reals = [("r", lab) for lab in self.reals_at(s)]
        return reals + [("i", node, (c - 1) % k, 1), ("i", node, c, 0)]

    def twin(self, dart, s):
        """The other end of ``dart`` (seen at ``s``) and its switch."""
        if dart[0] == "r":
            return dart, self.other_end(dart[1], s)
        _, node, side, end = dart
        k = self.sides(node)
        corner = (side + 1 - end) % k
        return ("i", node, side, 1 - end), self._node_switch(node, corner)

    def faces(self):
        """Faces of the ribbon graph as lists of (switch, leaving dart)."""
        if "faces" in self._cache:
            return self._cache["faces"]
        rot = {s: self.rotation(s) for s in self.switches()}
        seen = set()
        faces = []
        for s in rot:
            for d in rot[s]:
                if (s, d) in seen:
                    continue
                face = []
                cur_s, cur_d = s, d
                while (cur_s, cur_d) not in seen:
                    seen.add((cur_s, cur_d))
                    face.append((cur_s, cur_d))
                    arr, nxt = self.twin(cur_d, cur_s)
                    r = rot[nxt]
                    # leave by the dart counterclockwise after the arrival
                    cur_d = r[(r.index(arr) - 1) % len(r)]
                    cur_s = nxt
                faces.append(face)
        self._cache["faces"] = faces
        return faces

    def _visit_dart(self, i):
        return (puncture_switch(i), ("i", ("p", i), 0, 0))

    def outer_face(self):
        target = self._visit_dart(0)
        for f in self.faces():
            if target in f:
                return f
        raise ValueError("puncture 0 is not on any face")

    def outer_order(self):
        """Punctures in the order the outer face passes under them, from puncture 0."""
        f = self.outer_face()
        visits = {self._visit_dart(i): i for i in range(self.n)}
        seq = [visits[x] for x in f if x in visits]
        k = seq.index(0)
        return seq[k:] + seq[:k]

    def cusp_census(self):
        """Sorted list of (face kind, cusp count) for every complementary face."""
        out = []
        for f in self.faces():
            cusps = 0
            kinds = set()
            for s, d in f:
                if d[0] == "i":
                    kinds.add(d[1])
            # a cusp is a pair of consecutive real darts in the walk at one switch
            for idx, (s, d) in enumerate(f):
                prev_s, prev_d = f[idx - 1]
                arr, at = self.twin(prev_d, prev_s)
                if at == s and arr[0] == "r" and d[0] == "r":
                    cusps += 1
            if len(kinds) == 1 and all(d[0] == "i" for _, d in f):
                node = next(iter(kinds))
                out.append((node[0], self.sides(node)))
            else:
                out.append(("outer", cusps))
        return sorted(out)

    # trees

    def contracted_adjacency(self, skip=None):
        nodes = [("p", i) for i in range(self.n)] + [("g", j) for j in range(len(self.polygons))]
        adj = {v: [] for v in nodes}
        for lab, a, b in self.edges:
            if lab == skip:
                continue
            na, nb = self.node_of(a), self.node_of(b)
            adj[na].append((nb, lab))
            adj[nb].append((na, lab))
        return adj

    def component(self, start_nodes, skip=None):
        """Nodes and real edges reachable from ``start_nodes`` without ``skip``."""
        adj = self.contracted_adjacency(skip)
        seen = set(start_nodes)
        stack = list(start_nodes)
        edges = set()
        while stack:
            v = stack.pop()
            for w, lab in adj[v]:
                edges.add(lab)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen, edges

    # serialization

    def to_dict(self):
        return {
            "punctures": self.n,
            "prong_labels": self.prong_labels,
            "polygons": [{"label": lab, "sides": k} for lab, k in self.polygons],
            "edges": [{"label": lab, "kind": "real", "ends": [a, b]} for lab, a, b in self.edges]
                     + self._infinitesimal_records(),
            "ribbon": {s: list(g) for s, g in self.germs},
            "below": [list(x) for x in self.below],
        }

    def _infinitesimal_records(self):
        recs = []
        for i in range(self.n):
            s = puncture_switch(i)
            recs.append({"label": prong_letter(i), "kind": "infinitesimal", "ends": [s, s]})
        for j, (lab, k) in enumerate(self.polygons):
            for c in range(k):
                recs.append({"label": f"{lab}.{c}", "kind": "infinitesimal",
                             "ends": [corner_switch(j, c), corner_switch(j, (c + 1) % k)]})
        return recs

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        edges = [(e["label"], e["ends"][0], e["ends"][1]) for e in d["edges"] if e["kind"] == "real"]
        polygons = [(p["label"], p["sides"]) for p in d.get("polygons", [])]
        below = [tuple(x) for x in d.get("below", [])]
        return cls.build(d["punctures"], edges, d["ribbon"], polygons, below)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __str__(self):
        parts = []
        for s, g in self.germs:
            parts.append(f"{s}:[{','.join(g)}]")
        return f"TrainTrack(n={self.n}; " + " ".join(parts) + ")"


def validate(track):
    """List of diagnostics; empty iff the track satisfies every axiom checked here."""
    problems = []
    n = track.n
    if n < 1:
        return ["need at least one puncture"]
    labels = [lab for lab, _, _ in track.edges]
    if len(set(labels)) != len(labels):
        problems.append("real edge labels are not distinct")
    poly_labels = [lab for lab, _ in track.polygons]
    if len(set(poly_labels)) != len(poly_labels) or set(poly_labels) & set(LETTERS[:n]):
        problems.append("polygon labels must be distinct and differ from prong labels")
    for lab, k in track.polygons:
        if k < 3:
            problems.append(f"interior polygon {lab} has {k} sides; need at least 3")
    switches = set(track.switches())
    germ_map = track.germ_map
    for s in germ_map:
        if s not in switches:
            problems.append(f"unknown switch {s}")
    if problems:
        return problems
    ends = {}
    for lab, a, b in track.edges:
        for s in (a, b):
            if s not in switches:
                problems.append(f"edge {lab} ends at unknown switch {s}")
        if track.node_of(a) == track.node_of(b):
            problems.append(f"edge {lab} joins a polygon to itself")
        ends[lab] = sorted([a, b])
    seen = {}
    for s, g in germ_map.items():
        for lab in g:
            seen.setdefault(lab, []).append(s)
    for lab in labels:
        if sorted(seen.get(lab, [])) != ends.get(lab):
            problems.append(f"edge {lab} is not attached exactly at its two ends")
    for lab in seen:
        if lab not in ends:
            problems.append(f"germ of unknown edge {lab}")
    for s in sorted(switches):
        if len(germ_map.get(s, ())) + 2 < 3:
            problems.append(f"switch {s} has valence {len(germ_map.get(s, ())) + 2} (< 3)")
    if problems:
        return problems
    # the real edges must join the polygons into a tree
    nodes, _ = track.component([("p", 0)])
    if len(nodes) != n + len(track.polygons):
        problems.append("real edges do not connect all polygons")
    if len(labels) != n + len(track.polygons) - 1:
        problems.append("real edges contain a cycle")
    if problems:
        return problems
    faces = track.faces()
    V = len(switches)
    E = len(labels) + n + sum(k for _, k in track.polygons)
    if V - E + len(faces) != 2:
        problems.append("face traversal does not give a planar (genus 0) ribbon graph")
    if len(faces) != n + len(track.polygons) + 1:
        problems.append("wrong number of complementary faces")
    outer = track.outer_face()
    for i in range(n):
        if track._visit_dart(i) not in outer:
            problems.append(f"puncture {i} is not on the outer face")
    census = track.cusp_census()
    if ("outer", 0) in census:
        problems.append("outer face has no cusp")
    if problems:
        return problems
    if not track.below and track.outer_order() != list(range(n)):
        problems.append("punctures are not met in left-to-right order: track is not standard")
    if len(track.below) > 1:
        problems.append("more than one real edge passes below a puncture")
    return problems


def check_fold(track, spec):
    """Geometry of a fold: (v1, v2, v3, rule) or None if obstructed.

    Rule "A": e1 sits just left of e2 at v1; "B": just right.
    """
    e1, e2, v1 = spec.from_edge, spec.onto_edge, spec.shared_vertex
    reals = track.reals_at(v1)
    if e1 not in reals or e2 not in reals:
        raise ValueError(f"edges {e1}, {e2} do not both start at {v1}")
    i, j = reals.index(e1), reals.index(e2)
    if abs(i - j) != 1:
        raise ValueError(f"{e1} and {e2} do not form a cusp at {v1}")
    v2 = track.other_end(e2, v1)
    v3 = track.other_end(e1, v1)
    at_v2 = track.reals_at(v2)
    if j == i + 1:
        return (v1, v2, v3, "A") if at_v2[-1] == e2 else None
    return (v1, v2, v3, "B") if at_v2[0] == e2 else None


def fold(track, spec):
    """Fold ``spec.from_edge`` onto ``spec.onto_edge``.

    Returns ``(new_track, True)`` or ``(track, False)`` when the cusp at the
    far end of the onto-edge blocks the fold.  The folded edge keeps its label.
    When the continuation runs along an infinitesimal side the fold is carried
    on to the next corner; for a monogon this wraps the edge once around the
    puncture and the result is flagged as almost standard.
    """
    geo = check_fold(track, spec)
    if geo is None:
        return track, False
    v1, v2, v3, rule = geo
    e1 = spec.from_edge
    germs = {s: list(g) for s, g in track.germs}
    germs[v1].remove(e1)
    target = track.corner_shift(v2, -1 if rule == "A" else 1)
    if rule == "A":
        germs.setdefault(target, []).insert(0, e1)
    else:
        germs.setdefault(target, []).append(e1)
    edges = [(lab, a, b) if lab != e1 else (lab, v3, target) for lab, a, b in track.edges]
    below = ()
    kind, idx, _ = parse_switch(v2)
    if kind == "p":
        below = ((e1, idx),)
    return track.with_changes(edges=edges, germs=germs, below=below), True


def legal_folds(track):
    """All unobstructed FoldSpecs of a track, in a deterministic order."""
    out = []
    for s in track.switches():
        reals = track.reals_at(s)
        for i in range(len(reals) - 1):
            for e1, e2 in ((reals[i], reals[i + 1]), (reals[i + 1], reals[i])):
                spec = FoldSpec(e1, e2, s)
                if check_fold(track, spec) is not None:
                    out.append(spec)
    return out


def fold_matrix(spec, before, labels=None):
    """Id + E[e1, e2] over the real labels (rows: edges of the folded track)."""
    if check_fold(before, spec) is None:
        raise ValueError(f"illegal fold {spec}")
    labels = labels or before.labels
    idx = {lab: i for i, lab in enumerate(labels)}
    M = np.eye(len(labels), dtype=np.int64)
    M[idx[spec.from_edge], idx[spec.onto_edge]] += 1
    return M


@dataclass(frozen=True)
class Standardization:
    track: TrainTrack
    braid: tuple            # signed generator indices (1-based), left to right
    pi: tuple               # per new position: (old position, rotation)
    moved: int = None       # old position of the moved puncture
    new_position: int = None
    tie_break: bool = False


def standardizing_word(m, l):
    """Braid word moving the puncture at position m to position l (0-based)."""
    if l < m:
        return tuple(range(l + 1, m + 1))
    return tuple(-i for i in range(l, m, -1))


def standardize(track):
    """Return a standard track, the braid word applied and the signed permutation."""
    n = track.n
    if not track.below:
        if track.outer_order() != list(range(n)):
            raise ValueError("track is neither standard nor almost standard")
        return Standardization(track, (), tuple((i, 0) for i in range(n)))
    if len(track.below) != 1:
        raise ValueError("track is neither standard nor almost standard")
    (_, x), = track.below
    cyc = track.outer_order()
    rest_old = [i for i in range(n) if i != x]
    k = cyc.index(x)
    cyc = cyc[k:] + cyc[:k]
    # cyclic order of the other punctures must be unchanged
    others = cyc[1:]
    if others and others != rest_old[rest_old.index(others[0]):] + rest_old[:rest_old.index(others[0])]:
        raise ValueError("fold changed the order of more than one puncture")
    candidates = []
    if not others:
        candidates = [0]
    elif others[-1] == rest_old[-1] and others[0] == rest_old[0]:
        # lands between the last and first other punctures: front or back
        candidates = [0, n - 1]
    else:
        prev = others[-1]
        candidates = [rest_old.index(prev) + 1]
    candidates = [c for c in candidates if c != x]
    if not candidates:
        raise ValueError("wrapped puncture did not move; track is not almost standard")
    candidates.sort(key=lambda c: (abs(c - x), 0 if c < x else 1))
    l = candidates[0]
    order = rest_old[:l] + [x] + rest_old[l:]
    rot = 1 if l < x else -1
    pi = tuple((old, rot if old == x else 0) for old in order)
    new_track = renumber_punctures(track, order)
    return Standardization(new_track, standardizing_word(x, l), pi, x, l, len(candidates) > 1)


def renumber_punctures(track, order):
    """Put old puncture ``order[i]`` at position i; clears the ``below`` flag."""
    new_of = {old: new for new, old in enumerate(order)}

    def ren(s):
        kind, i, _ = parse_switch(s)
        return puncture_switch(new_of[i]) if kind == "p" else s

    edges = [(lab, ren(a), ren(b)) for lab, a, b in track.edges]
    germs = {ren(s): g for s, g in track.germs}
    return track.with_changes(edges=edges, germs=germs, below=())


def rotate(track, sign):
    """Braid-only move: the whole cyclic rotation of the punctures.

    sign=+1 carries the last puncture over the top to the front (ccw),
    sign=-1 carries the first one to the back.
    """
    n = track.n
    if sign > 0:
        order = [n - 1] + list(range(n - 1))
        word = standardizing_word(n - 1, 0)
        pi = tuple((old, 1 if old == n - 1 else 0) for old in order)
        moved = n - 1
    else:
        order = list(range(1, n)) + [0]
        word = standardizing_word(0, n - 1)
        pi = tuple((old, -1 if old == 0 else 0) for old in order)
        moved = 0
    new_track = renumber_punctures(track, order)
    if new_track.outer_order() != list(range(n)):
        raise ValueError("rotation did not produce a standard track")
    return Standardization(new_track, word, pi, moved, order.index(moved))


# weights

def _solve_polygon(R):
    """Side weights x with R[c] = x[c-1] + x[c] around a k-gon.

    Returns (xs, slack): for odd k the solution is unique and slack is 0;
    for even k the alternating sum of R must vanish (slack reports it) and
    the free parameter is set to the smallest value keeping every x >= 0.
    """
    k = len(R)
    sign, const = [1], [R[0] * 0]
    for c in range(1, k):
        sign.append(-sign[-1])
        const.append(R[c] - const[-1])
    a = sign[k - 1] + sign[0]
    b = R[0] - const[k - 1] - const[0]
    if a != 0:
        x0 = b / a
        return [sg * x0 + ct for sg, ct in zip(sign, const)], b * 0
    x0 = max([-ct for sg, ct in zip(sign, const) if sg > 0] + [R[0] * 0])
    return [sg * x0 + ct for sg, ct in zip(sign, const)], b


def infinitesimal_weights(track, w):
    """Solve the switch conditions for the infinitesimal edges.

    Returns a dict (node, side) -> Fraction, or None if no nonnegative
    solution exists.
    """
    out = {}
    for i in range(track.n):
        total = sum(Fraction(w[lab]) for lab in track.reals_at(puncture_switch(i)))
        out[(("p", i), 0)] = total / 2
    for j, (_, k) in enumerate(track.polygons):
        R = [sum((Fraction(w[lab]) for lab in track.reals_at(corner_switch(j, c))), Fraction(0))
             for c in range(k)]
        xs, slack = _solve_polygon(R)
        if slack != 0 or min(xs) < 0:
            return None
        for c, x in enumerate(xs):
            out[(("g", j), c)] = x
    return out


def admissible_weights(track, w):
    """True iff the real weights ``w`` are nonnegative and extend to the polygons."""
    unknown = set(w) - set(track.labels)
    if unknown:
        raise ValueError(f"unknown labels {sorted(unknown)}")
    missing = set(track.labels) - set(w)
    if missing:
        raise ValueError(f"missing labels {sorted(missing)}")
    if any(Fraction(x) < 0 for x in w.values()):
        return False
    return infinitesimal_weights(track, w) is not None


def switch_violation(track, w):
    """Largest violation of the switch conditions by float weights, relative to max weight."""
    scale = max(abs(float(x)) for x in w.values()) or 1.0
    worst = max(0.0, -min(float(x) for x in w.values()))
    for j, (_, k) in enumerate(track.polygons):
        R = [sum(float(w[lab]) for lab in track.reals_at(corner_switch(j, c))) for c in range(k)]
        xs, slack = _solve_polygon(R)
        worst = max(worst, abs(slack), -min(xs))
    return worst / scale
