"""Decorated folding automaton: vertices are standard labeled tracks, edges
are folds followed by standardization (plus optional whole rotations).

A move is described independently of labels as ``"<switch>:<i>><j>"``
(fold germ i onto germ j at the switch, germs counted left to right) or as
``"rot+"`` / ``"rot-"``.  Replaying the same descriptors from a relabeled
track gives the lifted path.
"""

from collections import deque
from dataclasses import dataclass, field
import json

import numpy as np

from .track import (FoldSpec, TrainTrack, corner_switch, fold, fold_matrix, legal_folds,
                    parse_switch, prong_letter, rotate, standardize, validate)


# canonical forms

def canonical(track):
    """Renumber interior polygons and their corners by a walk of the outer face.

    Returns (canonical track, shape key, labeled key, edge order) where the
    edge order lists real labels by first traversal.
    """
    outer = track.outer_face()
    start = outer.index(("p0", ("i", ("p", 0), 0, 0)))
    walk = outer[start:] + outer[:start]
    poly_rank, poly_offset, edge_order = {}, {}, []
    for s, d in walk:
        kind, j, c = parse_switch(s)
        if kind == "g" and j not in poly_rank:
            poly_rank[j] = len(poly_rank)
            poly_offset[j] = c
        if d[0] == "r" and d[1] not in edge_order:
            edge_order.append(d[1])

    def ren(s):
        kind, j, c = parse_switch(s)
        if kind == "p":
            return s
        k = track.polygons[j][1]
        return corner_switch(poly_rank[j], (c - poly_offset[j]) % k)

    polygons = [None] * len(track.polygons)
    for j, p in enumerate(track.polygons):
        polygons[poly_rank[j]] = p
    canon = TrainTrack.build(track.n, [(lab, ren(a), ren(b)) for lab, a, b in track.edges],
                             {ren(s): g for s, g in track.germs}, polygons)
    idx = {lab: i for i, lab in enumerate(edge_order)}
    shape = (canon.n, tuple(k for _, k in canon.polygons),
             tuple((s, tuple(idx[lab] for lab in g)) for s, g in canon.germs))
    labeled = shape + (tuple(edge_order), tuple(lab for lab, _ in canon.polygons))
    return canon, shape, labeled, edge_order


def shape_key(track):
    return canonical(track)[1]


def key_string(key):
    return json.dumps(key, separators=(",", ":"))


# moves

def parse_move(text):
    text = text.strip()
    if text in ("rot+", "rot-"):
        return ("rot", 1 if text == "rot+" else -1)
    s, rest = text.split(":")
    i, j = rest.split(">")
    return (s, int(i), int(j))


def format_move(desc):
    if desc[0] == "rot":
        return "rot+" if desc[1] > 0 else "rot-"
    s, i, j = desc
    return f"{s}:{i}>{j}"


def spec_of(track, desc):
    s, i, j = desc
    reals = track.reals_at(s)
    return FoldSpec(reals[i], reals[j], s)


def desc_of(track, spec):
    reals = track.reals_at(spec.shared_vertex)
    return (spec.shared_vertex, reals.index(spec.from_edge), reals.index(spec.onto_edge))


@dataclass
class DecoratedMove:
    source: int
    target: int
    desc: tuple
    fold: object                 # FoldSpec, or ("rot", sign)
    braid: tuple
    pi: tuple                    # per new position: (old prong letter, rotation)
    v: dict                      # real label -> (prong letter, sign); absent means 1
    matrix: np.ndarray
    labels: tuple
    case: int = 0                # 0 standard, 1 or 2 per the decoration rule, 3 rotation
    tie_break: bool = False
    source_track: TrainTrack = field(default=None, repr=False)
    target_track: TrainTrack = field(default=None, repr=False)

    def v_text(self):
        out = []
        for lab in self.labels:
            if lab in self.v:
                x, e = self.v[lab]
                out.append(f"{x}{'+' if e > 0 else '-'}")
            else:
                out.append("1")
        return "(" + ",".join(out) + ")"

    def pi_text(self):
        out = []
        for x, r in self.pi:
            out.append(x + ("" if r == 0 else f"{r:+d}"))
        return "(" + ",".join(out) + ")"

    def braid_text(self):
        return " ".join(str(g) for g in self.braid)

    def label(self):
        if isinstance(self.fold, FoldSpec):
            name = f"F_{self.fold.from_edge}{self.fold.onto_edge}@{self.fold.shared_vertex}"
        else:
            name = format_move(self.fold)
        return f"{name} braid[{self.braid_text()}] pi{self.pi_text()} v{self.v_text()}"


def decorate(track, spec, st, labels=None):
    """Decoration vector and case for a fold of a standard track.

    ``st`` is the standardization of the folded track.  The wrapped puncture
    X is the one that moves; S collects the punctures it passes.  N is the
    part of the track cut off by the folded edge on the side of S.
    """
    labels = tuple(labels or track.labels)
    if st.moved is None:
        return {}, 0
    m, l = st.moved, st.new_position
    sign = 1 if l < m else -1
    passed = range(l, m) if l < m else range(m + 1, l + 1)
    S = [("p", i) for i in passed]
    nodes, edges = track.component(S, skip=spec.from_edge)
    # every passed puncture must lie on the same side of the folded edge
    other_nodes, _ = track.component([S[0]], skip=spec.from_edge)
    if any(s not in other_nodes for s in S):
        raise ValueError("ambiguous decoration: passed punctures on both sides of the folded edge")
    letter = prong_letter(m)
    if spec.onto_edge in edges:
        chosen, case = set(edges), 2
    else:
        chosen, case = set(edges) | {spec.from_edge}, 1
    return {lab: (letter, sign) for lab in labels if lab in chosen}, case


def pi_letters(pi):
    return tuple((prong_letter(old), rot) for old, rot in pi)


def make_move(track, desc, labels=None):
    """Apply one move descriptor to a standard track; returns (DecoratedMove, new track)."""
    labels = tuple(labels or track.labels)
    track = canonical(track)[0]
    if desc[0] == "rot":
        st = rotate(track, desc[1])
        letter = prong_letter(st.moved)
        v = {lab: (letter, desc[1]) for lab in labels}
        mat = np.eye(len(labels), dtype=np.int64)
        mv = DecoratedMove(None, None, desc, desc, st.braid, pi_letters(st.pi), v, mat,
                           labels, 3, False, track, st.track)
        return mv, st.track
    spec = spec_of(track, desc)
    folded, ok = fold(track, spec)
    if not ok:
        raise ValueError(f"fold {spec} is obstructed")
    st = standardize(folded)
    v, case = decorate(track, spec, st, labels)
    mat = fold_matrix(spec, track, list(labels))
    mv = DecoratedMove(None, None, desc, spec, st.braid, pi_letters(st.pi), v, mat,
                       labels, case, st.tie_break, track, st.track)
    return mv, st.track


@dataclass
class Automaton:
    seed: TrainTrack
    vertices: list               # canonical tracks, index = id
    keys: list
    edges: list                  # DecoratedMove
    complete: bool = True
    rotations: bool = False

    @property
    def labels(self):
        return tuple(self.seed.labels)

    def out_edges(self, vid):
        return [e for e in self.edges if e.source == vid]

    def vertex_id(self, track):
        key = canonical(track)[2]
        return self.keys.index(key)

    def shape_of(self, vid):
        return self.keys[vid][:3]

    def to_dict(self):
        return {
            "complete": self.complete,
            "vertices": [{"id": i, "track": t.to_dict()} for i, t in enumerate(self.vertices)],
            "edges": [{"source": e.source, "target": e.target, "move": format_move(e.desc),
                       "label": e.label(), "braid": list(e.braid),
                       "pi": [[x, r] for x, r in e.pi], "v": e.v_text(), "case": e.case,
                       "tie_break": e.tie_break}
                      for e in self.edges],
        }

    def to_dot(self):
        lines = ["digraph automaton {"]
        for i in range(len(self.vertices)):
            lines.append(f'  v{i} [label="{i}"];')
        for e in self.edges:
            lines.append(f'  v{e.source} -> v{e.target} [label="{e.label()}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def moves_from(track, rotations=False):
    descs = [desc_of(track, spec) for spec in legal_folds(track)]
    if rotations:
        descs += [("rot", 1), ("rot", -1)]
    return descs


def build(seed, max_vertices=500, max_depth=None, rotations=False):
    """Breadth-first closure of ``seed`` under folds (and rotations if asked)."""
    problems = validate(seed)
    if problems:
        raise ValueError("invalid seed: " + problems[0])
    if not seed.is_standard():
        raise ValueError("seed track is not standard")
    labels = tuple(seed.labels)
    seed_c, _, seed_key, _ = canonical(seed)
    tracks = {seed_key: seed_c}
    depth = {seed_key: 0}
    order = [seed_key]
    raw_edges = []
    queue = deque([seed_key])
    complete = True
    while queue:
        key = queue.popleft()
        if max_depth is not None and depth[key] >= max_depth:
            if moves_from(tracks[key], rotations):
                complete = False
            continue
        track = tracks[key]
        for desc in moves_from(track, rotations):
            mv, new = make_move(track, desc, labels)
            new_c, _, new_key, _ = canonical(new)
            if new_key not in tracks:
                if len(tracks) >= max_vertices:
                    complete = False
                    continue
                tracks[new_key] = new_c
                depth[new_key] = depth[key] + 1
                order.append(new_key)
                queue.append(new_key)
            raw_edges.append((key, new_key, mv))
    # seed first, the rest sorted by serialization
    rest = sorted(order[1:], key=key_string)
    keys = [seed_key] + rest
    ids = {k: i for i, k in enumerate(keys)}
    edges = []
    for src, dst, mv in raw_edges:
        if src in ids and dst in ids:
            mv.source, mv.target = ids[src], ids[dst]
            edges.append(mv)
    edges.sort(key=lambda e: (e.source, format_move(e.desc)))
    return Automaton(seed_c, [tracks[k] for k in keys], keys, edges, complete, rotations)


# loops

@dataclass
class AutomatonLoop:
    moves: list
    start: TrainTrack
    end: TrainTrack
    relabel: dict                # label at the end -> label at the start
    labels: tuple

    @property
    def descs(self):
        return [m.desc for m in self.moves]

    @property
    def braid(self):
        """Word of the represented braid: words of the moves in reverse order."""
        word = []
        for m in reversed(self.moves):
            word.extend(m.braid)
        return tuple(word)

    def integer_matrix(self):
        M = np.eye(len(self.labels), dtype=object)
        for m in self.moves:
            M = M.dot(m.matrix.astype(object))
        return M.dot(relabel_matrix(self).astype(object))

    def describe(self):
        return " ".join(format_move(d) for d in self.descs)


def relabel_of(start, end):
    """Map end labels to start labels through the common canonical shape."""
    c0, s0, _, order0 = canonical(start)
    c1, s1, _, order1 = canonical(end)
    if s0 != s1:
        raise ValueError("loop does not close: end shape differs from start shape")
    rel = dict(zip(order1, order0))
    if sorted(rel) != sorted(rel.values()):
        raise ValueError("labels are not a bijection")
    return rel


def run_path(start, descs, labels=None):
    """Replay move descriptors from ``start``; returns an AutomatonLoop (closure checked)."""
    labels = tuple(labels or start.labels)
    track = start
    moves = []
    for d in descs:
        mv, track = make_move(track, d, labels)
        moves.append(mv)
    return AutomatonLoop(moves, start, track, relabel_of(start, track), labels)


def relabel_matrix(loop):
    """R[alpha, beta] = 1 iff the relabeling sends alpha to beta."""
    labels = list(loop.labels)
    idx = {lab: i for i, lab in enumerate(labels)}
    R = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for a, b in loop.relabel.items():
        R[idx[a], idx[b]] = 1
    if not (R.sum(axis=0) == 1).all() or not (R.sum(axis=1) == 1).all():
        raise ValueError("relabeling is not a permutation")
    return R


def repeat(loop, times):
    """The loop traversed ``times`` times, lifted through the relabelings."""
    return run_path(loop.start, loop.descs * times, loop.labels)


def _min_rotation(seq):
    k = len(seq)
    return min(tuple(seq[i:] + seq[:i]) for i in range(k))


def loops(a, max_len):
    """Closed paths of length <= max_len up to rotation, one lift per class.

    A path closes when it comes back to a vertex with the start's shape
    (labels may differ; the difference is the relabeling).
    """
    shape = [a.shape_of(i) for i in range(len(a.vertices))]
    found = {}
    out = []
    for start in range(len(a.vertices)):
        stack = [(start, [])]
        while stack:
            v, path = stack.pop()
            if path and shape[v] == shape[start]:
                cyc = [(shape[e.source], e.desc) for e in path]
                key = _min_rotation([key_string(c) for c in cyc])
                if key not in found:
                    found[key] = True
                    out.append(run_path(a.vertices[start], [e.desc for e in path], a.labels))
            if len(path) < max_len:
                for e in reversed(a.out_edges(v)):
                    stack.append((e.target, path + [e]))
    out.sort(key=lambda lp: (len(lp.moves), lp.describe()))
    return out



# built-in seeds and loops

def seed_b3():
    """Two edges a: p0-p1, b: p1-p2 meeting at p1."""
    return TrainTrack.build(3, [("a", "p0", "p1"), ("b", "p1", "p2")],
                            {"p0": ["a"], "p1": ["a", "b"], "p2": ["b"]})


def seed_b4():
    """Four punctures, one trigon: a: p0-p1, b: p1-trigon, c: p2-trigon, d: trigon-p3."""
    return TrainTrack.build(
        4,
        [("a", "p0", "p1"), ("b", "p1", "g0.1"), ("c", "p2", "g0.2"), ("d", "g0.0", "p3")],
        {"p0": ["a"], "p1": ["a", "b"], "p2": ["c"], "p3": ["d"],
         "g0.0": ["d"], "g0.1": ["b"], "g0.2": ["c"]},
        [("P", 3)])


def seed_family(n):
    """Seed for the family delta_n delta_3 sigma_1 on n+4 strands (n >= 1).

    a1: p0-p2 on the outside, a2: p0-p1, and a3 .. a_{n+3} fan out of p2
    to p3 .. p_{n+3}.
    """
    if n < 1:
        raise ValueError("family index must be >= 1")
    k = n + 4
    edges = [("a1", "p0", "p2"), ("a2", "p0", "p1")]
    germs = {"p0": ["a1", "a2"], "p1": ["a2"]}
    fan = []
    for j in range(3, n + 4):
        edges.append((f"a{j}", "p2", f"p{j}"))
        germs[f"p{j}"] = [f"a{j}"]
        fan.append(f"a{j}")
    germs["p2"] = ["a1"] + fan[::-1]
    return TrainTrack.build(k, edges, germs)


B3_LETTER_MOVES = {2: ("p1", 0, 1), -1: ("p1", 1, 0)}


def b3_loop(word):
    """Loop in the one-vertex B3 automaton for a word in sigma_2 and sigma_1^-1.

    The braid of a loop reads its moves from last to first.
    """
    descs = []
    for g in reversed(list(word)):
        if g not in B3_LETTER_MOVES:
            raise ValueError("B3 words must use only 2 and -1")
        descs.append(B3_LETTER_MOVES[g])
    return run_path(seed_b3(), descs)


def b4_loop():
    """Three-move loop for sigma_1^-1 sigma_2 sigma_3 in B4."""
    return run_path(seed_b4(), [("p1", 0, 1), ("g0.0", 0, 1), ("p1", 1, 0)])


def family_loop(n):
    """Loop realizing the family braid: fold a1 onto a2, then fold a_{n+3},
    ..., a_4 onto a1 in turn, then rotate every puncture one step right.
    """
    seed = seed_family(n)
    descs = [("p0", 0, 1)]
    _, track = make_move(seed, descs[0])
    for j in range(n + 3, 3, -1):
        track = canonical(track)[0]
        specs = [s for s in legal_folds(track) if s.from_edge == f"a{j}" and s.onto_edge == "a1"]
        if len(specs) != 1:
            raise RuntimeError(f"expected one fold of a{j} onto a1, found {len(specs)}")
        descs.append(desc_of(track, specs[0]))
        _, track = make_move(track, descs[-1])
    descs.append(("rot", -1))
    return run_path(seed, descs)


def mirror(track):
    """Reflection in a vertical line: positions reversed, germ orders reversed."""
    n = track.n

    def ref(s):
        kind, i, c = parse_switch(s)
        if kind != "p":
            raise ValueError("mirror is only implemented for tracks without polygons")
        return f"p{n - 1 - i}"

    return TrainTrack.build(n, [(lab, ref(a), ref(b)) for lab, a, b in track.edges],
                            {ref(s): list(g)[::-1] for s, g in track.germs})


def basic_type_fixtures():
    """Small tracks realizing local fold configurations, with the fold to apply.

    A.1.1: e nested under f at their common left end, g arching over both.
    B.1.1: e and f chained left to right, g arching over the chain.
    B.2 and A.4 are the first two folds of the B4 loop (a trigon replaces the vertex).
    """
    a11 = TrainTrack.build(4, [("g", "p0", "p3"), ("f", "p1", "p3"), ("e", "p1", "p2")],
                           {"p0": ["g"], "p1": ["f", "e"], "p2": ["e"], "p3": ["f", "g"]})
    b11 = TrainTrack.build(4, [("g", "p0", "p3"), ("e", "p0", "p1"), ("f", "p1", "p2")],
                           {"p0": ["g", "e"], "p1": ["e", "f"], "p2": ["f"], "p3": ["g"]})
    _, tau2 = make_move(seed_b4(), ("p1", 0, 1))
    tau2 = canonical(tau2)[0]
    return {
        "A.1.1": (a11, FoldSpec("e", "f", "p1")),
        "A.1.1r": (mirror(a11), FoldSpec("e", "f", "p2")),
        "B.1.1": (b11, FoldSpec("e", "f", "p1")),
        "B.1.1r": (mirror(b11), FoldSpec("e", "f", "p2")),
        "B.2": (seed_b4(), FoldSpec("a", "b", "p1")),
        "A.4": (tau2, FoldSpec("a", "d", "g0.0")),
    }
