"""The ``teich`` command line.

Exit codes: 0 success, 2 bad input, 3 certification failure, 4 class outside
the fibered cone.
"""

import argparse
import json
import sys

from . import automaton as au
from .burau import BraidWord, alexander_polynomial
from .fiber import fiber_report
from .norms import NormBall, fibered_face, norm
from .ring import largest_root, valuate
from .teich import CertificationError, certify_pseudo_anosov, loop_class, teichmuller_polynomial, w_text, lifted_vectors
from .track import TrainTrack

EXIT_PARSE, EXIT_CERT, EXIT_CONE = 2, 3, 4


class UsageError(Exception):
    pass


class ConeFailure(Exception):
    pass


# loop resolution

def seed_named(name):
    if name == "b3":
        return au.seed_b3()
    if name == "b4":
        return au.seed_b4()
    if name.startswith("family:"):
        return au.seed_family(int(name.split(":")[1]))
    raise UsageError(f"unknown seed {name!r}")


def builtin_seed(strands):
    if strands == 3:
        return au.seed_b3()
    if strands == 4:
        return au.seed_b4()
    if strands >= 5:
        return au.seed_family(strands - 4)
    raise UsageError("built-in seeds exist for 3 or more strands")


def load_path_file(path):
    """JSON: {"seed": "b3" | "b4" | "family:<n>" | track object, "moves": ["p1:0>1", ...]}."""
    try:
        with open(path) as fh:
            data = json.load(fh)
        seed = data["seed"]
        seed = seed_named(seed) if isinstance(seed, str) else TrainTrack.from_dict(seed)
        descs = [au.parse_move(m) for m in data["moves"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read path file {path}: {exc}") from exc
    if not descs:
        raise UsageError("path file lists no moves")
    try:
        return au.run_path(seed, descs)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"path file does not describe a closed loop: {exc}") from exc


def loop_for_braid(word):
    ints = word.ints()
    n = word.strands
    if n == 3 and ints and set(ints) <= {2, -1}:
        return au.b3_loop(ints)
    if n == 4 and ints == (-1, 2, 3):
        return au.b4_loop()
    if n >= 5:
        lp = au.family_loop(n - 4)
        if lp.braid == ints:
            return lp
    raise UsageError("no built-in loop for this braid; supply --path-file")


def resolve_loop(args):
    if bool(args.braid is not None) == bool(args.path_file):
        raise UsageError("give exactly one of --braid and --path-file")
    if args.path_file:
        return load_path_file(args.path_file)
    if args.strands is None:
        raise UsageError("--braid needs --strands")
    try:
        word = BraidWord.parse(args.braid, args.strands)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return loop_for_braid(word)


def parse_class(text, arity):
    if text is None:
        raise UsageError("--class is required")
    try:
        alpha = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise UsageError(f"bad class {text!r}") from exc
    if len(alpha) != arity:
        raise UsageError(f"class needs {arity} coordinates, got {len(alpha)}")
    return alpha


def parse_slopes(items):
    out = {}
    for item in items or []:
        try:
            torus, frac = item.split("=")
            p, q = frac.split("/")
            key = int(torus) if torus.isdigit() else torus
            out[key] = (int(p), int(q))
        except ValueError as exc:
            raise UsageError(f"bad slope override {item!r}; expected <torus>=<p>/<q>") from exc
    return out


def theta_of(loop, args):
    try:
        return teichmuller_polynomial(loop, override=args.override_certification)
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise


def check_cone(result, alpha, args):
    face = fibered_face(result.theta, loop_class(result))
    inside = face.contains(alpha)
    if not inside and not args.override_certification:
        raise ConeFailure(f"class {alpha} is outside the fibered cone")
    return inside


def emit(args, payload, text):
    print(json.dumps(payload, indent=2, sort_keys=True) if args.json else text)


# subcommands

def cmd_poly(args):
    loop = resolve_loop(args)
    r = theta_of(loop, args)
    payload = {"theta": r.theta.format(), "variables": list(r.theta.names),
               "cycles": [list(c) for c in r.tmap.cycles], "braid": list(loop.braid),
               "lifted_matrix": [[e.format() for e in row] for row in r.lifted_matrix.rows],
               "certified": r.certified}
    emit(args, payload, r.theta.format_grouped())


def cmd_eval(args):
    loop = resolve_loop(args)
    r = theta_of(loop, args)
    alpha = parse_class(args.cls, r.theta.arity)
    check_cone(r, alpha, args)
    q = valuate(r.theta, alpha)
    root = largest_root(q)
    emit(args, {"class": list(alpha), "valuation": q.format(), "dominant_root": root},
         f"{q.format(mult='')}\ndominant root {root:.12f}")


def alexander_of(loop):
    word = BraidWord.from_ints(loop.braid, loop.start.n)
    try:
        return alexander_polynomial(word)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_alexander(args):
    loop = resolve_loop(args)
    d = alexander_of(loop)
    emit(args, {"alexander": d.format()}, d.format_grouped())


def cmd_dilatation(args):
    from .burau import orientability_test
    loop = resolve_loop(args)
    r = theta_of(loop, args)
    alpha = parse_class(args.cls, r.theta.arity)
    check_cone(r, alpha, args)
    d = alexander_of(loop)
    rep = orientability_test(r.theta, d, alpha)
    rep["class"] = list(alpha)
    emit(args, rep, f"stretch factor {rep['stretch']:.12f}\n"
                    f"homological dilatation {rep['homological']:.12f}\n"
                    f"{rep['result']} (parity rule {'holds' if rep['parity_rule'] else 'does not hold'})")


def cmd_norm(args):
    loop = resolve_loop(args)
    r = theta_of(loop, args)
    alpha = parse_class(args.cls, r.theta.arity)
    face = fibered_face(r.theta, loop_class(r))
    payload = {"class": list(alpha), "teichmuller_norm": norm(face.ball, alpha),
               "face": [list(v) for v in face.vertices], "in_cone": face.contains(alpha)}
    lines = [f"teichmuller norm {payload['teichmuller_norm']}"]
    try:
        d = alexander_of(loop)
        payload["alexander_norm"] = norm(NormBall.of(d, "alexander"), alpha)
        lines.append(f"alexander norm {payload['alexander_norm']}")
    except UsageError:
        pass
    lines.append("face " + " ".join(str(tuple(v)) for v in face.vertices))
    lines.append(f"in cone {str(payload['in_cone']).lower()}")
    emit(args, payload, "\n".join(lines))


def cmd_fiber(args):
    loop = resolve_loop(args)
    r = theta_of(loop, args)
    alpha = parse_class(args.cls, r.theta.arity)
    check_cone(r, alpha, args)
    try:
        rep = fiber_report(loop, alpha, parse_slopes(args.slope_override), theta=r.theta)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    emit(args, rep.to_dict(), rep.text())


def cmd_certify(args):
    loop = resolve_loop(args)
    cert = certify_pseudo_anosov(loop)
    lines = [f"certified {str(cert.certified).lower()}", f"primitive {str(cert.primitive).lower()}"]
    if cert.primitive:
        lines.append(f"positive power {cert.power}")
        lines.append(f"PF eigenvalue {cert.eigenvalue:.12f}")
        lines.append(f"switch violation {cert.violation:.3g}")
    if cert.reason:
        lines.append(f"reason: {cert.reason}")
    lines.append("moves:")
    for mv, w in zip(loop.moves, lifted_vectors(loop)):
        lines.append(f"  {mv.label()}  w{w_text(w, loop.labels)}")
    emit(args, cert.to_dict(), "\n".join(lines))
    if not cert.certified and not args.override_certification:
        return EXIT_CERT
    return 0


def cmd_automaton(args):
    if args.path_file:
        seed = load_path_file(args.path_file).start
    elif args.strands is not None:
        seed = builtin_seed(args.strands)
    else:
        raise UsageError("give --strands or --path-file")
    a = au.build(seed, max_vertices=args.max_vertices, max_depth=args.max_depth,
                 rotations=args.rotations)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(a.to_dot())
    lines = [f"vertices {len(a.vertices)}", f"edges {len(a.edges)}",
             f"complete {str(a.complete).lower()}"]
    for e in a.edges:
        lines.append(f"  {e.source} -> {e.target}  {au.format_move(e.desc)}  {e.label()}")
    emit(args, a.to_dict(), "\n".join(lines))


COMMANDS = {
    "poly": cmd_poly, "eval": cmd_eval, "dilatation": cmd_dilatation, "alexander": cmd_alexander,
    "norm": cmd_norm, "fiber": cmd_fiber, "automaton": cmd_automaton, "certify": cmd_certify,
}


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser():
    p = Parser(prog="teich", description="Teichmüller polynomials of braids via folding automata.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--strands", type=int)
        s.add_argument("--braid")
        s.add_argument("--path-file")
        s.add_argument("--class", dest="cls")
        s.add_argument("--override-certification", action="store_true")
        s.add_argument("--json", action="store_true")
        s.add_argument("--dot")
        s.add_argument("--slope-override", action="append")
        if name == "automaton":
            s.add_argument("--max-vertices", type=int, default=500)
            s.add_argument("--max-depth", type=int)
            s.add_argument("--rotations", action="store_true")
    return p


def main(argv=None):
    try:
        args = make_parser().parse_args(argv)
        return COMMANDS[args.command](args) or 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CertificationError:
        return EXIT_CERT
    except ConeFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONE


if __name__ == "__main__":
    sys.exit(main())
