"""Command-line front end.

Exit codes: 0 success, 1 verified negative (no minor, failed check),
2 a search cap was exceeded, 3 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bounds, io
from .certificates import verify_certificate
from .constructions import (
    bicircular_plus,
    clique,
    complete_graph,
    copies_of_u12,
    is_b_clique,
    projective_geometry,
    uniform,
    vandermonde,
)
from .covering import find_minors, tau, udensity_extract
from .matroid import MatroidError, SizeLimitError, is_isomorphic, simplify
from .perturb import apply_shift, dist_exact, pipe_contract, shifted, validate_shift

EXIT_OK, EXIT_NEGATIVE, EXIT_CAP, EXIT_INVALID = 0, 1, 2, 3


class InvalidInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INVALID)


def _labels(text):
    if text is None:
        return None
    return [x for x in (p.strip() for p in text.split(",")) if x]


def _emit(obj, out):
    text = io.dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _say(msg):
    print(msg)


# ----------------------------------------------------------------- verbs


def cmd_construct(args):
    fam, p = args.family, args.params
    need = {"uniform": 2, "pg": 2, "clique": 1, "vandermonde": 2, "u12": 1, "bicircular-plus": 1}
    if fam not in need:
        raise InvalidInput(f"unknown family {fam!r}; known: {', '.join(need)}")
    if len(p) != need[fam]:
        raise InvalidInput(f"{fam} takes {need[fam]} integer parameter(s)")
    if fam == "uniform":
        M = uniform(p[0], p[1])
    elif fam == "pg":
        M = projective_geometry(p[0], p[1])
    elif fam == "clique":
        M, B = clique(p[0])
        if not args.output:
            print("frame:", ",".join(sorted(B)), file=sys.stderr)
    elif fam == "vandermonde":
        M = vandermonde(p[0], p[1])
    elif fam == "u12":
        M = copies_of_u12(p[0])
    else:
        M, _ = bicircular_plus(complete_graph(p[0]))
    _emit(M, args.output)
    return EXIT_OK


def cmd_rank(args):
    M = io.load_matroid(args.matroid)
    S = _labels(args.set)
    _say(M.rank(S) if S is not None else M.r)
    return EXIT_OK


def cmd_tau(args):
    M = io.load_matroid(args.matroid)
    value, fam = tau(M, args.a, args.cap)
    _say(value)
    if args.output:
        _emit(fam, args.output)
    return EXIT_OK


def cmd_minor(args):
    M = io.load_matroid(args.matroid)
    N = io.load_matroid(args.target)
    cert = next(find_minors(M, N, args.cap), None)
    if cert is None:
        _say("no minor")
        return EXIT_NEGATIVE
    _emit(cert, args.output)
    return EXIT_OK


def cmd_extract(args):
    from . import triangular as tr

    M = io.load_matroid(args.matroid)
    A, B = _labels(args.basisA), _labels(args.basisB)
    kind = args.kind
    if kind == "udensity":
        if B is None:
            raise InvalidInput("udensity needs --basisB (the basis B)")
        res = udensity_extract(M, B, args.a, args.b)
        _emit(res, args.output)
        return EXIT_OK
    if kind == "trivial":
        res = tr.decompose_trivial(M, args.s)
    else:
        if A is None or B is None:
            raise InvalidInput(f"{kind} needs --basisA and --basisB")
        if kind == "triangularone":
            res = tr.extract_triangularone(M, A, B, args.s, args.t)
        elif kind == "triangulartwo":
            res = tr.extract_triangulartwo(M, tr.TriangularPair(tuple(A), tuple(B)), args.s, args.t)
        elif kind == "selfdual":
            res = tr.extract_selfdual(M, A, B, args.s, args.t)
        else:
            raise InvalidInput(f"unknown extractor {kind!r}")
    if args.certificate_only:
        if res.certificate is None:
            _say(f"no certificate (outcome {res.outcome})")
            return EXIT_NEGATIVE
        _emit(res.certificate, args.output)
    else:
        _emit(res, args.output)
    return EXIT_NEGATIVE if res.outcome == "failed" else EXIT_OK


def cmd_decompose_clique(args):
    from .structure import spanning_clique_decompose

    M = io.load_matroid(args.matroid)
    res = spanning_clique_decompose(M, _labels(args.frame), args.s, args.n, args.x_cap, args.check_minors)
    _emit(res, args.output)
    return EXIT_OK


def cmd_decompose_geometry(args):
    from .structure import spanning_geometry_decompose

    M = io.load_matroid(args.matroid)
    R = _labels(args.restriction) or list(M.ground)
    res = spanning_geometry_decompose(M, R, args.q, args.k_cap)
    _emit(res, args.output)
    return EXIT_OK


def cmd_dist(args):
    M = io.load_matroid(args.first)
    N = io.load_matroid(args.second)
    res = dist_exact(M, N, args.cap)
    if res.d is None:
        _say(f"> {args.cap}")
        return EXIT_CAP
    _say(res.d)
    if args.output:
        _emit(res.path, args.output)
    return EXIT_OK


def cmd_shift(args):
    M = io.load_matroid(args.matroid)
    doc = io.load(args.shift)
    if doc["type"] != "shift":
        raise InvalidInput("expected a shift document")
    sh = io.shift_from_dict(doc)
    ok, msg = validate_shift(M, sh)
    if not ok:
        _say(f"invalid shift: {msg}")
        return EXIT_NEGATIVE
    Mhat, path = apply_shift(M, sh)
    _emit(Mhat, args.output)
    if args.path:
        _emit(path, args.path)
    return EXIT_OK


def _verify_doc(doc, M, args):
    kind = doc["type"]
    if kind == "certificate":
        cert = io.certificate_from_dict(doc)
        if args.target:
            N = io.load_matroid(args.target)
        elif cert.target is not None:
            N = cert.target
        else:
            return False, "certificate has no target; pass --target"
        v = verify_certificate(M, N, cert)
        return v.ok, "certificate verifies" if v.ok else v.message
    if kind == "extraction":
        if "certificate" not in doc:
            return doc["outcome"] != "failed", f"outcome {doc['outcome']} without certificate"
        cert = io.certificate_from_dict(doc["certificate"])
        v = verify_certificate(M, cert.target, cert)
        return v.ok, "certificate verifies" if v.ok else v.message
    if kind == "cover":
        from .covering import CoverFamily

        fam = CoverFamily([frozenset(p) for p in doc["parts"]], doc["a"])
        return fam.validate(M), f"cover of {len(fam)} parts"
    if kind == "path":
        path = io.path_from_dict(doc)
        ok, msg = path.validate()
        if ok and not path.connects(M, path.end):
            return False, "path does not start at the given matroid"
        if ok and args.target:
            N = io.load_matroid(args.target)
            if not path.connects(M, N):
                return False, "path does not end at the target"
        return ok, msg if not ok else f"path of length {len(path)} validates"
    if kind == "clique_decomposition":
        sh = io.shift_from_dict(doc["shift"])
        N = pipe_contract(M, doc["C1"])
        ok, msg = validate_shift(N, sh)
        if not ok:
            return False, msg
        Mhat = shifted(N, sh.psi)
        if not is_b_clique(Mhat, doc["frame"]):
            return False, "result is not a clique on the frame"
        path = io.path_from_dict(doc["path"])
        ok, msg = path.validate()
        if not ok:
            return False, msg
        if not path.connects(M, Mhat):
            return False, "path does not connect M to the result"
        if len(path) > 7 * len(doc["X"]):
            return False, "path longer than 7|X|"
        return True, f"decomposition verifies (path length {len(path)})"
    if kind == "geometry_decomposition":
        sh = io.shift_from_dict(doc["shift"])
        ok, msg = validate_shift(M, sh)
        if not ok:
            return False, msg
        Mhat = shifted(M, sh.psi)
        si, _ = simplify(Mhat)
        if args.q is None:
            return False, "geometry verification needs -q"
        if is_isomorphic(si, projective_geometry(M.r, args.q), cap=max(16, si.n)) is None:
            return False, "simplified result is not a projective geometry"
        path = io.path_from_dict(doc["path"])
        ok, msg = path.validate()
        if not ok:
            return False, msg
        if not path.connects(M, Mhat):
            return False, "path does not connect M to the result"
        if len(path) > 4 * len(doc["C"]):
            return False, "path longer than 4|C|"
        return True, f"decomposition verifies (path length {len(path)})"
    return False, f"cannot verify documents of type {kind!r}"


def cmd_verify(args):
    doc = io.load(args.artifact)
    M = io.load_matroid(args.matroid)
    ok, msg = _verify_doc(doc, M, args)
    _say(("ok: " if ok else "FAILED: ") + msg)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_bounds(args):
    name, raw = args.name, list(args.params)
    if name == "eval":
        if not raw:
            raise InvalidInput("bounds eval needs a bound name")
        name, raw = raw[0], raw[1:]
    try:
        params = [int(x) for x in raw]
    except ValueError:
        raise InvalidInput("bound parameters must be integers") from None
    value = bounds.evaluate(name, *params, cap=args.cap)
    _say(bounds.render(value))
    return EXIT_OK


def cmd_corpus(args):
    from .corpus import typed_corpus

    os.makedirs(args.outdir, exist_ok=True)
    index = []
    for i, e in enumerate(typed_corpus(args.seed)):
        fname = f"{i:02d}.json"
        io.save(e.matroid, os.path.join(args.outdir, fname))
        index.append({"file": fname, "name": e.name, "kind": e.kind, "n": e.matroid.n, "r": e.matroid.r})
    with open(os.path.join(args.outdir, "index.json"), "w") as fh:
        json.dump({"format": io.FORMAT, "type": "corpus", "seed": args.seed, "entries": index}, fh, indent=1)
        fh.write("\n")
    _say(f"wrote {len(index)} matroids to {args.outdir}")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    from .corpus import DEFAULT_SEED

    p = _Parser(prog="matstruct", description="Matroid structure toolkit")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("construct", help="build a standard matroid")
    s.add_argument("family", help="uniform R N | pg N Q | clique N | vandermonde S Q | u12 T | bicircular-plus N")
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_construct)

    s = sub.add_parser("rank", help="rank of the matroid or of a subset")
    s.add_argument("matroid")
    s.add_argument("--set", help="comma-separated labels")
    s.set_defaults(fn=cmd_rank)

    s = sub.add_parser("tau", help="a-covering number")
    s.add_argument("matroid")
    s.add_argument("-a", type=int, default=1)
    s.add_argument("--cap", type=int, default=20)
    s.add_argument("-o", "--output", help="write the minimum cover")
    s.set_defaults(fn=cmd_tau)

    s = sub.add_parser("minor", help="exhaustive minor search")
    s.add_argument("matroid")
    s.add_argument("target")
    s.add_argument("--cap", type=int, default=18)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_minor)

    s = sub.add_parser("extract", help="run a certificate-producing extractor")
    s.add_argument("kind", choices=["udensity", "triangularone", "triangulartwo", "selfdual", "trivial"])
    s.add_argument("matroid")
    s.add_argument("--basisA")
    s.add_argument("--basisB")
    s.add_argument("-s", type=int, default=2)
    s.add_argument("-t", type=int, default=1)
    s.add_argument("-a", type=int, default=1)
    s.add_argument("-b", type=int, default=3)
    s.add_argument("--certificate-only", action="store_true", help="write only the minor certificate")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_extract)

    s = sub.add_parser("decompose-clique", help="spanning clique decomposition")
    s.add_argument("matroid")
    s.add_argument("--frame", required=True)
    s.add_argument("-s", type=int, default=2)
    s.add_argument("-n", type=int, default=3)
    s.add_argument("--x-cap", type=int, default=8)
    s.add_argument("--check-minors", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_decompose_clique)

    s = sub.add_parser("decompose-geometry", help="spanning projective geometry decomposition")
    s.add_argument("matroid")
    s.add_argument("--restriction", help="labels of the projective geometry (default: all)")
    s.add_argument("-q", type=int, required=True)
    s.add_argument("--k-cap", type=int, default=3)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_decompose_geometry)

    s = sub.add_parser("dist", help="exact perturbation distance")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--cap", type=int, default=3)
    s.add_argument("-o", "--output", help="write the shortest path")
    s.set_defaults(fn=cmd_dist)

    s = sub.add_parser("shift", help="apply a shift document")
    s.add_argument("matroid")
    s.add_argument("shift")
    s.add_argument("-o", "--output")
    s.add_argument("--path", help="write the perturbation path here")
    s.set_defaults(fn=cmd_shift)

    s = sub.add_parser("verify", help="independently re-check an artifact")
    s.add_argument("artifact")
    s.add_argument("matroid")
    s.add_argument("--target", help="target matroid for certificates and paths")
    s.add_argument("-q", type=int, help="field size for geometry decompositions")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("bounds", help="evaluate a bound formula")
    s.add_argument("name", help="one of: " + ", ".join(sorted(bounds.REGISTRY)) + " (an optional leading 'eval' is accepted)")
    s.add_argument("params", nargs="*")
    s.add_argument("--cap", type=int, default=bounds.DIGIT_CAP)
    s.set_defaults(fn=cmd_bounds)

    s = sub.add_parser("corpus", help="write the seeded test corpus")
    s.add_argument("outdir")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.set_defaults(fn=cmd_corpus)
    return p


def main(argv=None) -> int:
    from .structure import NotFound

    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except NotFound as exc:
        print(f"cap exceeded: {exc}; residual: {', '.join(sorted(exc.residual))}", file=sys.stderr)
        return EXIT_CAP
    except SizeLimitError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        transcript = getattr(exc, "transcript", None)
        if transcript:
            print(json.dumps(io._plain(transcript)), file=sys.stderr)
        return EXIT_CAP
    except (InvalidInput, MatroidError, bounds.BoundError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
