"""JSON reading and writing for matroids, certificates, paths and decompositions.

Every top-level document carries ``"format": "matstruct/1"`` and a
``"type"`` field.  Matroids are stored by kind:

* ``uniform``: ``rank``, ``ground``
* ``linear``: ``q``, ``polynomial`` (constant term first), ``ground``,
  ``rows`` (the matrix, one integer list per row)
* ``graphic``: ``vertices``, ``edges`` as ``[label, u, v]``
* ``bicircular_plus``: ``vertices``, ``edges``, ``vertex_labels``
* ``bases``: ``ground``, ``bases``

Any other matroid (minors, shifts, tables) is written in ``bases`` form.
"""

from __future__ import annotations

import json

import numpy as np

from .certificates import MinorCertificate
from .covering import CoverFamily
from .gf import GF, FieldError
from .matroid import (
    BasesMatroid,
    BicircularPlusMatroid,
    GraphicMatroid,
    LinearMatroid,
    Matroid,
    MatroidError,
    UniformMatroid,
    bases,
    freeze,
    minor,
)
from .perturb import LOOP, PerturbationPath, ShiftMap, Step
from .triangular import Extraction, TriangularPair

FORMAT = "matstruct/1"


class SchemaError(MatroidError):
    pass


def _need(d: dict, key: str, where: str):
    if key not in d:
        raise SchemaError(f"{where}: missing field {key!r}")
    return d[key]


def _plain(x):
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(y) for y in x)
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


# ---------------------------------------------------------------- matroids


def matroid_to_dict(M: Matroid) -> dict:
    if isinstance(M, UniformMatroid):
        return {"kind": "uniform", "rank": M.rank_bound, "ground": list(M.ground)}
    if isinstance(M, LinearMatroid):
        return {
            "kind": "linear",
            "q": M.field.q,
            "polynomial": list(M.field.polynomial),
            "ground": list(M.ground),
            "rows": M.vectors.T.tolist() if M.n else [],
            "dim": M.dim,
        }
    if isinstance(M, BicircularPlusMatroid):
        return {
            "kind": "bicircular_plus",
            "vertices": list(M.vertices),
            "edges": [list(e) for e in M.graph_edges],
            "vertex_labels": dict(M.vertex_labels),
        }
    if isinstance(M, GraphicMatroid):
        return {"kind": "graphic", "vertices": list(M.vertices), "edges": [list(e) for e in M.edges]}
    if isinstance(M, BasesMatroid):
        return {"kind": "bases", "ground": list(M.ground), "bases": [M.ordered(b) for b in M.bases]}
    return {"kind": "bases", "ground": list(M.ground), "bases": [M.ordered(b) for b in sorted(bases(M), key=M.mask)]}


def matroid_from_dict(d: dict) -> Matroid:
    if not isinstance(d, dict):
        raise SchemaError("matroid: expected an object")
    kind = _need(d, "kind", "matroid")
    try:
        if kind == "uniform":
            return UniformMatroid(int(_need(d, "rank", kind)), _need(d, "ground", kind))
        if kind == "linear":
            q = int(_need(d, "q", kind))
            ground = _need(d, "ground", kind)
            rows = _need(d, "rows", kind)
            poly = d.get("polynomial")
            fld = GF(q, tuple(poly)) if poly else GF(q)
            dim = len(rows) if rows else int(d.get("dim", 0))
            cols = [[int(rows[j][i]) for j in range(len(rows))] for i in range(len(ground))]
            if any(len(r) != len(ground) for r in rows):
                raise SchemaError("linear: every row needs one entry per ground element")
            V = np.array(cols, dtype=np.int64).reshape(len(ground), dim)
            return LinearMatroid(fld, V, ground)
        if kind == "graphic":
            return GraphicMatroid(_need(d, "vertices", kind), [tuple(e) for e in _need(d, "edges", kind)])
        if kind == "bicircular_plus":
            return BicircularPlusMatroid(
                _need(d, "vertices", kind), [tuple(e) for e in _need(d, "edges", kind)], d.get("vertex_labels")
            )
        if kind == "bases":
            return BasesMatroid(_need(d, "ground", kind), _need(d, "bases", kind))
    except FieldError as exc:
        raise SchemaError(f"{kind}: {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, MatroidError):
            raise
        raise SchemaError(f"{kind}: {exc}") from None
    raise SchemaError(f"unknown matroid kind {kind!r}")


# ------------------------------------------------------------ certificates


def certificate_to_dict(cert: MinorCertificate) -> dict:
    out = {
        "contract": sorted(cert.contract),
        "delete": sorted(cert.delete),
        "image": {k: cert.image[k] for k in sorted(cert.image)},
    }
    if cert.target is not None:
        out["target"] = matroid_to_dict(cert.target)
    return out


def certificate_from_dict(d: dict) -> MinorCertificate:
    target = d.get("target")
    return MinorCertificate(
        frozenset(_need(d, "contract", "certificate")),
        frozenset(_need(d, "delete", "certificate")),
        dict(_need(d, "image", "certificate")),
        matroid_from_dict(target) if target is not None else None,
    )


# ------------------------------------------------------------------- paths


def path_to_dict(path: PerturbationPath) -> dict:
    return {
        "start": matroid_to_dict(path.start),
        "steps": [{"kind": s.kind, "label": s.label, "witness": matroid_to_dict(s.witness)} for s in path.steps],
    }


def path_from_dict(d: dict) -> PerturbationPath:
    start = matroid_from_dict(_need(d, "start", "path"))
    steps = []
    for s in _need(d, "steps", "path"):
        kind = _need(s, "kind", "step")
        if kind not in ("projection", "lift"):
            raise SchemaError(f"step: unknown kind {kind!r}")
        W = matroid_from_dict(_need(s, "witness", "step"))
        e = _need(s, "label", "step")
        after = freeze(minor(W, {e}, ()) if kind == "projection" else minor(W, (), {e}))
        steps.append(Step(kind, W, e, after))
    return PerturbationPath(start, steps)


def shift_to_dict(shift: ShiftMap) -> dict:
    return {"psi": {k: shift.psi[k] for k in sorted(shift.psi)}, "witness": sorted(shift.witness)}


def shift_from_dict(d: dict) -> ShiftMap:
    psi = {k: (LOOP if v is None else v) for k, v in _need(d, "psi", "shift").items()}
    return ShiftMap(psi, frozenset(_need(d, "witness", "shift")))


# ------------------------------------------------------------- documents


def _doc(kind: str, body: dict) -> dict:
    return {"format": FORMAT, "type": kind, **body}


def to_document(obj) -> dict:
    """Wrap a result object in a versioned top-level document."""
    from .structure import CliqueDecomposition, GeometryDecomposition

    if isinstance(obj, Matroid):
        return _doc("matroid", matroid_to_dict(obj))
    if isinstance(obj, MinorCertificate):
        return _doc("certificate", certificate_to_dict(obj))
    if isinstance(obj, PerturbationPath):
        return _doc("path", path_to_dict(obj))
    if isinstance(obj, ShiftMap):
        return _doc("shift", shift_to_dict(obj))
    if isinstance(obj, CoverFamily):
        return _doc("cover", {"a": obj.a, "parts": [sorted(p) for p in obj.parts]})
    if isinstance(obj, Extraction):
        body = {
            "outcome": obj.outcome,
            "method": obj.method,
            "transcript": _plain(obj.transcript),
            "failed_step": obj.failed_step,
            "removed": obj.removed,
        }
        if obj.certificate is not None:
            body["certificate"] = certificate_to_dict(obj.certificate)
        if obj.pair is not None:
            body["pair"] = {"a": list(obj.pair.a), "b": list(obj.pair.b), "orientation": obj.pair.orientation}
        return _doc("extraction", body)
    if isinstance(obj, CliqueDecomposition):
        body = {k: sorted(getattr(obj, k)) for k in ("X", "B1", "B2", "B3", "W0", "W1", "W2", "C1", "C2", "frame")}
        body.update(shift=shift_to_dict(obj.shift), path=path_to_dict(obj.path), transcript=_plain(obj.transcript))
        return _doc("clique_decomposition", body)
    if isinstance(obj, GeometryDecomposition):
        body = {"C": sorted(obj.C), "skew_set": sorted(obj.skew_set), "shift": shift_to_dict(obj.shift),
                "path": path_to_dict(obj.path)}
        return _doc("geometry_decomposition", body)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_document(obj), indent=1, sort_keys=True) + "\n"


def save(obj, path: str):
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    fmt = doc.get("format")
    if fmt != FORMAT:
        raise SchemaError(f"unsupported format {fmt!r}, expected {FORMAT!r}")
    _need(doc, "type", "document")
    return doc


def load(path: str) -> dict:
    with open(path) as fh:
        return loads(fh.read())


def load_matroid(path: str) -> Matroid:
    doc = load(path)
    if doc["type"] != "matroid":
        raise SchemaError(f"{path}: expected a matroid document, got {doc['type']!r}")
    return matroid_from_dict(doc)


def pair_from_dict(d: dict) -> TriangularPair:
    return TriangularPair(tuple(d["a"]), tuple(d["b"]), d.get("orientation", "upper"))
