"""JSON encoding of lattices, packings, tilings and reports.

Scalars: ints stay ints, other rationals become "p/q" strings, a + b sqrt 3
with b != 0 becomes the pair ["a", "b"], floats stay floats.  Decoding
inverts this exactly.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .cyclotomic import CycloInt, QuadExt
from .lattice import Lattice2
from .packing import TorusPacking
from .tilings.core import CYCLO_DIRECTIONS, CYCLO_OPPOSITE, Tiling

_QUAD = re.compile(r"^(?P<a>[+-]?[0-9./]+)?(?:(?P<sign>[+-]?)(?P<b>[0-9./]*)\*?sqrt3)?$")


class FormatError(ValueError):
    """Malformed input document."""


def _rational_out(q: Fraction):
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def encode_scalar(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return _rational_out(x)
    if isinstance(x, QuadExt):
        if x.b == 0:
            return _rational_out(x.a)
        return [str(x.a), str(x.b)]
    raise TypeError(f"cannot encode {x!r}")


def decode_scalar(x):
    """Inverse of :func:`encode_scalar`; exact values come back as QuadExt."""
    try:
        if isinstance(x, bool):
            raise TypeError
        if isinstance(x, int):
            return QuadExt(x)
        if isinstance(x, float):
            return x
        if isinstance(x, str):
            return QuadExt(Fraction(x))
        if isinstance(x, list) and len(x) == 2:
            return QuadExt(Fraction(str(x[0])), Fraction(str(x[1])))
    except (TypeError, ValueError, ZeroDivisionError):
        pass
    raise FormatError(f"not a scalar: {x!r}")


def parse_quad(text: str) -> QuadExt | float:
    """Parse '1/7', '0.25', '4/7*sqrt3' or '1/2-3/4*sqrt3'."""
    m = _QUAD.match(text.replace(" ", ""))
    if m is None or not (m["a"] or m["b"] is not None):
        raise FormatError(f"cannot parse number {text!r}")
    a, b = m["a"], m["b"]
    try:
        if b is None:
            return float(a) if "." in a else QuadExt(Fraction(a))
        if a and not m["sign"] and not b:  # a bare coefficient such as '4/7*sqrt3'
            return QuadExt(0, Fraction(a))
        bq = Fraction(b) if b else Fraction(1)
        return QuadExt(Fraction(a) if a else 0, -bq if m["sign"] == "-" else bq)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"cannot parse number {text!r}") from None


# -- lattices and packings ------------------------------------------------------------


def lattice_to_json(l: Lattice2) -> dict:
    out = {"g1": [encode_scalar(c) for c in l.g1], "g2": [encode_scalar(c) for c in l.g2]}
    if l.cyclo is not None:
        out["cyclo"] = [list(z.coeffs) for z in l.cyclo]
    return out


def lattice_from_json(d: dict) -> Lattice2:
    try:
        if "cyclo" in d:
            z1, z2 = (CycloInt.from_seq(z) for z in d["cyclo"])
            l = Lattice2.from_cyclo(z1, z2)
            if "g1" in d and (lattice_from_json({"g1": d["g1"], "g2": d["g2"]}).basis() != l.basis()):
                raise FormatError("cyclo form disagrees with g1/g2")
            return l
        return Lattice2(tuple(decode_scalar(c) for c in d["g1"]),
                        tuple(decode_scalar(c) for c in d["g2"]))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad lattice: {exc}") from None


def packing_to_json(p: TorusPacking, **meta) -> dict:
    out = {
        "lattice": lattice_to_json(p.lattice),
        "radius": encode_scalar(p.radius),
        "centers": [[encode_scalar(u), encode_scalar(v)] for u, v in p.centers],
        "labels": list(p.labels),
    }
    if meta:
        out["meta"] = meta
    return out


def packing_from_json(d: dict) -> TorusPacking:
    try:
        l = lattice_from_json(d["lattice"])
        centers = tuple((decode_scalar(u), decode_scalar(v)) for u, v in d["centers"])
        return TorusPacking(l, centers, decode_scalar(d["radius"]), tuple(d.get("labels", ())))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad packing: {exc}") from None


# -- tilings -----------------------------------------------------------------------------


def tiling_to_json(t: Tiling) -> dict:
    """Faces are stored as [[vertex, direction], ...] walks; "face_vertices"
    repeats them as plain index lists."""
    out = {
        "lattice": lattice_to_json(t.lattice),
        "edges": [[i, j, d] for i, j, d, _ in t.edges],
        "faces": [[[v, d] for v, d in t.face_walk(f)] for f in range(len(t.faces))],
        "face_vertices": [t.face_vertices(f) for f in range(len(t.faces))],
    }
    if t.is_cyclotomic:
        out["vertices"] = [list(z.coeffs) for z in t.cyclo]
    else:
        out["points"] = [[encode_scalar(c) for c in p] for p in t.points]
        out["directions"] = [[encode_scalar(c) for c in v] for v in t.directions]
        out["opposite"] = list(t.opposite)
    return out


def tiling_from_json(d: dict) -> Tiling:
    try:
        l = lattice_from_json(d["lattice"])
        faces_in = d["faces"]
        if "vertices" in d:
            verts = [CycloInt.from_seq(v) for v in d["vertices"]]
            faces = [(verts[f[0][0]], tuple(k for _, k in f)) for f in faces_in]
            t = Tiling.build(l, faces, CYCLO_DIRECTIONS, CYCLO_OPPOSITE, vertices=verts, cyclotomic=True)
        else:
            pts = [tuple(decode_scalar(c) for c in p) for p in d["points"]]
            dirs = tuple(tuple(decode_scalar(c) for c in v) for v in d["directions"])
            faces = [(pts[f[0][0]], tuple(k for _, k in f)) for f in faces_in]
            t = Tiling.build(l, faces, dirs, tuple(d["opposite"]), vertices=pts)
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"bad tiling: {exc}") from None
    if "edges" in d and sorted(map(list, d["edges"])) != sorted([i, j, k] for i, j, k, _ in t.edges):
        raise FormatError("edge list disagrees with the faces")
    return t


# -- documents ------------------------------------------------------------------------------


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True)


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("top-level JSON value must be an object")
    return doc


def load_any(doc: dict):
    """A packing or a tiling, told apart by their keys."""
    if "faces" in doc:
        return tiling_from_json(doc)
    if "centers" in doc:
        return packing_from_json(doc)
    raise FormatError("document is neither a packing nor a tiling")


def manifest_to_json(n: int, lattice: Lattice2, cfg, records) -> dict:
    best = max(records, key=lambda r: (r.density, -r.seed))
    return {
        "n": n,
        "lattice": lattice_to_json(lattice),
        "config": {"max_iters": cfg.max_iters, "step_cap": cfg.step_cap,
                   "convergence_tol": cfg.convergence_tol, "activation": cfg.activation,
                   "snap_denominator": cfg.snap_denominator},
        "runs": [r.manifest_entry() for r in records],
        "best": {"seed": best.seed, "density": best.density},
    }
