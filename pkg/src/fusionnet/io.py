"""JSON documents for algebras, nets, defects, sectors and 2-algebras.

Complex numbers are ``[re, im]`` pairs and matrices are row-major nested
lists of them.  Every parse error is a :class:`SchemaError` naming the JSON
path of the offending value, e.g. ``$.site.blocks[1]``.

Objects built by the parsers remember their canonical document, so
``dump_*(parse_*(doc))`` re-emits it; nets, algebras and
2-algebras are also serialized from their values directly.
"""
from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .algebra import AbstractAlgebra, AlgebraError, RepresentedAlgebra, StarHomomorphism, from_blocks, full_algebra
from .latticenet.circle import LatticeCircle
from .latticenet.defects import CompositeDefect, Defect, IdentityDefect, JunctionDefect, build_defect
from .latticenet.legalgebra import LegAlgebra, apply_on_legs
from .latticenet.nets import LatticeNet, build_orbifold_net, product_net
from .latticenet.sectors import (
    DenseSector,
    Sector,
    SectorError,
    corrupt_sector,
    direct_sum_sectors,
    fuse_sectors,
    identity_sector,
)
from .twoalgebra import TwoAlgebra

__all__ = [
    "FORMAT_VERSION",
    "SchemaError",
    "encode",
    "dumps",
    "parse_complex_matrix",
    "parse_algebra",
    "dump_algebra",
    "parse_abstract_algebra",
    "dump_abstract_algebra",
    "parse_homomorphism",
    "dump_homomorphism",
    "parse_net",
    "dump_net",
    "parse_defect",
    "dump_defect",
    "parse_sector",
    "dump_sector",
    "parse_two_algebra",
    "dump_two_algebra",
]

FORMAT_VERSION = 1
SIGNIFICANT_DIGITS = 12


class SchemaError(ValueError):
    """Input document does not match its schema."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


# -- output --------------------------------------------------------------------

def _num(x: float):
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    r = float(f"{x:.{SIGNIFICANT_DIGITS}g}")
    return 0.0 if r == 0 else r


def encode(obj: Any):
    """JSON-ready copy of ``obj``: complex entries as ``[re, im]``, floats to fixed precision."""
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return _encode_complex(obj)
        return encode(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_num(obj.real), _num(obj.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def _encode_complex(a: np.ndarray):
    if a.ndim == 0:
        return [_num(float(a.real)), _num(float(a.imag))]
    return [_encode_complex(x) for x in a]


def dumps(doc: dict) -> str:
    """Deterministic text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(encode(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def complex_array(a) -> list:
    return _encode_complex(np.asarray(a, dtype=complex))


# -- primitives ------------------------------------------------------------------

def _req(doc, key, path):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    if key not in doc:
        raise SchemaError(f"{path}.{key}", "missing required field")
    return doc[key]


def _int(x, path, minimum=None):
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(path, "expected an integer")
    if minimum is not None and x < minimum:
        raise SchemaError(path, f"must be at least {minimum}")
    return x


def _str(x, path, choices=None):
    if not isinstance(x, str):
        raise SchemaError(path, "expected a string")
    if choices is not None and x not in choices:
        raise SchemaError(path, f"expected one of {sorted(choices)}, got {x!r}")
    return x


def _list(x, path, length=None):
    if not isinstance(x, list):
        raise SchemaError(path, "expected an array")
    if length is not None and len(x) != length:
        raise SchemaError(path, f"expected {length} entries, got {len(x)}")
    return x


def parse_complex(x, path) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if (
        isinstance(x, list)
        and len(x) == 2
        and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in x)
    ):
        return complex(x[0], x[1])
    raise SchemaError(path, "expected a complex number [re, im]")


def parse_complex_vector(x, path, length=None) -> np.ndarray:
    _list(x, path, length)
    return np.array([parse_complex(v, f"{path}[{i}]") for i, v in enumerate(x)], dtype=complex)


def parse_complex_matrix(x, path, shape=None) -> np.ndarray:
    rows = _list(x, path)
    if not rows:
        raise SchemaError(path, "empty matrix")
    out = [parse_complex_vector(r, f"{path}[{i}]") for i, r in enumerate(rows)]
    width = len(out[0])
    for i, r in enumerate(out):
        if len(r) != width:
            raise SchemaError(f"{path}[{i}]", f"row has {len(r)} entries, expected {width}")
    M = np.array(out)
    if shape is not None and M.shape != tuple(shape):
        raise SchemaError(path, f"expected shape {list(shape)}, got {list(M.shape)}")
    return M


def _check_version(doc, path):
    if isinstance(doc, dict) and "format_version" in doc and doc["format_version"] != FORMAT_VERSION:
        raise SchemaError(f"{path}.format_version", f"unsupported version {doc['format_version']!r}, expected {FORMAT_VERSION}")


def _remember(obj, doc):
    try:
        obj._document = doc
    except AttributeError:
        pass
    return obj


# -- represented algebras ------------------------------------------------------------

def parse_algebra(doc, path="$") -> RepresentedAlgebra:
    """``{"blocks": [[n, m], ...], "frame"?: matrix}`` or ``{"full": d}`` or ``{"diagonal": d}``."""
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an algebra object")
    try:
        if "full" in doc:
            return full_algebra(_int(doc["full"], f"{path}.full", 1))
        if "diagonal" in doc:
            d = _int(doc["diagonal"], f"{path}.diagonal", 1)
            return from_blocks([(1, 1)] * d)
        blocks = _list(_req(doc, "blocks", path), f"{path}.blocks")
        bl = []
        for i, b in enumerate(blocks):
            p = f"{path}.blocks[{i}]"
            _list(b, p, 2)
            bl.append((_int(b[0], f"{p}[0]", 1), _int(b[1], f"{p}[1]", 1)))
        if not bl:
            raise SchemaError(f"{path}.blocks", "at least one block is required")
        if "frame" in doc:
            d = sum(n * m for n, m in bl)
            F = parse_complex_matrix(doc["frame"], f"{path}.frame", (d, d))
            return RepresentedAlgebra(F, bl)
        return from_blocks(bl)
    except AlgebraError as exc:
        raise SchemaError(path, str(exc)) from None


def dump_algebra(A: RepresentedAlgebra) -> dict:
    out = {"blocks": [list(b) for b in A.blocks]}
    if not np.array_equal(A.frame, np.eye(A.ambient_dim)):
        out["frame"] = complex_array(A.frame)
    return out


def parse_homomorphism(doc, path="$") -> StarHomomorphism:
    """``{"source": algebra, "frame": matrix, "multiplicities": [int, ...]}``."""
    src = parse_algebra(_req(doc, "source", path), f"{path}.source")
    mults = [_int(r, f"{path}.multiplicities[{i}]", 0) for i, r in enumerate(_list(_req(doc, "multiplicities", path), f"{path}.multiplicities", len(src.blocks)))]
    D = sum(n * r for (n, _), r in zip(src.blocks, mults))
    F = parse_complex_matrix(_req(doc, "frame", path), f"{path}.frame", (D, D))
    try:
        return StarHomomorphism(src, F, mults)
    except AlgebraError as exc:
        raise SchemaError(path, str(exc)) from None


def dump_homomorphism(h: StarHomomorphism) -> dict:
    return {"source": dump_algebra(h.source), "frame": complex_array(h.frame), "multiplicities": list(h.multiplicities)}


# -- abstract algebras ------------------------------------------------------------------

_NAMED = {"matrix_algebra", "diagonal", "dual_numbers", "upper_triangular"}


def parse_abstract_algebra(doc, path="$") -> AbstractAlgebra:
    """Named (``{"named": "matrix_algebra", "n": 3}``) or ``{"structure_constants", "unit"}``."""
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an abstract algebra object")
    try:
        if "named" in doc:
            name = _str(doc["named"], f"{path}.named", _NAMED)
            if name in ("matrix_algebra", "diagonal"):
                n = _int(_req(doc, "n", path), f"{path}.n", 1)
                A = getattr(AbstractAlgebra, name)(n)
            else:
                A = getattr(AbstractAlgebra, name)()
            return _remember(A, {"named": name, **({"n": doc["n"]} if "n" in doc else {})})
        c = _list(_req(doc, "structure_constants", path), f"{path}.structure_constants")
        k = len(c)
        if k == 0:
            raise SchemaError(f"{path}.structure_constants", "empty")
        arr = np.zeros((k, k, k), dtype=complex)
        for i in range(k):
            pi = f"{path}.structure_constants[{i}]"
            _list(c[i], pi, k)
            for j in range(k):
                arr[i, j] = parse_complex_vector(c[i][j], f"{pi}[{j}]", k)
        unit = parse_complex_vector(_req(doc, "unit", path), f"{path}.unit", k)
        return AbstractAlgebra(arr, unit)
    except AlgebraError as exc:
        raise SchemaError(path, str(exc)) from None


def dump_abstract_algebra(A: AbstractAlgebra) -> dict:
    doc = getattr(A, "_document", None)
    if doc is not None:
        return dict(doc)
    return {"structure_constants": complex_array(A.structure_constants), "unit": complex_array(A.unit)}


# -- nets ---------------------------------------------------------------------------------

def parse_net(doc, path="$") -> LatticeNet:
    """``{"type": "net", "circle_edges": n, "site": algebra, "orbifold"?: {"group": [unitaries]}}``.

    ``{"type": "net", "product": [net, net]}`` builds the tensor product.
    """
    _check_version(doc, path)
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected a net object")
    if doc.get("type", "net") != "net":
        raise SchemaError(f"{path}.type", f"expected 'net', got {doc.get('type')!r}")
    name = doc.get("name")
    if name is not None:
        _str(name, f"{path}.name")
    try:
        if "product" in doc:
            parts = _list(doc["product"], f"{path}.product", 2)
            N = parse_net(parts[0], f"{path}.product[0]")
            M = parse_net(parts[1], f"{path}.product[1]")
            return product_net(N, M, name=name or "product")
        n = _int(_req(doc, "circle_edges", path), f"{path}.circle_edges", 1)
        if n % 8:
            raise SchemaError(f"{path}.circle_edges", f"must be divisible by 8, got {n}")
        site = parse_algebra(_req(doc, "site", path), f"{path}.site")
        base = LatticeNet(LatticeCircle(n), site, name=name or "tensor")
        if "orbifold" in doc:
            group = _list(_req(doc["orbifold"], "group", f"{path}.orbifold"), f"{path}.orbifold.group")
            d = site.ambient_dim
            us = [parse_complex_matrix(g, f"{path}.orbifold.group[{i}]", (d, d)) for i, g in enumerate(group)]
            try:
                return build_orbifold_net(base, us, name=name or "orbifold")
            except AlgebraError as exc:
                raise SchemaError(f"{path}.orbifold.group", str(exc)) from None
        return base
    except SchemaError:
        raise
    except AlgebraError as exc:
        raise SchemaError(path, str(exc)) from None


def dump_net(N: LatticeNet) -> dict:
    if N.components:
        parts = list(N.components)
        # re-associate left to right, as product_net does
        doc = dump_net(parts[0])
        for p in parts[1:]:
            doc = {"type": "net", "product": [doc, dump_net(p)]}
        doc["name"] = N.name
        return doc
    doc = {"type": "net", "name": N.name, "circle_edges": N.n, "site": dump_algebra(N.site)}
    if N.symmetry:
        doc["orbifold"] = {"group": [complex_array(u) for u in N.symmetry]}
    return doc


# -- defects ----------------------------------------------------------------------------------

_DEFECT_KINDS = {"identity", "junction", "composite", "fold", "adjoint", "tensor"}


def parse_defect(doc, path="$") -> Defect:
    """Defect documents; see ``docs/formats`` for the kinds.

    A well-formed document describing an invalid defect (for example a
    non-factor junction algebra) raises ``DefectError`` with its witness.
    """
    from .duality.folds import AdjointDefect, FoldDefect, TensorDefect
    from .latticenet.defects import DefectError

    _check_version(doc, path)
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected a defect object")
    if doc.get("type", "defect") != "defect":
        raise SchemaError(f"{path}.type", f"expected 'defect', got {doc.get('type')!r}")
    kind = _str(_req(doc, "kind", path), f"{path}.kind", _DEFECT_KINDS)
    name = doc.get("name")
    try:
        if kind == "identity":
            return IdentityDefect(parse_net(_req(doc, "net", path), f"{path}.net"))
        if kind == "junction":
            left = parse_net(_req(doc, "left", path), f"{path}.left")
            right = parse_net(doc.get("right", doc["left"]), f"{path}.right")
            Q = parse_algebra(_req(doc, "junction", path), f"{path}.junction")
            return build_defect("junction", {"left": left, "right": right, "Q": Q, "name": name or "junction"})
        if kind in ("composite", "tensor"):
            fs = _list(_req(doc, "factors", path), f"{path}.factors", 2)
            D = parse_defect(fs[0], f"{path}.factors[0]")
            E = parse_defect(fs[1], f"{path}.factors[1]")
            if kind == "tensor":
                return TensorDefect(D, E, name=name)
            m = doc.get("middle_arc_length")
            if m is not None:
                _int(m, f"{path}.middle_arc_length", 1)
            return CompositeDefect(D, E, m, name=name)
        if kind == "fold":
            N = parse_net(_req(doc, "net", path), f"{path}.net")
            which = _str(_req(doc, "which", path), f"{path}.which", {"unit", "counit"})
            return FoldDefect(N, which)
        if kind == "adjoint":
            return AdjointDefect(parse_defect(_req(doc, "of", path), f"{path}.of"), name=name)
    except (SchemaError, DefectError):
        raise
    except AlgebraError as exc:
        raise SchemaError(path, str(exc)) from None
    raise SchemaError(f"{path}.kind", f"unknown kind {kind!r}")  # pragma: no cover


def dump_defect(D: Defect) -> dict:
    from .duality.folds import AdjointDefect, FoldDefect, TensorDefect

    if isinstance(D, IdentityDefect):
        return {"type": "defect", "kind": "identity", "net": dump_net(D.left)}
    if isinstance(D, JunctionDefect):
        if len(D.Q.factors) != 1:
            raise SchemaError("$", "junction algebras spread over several factors have no document form")
        return {"type": "defect", "kind": "junction", "name": D.name, "left": dump_net(D.left), "right": dump_net(D.right), "junction": dump_algebra(D.Q.factors[0][1])}
    if isinstance(D, CompositeDefect):
        return {"type": "defect", "kind": "composite", "name": D.name, "factors": [dump_defect(D.D), dump_defect(D.E)], "middle_arc_length": D.m}
    if isinstance(D, TensorDefect):
        return {"type": "defect", "kind": "tensor", "name": D.name, "factors": [dump_defect(D.D), dump_defect(D.E)]}
    if isinstance(D, FoldDefect):
        return {"type": "defect", "kind": "fold", "which": D.kind, "net": dump_net(D.net)}
    if isinstance(D, AdjointDefect):
        return {"type": "defect", "kind": "adjoint", "name": D.name, "of": dump_defect(D.D)}
    raise SchemaError("$", f"no document form for {type(D).__name__}")


# -- sectors ------------------------------------------------------------------------------------

_SECTOR_KINDS = {"identity", "fusion", "direct_sum", "conjugate", "corrupted", "dense"}


def _arc(x, circle: LatticeCircle, path):
    _list(x, path, 2)
    a, b = (_int(x[0], f"{path}[0]", 0), _int(x[1], f"{path}[1]", 0))
    if a >= circle.n or b >= circle.n:
        raise SchemaError(path, f"edges must be below {circle.n}")
    try:
        return circle.arc_from_edges(a, b)
    except AlgebraError as exc:
        raise SchemaError(path, str(exc)) from None


def _dense_sector(doc, path) -> DenseSector:
    top = parse_defect(_req(doc, "top", path), f"{path}.top")
    bottom = parse_defect(doc.get("bottom", doc["top"]), f"{path}.bottom")
    dim = _int(_req(doc, "space_dim", path), f"{path}.space_dim", 1)
    circle = LatticeCircle(top.n)
    probe = Sector(circle, top, bottom)
    images = {}
    for i, entry in enumerate(_list(_req(doc, "actions", path), f"{path}.actions")):
        p = f"{path}.actions[{i}]"
        arc = _arc(_req(entry, "arc", p), circle, f"{p}.arc")
        if arc not in circle.sector_arcs():
            raise SchemaError(f"{p}.arc", f"{arc.as_list()} is not an admissible arc")
        A, _ = probe.algebra(arc)
        basis = A.dense().basis
        imgs = _list(_req(entry, "images", p), f"{p}.images", len(basis))
        images[arc] = (A, basis, [parse_complex_matrix(m, f"{p}.images[{j}]", (dim, dim)) for j, m in enumerate(imgs)])
    missing = [a.as_list() for a in circle.sector_arcs() if a not in images]
    if missing:
        raise SchemaError(f"{path}.actions", f"no action given for admissible arcs {missing[:4]}{' ...' if len(missing) > 4 else ''}")

    def action(arc, labels, op):
        A, basis, imgs = images[arc]
        pos = [A.labels.index(l) for l in labels]
        X = apply_on_legs(op, pos, [d for _, d in A.legs], np.eye(A.ambient_dim, dtype=complex))
        out = np.zeros((dim, dim), dtype=complex)
        for B, img in zip(basis, imgs):
            out += np.vdot(B, X) * img
        return out

    return DenseSector(circle, top, bottom, dim, action, name=doc.get("name", "dense"))


def parse_sector(doc, path="$") -> Sector:
    """Sector documents; constructive kinds plus explicit ``dense`` actions."""
    from .duality.adjunction import conjugate_sector

    _check_version(doc, path)
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected a sector object")
    if doc.get("type", "sector") != "sector":
        raise SchemaError(f"{path}.type", f"expected 'sector', got {doc.get('type')!r}")
    kind = _str(_req(doc, "kind", path), f"{path}.kind", _SECTOR_KINDS)
    try:
        if kind == "identity":
            S = identity_sector(parse_defect(_req(doc, "defect", path), f"{path}.defect"))
        elif kind in ("fusion", "direct_sum"):
            fs = _list(_req(doc, "factors", path), f"{path}.factors", 2)
            H = parse_sector(fs[0], f"{path}.factors[0]")
            K = parse_sector(fs[1], f"{path}.factors[1]")
            if kind == "fusion":
                S = fuse_sectors(_str(_req(doc, "direction", path), f"{path}.direction", {"h", "v"}), H, K)
            else:
                S = direct_sum_sectors(H, K)
        elif kind == "conjugate":
            S = conjugate_sector(parse_sector(_req(doc, "of", path), f"{path}.of"))
        elif kind == "corrupted":
            H = parse_sector(_req(doc, "of", path), f"{path}.of")
            arc = _arc(_req(doc, "arc", path), H.circle, f"{path}.arc")
            S = corrupt_sector(H, arc, seed=_int(doc.get("seed", 0), f"{path}.seed", 0))
        else:
            S = _dense_sector(doc, path)
    except SchemaError:
        raise
    except (SectorError, AlgebraError) as exc:
        raise SchemaError(path, str(exc)) from None
    canonical = {k: v for k, v in doc.items() if k != "format_version"}
    return _remember(S, {"type": "sector", **canonical})


def dump_sector(S: Sector) -> dict:
    """The document a sector was parsed from (sectors built in code have none)."""
    doc = getattr(S, "_document", None)
    if doc is None:
        from .latticenet.sectors import LegSector

        if isinstance(S, LegSector) and S.top is S.bottom and S.name == f"1_{S.top.name}":
            return {"type": "sector", "kind": "identity", "defect": dump_defect(S.top)}
        raise SchemaError("$", f"sector {S.name!r} was not built from a document")
    return dict(doc)


# -- 2-algebras ------------------------------------------------------------------------------------

def parse_two_algebra(doc, path="$") -> TwoAlgebra:
    """``{"type": "two_algebra", "algebra": abstract algebra, "mu": k x k² matrix, "v": vector}``."""
    _check_version(doc, path)
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected a 2-algebra object")
    A = parse_abstract_algebra(_req(doc, "algebra", path), f"{path}.algebra")
    k = A.dim
    mu = parse_complex_matrix(_req(doc, "mu", path), f"{path}.mu", (k, k * k))
    v = parse_complex_vector(_req(doc, "v", path), f"{path}.v", k)
    try:
        return TwoAlgebra(A, mu, v)
    except AlgebraError as exc:
        raise SchemaError(path, str(exc)) from None


def dump_two_algebra(T: TwoAlgebra) -> dict:
    return {"type": "two_algebra", "algebra": dump_abstract_algebra(T.algebra), "mu": complex_array(T.mu), "v": complex_array(T.v)}
