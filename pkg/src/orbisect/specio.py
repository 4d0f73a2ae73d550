"""Reading and writing orbifold spec documents (JSON).

A document has a ``group`` block (permutation generators in 1-based
one-line notation, or matrices with ``"p/q"`` entries), a ``space`` block
(``simplicial``, ``linear_sphere`` or ``linear_affine``) and optional
``gamma``, ``removed``, ``bundle`` and ``options`` blocks. Errors carry the
JSON path of the offending field, or the line and column for syntax errors.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .config import CapExceeded, Caps
from .eqgeom.linear import RationalRep
from .eqgeom.simplicial import SimplicialAction, SimplicialComplex
from .fingroup import FiniteGroup, GammaPresentation, group_from_generators
from .linalg import format_fraction, to_fraction
from .sectors import AFFINE, SPHERE, OrbifoldSpec

FORMATS = ("table", "json", "dot")


class SpecError(ValueError):
    def __init__(self, message: str, path: str = "", line: int | None = None, column: int | None = None):
        self.path = path
        self.line = line
        self.column = column
        where = path or "document"
        if line is not None:
            where = f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True, eq=False)
class SpecDocument:
    """Validated document: the normalized JSON plus the objects it describes."""

    data: dict
    spec: OrbifoldSpec
    gamma: GammaPresentation | str | None
    removed: tuple[tuple[int, ...], ...] | None = None
    bundle: Any = None  # EquivariantBundle
    caps: Caps = field(default_factory=Caps)
    output_format: str | None = None

    @property
    def label(self) -> str:
        return self.data.get("label", "")

    def to_json(self) -> dict:
        return self.data


# --------------------------------------------------------------------------
# helpers
# --------------------------------------------------------------------------


def _need(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        raise SpecError("expected an object", path)
    if key not in obj:
        raise SpecError(f"missing field {key!r}", path)
    val = obj[key]
    if kind is not None and not _is(val, kind):
        raise SpecError(f"expected {kind.__name__ if isinstance(kind, type) else kind}", f"{path}.{key}" if path else key)
    return val


def _is(val, kind):
    if kind is int:
        return isinstance(val, int) and not isinstance(val, bool)
    return isinstance(val, kind)


def _int_list(val, path, lo=None, hi=None):
    if not isinstance(val, list):
        raise SpecError("expected a list of integers", path)
    out = []
    for i, v in enumerate(val):
        if not _is(v, int):
            raise SpecError("expected an integer", f"{path}[{i}]")
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise SpecError(f"{v} is outside {lo}..{hi}", f"{path}[{i}]")
        out.append(v)
    return out


def _matrix(val, path, n=None):
    if not isinstance(val, list) or not val:
        raise SpecError("expected a nonempty list of rows", path)
    rows = []
    for i, row in enumerate(val):
        if not isinstance(row, list):
            raise SpecError("expected a row list", f"{path}[{i}]")
        r = []
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise SpecError('entries are integers or "p/q" strings', f"{path}[{i}][{j}]")
            try:
                r.append(to_fraction(x))
            except (ValueError, ZeroDivisionError):
                raise SpecError(f"cannot read {x!r} as a rational", f"{path}[{i}][{j}]") from None
        rows.append(r)
    size = n if n is not None else len(rows)
    if len(rows) != size or any(len(r) != size for r in rows):
        raise SpecError(f"expected a {size}x{size} matrix", path)
    return rows


def _matrix_json(m):
    return [[format_fraction(x) for x in row] for row in m]


# --------------------------------------------------------------------------
# blocks
# --------------------------------------------------------------------------


def _parse_group(block, caps) -> tuple[FiniteGroup, dict]:
    path = "group"
    if not isinstance(block, dict):
        raise SpecError("expected an object", path)
    gens = _need(block, "generators", path, list)
    if not gens:
        raise SpecError("need at least one generator", "group.generators")
    if "perm_degree" in block:
        n = _need(block, "perm_degree", path, int)
        if n < 1:
            raise SpecError("degree must be positive", "group.perm_degree")
        perms = []
        for k, g in enumerate(gens):
            p = _int_list(g, f"group.generators[{k}]", 1, n)
            if len(p) != n or sorted(p) != list(range(1, n + 1)):
                raise SpecError(f"not a permutation of 1..{n}", f"group.generators[{k}]")
            perms.append(tuple(v - 1 for v in p))
        norm = {"perm_degree": n, "generators": [[v + 1 for v in p] for p in perms]}
        try:
            return group_from_generators(perms, caps), norm
        except CapExceeded as e:
            raise SpecError(str(e), path) from None
    if "matrix_dim" in block:
        n = _need(block, "matrix_dim", path, int)
        mats = [_matrix(g, f"group.generators[{k}]", n) for k, g in enumerate(gens)]
        norm = {"matrix_dim": n, "generators": [_matrix_json(m) for m in mats]}
        try:
            return group_from_generators(mats, caps), norm
        except CapExceeded as e:
            raise SpecError(str(e), path) from None
        except ValueError as e:
            raise SpecError(str(e), path) from None
    raise SpecError("needs 'perm_degree' or 'matrix_dim'", path)


def _parse_rep(val, G: FiniteGroup, path) -> tuple[RationalRep, Any]:
    if val is None or val == "group":
        if G.kind != "matrix":
            raise SpecError("a permutation group needs explicit representation matrices", path)
        return RationalRep.of_matrix_group(G), "group"
    if not isinstance(val, list):
        raise SpecError('expected "group" or one matrix per generator', path)
    if len(val) != len(G.generators):
        raise SpecError(f"expected {len(G.generators)} matrices, one per generator", path)
    first = _matrix(val[0], f"{path}[0]")
    n = len(first)
    mats = [first] + [_matrix(m, f"{path}[{k}]", n) for k, m in enumerate(val[1:], 1)]
    try:
        rep = RationalRep.from_generators(G, mats)
    except ValueError as e:
        raise SpecError(str(e), path) from None
    return rep, [_matrix_json(m) for m in mats]


def _parse_space(block, G: FiniteGroup, label: str, subdivisions):
    path = "space"
    kind = _need(block, "type", path, str)
    if kind == "simplicial":
        n = _need(block, "vertices", path, int)
        simp = _need(block, "simplices", path, list)
        maximal = [_int_list(s, f"space.simplices[{i}]", 0, n - 1) for i, s in enumerate(simp)]
        bd = None
        if "boundary" in block and block["boundary"] is not None:
            bd = [_int_list(s, f"space.boundary[{i}]", 0, n - 1) for i, s in enumerate(_need(block, "boundary", path, list))]
        try:
            K = SimplicialComplex.from_maximal(n, maximal, boundary=bd)
        except ValueError as e:
            raise SpecError(str(e), path) from None
        action = block.get("action", {})
        if not isinstance(action, dict):
            raise SpecError("expected an object keyed by generator index", "space.action")
        images = []
        for k in range(len(G.generators)):
            key = str(k)
            if key not in action:
                if G.order == 1:
                    images.append(list(range(n)))
                    continue
                raise SpecError(f"missing vertex images for generator {k}", "space.action")
            images.append(_int_list(action[key], f"space.action.{key}", 0, n - 1))
        extra = sorted(set(action) - {str(k) for k in range(len(G.generators))})
        if extra:
            raise SpecError(f"no generator with index {extra[0]}", "space.action")
        try:
            A = SimplicialAction.from_generators(K, G, images)
        except ValueError as e:
            raise SpecError(str(e), "space.action") from None
        norm = {
            "type": "simplicial",
            "vertices": n,
            "simplices": [sorted(s) for s in maximal],
            "action": {str(k): list(img) for k, img in enumerate(images)},
        }
        if bd is not None:
            norm["boundary"] = [sorted(s) for s in bd]
        return OrbifoldSpec.simplicial(K, A, label, subdivisions), norm
    if kind in ("linear_sphere", "linear_affine"):
        rep, norm_rep = _parse_rep(block.get("rep"), G, "space.rep")
        if kind == "linear_sphere":
            spec = OrbifoldSpec.sphere(rep, label)
        else:
            spec = OrbifoldSpec.affine(rep, label)
        return spec, {"type": kind, "rep": norm_rep}
    raise SpecError(f"unknown space type {kind!r}", "space.type")


def parse_gamma(val, path="gamma") -> GammaPresentation | str:
    """``"auto"``, ``{"free": d}``, ``{"rank": r, "relators": [[...]]}`` or a CLI string."""
    if isinstance(val, str):
        return gamma_from_string(val)
    if isinstance(val, dict):
        if "free" in val:
            d = val["free"]
            if not _is(d, int) or d < 0:
                raise SpecError("free rank must be a nonnegative integer", f"{path}.free")
            return GammaPresentation.free(d)
        r = _need(val, "rank", path, int)
        rels = val.get("relators", [])
        if not isinstance(rels, list):
            raise SpecError("expected a list of words", f"{path}.relators")
        words = [_int_list(w, f"{path}.relators[{i}]") for i, w in enumerate(rels)]
        try:
            return GammaPresentation(r, tuple(tuple(w) for w in words))
        except ValueError as e:
            raise SpecError(str(e), path) from None
    raise SpecError('expected "auto" or a presentation object', path)


def gamma_from_string(text: str) -> GammaPresentation | str:
    """``auto``, ``free:D``, ``cyclic:N`` or ``pres:R:w1;w2`` (words as signed ints)."""
    t = text.strip()
    if t == "auto":
        return "auto"
    head, _, rest = t.partition(":")
    try:
        if head == "free":
            d = int(rest)
            if d < 0:
                raise ValueError
            return GammaPresentation.free(d)
        if head == "cyclic":
            n = int(rest)
            if n < 1:
                raise ValueError
            return GammaPresentation.cyclic(n)
        if head == "pres":
            r, _, words = rest.partition(":")
            rels = []
            for w in words.split(";"):
                w = w.replace(",", " ").split()
                if w:
                    rels.append(tuple(int(c) for c in w))
            return GammaPresentation(int(r), tuple(rels))
    except ValueError as e:
        raise SpecError(f"bad gamma {text!r}" + (f": {e}" if str(e) else ""), "gamma") from None
    raise SpecError(f"bad gamma {text!r}; use auto, free:D, cyclic:N or pres:R:w1;w2", "gamma")


def gamma_to_json(g: GammaPresentation | str):
    if isinstance(g, str):
        return g
    return g.to_json()


def _caps_from(options) -> Caps:
    base = Caps()
    max_group = options.get("max_group", base.max_group)
    max_homs = options.get("max_homs", base.max_homs)
    # environment overrides the document
    max_group = int(os.environ.get("ORBISECT_MAX_GROUP", max_group))
    max_homs = int(os.environ.get("ORBISECT_MAX_HOMS", max_homs))
    return Caps(max_group=max_group, max_homs=max_homs)


def _parse_options(val) -> dict:
    if val is None:
        return {}
    if not isinstance(val, dict):
        raise SpecError("expected an object", "options")
    out = {}
    for key in ("subdivisions", "max_group", "max_homs"):
        if key in val:
            v = val[key]
            if not _is(v, int) or v < (0 if key == "subdivisions" else 1):
                raise SpecError("expected a positive integer" if key != "subdivisions" else "expected a nonnegative integer", f"options.{key}")
            out[key] = v
    if "format" in val:
        if val["format"] not in FORMATS:
            raise SpecError(f"format must be one of {', '.join(FORMATS)}", "options.format")
        out["format"] = val["format"]
    unknown = sorted(set(val) - {"subdivisions", "max_group", "max_homs", "format"})
    if unknown:
        raise SpecError(f"unknown option {unknown[0]!r}", "options")
    return out


def from_dict(doc) -> SpecDocument:
    if not isinstance(doc, dict):
        raise SpecError("top level must be an object")
    unknown = sorted(set(doc) - {"label", "group", "space", "gamma", "removed", "bundle", "options"})
    if unknown:
        raise SpecError(f"unknown field {unknown[0]!r}")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SpecError("expected a string", "label")
    options = _parse_options(doc.get("options"))
    caps = _caps_from(options)
    G, gnorm = _parse_group(_need(doc, "group", ""), caps)
    spec, snorm = _parse_space(_need(doc, "space", ""), G, label, options.get("subdivisions"))
    data: dict = {}
    if label:
        data["label"] = label
    data["group"] = gnorm
    data["space"] = snorm
    gamma = None
    if "gamma" in doc and doc["gamma"] is not None:
        gamma = parse_gamma(doc["gamma"])
        data["gamma"] = gamma_to_json(gamma)
    removed = None
    if "removed" in doc and doc["removed"] is not None:
        if spec.model != "simplicial":
            raise SpecError("only simplicial spaces can have a removed subcomplex", "removed")
        n = spec.complex.vertex_count
        rem = _need(doc, "removed", "", list)
        removed = tuple(tuple(sorted(_int_list(s, f"removed[{i}]", 0, n - 1))) for i, s in enumerate(rem))
        for i, s in enumerate(removed):
            if not s or s not in spec.complex:
                raise SpecError("not a simplex of the complex", f"removed[{i}]")
        data["removed"] = [list(s) for s in removed]
    bundle = None
    if "bundle" in doc and doc["bundle"] is not None:
        from .bundles import EquivariantBundle

        b = doc["bundle"]
        if not isinstance(b, dict):
            raise SpecError("expected an object", "bundle")
        if spec.model not in (SPHERE, AFFINE):
            raise SpecError("bundles need a linear space", "bundle")
        base_val = b.get("base", "space")
        if base_val == "space":
            base, bnorm = spec.rep, "space"
        else:
            base, bnorm = _parse_rep(base_val, G, "bundle.base")
            if base.matrices != spec.rep.matrices:
                raise SpecError("bundle base must be the representation of the space", "bundle.base")
        fiber, fnorm = _parse_rep(_need(b, "fiber", "bundle"), G, "bundle.fiber")
        bundle = EquivariantBundle(base, fiber)
        data["bundle"] = {"base": bnorm, "fiber": fnorm}
    if options:
        data["options"] = options
    return SpecDocument(data, spec, gamma, removed, bundle, caps, options.get("format"))


def parse_spec(text: str) -> SpecDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(e.msg, line=e.lineno, column=e.colno) from None
    return from_dict(doc)


def load_spec(path: str | os.PathLike) -> SpecDocument:
    return parse_spec(Path(path).read_text(encoding="utf-8"))


def spec_to_dict(spec: OrbifoldSpec, gamma=None, removed=None, bundle=None, options=None) -> dict:
    """Document dict describing ``spec``; ``from_dict`` reads it back."""
    G = spec.group
    out: dict = {}
    if spec.label:
        out["label"] = spec.label
    if G.kind == "matrix":
        out["group"] = {"matrix_dim": G.degree, "generators": [_matrix_json(m) for m in G.generators]}
    else:
        out["group"] = {"perm_degree": G.degree, "generators": [[v + 1 for v in p] for p in G.generators]}
    if spec.model == "simplicial":
        K, A = spec.complex, spec.action
        space = {
            "type": "simplicial",
            "vertices": K.vertex_count,
            "simplices": [list(s) for s in K.facets],
            "action": {str(k): [int(v) for v in A.images[g]] for k, g in enumerate(G.generator_ids)},
        }
        if K.boundary:
            bd = SimplicialComplex(K.vertex_count, tuple(K.boundary))
            space["boundary"] = [list(s) for s in bd.facets]
        out["space"] = space
    else:
        rep = "group" if G.kind == "matrix" and spec.rep.matrices == tuple(G.elements) else [
            _matrix_json(spec.rep(g)) for g in G.generator_ids
        ]
        out["space"] = {"type": "linear_sphere" if spec.model == SPHERE else "linear_affine", "rep": rep}
    if gamma is not None:
        out["gamma"] = gamma_to_json(gamma)
    if removed is not None:
        out["removed"] = [list(s) for s in removed]
    if bundle is not None:
        out["bundle"] = {"base": "space", "fiber": [_matrix_json(bundle.fiber(g)) for g in G.generator_ids]}
    opts = dict(options or {})
    if spec.subdivisions is not None:
        opts.setdefault("subdivisions", spec.subdivisions)
    if opts:
        out["options"] = opts
    return out


def serialize_spec(doc: SpecDocument) -> str:
    return json.dumps(doc.to_json(), indent=2) + "\n"


__all__ = [
    "SpecDocument",
    "SpecError",
    "parse_spec",
    "load_spec",
    "from_dict",
    "serialize_spec",
    "spec_to_dict",
    "parse_gamma",
    "gamma_from_string",
    "gamma_to_json",
    "FORMATS",
]
