"""JSON encoding of fields, matrices, complexes, maps, diagrams and cell data.

Decoders raise :class:`ParseError` with a JSON-path location such as
``$.N.diff.0.entries``.
"""

from __future__ import annotations

import json
from typing import Any

from .complex import Complex, GradedMap
from .errors import ContrModelError, DimensionError, ParseError
from .linalg import GF, QQ, Field, Matrix
from .retract import SDR, AcyclicRetraction, Contraction, Morphism
from .semifree import DiskExtension, LiftingProblem, SemifreeExtension


def dumps(obj: Any) -> str:
    """Canonical text form: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_file(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}", e.msg) from None
    except OSError as e:
        raise ParseError(str(path), e.strerror or str(e)) from None


def _get(obj, key, loc):
    if not isinstance(obj, dict):
        raise ParseError(loc, "expected an object")
    if key not in obj:
        raise ParseError(loc, f"missing key {key!r}")
    return obj[key]


def _int(v, loc) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(loc, f"expected an integer, got {v!r}")
    return v


def _degree_key(k, loc) -> int:
    try:
        return int(k)
    except (TypeError, ValueError):
        raise ParseError(loc, f"degree key {k!r} is not an integer") from None


# ----------------------------------------------------------------------------
# fields and matrices


def field_to_json(field: Field) -> dict:
    return field.to_json()


def field_from_json(obj, loc="$") -> Field:
    kind = _get(obj, "kind", loc)
    if kind == "q":
        return QQ
    if kind == "fp":
        p = _int(_get(obj, "p", loc), f"{loc}.p")
        try:
            return GF(p)
        except ValueError as e:
            raise ParseError(f"{loc}.p", str(e)) from None
    raise ParseError(f"{loc}.kind", f"unknown field kind {kind!r}")


def parse_field_spec(text: str) -> Field:
    """``"fp:5"`` or ``"q"`` as used on the command line."""
    if text == "q":
        return QQ
    if text.startswith("fp:"):
        try:
            return GF(int(text[3:]))
        except ValueError as e:
            raise ParseError("--field", str(e)) from None
    raise ParseError("--field", f"expected fp:P or q, got {text!r}")


def matrix_to_json(m: Matrix) -> dict:
    f = m.field
    return {"rows": m.rows, "cols": m.cols, "entries": [f.scalar_to_json(x) for x in m.array.flat]}


def matrix_from_json(obj, field: Field, loc="$") -> Matrix:
    r = _int(_get(obj, "rows", loc), f"{loc}.rows")
    c = _int(_get(obj, "cols", loc), f"{loc}.cols")
    entries = _get(obj, "entries", loc)
    if not isinstance(entries, list):
        raise ParseError(f"{loc}.entries", "expected a list")
    if r < 0 or c < 0 or len(entries) != r * c:
        raise ParseError(f"{loc}.entries", f"expected {r}x{c} = {max(r * c, 0)} entries, got {len(entries)}")
    vals = []
    for k, v in enumerate(entries):
        try:
            vals.append(field.scalar_from_json(v))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"{loc}.entries[{k}]", str(e)) from None
    return Matrix.from_entries(field, r, c, vals)


# ----------------------------------------------------------------------------
# complexes and maps


def complex_to_json(X: Complex) -> dict:
    return {
        "field": field_to_json(X.field),
        "lo": X.lo,
        "hi": X.hi,
        "dims": {str(i): X.dim(i) for i in X.degrees},
        "diff": {str(i): matrix_to_json(X.d(i)) for i in range(X.lo, X.hi)},
    }


def complex_from_json(obj, loc="$") -> Complex:
    field = field_from_json(_get(obj, "field", loc), f"{loc}.field")
    raw = _get(obj, "dims", loc)
    if not isinstance(raw, dict):
        raise ParseError(f"{loc}.dims", "expected an object")
    dims = {}
    for k, v in raw.items():
        n = _int(v, f"{loc}.dims.{k}")
        if n < 0:
            raise ParseError(f"{loc}.dims.{k}", "negative dimension")
        dims[_degree_key(k, f"{loc}.dims")] = n
    diff = {}
    for k, v in (obj.get("diff") or {}).items():
        i = _degree_key(k, f"{loc}.diff")
        m = matrix_from_json(v, field, f"{loc}.diff.{k}")
        if m.shape != (dims.get(i + 1, 0), dims.get(i, 0)):
            raise ParseError(f"{loc}.diff.{k}", f"shape {m.shape} does not match dims")
        diff[i] = m
    X = Complex(field, dims, diff)
    for key in ("lo", "hi"):
        if key in obj and not X.is_zero() and _int(obj[key], f"{loc}.{key}") != getattr(X, key):
            raise ParseError(f"{loc}.{key}", f"disagrees with dims ({getattr(X, key)})")
    return X


def map_to_json(f: GradedMap, standalone: bool = False) -> dict:
    out = {"degree": f.degree, "blocks": {str(i): matrix_to_json(f.block(i)) for i in f.degrees()}}
    if standalone:
        out["src"] = complex_to_json(f.src)
        out["tgt"] = complex_to_json(f.tgt)
    return out


def map_from_json(obj, src: Complex | None = None, tgt: Complex | None = None, loc="$") -> GradedMap:
    if src is None:
        src = complex_from_json(_get(obj, "src", loc), f"{loc}.src")
    if tgt is None:
        tgt = complex_from_json(_get(obj, "tgt", loc), f"{loc}.tgt")
    degree = _int(obj.get("degree", 0), f"{loc}.degree")
    raw = _get(obj, "blocks", loc)
    if not isinstance(raw, dict):
        raise ParseError(f"{loc}.blocks", "expected an object")
    blocks = {}
    for k, v in raw.items():
        blocks[_degree_key(k, f"{loc}.blocks")] = matrix_from_json(v, src.field, f"{loc}.blocks.{k}")
    try:
        return GradedMap(src, tgt, degree, blocks)
    except DimensionError as e:
        raise ParseError(f"{loc}.blocks", str(e)) from None


# ----------------------------------------------------------------------------
# diagrams


def diagram_kind(x: AcyclicRetraction) -> str:
    if isinstance(x, Contraction):
        return "contraction"
    if isinstance(x, SDR):
        return "sdr"
    return "ar"


def diagram_to_json(x: AcyclicRetraction) -> dict:
    out = {
        "kind": diagram_kind(x),
        "M": complex_to_json(x.M),
        "N": complex_to_json(x.N),
        "iota": map_to_json(x.iota),
        "pi": map_to_json(x.pi),
    }
    if isinstance(x, SDR):
        out["h"] = map_to_json(x.h)
    return out


def diagram_from_json(obj, loc="$") -> AcyclicRetraction:
    M = complex_from_json(_get(obj, "M", loc), f"{loc}.M")
    N = complex_from_json(_get(obj, "N", loc), f"{loc}.N")
    if M.field != N.field:
        raise ParseError(f"{loc}.N.field", "M and N are over different fields")
    iota = map_from_json(_get(obj, "iota", loc), M, N, f"{loc}.iota")
    pi = map_from_json(_get(obj, "pi", loc), N, M, f"{loc}.pi")
    kind = obj.get("kind", "contraction" if "h" in obj else "ar")
    if kind not in ("ar", "sdr", "contraction"):
        raise ParseError(f"{loc}.kind", f"unknown diagram kind {kind!r}")
    if kind == "ar":
        return AcyclicRetraction(iota, pi)
    h = map_from_json(_get(obj, "h", loc), N, N, f"{loc}.h")
    return (Contraction if kind == "contraction" else SDR)(iota, pi, h)


def morphism_to_json(m: Morphism) -> dict:
    return {"src": diagram_to_json(m.src), "tgt": diagram_to_json(m.tgt), "f": map_to_json(m.f)}


def morphism_from_json(obj, loc="$") -> Morphism:
    src = diagram_from_json(_get(obj, "src", loc), f"{loc}.src")
    tgt = diagram_from_json(_get(obj, "tgt", loc), f"{loc}.tgt")
    f = map_from_json(_get(obj, "f", loc), src.N, tgt.N, f"{loc}.f")
    return Morphism(src, tgt, f)


def square_to_json(sq) -> dict:
    enc = morphism_to_json if isinstance(sq.i, Morphism) else (lambda m: map_to_json(m, True))
    return {k: enc(getattr(sq, k)) for k in ("i", "f", "p", "g")}


def coch_square_from_json(obj, loc="$") -> LiftingProblem:
    parts = {k: map_from_json(_get(obj, k, loc), loc=f"{loc}.{k}") for k in ("i", "f", "p", "g")}
    return _share_objects(LiftingProblem(**parts), loc)


def _share_objects(prob: LiftingProblem, loc):
    """Rebuild the maps so that equal corner complexes are the same object."""
    A, B, X, Y = prob.i.src, prob.i.tgt, prob.p.src, prob.p.tgt
    pairs = [("f.src", prob.f.src, A), ("f.tgt", prob.f.tgt, X), ("g.src", prob.g.src, B), ("g.tgt", prob.g.tgt, Y)]
    for name, got, want in pairs:
        if got != want:
            raise ParseError(f"{loc}.{name}", "corner complex does not match the square")
    re = lambda m, s, t: GradedMap(s, t, m.degree, m.blocks)  # noqa: E731
    return LiftingProblem(prob.i, re(prob.f, A, X), prob.p, re(prob.g, B, Y))


def morphism_square_from_json(obj, loc="$"):
    from .model import MorphismSquare

    parts = {k: morphism_from_json(_get(obj, k, loc), f"{loc}.{k}") for k in ("i", "f", "p", "g")}
    i, f, p, g = parts["i"], parts["f"], parts["p"], parts["g"]
    # identify shared corners so that morphisms compose
    corners = {"A": i.src, "B": i.tgt, "X": p.src, "Y": p.tgt}
    f = Morphism(corners["A"], corners["X"], GradedMap(corners["A"].N, corners["X"].N, 0, f.f.blocks))
    g = Morphism(corners["B"], corners["Y"], GradedMap(corners["B"].N, corners["Y"].N, 0, g.f.blocks))
    return MorphismSquare(i, f, p, g)


# ----------------------------------------------------------------------------
# cell data


def cells_to_json(ext) -> dict:
    if isinstance(ext, DiskExtension):
        P = ext.target
        return {
            "kind": "disks",
            "stages": [
                {
                    "generators": {str(i): matrix_to_json(b) for i, b in sorted(ext.bottoms.items())},
                    "differentials": {str(i): matrix_to_json(P.d(i) @ b) for i, b in sorted(ext.bottoms.items())},
                }
            ],
        }
    P = ext.target
    stages = []
    for st in ext.stages:
        gens = {i: a for i, a in sorted(st.items()) if a.cols}
        stages.append(
            {
                "generators": {str(i): matrix_to_json(a) for i, a in gens.items()},
                "differentials": {str(i): matrix_to_json(P.d(i) @ a) for i, a in gens.items()},
            }
        )
    return {"kind": "semifree", "stages": stages}


def cells_from_json(obj, f: GradedMap, loc="$"):
    kind = _get(obj, "kind", loc)
    stages_raw = _get(obj, "stages", loc)
    if not isinstance(stages_raw, list):
        raise ParseError(f"{loc}.stages", "expected a list")
    fld = f.field
    stages = []
    for n, st in enumerate(stages_raw):
        gl = f"{loc}.stages[{n}].generators"
        gens = {}
        for k, v in _get(st, "generators", f"{loc}.stages[{n}]").items():
            gens[_degree_key(k, gl)] = matrix_from_json(v, fld, f"{gl}.{k}")
        stages.append(gens)
    if kind == "disks":
        if len(stages) != 1:
            raise ParseError(f"{loc}.stages", "disk data has exactly one stage")
        return DiskExtension(f, stages[0])
    if kind == "semifree":
        return SemifreeExtension(f, tuple(stages))
    raise ParseError(f"{loc}.kind", f"unknown cell kind {kind!r}")


def safe_parse(fn, *args, **kw):
    """Run a decoder, turning stray library errors into :class:`ParseError`."""
    try:
        return fn(*args, **kw)
    except ParseError:
        raise
    except (ContrModelError, ValueError, TypeError, KeyError, AttributeError) as e:
        raise ParseError(kw.get("loc", "$"), f"{type(e).__name__}: {e}") from None
