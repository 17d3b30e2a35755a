"""JSON serialization of complexes, categories, functors, SDRs and twisted
complexes.

Every document carries ``format_version`` and ``type``.  Scalars are strings
``"p/q"`` (``"p"`` when integral).  Graded spaces are ``{degree: [labels]}``;
labels are JSON values with tuples written as lists.  Basis elements inside
tables are references ``[source_index, target_index, label_index]`` into the
object list and the hom basis.  Output is canonical (sorted keys, sorted
entries), so serialize -> parse -> serialize is byte-identical.
"""

import json
from fractions import Fraction

from .category import AInftyCategory
from .dg import Complex
from .functors import AInftyFunctor
from .graded import GradedMap, GradedVectorSpace, MultilinearMap, format_scalar, parse_scalar
from .hpt import SDRData
from .shifts import SumObject
from .twisted import Tw, TwistedComplex

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Malformed or unsupported input document."""


# ---------------------------------------------------------------------------
# primitives


def _label_out(lab):
    if isinstance(lab, tuple):
        return [_label_out(x) for x in lab]
    if isinstance(lab, (str, int)) and not isinstance(lab, bool):
        return lab
    raise TypeError(f"label {lab!r} is not serializable")


def _label_in(x):
    if isinstance(x, list):
        return tuple(_label_in(y) for y in x)
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return x
    raise ParseError(f"bad label {x!r}")


def _obj_out(x):
    if isinstance(x, SumObject):
        return [[_label_out(b), r] for b, r in x.summands]
    return _label_out(x)


def _obj_in(x):
    if isinstance(x, list) and x and all(isinstance(s, list) and len(s) == 2
                                         and isinstance(s[1], int) for s in x):
        return SumObject(tuple((_label_in(b), r) for b, r in x))
    return _label_in(x)


def _scalar_in(x):
    try:
        return parse_scalar(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad scalar {x!r}") from exc


def _norm(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def space_out(space):
    out = {}
    for lab, d in space.items():
        out.setdefault(str(d), []).append(_label_out(lab))
    return {"window": list(space.window), "degrees": out}


def space_in(doc):
    try:
        basis = []
        for d in sorted(doc["degrees"], key=int):
            basis.extend((_label_in(lab), int(d)) for lab in doc["degrees"][d])
        return GradedVectorSpace(basis, window=tuple(doc["window"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graded space: {exc}") from exc


def matrix_out(mat):
    return [[format_scalar(x) for x in row] for row in mat]


def matrix_in(rows):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows")
    return [[_scalar_in(x) for x in row] for row in rows]


def _doc(kind, body):
    body = dict(body)
    body["format_version"] = FORMAT_VERSION
    body["type"] = kind
    return body


def _check(doc, kind):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {doc.get('format_version')!r}")
    if doc.get("type") != kind:
        raise ParseError(f"expected a {kind!r} document, got {doc.get('type')!r}")


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# complexes


def complex_out(X):
    return _doc("complex", {
        "name": X.name,
        "dims": {str(d): n for d, n in X.dims.items()},
        "diff": {str(d): matrix_out(m) for d, m in X.diff.items()},
    })


def complex_in(doc):
    _check(doc, "complex")
    try:
        return Complex(doc["name"], {int(d): n for d, n in doc["dims"].items()},
                       {int(d): matrix_in(m) for d, m in doc.get("diff", {}).items()})
    except KeyError as exc:
        raise ParseError(f"complex is missing {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad complex: {exc}") from exc


# ---------------------------------------------------------------------------
# categories


class _Refs:
    """Key <-> [source_index, target_index, label_index] for one category."""

    def __init__(self, C):
        self.C = C
        self.obj = {x: i for i, x in enumerate(C.objects)}

    def out(self, key):
        x, y, lab = key
        return [self.obj[x], self.obj[y], self.C.hom(x, y).index(lab)]

    def inp(self, ref):
        try:
            i, j, t = ref
            x, y = self.C.objects[i], self.C.objects[j]
            return (x, y, self.C.hom(x, y).labels[t])
        except (ValueError, IndexError, TypeError) as exc:
            raise ParseError(f"bad basis reference {ref!r}") from exc


def _vec_out(vec, refs):
    return sorted([refs.out(k), format_scalar(c)] for k, c in vec.items())


def _vec_in(items, refs):
    out = {}
    for ref, c in items:
        out[refs.inp(ref)] = _norm(_scalar_in(c))
    return out


def _table_out(table, src_refs, tgt_refs):
    rows = [[[src_refs.out(k) for k in chain], _vec_out(vec, tgt_refs)]
            for chain, vec in table.items()]
    return sorted(rows)


def _table_in(rows, src_refs, tgt_refs):
    out = {}
    for chain, vec in rows:
        out[tuple(src_refs.inp(r) for r in chain)] = _vec_in(vec, tgt_refs)
    return out


def category_out(C):
    refs = _Refs(C)
    homs = []
    for (x, y), space in C.homs.items():
        homs.append({"source": refs.obj[x], "target": refs.obj[y], "space": space_out(space)})
    homs.sort(key=lambda h: (h["source"], h["target"]))
    products = [{"arity": k, "entries": _table_out(m.table, refs, refs)}
                for k, m in sorted(C.products.items())]
    units = sorted(({"object": refs.obj[x], "vector": _vec_out(u, refs)}
                    for x, u in C.units.items()), key=lambda u: u["object"])
    return _doc("category", {
        "objects": [_obj_out(x) for x in C.objects],
        "presentation": C.presentation,
        "arity_bound": C.arity_bound,
        "convention": C.convention,
        "homs": homs,
        "products": products,
        "units": units,
    })


def category_in(doc):
    _check(doc, "category")
    try:
        objects = [_obj_in(x) for x in doc["objects"]]
        homs = {}
        for h in doc["homs"]:
            homs[(objects[h["source"]], objects[h["target"]])] = space_in(h["space"])
        shell = AInftyCategory(objects, homs, {}, presentation=doc["presentation"],
                               arity_bound=doc["arity_bound"], validate=False)
        refs = _Refs(shell)
        products = {}
        for p in doc["products"]:
            products[int(p["arity"])] = _table_in(p["entries"], refs, refs)
        units = {objects[u["object"]]: _vec_in(u["vector"], refs) for u in doc.get("units", [])}
        return AInftyCategory(objects, homs, products, presentation=doc["presentation"],
                              arity_bound=doc["arity_bound"], units=units,
                              convention=doc.get("convention"))
    except ParseError:
        raise
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ParseError(f"bad category document: {exc}") from exc


# ---------------------------------------------------------------------------
# functors


def functor_body(F):
    src, tgt = _Refs(F.source), _Refs(F.target)
    return {
        "object_map": sorted([src.obj[x], tgt.obj[y]] for x, y in F.object_map.items()),
        "arity_bound": F.arity_bound,
        "components": [{"arity": k, "entries": _table_out(m.table, src, tgt)}
                       for k, m in sorted(F.components.items())],
    }


def functor_from_body(body, source, target):
    src, tgt = _Refs(source), _Refs(target)
    try:
        omap = {source.objects[i]: target.objects[j] for i, j in body["object_map"]}
        comps = {int(c["arity"]): _table_in(c["entries"], src, tgt) for c in body["components"]}
        return AInftyFunctor(source, target, omap, comps, arity_bound=body["arity_bound"])
    except ParseError:
        raise
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ParseError(f"bad functor: {exc}") from exc


def functor_out(F):
    body = functor_body(F)
    body["source"] = category_out(F.source)
    body["target"] = category_out(F.target)
    return _doc("functor", body)


def functor_in(doc):
    _check(doc, "functor")
    try:
        source, target = category_in(doc["source"]), category_in(doc["target"])
    except KeyError as exc:
        raise ParseError(f"functor is missing {exc}") from exc
    return functor_from_body(doc, source, target)


# ---------------------------------------------------------------------------
# SDRs


def _gmap_out(g):
    blocks = {}
    for d in g.source.degrees():
        mat = g.block(d)
        if any(x for row in mat for x in row):
            blocks[str(d)] = matrix_out(mat)
    return {"degree": g.degree, "blocks": blocks}


def _gmap_in(doc, source, target, degree):
    if doc.get("degree") != degree:
        raise ParseError(f"map has degree {doc.get('degree')!r}, expected {degree}")
    blocks = {int(d): matrix_in(m) for d, m in doc.get("blocks", {}).items()}
    for d, m in blocks.items():
        rows, cols = len(target.basis(d + degree)), len(source.basis(d))
        if len(m) != rows or any(len(r) != cols for r in m):
            raise ParseError(f"block in degree {d} has the wrong shape")
    return GradedMap.from_blocks(source, target, degree, blocks)


def sdr_body(s):
    refs = _Refs(s.big)
    pairs = []
    for (x, y) in s.pairs():
        iota, pi, h = s.maps(x, y)
        pairs.append({
            "source": refs.obj[x], "target": refs.obj[y],
            "small": space_out(s.small(x, y)),
            "iota": _gmap_out(iota), "pi": _gmap_out(pi), "h": _gmap_out(h),
        })
    pairs.sort(key=lambda p: (p["source"], p["target"]))
    return {"pairs": pairs}


def sdr_from_body(body, big):
    small, iota, pi, h = {}, {}, {}, {}
    try:
        for p in body["pairs"]:
            x, y = big.objects[p["source"]], big.objects[p["target"]]
            sm = space_in(p["small"])
            bg = big.hom(x, y)
            small[(x, y)] = sm
            iota[(x, y)] = _gmap_in(p["iota"], sm, bg, 0)
            pi[(x, y)] = _gmap_in(p["pi"], bg, sm, 0)
            h[(x, y)] = _gmap_in(p["h"], bg, bg, -1)
    except ParseError:
        raise
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ParseError(f"bad SDR: {exc}") from exc
    return SDRData(big, small, iota, pi, h)


def sdr_out(s):
    body = sdr_body(s)
    body["big"] = category_out(s.big)
    return _doc("sdr", body)


def sdr_in(doc):
    _check(doc, "sdr")
    if "big" not in doc:
        raise ParseError("SDR is missing 'big'")
    return sdr_from_body(doc, category_in(doc["big"]))


# ---------------------------------------------------------------------------
# twisted complexes


def twisted_out(tw, complexes, morphisms=()):
    """``complexes`` are TwistedComplex objects over ``tw``; ``morphisms`` are
    optional ``(source_index, target_index, vector)`` triples."""
    items = []
    for t in complexes:
        phi = sorted(([i, j, _label_out(lab), format_scalar(c)]
                      for (_, _, (i, j, lab)), c in t.phi.items()), key=json.dumps)
        items.append({"name": t.name, "object": _obj_out(t.obj), "phi": phi})
    morph = []
    for si, ti, vec in morphisms:
        morph.append({"source": si, "target": ti, "value": sorted(
            ([i, j, _label_out(lab), format_scalar(c)] for (_, _, (i, j, lab)), c in vec.items()),
            key=json.dumps)})
    return _doc("twisted", {
        "convention": tw.a,
        "base": category_out(tw.base),
        "complexes": items,
        "morphisms": morph,
    })


def twisted_in(doc, check=True):
    """Returns (Tw context, [TwistedComplex], [(source, target, vector)])."""
    _check(doc, "twisted")
    try:
        tw = Tw(category_in(doc["base"]), doc["convention"])
        out = []
        for item in doc["complexes"]:
            obj = _obj_in(item["object"])
            if not isinstance(obj, SumObject):
                raise ParseError("twisted complex object must be a list of [label, shift]")
            phi = {(obj, obj, (i, j, _label_in(lab))): _norm(_scalar_in(c))
                   for i, j, lab, c in item["phi"]}
            out.append(tw.twisted(item["name"], obj, phi, check=check))
        morph = []
        for m in doc.get("morphisms", []):
            P, Q = out[m["source"]], out[m["target"]]
            vec = {(P.obj, Q.obj, (i, j, _label_in(lab))): _norm(_scalar_in(c))
                   for i, j, lab, c in m["value"]}
            morph.append((P, Q, vec))
        return tw, out, morph
    except ParseError:
        raise
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ParseError(f"bad twisted document: {exc}") from exc


# ---------------------------------------------------------------------------
# corpus instances


def instance_out(inst):
    body = {
        "name": inst.name,
        "complexes": [complex_out(X) for X in inst.complexes],
        "category": category_out(inst.category),
        "has_m3": inst.has_m3,
    }
    if inst.sdr is not None:
        body["sdr"] = sdr_body(inst.sdr)
    if inst.model is not None:
        body["model"] = category_out(inst.model)
        body["functor"] = functor_body(inst.functor)
    return _doc("instance", body)


def instance_in(doc):
    from .category import suspended
    from .corpus import Instance

    _check(doc, "instance")
    try:
        cxs = [complex_in(c) for c in doc["complexes"]]
        C = category_in(doc["category"])
        inst = Instance(doc["name"], cxs, C)
        if "sdr" in doc:
            inst.sdr = sdr_from_body(doc["sdr"], C)
        if "model" in doc:
            inst.model = category_in(doc["model"])
            inst.functor = functor_from_body(doc["functor"], inst.model, suspended(C))
        return inst
    except ParseError:
        raise
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad instance document: {exc}") from exc


def key_out(key):
    return [_obj_out(key[0]), _obj_out(key[1]), _label_out(key[2])]


def vector_out(vec):
    return sorted(([key_out(k), format_scalar(c)] for k, c in vec.items()), key=json.dumps)


def report_out(kind, data):
    return _doc(kind, data)


# ---------------------------------------------------------------------------
# generic entry points

READERS = {
    "complex": complex_in,
    "category": category_in,
    "functor": functor_in,
    "sdr": sdr_in,
    "twisted": twisted_in,
    "instance": instance_in,
}


def read(text):
    """Parse any supported document; returns (type, object)."""
    doc = loads(text)
    if not isinstance(doc, dict) or doc.get("type") not in READERS:
        raise ParseError(f"unknown document type {doc.get('type') if isinstance(doc, dict) else None!r}")
    return doc["type"], READERS[doc["type"]](doc)


def read_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return read(text)


def write_file(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
