"""JSON input formats for algebras, modules, complexes and chain maps.

One self-describing textual format; matrices are row-major integer
arrays reduced mod p on load.  References to other documents may be a
file path (resolved relative to the referring file), a built-in fixture
name, or an inline document.
"""

from __future__ import annotations

import json
import os

import numpy as np

from . import fixtures
from .algebra import Algebra, Field
from .complexes import ChainMap, Complex, Tail, chain_map
from .errors import ParseError
from .modules import Module


def _mat(data, p: int) -> np.ndarray:
    return np.asarray(data, dtype=np.int64) % p


def _fail(msg: str, path: str | None = None) -> ParseError:
    return ParseError(msg, line=1, column=1, path=path)


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(str(exc), line=0, column=0, path=path) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno,
                         path=path) from exc
    if not isinstance(doc, dict):
        raise _fail("top-level document must be a JSON object", path)
    return doc


def _require(doc: dict, keys, path=None) -> None:
    for key in keys:
        if key not in doc:
            raise _fail(f"missing required field {key!r}", path)


# Algebras compare by identity, so identical presentations loaded from
# different parts of a document must resolve to one shared object.
_ALGEBRA_INTERN: dict = {}


def algebra_from_doc(doc: dict, path=None) -> Algebra:
    _require(doc, ("p", "basis", "mul", "unit", "idempotents", "radical"), path)
    p = int(doc["p"])
    key = (p, _mat(doc["mul"], p).tobytes(), _mat(doc["unit"], p).tobytes(),
           tuple(doc["idempotents"]), tuple(doc["radical"]))
    if key in _ALGEBRA_INTERN:
        return _ALGEBRA_INTERN[key]
    alg = Algebra(
        field=Field(p),
        dim=len(doc["basis"]),
        basis_labels=tuple(doc["basis"]),
        mul=_mat(doc["mul"], p),
        unit=_mat(doc["unit"], p),
        idempotents=tuple(doc["idempotents"]),
        radical_basis=tuple(doc["radical"]),
        name=doc.get("name", path or "algebra"),
    )
    alg.validate()
    _ALGEBRA_INTERN[key] = alg
    return alg


def algebra_to_doc(alg: Algebra) -> dict:
    return {
        "p": alg.field.p,
        "basis": list(alg.basis_labels),
        "mul": alg.mul.tolist(),
        "unit": alg.unit.tolist(),
        "idempotents": list(alg.idempotents),
        "radical": list(alg.radical_basis),
        "name": alg.name,
    }


def _resolve(ref, loader, builtin, base=None):
    """Reference: inline dict, builtin fixture name, or file path."""
    if isinstance(ref, dict):
        return loader(ref, None)
    if not isinstance(ref, str):
        raise _fail(f"bad reference {ref!r}", base)
    try:
        return builtin(ref)
    except KeyError:
        pass
    path = ref if os.path.isabs(ref) or base is None else \
        os.path.join(os.path.dirname(base), ref)
    return loader(load_json(path), path)


def _builtin_algebra(name: str) -> Algebra:
    return fixtures.BUILTIN_ALGEBRAS[name]()


def load_algebra(ref, base=None) -> Algebra:
    return _resolve(ref, algebra_from_doc, _builtin_algebra, base)


def module_from_doc(doc: dict, path=None) -> Module:
    _require(doc, ("algebra", "dim", "action"), path)
    alg = load_algebra(doc["algebra"], path)
    p = alg.field.p
    mod = Module(alg, int(doc["dim"]),
                 tuple(_mat(m, p) for m in doc["action"]),
                 name=doc.get("name", path or "module"))
    mod.validate()
    return mod


def module_to_doc(mod: Module, algebra_ref=None) -> dict:
    return {
        "algebra": algebra_ref if algebra_ref is not None
        else algebra_to_doc(mod.algebra),
        "dim": mod.dim,
        "action": [m.tolist() for m in mod.action],
        "name": mod.name,
    }


def load_module(ref, base=None) -> Module:
    return _resolve(ref, module_from_doc, fixtures.builtin_module, base)


def _tail_from_doc(doc, alg, path):
    if doc is None:
        return None, None
    _require(doc, ("period", "terms", "diffs"), path)
    p = alg.field.p
    terms = tuple(load_module(t, path) for t in doc["terms"])
    diffs = tuple(_mat(d, p) for d in doc["diffs"])
    seam = _mat(doc["seam"], p) if "seam" in doc else None
    if len(terms) != doc["period"] or len(diffs) != doc["period"]:
        raise _fail("tail terms/diffs length must equal the period", path)
    return Tail(int(doc["period"]), terms, diffs), seam


def complex_from_doc(doc: dict, path=None) -> Complex:
    _require(doc, ("window",), path)
    win = doc["window"]
    _require(win, ("lo", "hi", "terms", "diffs"), path)
    lo, hi = int(win["lo"]), int(win["hi"])
    terms = [load_module(t, path) for t in win["terms"]]
    if len(terms) != hi - lo + 1:
        raise _fail("window terms must cover lo..hi", path)
    if not terms:
        raise _fail("empty window", path)
    alg = terms[0].algebra
    p = alg.field.p
    diffs = [_mat(d, p) for d in win["diffs"]]
    if len(diffs) != max(hi - lo, 0):
        raise _fail("window needs one differential per adjacent pair", path)
    neg_tail, neg_seam = _tail_from_doc(doc.get("neg_tail"), alg, path)
    pos_tail, pos_seam = _tail_from_doc(doc.get("pos_tail"), alg, path)
    return Complex.build(
        alg, lo, hi,
        {lo + i: t for i, t in enumerate(terms)},
        {lo + 1 + i: d for i, d in enumerate(diffs)},
        neg_tail, pos_tail, neg_seam, pos_seam)


def complex_to_doc(cx: Complex, algebra_ref=None) -> dict:
    mdoc = lambda m: module_to_doc(m, algebra_ref)
    doc = {
        "window": {
            "lo": cx.lo,
            "hi": cx.hi,
            "terms": [mdoc(cx.term(n)) for n in range(cx.lo, cx.hi + 1)],
            "diffs": [cx.diff(n).tolist() for n in range(cx.lo + 1, cx.hi + 1)],
        }
    }
    if cx.neg_tail is not None:
        doc["neg_tail"] = {
            "period": cx.neg_tail.period,
            "terms": [mdoc(t) for t in cx.neg_tail.terms],
            "diffs": [d.tolist() for d in cx.neg_tail.diffs],
            "seam": cx.diff(cx.lo).tolist(),
        }
    if cx.pos_tail is not None:
        doc["pos_tail"] = {
            "period": cx.pos_tail.period,
            "terms": [mdoc(t) for t in cx.pos_tail.terms],
            "diffs": [d.tolist() for d in cx.pos_tail.diffs],
            "seam": cx.diff(cx.hi + 1).tolist(),
        }
    return doc


def load_complex(ref, base=None) -> Complex:
    return _resolve(ref, complex_from_doc, fixtures.builtin_complex, base)


def chain_map_from_doc(doc: dict, path=None) -> ChainMap:
    _require(doc, ("source", "target", "components"), path)
    src = load_complex(doc["source"], path)
    tgt = load_complex(doc["target"], path)
    p = src.algebra.p
    comps = {int(n): _mat(m, p) for n, m in doc["components"].items()}
    neg = pos = None
    tails = doc.get("tail_components") or {}
    if "neg" in tails:
        neg = (int(tails["neg"]["period"]),
               tuple(_mat(b, p) for b in tails["neg"]["blocks"]))
    if "pos" in tails:
        pos = (int(tails["pos"]["period"]),
               tuple(_mat(b, p) for b in tails["pos"]["blocks"]))
    degs = sorted(comps) or [0]
    return chain_map(src, tgt, comps, degs[0], degs[-1], neg, pos)


def chain_map_to_doc(f: ChainMap, source_ref=None, target_ref=None) -> dict:
    doc = {
        "source": source_ref if source_ref is not None
        else complex_to_doc(f.source),
        "target": target_ref if target_ref is not None
        else complex_to_doc(f.target),
        "components": {str(n): f.component(n).tolist()
                       for n in range(f.clo, f.chi + 1)},
    }
    tails = {}
    if f.neg is not None:
        tails["neg"] = {"period": f.neg[0],
                        "blocks": [b.tolist() for b in f.neg[1]]}
    if f.pos is not None:
        tails["pos"] = {"period": f.pos[0],
                        "blocks": [b.tolist() for b in f.pos[1]]}
    if tails:
        doc["tail_components"] = tails
    return doc


def load_chain_map(ref, base=None) -> ChainMap:
    def _no_builtin(name):
        raise KeyError(name)
    return _resolve(ref, chain_map_from_doc, _no_builtin, base)


_KIND_KEYS = (
    ("mul", "algebra"),
    ("action", "module"),
    ("window", "complex"),
    ("components", "map"),
)


def detect_kind(doc: dict) -> str:
    for key, kind in _KIND_KEYS:
        if key in doc:
            return kind
    raise _fail("cannot determine document kind "
                "(expected one of: mul, action, window, components)")


def load_any(path: str):
    doc = load_json(path)
    kind = detect_kind(doc)
    loader = {"algebra": algebra_from_doc, "module": module_from_doc,
              "complex": complex_from_doc, "map": chain_map_from_doc}[kind]
    return kind, loader(doc, path)
