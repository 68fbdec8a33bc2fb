"""JSON interchange for semigroups, graphs, relation generators and
premorphisms.

Every document carries "kind" and "version": 1.  Indices are 0-based
row-major; mult[i][j] is the product of element i by element j.  Free
labels are lists of letter strings, the empty list being the identity.
"""

from __future__ import annotations

import json

from .actions import PartialAction, Premorphism
from .core import OpTableSemigroup
from .cover import CanonicalPath
from .relmonoid import Rel
from .resgraph import FiniteMonoid, FreeMonoid, ResGraph, Semilattice

VERSION = 1
KINDS = ("semigroup", "resgraph", "relgen", "premorphism")


class SchemaError(ValueError):
    """Document does not match the interchange schema."""


def _need(doc, key, kind):
    if key not in doc:
        raise SchemaError(f"{kind} document is missing {key!r}")
    return doc[key]


def load_path(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    return load_document(doc)


def load_document(doc):
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    kind = _need(doc, "kind", "any")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}")
    loader = {
        "semigroup": load_semigroup,
        "resgraph": load_resgraph,
        "relgen": load_relgen,
        "premorphism": load_premorphism,
    }[kind]
    return kind, loader(doc)


def load_semigroup(doc) -> OpTableSemigroup:
    elements = _need(doc, "elements", "semigroup")
    mult = _need(doc, "mult", "semigroup")
    plus = _need(doc, "plus", "semigroup")
    star = _need(doc, "star", "semigroup")
    try:
        return OpTableSemigroup(len(elements), mult, plus, star, list(elements))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def dump_semigroup(S: OpTableSemigroup) -> dict:
    return {
        "kind": "semigroup",
        "version": VERSION,
        "elements": [S.name(i) for i in range(S.n)],
        "mult": [list(row) for row in S.mult],
        "plus": list(S.plus),
        "star": list(S.star),
    }


def _load_semilattice(doc) -> Semilattice:
    elements = _need(doc, "elements", "semilattice")
    meet = _need(doc, "meet", "semilattice")
    try:
        return Semilattice(len(elements), meet, list(elements))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _dump_semilattice(sl: Semilattice) -> dict:
    return {
        "elements": [sl.name(i) for i in range(sl.n)],
        "meet": [list(row) for row in sl.meet],
    }


def _load_monoid(doc):
    kind = _need(doc, "kind", "monoid")
    if kind == "finite":
        elements = _need(doc, "elements", "monoid")
        mult = _need(doc, "mult", "monoid")
        ident = _need(doc, "identity", "monoid")
        try:
            return FiniteMonoid(len(elements), mult, ident, list(elements))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    if kind == "free":
        return FreeMonoid(tuple(_need(doc, "alphabet", "monoid")))
    raise SchemaError(f"unknown monoid kind {kind!r}")


def _dump_monoid(mon) -> dict:
    if mon.is_free:
        return {"kind": "free", "alphabet": list(mon.alphabet)}
    return {
        "kind": "finite",
        "elements": [mon.label_str(t) for t in mon.elements()],
        "mult": [list(row) for row in mon.mult],
        "identity": mon.identity,
    }


def _label_from_json(mon, raw):
    if mon.is_free:
        if not isinstance(raw, list):
            raise SchemaError(f"free label must be a list, not {raw!r}")
        return tuple(raw)
    if not isinstance(raw, int):
        raise SchemaError(f"finite label must be an int, not {raw!r}")
    return raw


def _label_to_json(mon, label):
    return list(label) if mon.is_free else label


def load_resgraph(doc) -> ResGraph:
    sl = _load_semilattice(_need(doc, "semilattice", "resgraph"))
    mon = _load_monoid(_need(doc, "monoid", "resgraph"))
    raw_edges = _need(doc, "edges", "resgraph")
    edges = []
    for item in raw_edges:
        edges.append((_need(item, "d", "edge"),
                      _label_from_json(mon, _need(item, "l", "edge")),
                      _need(item, "r", "edge")))
    restrict = {}
    for item in doc.get("restrict", []):
        c = edges[_need(item, "edge", "restrict")]
        restrict[(c, _need(item, "g", "restrict"))] = edges[_need(item, "to", "restrict")]
    corestrict = {}
    for item in doc.get("corestrict", []):
        c = edges[_need(item, "edge", "corestrict")]
        corestrict[(c, _need(item, "h", "corestrict"))] = edges[_need(item, "to", "corestrict")]
    try:
        return ResGraph(sl, mon, set(edges),
                        restrict if restrict else None,
                        corestrict if corestrict else None)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def dump_resgraph(G: ResGraph) -> dict:
    edges = G.sorted_edges()
    index = {c: i for i, c in enumerate(edges)}
    doc = {
        "kind": "resgraph",
        "version": VERSION,
        "semilattice": _dump_semilattice(G.sl),
        "monoid": _dump_monoid(G.mon),
        "edges": [{"d": c[0], "l": _label_to_json(G.mon, c[1]), "r": c[2]}
                  for c in edges],
    }
    if G.has_restrictions:
        doc["restrict"] = [
            {"edge": index[c], "g": g, "to": index[G.restrict(c, g)]}
            for c in edges for g in G.sl.below(c[0])]
        doc["corestrict"] = [
            {"edge": index[c], "h": h, "to": index[G.corestrict(c, h)]}
            for c in edges for h in G.sl.below(c[2])]
    return doc


def load_relgen(doc):
    n = _need(doc, "ground_size", "relgen")
    gens = []
    for pairs in _need(doc, "generators", "relgen"):
        try:
            gens.append(Rel.from_pairs(n, [tuple(p) for p in pairs]))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    return n, gens


def dump_relgen(n, gens) -> dict:
    return {
        "kind": "relgen",
        "version": VERSION,
        "ground_size": n,
        "generators": [[list(p) for p in g.pairs()] for g in gens],
    }


def load_premorphism(doc):
    mon = _load_monoid(_need(doc, "monoid", "premorphism"))
    if mon.is_free:
        raise SchemaError("premorphisms need a finite monoid")
    ground = _need(doc, "ground", "premorphism")
    raw_phi = _need(doc, "phi", "premorphism")
    if "semilattice" in ground:
        sl = _load_semilattice(ground["semilattice"])
        n = sl.n
    else:
        sl = None
        n = _need(ground, "size", "premorphism ground")
    phi = {}
    for key, pairs in raw_phi.items():
        try:
            t = int(key)
        except ValueError as exc:
            raise SchemaError(f"phi key {key!r} is not a label index") from exc
        try:
            phi[t] = Rel.from_pairs(n, [tuple(p) for p in pairs])
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    if sl is not None:
        return PartialAction(sl, mon, phi)
    return Premorphism(mon, n, phi)


def dump_premorphism(pm) -> dict:
    if isinstance(pm, PartialAction):
        ground = {"semilattice": _dump_semilattice(pm.sl)}
    else:
        ground = {"size": pm.ground}
    return {
        "kind": "premorphism",
        "version": VERSION,
        "monoid": _dump_monoid(pm.mon),
        "ground": ground,
        "phi": {str(t): [list(p) for p in rel.pairs()]
                for t, rel in sorted(pm.phi.items())},
    }


def dump_canonical(u: CanonicalPath) -> dict:
    if u.is_loop:
        return {"loop": u.d}
    return {"seq": list(u.entries)}


def load_canonical(doc) -> CanonicalPath:
    if "loop" in doc:
        return CanonicalPath.loop_at(doc["loop"])
    if "seq" in doc:
        return CanonicalPath(tuple(doc["seq"]))
    raise SchemaError("canonical form needs 'loop' or 'seq'")


def save(path, doc):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
