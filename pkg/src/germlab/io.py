"""JSON interchange for every structure, plus DOT export of germ groupoids.

Semigroup documents: {"labels": [...], "table": [[...]]} with
table[i][j] = index of the product of elements i and j.  Relations are bare
arrays of blocks.  Actions: {"space": n, "maps": {"<element>": [point or
null, ...]}}.  Graphs: {"vertices": n, "edges": [[tail, head], ...]}.
Groupoid documents list arrows, units, range/source/inverse arrays, the
composition triples and the basis catalog.  Functions are arrays of
[re, im] pairs indexed by arrow.
"""

from __future__ import annotations

import json

import numpy as np

from .actions import Action, DirectedGraph, PartialMap, validate_action
from .algebra import GroupoidFunction
from .errors import ParseError
from .groupoids import FiniteGroupoid, iso_interior, make_groupoid
from .semigroups import InverseSemigroup, validate_inverse_semigroup


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError("file", str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise ParseError("json", str(exc)) from exc


def load_semigroup(path: str) -> InverseSemigroup:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise ParseError("document", "expected a JSON object")
    table = doc.get("table")
    if not isinstance(table, list) or not table:
        raise ParseError("table", "expected a nonempty array of rows")
    n = len(table)
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"table[{i}]", f"expected a row of {n} entries")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise ParseError(f"table[{i}][{j}]", "expected an integer index")
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n:
            raise ParseError("labels", f"expected {n} labels")
    return validate_inverse_semigroup(table, labels)


def save_semigroup(S: InverseSemigroup, path: str) -> None:
    doc = {"labels": list(S.labels), "table": S.table.tolist()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def save_relation(blocks, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([sorted(b) for b in blocks], fh)
        fh.write("\n")


def load_relation(path: str):
    doc = _load_json(path)
    if not isinstance(doc, list):
        raise ParseError("document", "expected an array of blocks")
    for i, b in enumerate(doc):
        if not isinstance(b, list) or not all(isinstance(x, int) for x in b):
            raise ParseError(f"blocks[{i}]", "expected an array of indices")
    return [tuple(b) for b in doc]


def load_graph(path: str) -> DirectedGraph:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ParseError("vertices", "expected an object with a vertex count")
    n = doc["vertices"]
    if not isinstance(n, int) or n <= 0:
        raise ParseError("vertices", "expected a positive integer")
    edges = doc.get("edges", [])
    out = []
    for i, e in enumerate(edges):
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(v, int) and 0 <= v < n for v in e)):
            raise ParseError(f"edges[{i}]", "expected [tail, head] vertex indices")
        out.append((e[0], e[1]))
    return DirectedGraph(n, tuple(out))


def save_graph(graph: DirectedGraph, path: str) -> None:
    doc = {"vertices": graph.n_vertices, "edges": [list(e) for e in graph.edges]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def save_action(action: Action, path: str) -> None:
    doc = {
        "space": action.space_size,
        "maps": {str(s): [y for y in action.maps[s].images]
                 for s in action.semigroup.elements()},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_action(path: str, S: InverseSemigroup) -> Action:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "space" not in doc or "maps" not in doc:
        raise ParseError("document", "expected an object with space and maps")
    space = doc["space"]
    if not isinstance(space, int) or space < 0:
        raise ParseError("space", "expected a nonnegative integer")
    raw = doc["maps"]
    maps = []
    for s in S.elements():
        row = raw.get(str(s))
        if row is None or not isinstance(row, list) or len(row) != space:
            raise ParseError(f"maps[{s}]", f"expected {space} entries")
        for x in row:
            if x is not None and (not isinstance(x, int) or not 0 <= x < space):
                raise ParseError(f"maps[{s}]", "entries must be point indices or null")
        maps.append(PartialMap(tuple(row)))
    return validate_action(S, space, maps)


def save_groupoid(G: FiniteGroupoid, path: str) -> None:
    doc = {
        "arrows": G.n_arrows,
        "units": list(G.units),
        "r": list(G.r),
        "d": list(G.d),
        "inv": list(G.inv),
        "comp": [[g, h, gh] for (g, h), gh in sorted(G.comp.items())],
        "labels": list(G.labels),
        "basis": [{"label": label, "arrows": sorted(members)}
                  for label, members in G.basis],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_groupoid(path: str) -> FiniteGroupoid:
    doc = _load_json(path)
    for key in ("arrows", "r", "d", "inv", "comp"):
        if key not in doc:
            raise ParseError(key, "missing field")
    comp = {}
    for i, triple in enumerate(doc["comp"]):
        if not isinstance(triple, list) or len(triple) != 3:
            raise ParseError(f"comp[{i}]", "expected [g, h, gh]")
        comp[(triple[0], triple[1])] = triple[2]
    basis = None
    if "basis" in doc:
        basis = tuple((b["label"], frozenset(b["arrows"])) for b in doc["basis"])
    return make_groupoid(doc["r"], doc["d"], doc["inv"], comp,
                         doc.get("labels"), basis)


def save_function(f: GroupoidFunction, path: str) -> None:
    doc = [[float(np.real(v)), float(np.imag(v))] for v in f.values]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_function(path: str, G: FiniteGroupoid) -> GroupoidFunction:
    doc = _load_json(path)
    if not isinstance(doc, list) or len(doc) != G.n_arrows:
        raise ParseError("document", f"expected {G.n_arrows} [re, im] pairs")
    vals = []
    for i, pair in enumerate(doc):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"[{i}]", "expected [re, im]")
        vals.append(complex(pair[0], pair[1]))
    return GroupoidFunction(G, np.array(vals))


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def groupoid_dot(G: FiniteGroupoid) -> str:
    """DOT rendering: units as boxes, arrows as labeled edges, interior
    isotropy highlighted.  Nodes are ordered canonically for stable diffs."""
    inner = iso_interior(G)
    lines = ["digraph germs {"]
    for u in sorted(G.units):
        lines.append(f'  n{u} [shape=box,label="{_dot_escape(G.label(u))}"];')
    for a in sorted(G.arrows()):
        if a in G.units:
            continue
        style = ',color=red,penwidth=2' if a in inner else ""
        lines.append(f'  n{G.d[a]} -> n{G.r[a]} '
                     f'[label="{_dot_escape(G.label(a))}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(G: FiniteGroupoid, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(groupoid_dot(G))
