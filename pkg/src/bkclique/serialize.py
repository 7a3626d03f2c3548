"""Reading and writing graphs.

Native format (``.graph.json``)::

    {"directed": false,
     "vertices": [{"id": "1", "attr": [1.0]}, ...],
     "edges": [{"u": "1", "v": "2", "attr": [0.5]}, ...]}

A vertex ``attr`` of ``null`` is the null attribute.  GXL files (``.gxl``) from
the IAM graph database are read through a small subset loader.
"""

from __future__ import annotations

import json
import logging
import math
import os
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Mapping, Optional, Union

from .graph import AttributedGraph

log = logging.getLogger(__name__)

Source = Union[bytes, str]


class GraphFormatError(ValueError):
    """Malformed graph input; the message names the offending field or line."""


def _as_text(data: Source) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphFormatError(f"input is not UTF-8: {exc}") from None
    return data


def _attr_list(value, where: str):
    if not isinstance(value, list) or not value:
        raise GraphFormatError(f"{where}: attr must be a nonempty list of numbers")
    out = []
    for k, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise GraphFormatError(f"{where}[{k}]: {x!r} is not a number")
        if not math.isfinite(x):
            raise GraphFormatError(f"{where}[{k}]: {x!r} is not finite")
        out.append(float(x))
    return tuple(out)


def load_graph(data: Source) -> AttributedGraph:
    text = _as_text(data)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise GraphFormatError("top level must be an object")
    if doc.get("directed", False) is not False:
        raise GraphFormatError("directed: only undirected graphs (false) are supported")
    vertices = doc.get("vertices")
    edges = doc.get("edges", [])
    if not isinstance(vertices, list):
        raise GraphFormatError("vertices: missing or not a list")
    if not vertices:
        raise GraphFormatError("vertices: a graph needs at least one vertex")
    if not isinstance(edges, list):
        raise GraphFormatError("edges: not a list")

    ids, vattrs, index = [], [], {}
    for k, v in enumerate(vertices):
        where = f"vertices[{k}]"
        if not isinstance(v, dict) or "id" not in v:
            raise GraphFormatError(f"{where}: expected an object with an id")
        vid = v["id"]
        if not isinstance(vid, str):
            raise GraphFormatError(f"{where}.id: ids must be strings")
        if vid in index:
            raise GraphFormatError(f"{where}.id: duplicate vertex id {vid!r}")
        index[vid] = k
        ids.append(vid)
        raw = v.get("attr")
        vattrs.append(None if raw is None else _attr_list(raw, f"{where}.attr"))

    eattrs = {}
    for k, e in enumerate(edges):
        where = f"edges[{k}]"
        if not isinstance(e, dict):
            raise GraphFormatError(f"{where}: expected an object")
        try:
            u, v = index[e["u"]], index[e["v"]]
        except KeyError as exc:
            raise GraphFormatError(f"{where}: unknown or missing endpoint {exc}") from None
        if u == v:
            raise GraphFormatError(f"{where}: self-loop on {e['u']!r}")
        key = (min(u, v), max(u, v))
        if key in eattrs:
            raise GraphFormatError(
                f"{where}: duplicate edge {{{e['u']!r}, {e['v']!r}}}"
            )
        eattrs[key] = _attr_list(e.get("attr"), f"{where}.attr")

    nulls = [ids[k] for k, a in enumerate(vattrs) if a is None]
    if nulls:
        log.warning("vertices with null attributes: %s", ", ".join(nulls))
    return AttributedGraph(ids, vattrs, eattrs)


def graph_document(g: AttributedGraph) -> dict:
    def lst(a):
        return None if a is None else list(a)

    return {
        "directed": False,
        "vertices": [
            {"id": g.ids[i], "attr": lst(g.vertex_attr(i))} for i in g.vertices
        ],
        "edges": [
            {"u": g.ids[i], "v": g.ids[j], "attr": list(a)}
            for (i, j), a in g.edge_items()
        ],
    }


def save_graph(g: AttributedGraph) -> bytes:
    """Canonical UTF-8 JSON: vertices in index order, edges sorted by index."""
    return (json.dumps(graph_document(g), indent=2) + "\n").encode("utf-8")


# -- GXL -------------------------------------------------------------------

_NUMERIC = {"float": float, "int": int}


def _gxl_attrs(elem, owner: str, string_codes, structure_only: bool) -> list[float]:
    values = []
    for child in elem:
        if child.tag != "attr":
            raise GraphFormatError(f"{owner}: unsupported GXL construct <{child.tag}>")
        name = child.get("name", "")
        typed = list(child)
        if len(typed) != 1:
            raise GraphFormatError(f"{owner}: attr {name!r} must hold one typed value")
        kind, text = typed[0].tag, (typed[0].text or "").strip()
        if structure_only:
            continue
        if kind in _NUMERIC:
            try:
                values.append(float(_NUMERIC[kind](text)))
            except ValueError:
                raise GraphFormatError(f"{owner}: attr {name!r} has bad {kind} {text!r}") from None
        elif kind == "string":
            codes = (string_codes or {}).get(name)
            if codes is None:
                raise GraphFormatError(
                    f"{owner}: string attr {name!r} needs a code mapping"
                )
            if text not in codes:
                raise GraphFormatError(f"{owner}: no code for {name}={text!r}")
            values.append(float(codes[text]))
        else:
            raise GraphFormatError(f"{owner}: unsupported GXL construct <{kind}>")
    return values


def load_gxl(
    data: Source,
    string_codes: Optional[Mapping[str, Mapping[str, float]]] = None,
    structure_only: bool = False,
) -> AttributedGraph:
    """Read one GXL graph.

    Numeric node/edge attributes (``float``/``int``) are collected in
    declaration order into the attribute vector.  ``string_codes`` maps an
    attribute name to ``{string value: numeric code}``; without an entry a
    string attribute is an error.  Edges with no attributes get ``(1.0,)``.
    ``structure_only`` skips attribute parsing and gives every vertex and edge
    ``(1.0,)``, which is enough for counting.
    """
    raw = data.encode("utf-8") if isinstance(data, str) else data
    try:
        root = ET.fromstring(raw)
    except ET.ParseError as exc:
        line, col = exc.position
        raise GraphFormatError(f"invalid XML at line {line}, column {col}") from None
    if root.tag != "gxl":
        raise GraphFormatError(f"root element must be <gxl>, got <{root.tag}>")
    graphs = [c for c in root if c.tag == "graph"]
    others = [c.tag for c in root if c.tag != "graph"]
    if others:
        raise GraphFormatError(f"unsupported GXL construct <{others[0]}>")
    if len(graphs) != 1:
        raise GraphFormatError(f"expected exactly one <graph>, found {len(graphs)}")
    graph = graphs[0]
    if graph.get("edgemode", "undirected") in ("directed", "defaultdirected"):
        raise GraphFormatError("unsupported GXL construct: directed edgemode")
    if graph.get("hypergraph", "false") == "true":
        raise GraphFormatError("unsupported GXL construct: hypergraph")

    ids, vattrs, index = [], [], {}
    edges = []
    for child in graph:
        if child.tag == "node":
            nid = child.get("id")
            if nid is None or nid in index:
                raise GraphFormatError(f"node {nid!r}: missing or duplicate id")
            owner = f"node {nid!r}"
            vals = _gxl_attrs(child, owner, string_codes, structure_only)
            if structure_only:
                vals = [1.0]
            elif not vals:
                raise GraphFormatError(f"{owner}: no numeric attributes")
            index[nid] = len(ids)
            ids.append(nid)
            vattrs.append(tuple(vals))
        elif child.tag == "edge":
            if child.get("isdirected") == "true":
                raise GraphFormatError("unsupported GXL construct: directed edge")
            edges.append(child)
        elif child.tag == "attr":
            continue
        else:
            raise GraphFormatError(f"unsupported GXL construct <{child.tag}>")

    eattrs = {}
    for edge in edges:
        src, dst = edge.get("from"), edge.get("to")
        owner = f"edge {src!r}->{dst!r}"
        if src not in index or dst not in index:
            raise GraphFormatError(f"{owner}: unknown endpoint")
        u, v = index[src], index[dst]
        if u == v:
            raise GraphFormatError(f"{owner}: self-loop")
        vals = tuple(_gxl_attrs(edge, owner, string_codes, structure_only)) or (1.0,)
        key = (min(u, v), max(u, v))
        if key in eattrs:
            if eattrs[key] != vals:
                raise GraphFormatError(f"{owner}: conflicting duplicate edge")
            log.warning("%s: duplicate edge ignored", owner)
            continue
        eattrs[key] = vals
    if not ids:
        raise GraphFormatError("graph has no nodes")
    return AttributedGraph(ids, vattrs, eattrs)


def load_cxl(data: Source) -> list[tuple[str, Optional[str]]]:
    """``(file, class)`` entries of an IAM collection file (``train.cxl``)."""
    raw = data.encode("utf-8") if isinstance(data, str) else data
    try:
        root = ET.fromstring(raw)
    except ET.ParseError as exc:
        raise GraphFormatError(f"invalid collection XML: {exc}") from None
    return [(p.get("file"), p.get("class")) for p in root.iter("print") if p.get("file")]


# -- files and directories ---------------------------------------------------


def load_graph_file(path, **gxl_options) -> AttributedGraph:
    path = Path(path)
    data = path.read_bytes()
    try:
        if path.suffix.lower() == ".gxl":
            return load_gxl(data, **gxl_options)
        return load_graph(data)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from None


def save_graph_file(g: AttributedGraph, path) -> None:
    Path(path).write_bytes(save_graph(g))


def is_graph_file(name: str) -> bool:
    low = name.lower()
    return low.endswith(".graph.json") or low.endswith(".gxl")


def load_dataset(
    directory, collection: Optional[str] = None, **gxl_options
) -> list[tuple[str, AttributedGraph, Optional[str]]]:
    """Load ``(name, graph, class)`` triples from a directory.

    With a collection file (``collection``, or ``train.cxl`` when present)
    only the listed graphs are read, with their class labels; otherwise every
    ``.graph.json``/``.gxl`` file is read in name order without labels.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise GraphFormatError(f"{directory}: not a directory")
    if collection is None and (directory / "train.cxl").exists():
        collection = "train.cxl"
    if collection is not None:
        entries = load_cxl((directory / collection).read_bytes())
    else:
        entries = [(n, None) for n in sorted(os.listdir(directory)) if is_graph_file(n)]
    if not entries:
        raise GraphFormatError(f"{directory}: no graph files found")
    out = []
    for name, label in entries:
        g = load_graph_file(directory / name, **gxl_options)
        out.append((name, g, label))
    return out
