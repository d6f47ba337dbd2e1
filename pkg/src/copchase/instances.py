"""Instance file formats: JSON documents and edge-list text.

JSON format (exact field names):

    {"directed": false,
     "vertices": ["v0", "v1"],
     "edges": [["v0", "v1"]],
     "gamble": {"v0": 0.3, "v1": 0.7}}

Edge-list format: one directive per line, ``#`` starts a comment. The first
directive must be ``directed`` or ``undirected``; ``e <u> <v>`` adds an edge
(vertices are created on first mention); ``p <v> <prob>`` assigns gamble
probability to an already-declared vertex. Vertices without a ``p`` line
default to probability 0.
"""
from __future__ import annotations

import json

from .errors import ParseError, ValidationError
from .graph import Gamble, Graph, build_graph, validate_gamble


def parse_instance(text: str, mode: str = "strict") -> tuple[Graph, Gamble]:
    """Parse an instance document in either format, fully validated.

    ``mode`` is passed to the gamble sum check ('strict' requires the
    probabilities to sum to 1, 'permissive' allows sub-distributions).
    """
    if text.lstrip().startswith("{"):
        return _parse_json(text, mode)
    return _parse_edge_list(text, mode)


def serialize_instance(g: Graph, gamble: Gamble) -> str:
    """Render (Graph, Gamble) as a JSON instance document.

    parse_instance(serialize_instance(g, gamble)) reproduces the instance up
    to the label/id mapping.
    """
    labels = g.labels if g.labels is not None else tuple(str(v) for v in range(g.vertex_count))
    if g.directed:
        edges = [(u, v) for u in range(g.vertex_count) for v in g.out_adj[u]]
    else:
        edges = [(u, v) for u in range(g.vertex_count) for v in g.out_adj[u] if u < v]
    doc = {
        "directed": g.directed,
        "vertices": list(labels),
        "edges": [[labels[u], labels[v]] for u, v in edges],
        "gamble": {labels[v]: gamble.p[v] for v in range(g.vertex_count)},
    }
    return json.dumps(doc)


def _reject_duplicate_keys(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise ParseError(f"duplicate key {key!r}")
        seen[key] = value
    return seen


def _parse_json(text, mode):
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as e:
        # e already formats as "msg: line L column C (char N)"
        raise ParseError(str(e)) from None

    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    for field in ("directed", "vertices", "edges", "gamble"):
        if field not in doc:
            raise ParseError(f"missing field {field!r}")
    directed = doc["directed"]
    if not isinstance(directed, bool):
        raise ParseError("'directed' must be true or false")
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(x, str) for x in vertices):
        raise ParseError("'vertices' must be a list of labels")
    if not vertices:
        raise ParseError("empty instance: no vertices")
    if len(set(vertices)) != len(vertices):
        raise ParseError("duplicate vertex label in 'vertices'")
    index = {name: i for i, name in enumerate(vertices)}

    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise ParseError("'edges' must be a list of label pairs")
    edges = []
    for item in raw_edges:
        if not (isinstance(item, list) and len(item) == 2):
            raise ParseError(f"edge {item!r} is not a two-label pair")
        u, v = item
        for x in (u, v):
            if x not in index:
                raise ParseError(f"edge {item!r} names unknown vertex {x!r}")
        edges.append((index[u], index[v]))

    raw_gamble = doc["gamble"]
    if not isinstance(raw_gamble, dict):
        raise ParseError("'gamble' must be an object mapping labels to probabilities")
    values = [0.0] * len(vertices)
    for name, x in raw_gamble.items():
        if name not in index:
            raise ParseError(f"gamble entry names unknown vertex {name!r}")
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ParseError(f"gamble entry for {name!r} is not a number")
        values[index[name]] = float(x)
    missing = [name for name in vertices if name not in raw_gamble]

    g = build_graph(directed, len(vertices), edges, labels=vertices)
    gamble = _validated_gamble(g, values, mode, missing)
    return g, gamble


def _parse_edge_list(text, mode):
    directed = None
    order: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    assigned: dict[int, float] = {}

    def intern(name):
        if name not in index:
            index[name] = len(order)
            order.append(name)
        return index[name]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if directed is None:
            if parts == ["directed"]:
                directed = True
            elif parts == ["undirected"]:
                directed = False
            else:
                raise ParseError(
                    "first directive must be 'directed' or 'undirected'", line=lineno
                )
            continue
        kind = parts[0]
        if kind == "e":
            if len(parts) != 3:
                raise ParseError("'e' takes two vertex names", line=lineno)
            edges.append((intern(parts[1]), intern(parts[2])))
        elif kind == "p":
            if len(parts) != 3:
                raise ParseError("'p' takes a vertex name and a probability", line=lineno)
            name = parts[1]
            if name not in index:
                raise ParseError(f"gamble line names undeclared vertex {name!r}", line=lineno)
            v = index[name]
            if v in assigned:
                raise ParseError(f"duplicate gamble entry for vertex {name!r}", line=lineno)
            try:
                assigned[v] = float(parts[2])
            except ValueError:
                raise ParseError(f"bad probability {parts[2]!r}", line=lineno) from None
        elif kind in ("directed", "undirected"):
            raise ParseError("duplicate graph-direction header", line=lineno)
        else:
            raise ParseError(f"unrecognized directive {kind!r}", line=lineno)

    if directed is None or not order:
        raise ParseError("empty instance: no vertices declared")

    values = [assigned.get(v, 0.0) for v in range(len(order))]
    missing = [name for name in order if index[name] not in assigned]
    g = build_graph(directed, len(order), edges, labels=order)
    gamble = _validated_gamble(g, values, mode, missing)
    return g, gamble


def _validated_gamble(g, values, mode, missing):
    try:
        return validate_gamble(g, values, mode)
    except ValidationError as e:
        if missing:
            shown = ", ".join(repr(x) for x in missing[:8])
            more = "" if len(missing) <= 8 else f" and {len(missing) - 8} more"
            raise ValidationError(
                f"{e} (vertices without a gamble entry default to 0: {shown}{more})"
            ) from None
        raise
