"""Edge-list and clustering file formats.

Edge list: one edge per line, ``u v`` or ``u v w``, whitespace separated.
Lines starting with ``#`` are comments. Two structured comments written by
:func:`write_edge_list` are understood on read:

``# isolated <id> <id> ...``
    vertices without incident edges, so round-trips keep them.
``# directed`` / ``# weighted``
    informational only; the caller's flags decide how the file is parsed.

Clustering file: one ``vertex cluster_id`` line per membership; overlapping
vertices appear on several lines.
"""

from __future__ import annotations

import os
from collections import defaultdict

import numpy as np

from .graph import Clustering, Graph, build_graph_arrays


class FormatError(ValueError):
    """Malformed input file."""

    def __init__(self, path, lineno, msg):
        super().__init__(f"{path}:{lineno}: {msg}")


def _parse_id(tok, path, lineno) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise FormatError(path, lineno, f"vertex id {tok!r} is not an integer") from None
    if v < 0:
        raise FormatError(path, lineno, f"negative vertex id {v}")
    return v


def read_edge_list(path, directed: bool = False, weighted: bool = False, strict: bool = False) -> Graph:
    src, dst, wts, isolated = [], [], [], []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if parts and parts[0] == "isolated":
                    isolated.extend(_parse_id(t, path, lineno) for t in parts[1:])
                continue
            toks = line.split()
            if len(toks) not in (2, 3):
                raise FormatError(path, lineno, f"expected 2 or 3 fields, got {len(toks)}")
            src.append(_parse_id(toks[0], path, lineno))
            dst.append(_parse_id(toks[1], path, lineno))
            if len(toks) == 3:
                try:
                    w = float(toks[2])
                except ValueError:
                    raise FormatError(path, lineno, f"non-numeric weight {toks[2]!r}") from None
                if weighted and not w > 0:
                    raise FormatError(path, lineno, f"non-positive weight {w}")
                wts.append(w)
            elif weighted:
                wts.append(1.0)
    return build_graph_arrays(
        np.asarray(src, dtype=np.int64),
        np.asarray(dst, dtype=np.int64),
        np.asarray(wts, dtype=np.float64) if weighted else None,
        directed=directed,
        nodes=isolated,
        strict=strict,
    )


def write_edge_list(g: Graph, path) -> None:
    ids = g.vertex_ids
    src, dst, w = g.edge_arrays()
    ensure_parent(path)
    with open(path, "w") as fh:
        flags = [f for f, on in (("directed", g.directed), ("weighted", g.weighted)) if on]
        fh.write(f"# n={g.n} m={g.m}{' ' + ' '.join(flags) if flags else ''}\n")
        lonely = ids[(g.degrees == 0) & _no_in_edges(g)]
        for start in range(0, len(lonely), 64):
            fh.write("# isolated " + " ".join(map(str, lonely[start : start + 64].tolist())) + "\n")
        us, vs = ids[src].tolist(), ids[dst].tolist()
        if g.weighted:
            fh.writelines(f"{u} {v} {x!r}\n" for u, v, x in zip(us, vs, w.tolist()))
        else:
            fh.writelines(f"{u} {v}\n" for u, v in zip(us, vs))


def _no_in_edges(g: Graph) -> np.ndarray:
    if not g.directed:
        return np.ones(g.n, dtype=bool)
    return np.bincount(g.indices, minlength=g.n) == 0


def read_clustering(path, graph: Graph | None = None) -> Clustering:
    """Read a clustering file.

    With ``graph`` the vertex universe is the graph's; every graph vertex must
    appear. Without it, the universe is the set of vertex ids in the file.
    """
    pairs = defaultdict(list)
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) != 2:
                raise FormatError(path, lineno, f"expected 'vertex cluster', got {len(toks)} fields")
            v = _parse_id(toks[0], path, lineno)
            pairs[v].append(toks[1])
    if graph is not None:
        ids = graph.vertex_ids
        unknown = set(pairs) - set(ids.tolist())
        if unknown:
            raise ValueError(f"{path}: {len(unknown)} vertex id(s) not in graph, e.g. {min(unknown)}")
    else:
        ids = np.asarray(sorted(pairs), dtype=np.int64)
    names: dict[str, int] = {}
    memberships = []
    for v in ids.tolist():
        if v not in pairs:
            raise ValueError(f"{path}: vertex {v} has no cluster")
        memberships.append([names.setdefault(c, len(names)) for c in pairs[v]])
    return Clustering(memberships, ids)


def write_clustering(c: Clustering, path) -> None:
    ids = c.vertex_ids.tolist()
    ensure_parent(path)
    with open(path, "w") as fh:
        for v, ms in zip(ids, c.memberships):
            for cid in ms:
                fh.write(f"{v} {cid}\n")


def ensure_parent(path) -> None:
    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)
