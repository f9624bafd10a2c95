"""File formats for graphs, tournaments, and decompositions.

Vertex labels are `inf` for the point at infinity and 0x-prefixed
lowercase hex for field elements.  The edge-list format starts with a
`# k=.. a=.. poly=.. n=..` header and has one `u v` line per edge
(`u > v` per arc for tournaments); it round-trips through parse_edges.
"""

from __future__ import annotations

import json

from .construct import PaleyLikeGraph, PaleyLikeTournament
from .gf2k import FieldCtx
from .mobius import INF, point_of_index, vertex_index
from .structure import HamiltonianDecomposition


def point_label(p) -> str:
    return "inf" if p is INF else f"{p:#x}"


def parse_point_label(s: str):
    if s == "inf":
        return INF
    return int(s, 16)


def _header(g) -> str:
    return f"# k={g.ctx.k} a={g.a.value:#x} poly={g.ctx.poly:#x} n={g.n}"


def write_edges(g: PaleyLikeGraph | PaleyLikeTournament) -> str:
    """Edge (or arc) list with header, one pair per line."""
    ctx = g.ctx
    lines = [_header(g)]
    directed = isinstance(g, PaleyLikeTournament)
    rows = g.arcs if directed else g.rows
    sep = " > " if directed else " "
    for i in range(g.n):
        row = rows[i]
        u = point_label(point_of_index(ctx, i))
        while row:
            low = row & -row
            j = low.bit_length() - 1
            row ^= low
            if directed or j > i:
                lines.append(f"{u}{sep}{point_label(point_of_index(ctx, j))}")
    return "\n".join(lines) + "\n"


def parse_edges(text: str):
    """Inverse of write_edges: (meta dict, directed flag, index-pair list)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0]
    if not head.startswith("# "):
        raise ValueError("missing edge-list header")
    meta = {}
    for part in head[2:].split():
        key, _, val = part.partition("=")
        meta[key] = int(val, 0)
    ctx = FieldCtx(meta["k"], meta["poly"])
    directed = any(">" in ln for ln in lines[1:])
    pairs = []
    for ln in lines[1:]:
        toks = ln.replace(">", " ").split()
        u, v = (parse_point_label(t) for t in toks)
        pairs.append((vertex_index(ctx, u), vertex_index(ctx, v)))
    return meta, directed, pairs


def write_dimacs(g: PaleyLikeGraph) -> str:
    """Standard DIMACS: `p edge n m` then `e u v` with 1-based indices."""
    if isinstance(g, PaleyLikeTournament):
        raise ValueError("DIMACS output is for undirected graphs only")
    lines = [f"p edge {g.n} {g.edge_count()}"]
    for i in range(g.n):
        row = g.rows[i] >> (i + 1) << (i + 1)  # keep j > i
        while row:
            low = row & -row
            lines.append(f"e {i + 1} {low.bit_length()}")
            row ^= low
    return "\n".join(lines) + "\n"


def write_matrix(g) -> str:
    """Row-major bit dump: one fixed-width hex line per adjacency row."""
    rows = g.arcs if isinstance(g, PaleyLikeTournament) else g.rows
    width = (g.n + 3) // 4
    return "\n".join(f"{r:0{width}x}" for r in rows) + "\n"


def write_json_graph(g) -> str:
    ctx = g.ctx
    directed = isinstance(g, PaleyLikeTournament)
    rows = g.arcs if directed else g.rows
    adj = []
    for i in range(g.n):
        row = rows[i]
        nbrs = []
        while row:
            low = row & -row
            nbrs.append(low.bit_length() - 1)
            row ^= low
        adj.append(nbrs)
    doc = {
        "schema": 1,
        "k": ctx.k,
        "a": f"{g.a.value:#x}",
        "poly": f"{ctx.poly:#x}",
        "n": g.n,
        "directed": directed,
        "vertices": [point_label(point_of_index(ctx, i)) for i in range(g.n)],
        "adjacency": adj,
    }
    return json.dumps(doc, indent=2) + "\n"


def write_decomposition(dec: HamiltonianDecomposition) -> str:
    """Header `p=<int> cycles=<int>`, then one space-separated cycle per line."""
    lines = [f"p={dec.p} cycles={len(dec.cycles)}"]
    for cyc in dec.cycles:
        lines.append(" ".join(point_label(v) for v in cyc))
    return "\n".join(lines) + "\n"
