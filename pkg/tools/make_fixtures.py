#!/usr/bin/env python3
"""Regenerate the fixture files under fixtures/.

Small fixtures come from the rotation constants in hamdual.oracle.  The two
large non-Hamiltonian fixtures are constructed here:

* tutte46 - the classic 46-vertex graph: three copies of a 15-vertex
  fragment whose traversal always uses its apex attachment, joined at a
  central vertex that cannot serve three forced edges at once.
* bbl38 - a 38-vertex graph of the same family: two such fragments plus an
  8-vertex connector chosen so that no cycle can honour both forced apex
  edges.  The connector pattern below was found by exhaustive search and
  the non-Hamiltonicity of the result is re-established by oracle_dfs
  whenever the manifest is rebuilt.

Planar embeddings are extracted with networkx (a fixtures-only dependency;
the package itself never computes embeddings).  Run from the repo root:

    python tools/make_fixtures.py
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

import networkx as nx

from hamdual.embedding import RotationEmbedding
from hamdual.formats import serialize_rotation_text
from hamdual.oracle import SMALL_FIXTURES, oracle_dfs

THETA14 = {
    1: [3, 11, 7], 2: [6, 10, 14],
    3: [1, 5, 4], 4: [3, 5, 6], 5: [3, 6, 4], 6: [4, 5, 2],
    7: [1, 9, 8], 8: [7, 9, 10], 9: [7, 10, 8], 10: [8, 9, 2],
    11: [1, 13, 12], 12: [11, 13, 14], 13: [11, 14, 12], 14: [12, 13, 2],
}

# Tutte fragment: the 15-vertex piece of the Tutte graph hanging off its
# central vertex.  Attachments: apex (was joined to the centre) and two
# bases (were joined to the neighbouring fragments).
FRAGMENT_SOURCE_NODES = [1, 4, 5, 6, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32, 33]
FRAGMENT_APEX, FRAGMENT_B1, FRAGMENT_B2 = 1, 6, 23

# Connector pattern for bbl38, as a 10-vertex cubic planar graph in which
# vertices FA/FB stand for the two fragments; no Hamiltonian cycle of the
# pattern uses both marked apex edges (exhaustively checked in
# tests/test_fixtures.py).
CONNECTOR_ROTATIONS = [
    [5, 2, 4], [5, 9, 2], [0, 1, 8], [4, 8, 6], [3, 7, 0],
    [0, 7, 1], [9, 7, 3], [4, 6, 5], [2, 9, 3], [6, 8, 1],
]
CONNECTOR_FA, CONNECTOR_FA_APEX = 0, 5
CONNECTOR_FB, CONNECTOR_FB_APEX = 3, 6


def tutte_fragment():
    G = nx.tutte_graph()
    relabel = {v: i for i, v in enumerate(FRAGMENT_SOURCE_NODES)}
    F = nx.relabel_nodes(G.subgraph(FRAGMENT_SOURCE_NODES).copy(), relabel)
    return F, relabel[FRAGMENT_APEX], relabel[FRAGMENT_B1], relabel[FRAGMENT_B2]


def build_bbl38():
    frag, apex, b1, b2 = tutte_fragment()
    adj = {v: list(nbrs) for v, nbrs in enumerate(CONNECTOR_ROTATIONS)}
    FA, FB = CONNECTOR_FA, CONNECTOR_FB
    G = nx.Graph()
    rmap = {}
    nxt = 30
    for v in range(10):
        if v not in (FA, FB):
            rmap[v] = nxt
            nxt += 1
    for u in range(10):
        for w in adj[u]:
            if u < w and u not in (FA, FB) and w not in (FA, FB):
                G.add_edge(rmap[u], rmap[w])
    for a, b in frag.edges():
        G.add_edge(a, b)
        G.add_edge(a + 15, b + 15)
    others_a = [w for w in adj[FA] if w != CONNECTOR_FA_APEX]
    others_b = [w for w in adj[FB] if w != CONNECTOR_FB_APEX]
    G.add_edge(rmap[CONNECTOR_FA_APEX], apex)
    G.add_edge(rmap[CONNECTOR_FB_APEX], apex + 15)
    G.add_edge(rmap[others_a[0]], b1)
    G.add_edge(rmap[others_a[1]], b2)
    G.add_edge(rmap[others_b[0]], b1 + 15)
    G.add_edge(rmap[others_b[1]], b2 + 15)
    return G


def embedding_from_nx(G):
    planar, emb = nx.check_planarity(G)
    assert planar, "fixture graph must be planar"
    order = sorted(G.nodes())
    index = {v: i for i, v in enumerate(order)}
    rotations = [
        [index[w] for w in emb.neighbors_cw_order(v)] for v in order
    ]
    return RotationEmbedding(rotations)


def embedding_from_dict(rotations_1based):
    n = max(rotations_1based)
    return RotationEmbedding(
        [[w - 1 for w in rotations_1based[v]] for v in range(1, n + 1)]
    )


def main():
    fixtures = ROOT / "fixtures"
    fixtures.mkdir(exist_ok=True)

    embeddings = {}
    for name, rot in SMALL_FIXTURES.items():
        embeddings[name] = RotationEmbedding(rot)
    embeddings["theta14"] = embedding_from_dict(THETA14)
    embeddings["bbl38"] = embedding_from_nx(build_bbl38())
    embeddings["tutte46"] = embedding_from_nx(nx.tutte_graph())

    manifest = []
    for name, emb in embeddings.items():
        path = fixtures / f"{name}.rot"
        path.write_text(serialize_rotation_text(emb))
        verdict = oracle_dfs(emb)
        manifest.append(
            {
                "file": f"{name}.rot",
                "n": emb.n,
                "e": emb.edge_count,
                "f": emb.face_count,
                "hamiltonian": verdict.hamiltonian,
            }
        )
        print(f"{name}: n={emb.n} e={emb.edge_count} f={emb.face_count} "
              f"hamiltonian={verdict.hamiltonian}")
    (fixtures / "manifest.json").write_text(
        json.dumps({"instances": manifest}, indent=2, sort_keys=True) + "\n"
    )
    print("wrote", fixtures / "manifest.json")


if __name__ == "__main__":
    main()
