"""Shared fixtures: small reference graphs and independent test oracles."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tools"))

import pytest

from hamdual.embedding import RotationEmbedding

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"

# Clockwise rotation systems, 1-based (the external convention).
K4_ROTATIONS = {1: [2, 3, 4], 2: [1, 4, 3], 3: [1, 2, 4], 4: [1, 3, 2]}

PRISM_ROTATIONS = {
    1: [2, 3, 4],
    2: [1, 5, 3],
    3: [1, 2, 6],
    4: [1, 6, 5],
    5: [2, 4, 6],
    6: [3, 5, 4],
}

CUBE_ROTATIONS = {
    1: [2, 5, 4],
    2: [1, 3, 6],
    3: [2, 4, 7],
    4: [1, 8, 3],
    5: [1, 6, 8],
    6: [2, 7, 5],
    7: [3, 8, 6],
    8: [4, 5, 7],
}


def embedding_from(rotations_1based):
    n = max(rotations_1based)
    return RotationEmbedding(
        [[w - 1 for w in rotations_1based[v]] for v in range(1, n + 1)]
    )


def canon_cycle(verts):
    """Rotate a cyclic vertex sequence so the smallest vertex comes first."""
    verts = list(verts)
    i = verts.index(min(verts))
    return tuple(verts[i:] + verts[:i])


def face_walk_oracle(rotations_1based):
    """Faces of a rotation system, walked on plain neighbour lists.

    Rule: directed edge (u, v) steps to (v, w) where w follows u in v's
    clockwise list.  Returns the set of faces as canonical vertex tuples
    (rotation-normalized, direction preserved).
    """
    faces = set()
    seen = set()
    for u, nbrs in rotations_1based.items():
        for v in nbrs:
            if (u, v) in seen:
                continue
            walk = []
            cur = (u, v)
            while cur not in seen:
                seen.add(cur)
                walk.append(cur[0])
                a, b = cur
                ring = rotations_1based[b]
                w = ring[(ring.index(a) + 1) % len(ring)]
                cur = (b, w)
            faces.add(canon_cycle(walk))
    return faces


def dual_brute_force(rotations_1based):
    """Dual adjacency computed from face incidence lists alone.

    Returns (faces, dual_edges) where faces is a sorted list of canonical
    face tuples and dual_edges is a multiset (sorted tuple list) of
    unordered face-index pairs, one per primal edge.
    """
    faces = sorted(face_walk_oracle(rotations_1based))
    edge_sides = {}
    for idx, face in enumerate(faces):
        for i, u in enumerate(face):
            v = face[(i + 1) % len(face)]
            key = (min(u, v), max(u, v))
            edge_sides.setdefault(key, []).append(idx)
    dual_edges = []
    for key in sorted(edge_sides):
        sides = edge_sides[key]
        assert len(sides) == 2, f"edge {key} borders {len(sides)} faces"
        dual_edges.append(tuple(sorted(sides)))
    return faces, sorted(dual_edges)


# Three diamond blocks strung between two hub vertices: any cycle can route
# through only two of the three branches, so the graph is not Hamiltonian.
THETA14_ROTATIONS = {
    1: [3, 11, 7],
    2: [6, 10, 14],
    3: [1, 5, 4],
    4: [3, 5, 6],
    5: [3, 6, 4],
    6: [4, 5, 2],
    7: [1, 9, 8],
    8: [7, 9, 10],
    9: [7, 10, 8],
    10: [8, 9, 2],
    11: [1, 13, 12],
    12: [11, 13, 14],
    13: [11, 14, 12],
    14: [12, 13, 2],
}


def _reflect(rotations):
    return [list(reversed(nbrs)) for nbrs in rotations]


def _block(emb, edge_id, hub_u, hub_w, offset, reflect):
    """Block rotations with the removed edge's slots pointing at the hubs."""
    x, y = emb.edge_endpoints(edge_id)
    rotations = _reflect(emb.rotations) if reflect else [list(r) for r in emb.rotations]
    out = []
    for v, nbrs in enumerate(rotations):
        row = []
        for t in nbrs:
            if v == x and t == y:
                row.append(hub_u)
            elif v == y and t == x:
                row.append(hub_w)
            else:
                row.append(t + offset)
        out.append(row)
    return out, x + offset, y + offset


def theta_compose(embs, edge_ids):
    """Three blocks strung between two hubs: never Hamiltonian.

    Each block is an embedding minus one edge; the freed slots attach to
    hub u (id 0) and hub w (id 1).  A cycle visits u once and so can use
    only two of the three branches, leaving one block unvisited.  Block
    reflections and hub orders are searched until the rotation system
    validates as planar.
    """
    from itertools import product

    from hamdual.embedding import RotationEmbedding
    from hamdual.errors import HamdualError

    for refl in product((False, True), repeat=3):
        offset = 2
        rows = []
        stubs = []
        for emb, k, r in zip(embs, edge_ids, refl):
            block, xs, ys = _block(emb, k, 0, 1, offset, r)
            rows.extend(block)
            stubs.append((xs, ys))
            offset += emb.n
        (x1, y1), (x2, y2), (x3, y3) = stubs
        for u_rot, w_rot in product(
            ([x1, x2, x3], [x1, x3, x2]), ([y1, y2, y3], [y1, y3, y2])
        ):
            try:
                return RotationEmbedding([u_rot, w_rot] + rows)
            except HamdualError:
                continue
    raise AssertionError("no planar arrangement found for theta composition")


def two_sum(emb1, k1, emb2, k2):
    """Join two embeddings across removed edges with a 2-edge cut."""
    from itertools import product

    from hamdual.embedding import RotationEmbedding
    from hamdual.errors import HamdualError

    a, b = emb1.edge_endpoints(k1)
    for reflect, swap in product((False, True), repeat=2):
        rot2 = _reflect(emb2.rotations) if reflect else [list(r) for r in emb2.rotations]
        c, d = emb2.edge_endpoints(k2)
        if swap:
            c, d = d, c
        off = emb1.n
        rows = []
        for v, nbrs in enumerate(emb1.rotations):
            rows.append(
                [
                    (c + off if v == a else d + off)
                    if (v in (a, b) and t == (b if v == a else a))
                    else t
                    for t in nbrs
                ]
            )
        for v, nbrs in enumerate(rot2):
            row = []
            for t in nbrs:
                if v == c and t == d:
                    row.append(a)
                elif v == d and t == c:
                    row.append(b)
                else:
                    row.append(t + off)
            rows.append(row)
        try:
            return RotationEmbedding(rows)
        except HamdualError:
            continue
    raise AssertionError("no planar arrangement found for 2-sum")


def enumerate_valid_trees(dual, triangle_map):
    """Brute force: every induced dominating subtree containing the root.

    Enumerates all face subsets containing the outer vertex; keeps those
    whose induced dual subgraph (all edges inside the subset, parallel
    copies included) is a tree and whose subset meets every vertex triple.
    Completely independent of the solver and checker internals.
    """
    from hamdual.certify import Certificate

    root = dual.outer_vertex
    others = [f for f in range(dual.face_count) if f != root]
    found = []
    for bits in range(1 << len(others)):
        vs = {root} | {others[i] for i in range(len(others)) if bits >> i & 1}
        induced = [k for fa, fb, k in dual.dual_edges if fa in vs and fb in vs]
        if len(induced) != len(vs) - 1:
            continue
        adj = {f: [] for f in vs}
        for k in induced:
            fa, fb, _ = dual.dual_edges[k]
            adj[fa].append(fb)
            adj[fb].append(fa)
        seen = {root}
        stack = [root]
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        if seen != vs:
            continue
        if all(
            any(f in vs for f in triple) for triple in triangle_map.triples
        ):
            found.append(
                Certificate(
                    root=root,
                    tree_vertices=frozenset(vs),
                    tree_edges=frozenset(induced),
                )
            )
    return found


@pytest.fixture
def k4():
    return embedding_from(K4_ROTATIONS)


@pytest.fixture
def prism():
    return embedding_from(PRISM_ROTATIONS)


@pytest.fixture
def cube():
    return embedding_from(CUBE_ROTATIONS)
