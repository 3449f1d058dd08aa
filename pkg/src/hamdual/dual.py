"""Dual graph of an embedded cubic planar graph.

Faces become vertices; every primal edge k yields exactly one dual edge,
which reuses k as its id, joining the two faces flanking k.  Around every
primal vertex the three incident faces are pairwise adjacent, forming a
triangle in the dual; the triangle map records those triples.

Faces meeting along two or more primal edges (2-edge-cuts) produce parallel
dual edges.  They are kept as distinct edges and reported as a structured
warning, not an error: every edge-level rule downstream treats each copy
separately.
"""

from .errors import IndexOutOfRange


class DualGraph:
    """Immutable dual of a RotationEmbedding with a chosen outer face."""

    def __init__(self, face_count, dual_edges, outer_vertex, parallel_pairs):
        self.face_count = face_count
        self.dual_edges = tuple(dual_edges)
        self.outer_vertex = outer_vertex
        self.parallel_dual_edges = tuple(parallel_pairs)
        adjacency = [[] for _ in range(face_count)]
        for fa, fb, k in self.dual_edges:
            adjacency[fa].append((fb, k))
            adjacency[fb].append((fa, k))
        self.adjacency = tuple(tuple(sorted(a, key=lambda t: t[1])) for a in adjacency)

    @property
    def edge_count(self):
        return len(self.dual_edges)

    def dual_edge_of(self, primal_edge_id):
        """Dual edge id for a primal edge id (the bijection is id-preserving)."""
        if not 0 <= primal_edge_id < len(self.dual_edges):
            raise IndexOutOfRange(
                f"primal edge id {primal_edge_id} out of range 0..{len(self.dual_edges) - 1}"
            )
        return primal_edge_id

    def primal_edge_of(self, dual_edge_id):
        if not 0 <= dual_edge_id < len(self.dual_edges):
            raise IndexOutOfRange(
                f"dual edge id {dual_edge_id} out of range 0..{len(self.dual_edges) - 1}"
            )
        return dual_edge_id

    def endpoints(self, dual_edge_id):
        fa, fb, _ = self.dual_edges[self.primal_edge_of(dual_edge_id)]
        return fa, fb

    def degree(self, face_id):
        return len(self.adjacency[face_id])

    def to_dot(self):
        """Deterministic DOT rendering of the dual; the outer vertex is marked."""
        lines = ["graph dual {"]
        for f in range(self.face_count):
            if f == self.outer_vertex:
                lines.append(f"  f{f} [shape=doublecircle];")
            else:
                lines.append(f"  f{f};")
        for fa, fb, _ in self.dual_edges:
            lines.append(f"  f{fa} -- f{fb};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (
            f"DualGraph(faces={self.face_count}, edges={len(self.dual_edges)}, "
            f"outer={self.outer_vertex})"
        )


class TriangleMap:
    """Per primal vertex, the triple of its three incident faces.

    Triples follow the rotation order of the vertex.  ``triangles_at`` maps
    a face id to the primal vertices whose triple contains it, which is the
    inverse lookup constraint propagation needs.
    """

    def __init__(self, triples, face_count):
        self.triples = tuple(tuple(t) for t in triples)
        at = [[] for _ in range(face_count)]
        for v, triple in enumerate(self.triples):
            for f in triple:
                at[f].append(v)
        self._at = tuple(tuple(a) for a in at)

    def __len__(self):
        return len(self.triples)

    def triple(self, vertex):
        return self.triples[vertex]

    def triangles_at(self, face_id):
        return self._at[face_id]


def build_dual(embedding, outer_face_choice="default"):
    """Construct (DualGraph, TriangleMap) for a validated embedding.

    ``outer_face_choice`` is a face id, or "default" for face 0 (the face
    containing dart 0).  The choice only roots later searches; it never
    affects the Hamiltonicity decision.
    """
    if outer_face_choice == "default":
        outer = 0
    else:
        outer = int(outer_face_choice)
        if not 0 <= outer < embedding.face_count:
            raise IndexOutOfRange(
                f"outer face {outer} out of range 0..{embedding.face_count - 1}"
            )

    dual_edges = []
    by_pair = {}
    for k in range(embedding.edge_count):
        fa = embedding.dart_face[2 * k]
        fb = embedding.dart_face[2 * k + 1]
        assert fa != fb, "edge with one flank would be a bridge; validation missed it"
        dual_edges.append((fa, fb, k))
        by_pair.setdefault((min(fa, fb), max(fa, fb)), []).append(k)

    parallel_pairs = tuple(
        (pair, tuple(ks)) for pair, ks in sorted(by_pair.items()) if len(ks) > 1
    )

    triples = [embedding.faces_at_vertex(v) for v in range(embedding.n)]
    for v, triple in enumerate(triples):
        assert len(set(triple)) == 3, f"vertex {v} does not touch 3 distinct faces"

    dual = DualGraph(embedding.face_count, dual_edges, outer, parallel_pairs)
    _assert_dual_connected(dual)
    return dual, TriangleMap(triples, embedding.face_count)


def _assert_dual_connected(dual):
    seen = [False] * dual.face_count
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        f = stack.pop()
        for g, _ in dual.adjacency[f]:
            if not seen[g]:
                seen[g] = True
                count += 1
                stack.append(g)
    assert count == dual.face_count, "dual of a connected embedding must be connected"
