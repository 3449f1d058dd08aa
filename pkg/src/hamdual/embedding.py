"""Cubic planar graphs as combinatorial embeddings (rotation systems).

A graph is given by, for every vertex, the clockwise cyclic order of its
three neighbours.  That order is the whole embedding: faces are the orbits
of the dart permutation ``d -> next_around_origin(twin(d))`` and need no
coordinates.  All structural validation happens at construction, so any
``RotationEmbedding`` in circulation is guaranteed to be a simple, connected,
cubic graph whose rotation system embeds it in the plane with simple face
boundaries.

Vertices are 0-based internally; parsers and serializers translate to the
1-based external convention.
"""

from dataclasses import dataclass

from .errors import (
    FaceNotCycle,
    IndexOutOfRange,
    NotConnected,
    NotCubic,
    NotPlanarEmbedding,
    NotSimple,
    OddVertexCount,
)


@dataclass(frozen=True)
class Face:
    """One face of the embedding.

    ``boundary`` holds (vertex, dart) pairs in walk order: the dart at
    position i leaves the vertex at position i toward the vertex at
    position i+1 (cyclically).
    """

    id: int
    boundary: tuple

    @property
    def vertices(self):
        return tuple(v for v, _ in self.boundary)

    def __len__(self):
        return len(self.boundary)


class RotationEmbedding:
    """A validated cubic planar graph with an explicit rotation system.

    Darts are numbered so that edge k owns darts 2k and 2k+1
    (``twin(d) == d ^ 1``).  Immutable after construction; safe to share
    between threads.
    """

    def __init__(self, rotations):
        rotations = tuple(tuple(nbrs) for nbrs in rotations)
        n = len(rotations)
        if n < 4:
            raise NotCubic(f"simple cubic graphs need at least 4 vertices, got {n}")
        if n % 2 != 0:
            raise OddVertexCount(f"vertex count {n} is odd; cubic graphs have 3n = 2e")
        for v, nbrs in enumerate(rotations):
            if len(nbrs) != 3:
                raise NotCubic(f"vertex {v + 1} has degree {len(nbrs)}, expected 3")
            if v in nbrs:
                raise NotSimple(f"vertex {v + 1} has a loop")
            if len(set(nbrs)) != 3:
                raise NotSimple(f"vertex {v + 1} has a parallel edge")
            for w in nbrs:
                if not 0 <= w < n:
                    raise NotSimple(f"vertex {v + 1} lists unknown neighbour {w + 1}")
        for v, nbrs in enumerate(rotations):
            for w in nbrs:
                if v not in rotations[w]:
                    raise NotSimple(
                        f"adjacency is asymmetric: vertex {v + 1} lists {w + 1} "
                        f"but not vice versa"
                    )

        self.n = n
        self.rotations = rotations

        # Edge table in discovery order (vertex id, then rotation position).
        edge_index = {}
        edges = []
        for v, nbrs in enumerate(rotations):
            for w in nbrs:
                key = (v, w) if v < w else (w, v)
                if key not in edge_index:
                    edge_index[key] = len(edges)
                    edges.append(key)
        self.edges = tuple(edges)
        self.edge_count = len(edges)
        self._edge_index = edge_index

        # Dart tables: edge k owns darts 2k (lo->hi) and 2k+1 (hi->lo).
        m = 2 * self.edge_count
        origin = [0] * m
        for k, (u, w) in enumerate(edges):
            origin[2 * k] = u
            origin[2 * k + 1] = w
        self.dart_origin = tuple(origin)

        dart_of = {}
        for k, (u, w) in enumerate(edges):
            dart_of[(u, w)] = 2 * k
            dart_of[(w, u)] = 2 * k + 1
        self._dart_of = dart_of

        rotation_darts = tuple(
            tuple(dart_of[(v, w)] for w in nbrs) for v, nbrs in enumerate(rotations)
        )
        self.rotation_darts = rotation_darts

        nxt = [0] * m
        for v, darts in enumerate(rotation_darts):
            for i, d in enumerate(darts):
                nxt[d] = darts[(i + 1) % 3]
        self.next_around_origin = tuple(nxt)

        self._check_connected()
        self._build_faces()

    # -- construction helpers -------------------------------------------

    def _check_connected(self):
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            v = stack.pop()
            for w in self.rotations[v]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        if count != self.n:
            raise NotConnected(f"graph has {self.n} vertices but only {count} reachable")

    def _build_faces(self):
        m = 2 * self.edge_count
        face_of = [-1] * m
        faces = []
        for start in range(m):
            if face_of[start] != -1:
                continue
            fid = len(faces)
            boundary = []
            d = start
            while True:
                face_of[d] = fid
                boundary.append((self.dart_origin[d], d))
                d = self.next_around_origin[d ^ 1]
                if d == start:
                    break
            verts = [v for v, _ in boundary]
            if len(set(verts)) != len(verts):
                raise FaceNotCycle(
                    f"face walk {[v + 1 for v in verts]} repeats a vertex; "
                    f"input is not 2-connected"
                )
            faces.append(Face(fid, tuple(boundary)))
        expected = 2 + self.n // 2
        if len(faces) != expected:
            raise NotPlanarEmbedding(
                f"rotation system yields {len(faces)} faces, expected {expected}; "
                f"not a planar embedding"
            )
        self.faces = tuple(faces)
        self.face_count = len(faces)
        self.dart_face = tuple(face_of)

    # -- queries ----------------------------------------------------------

    def edge_id(self, u, v):
        """Edge id for the unordered pair (u, v); IndexOutOfRange if absent."""
        key = (u, v) if u < v else (v, u)
        try:
            return self._edge_index[key]
        except KeyError:
            raise IndexOutOfRange(f"no edge between {u + 1} and {v + 1}") from None

    def has_edge(self, u, v):
        key = (u, v) if u < v else (v, u)
        return key in self._edge_index

    def edge_endpoints(self, k):
        if not 0 <= k < self.edge_count:
            raise IndexOutOfRange(f"edge id {k} out of range 0..{self.edge_count - 1}")
        return self.edges[k]

    def dart(self, u, v):
        """Dart id for the directed pair u -> v."""
        try:
            return self._dart_of[(u, v)]
        except KeyError:
            raise IndexOutOfRange(f"no dart {u + 1} -> {v + 1}") from None

    def incident_edges(self, v):
        """Edge ids at v, in rotation order."""
        return tuple(d // 2 for d in self.rotation_darts[v])

    def faces_at_vertex(self, v):
        """Face ids of the three darts leaving v, in rotation order."""
        return tuple(self.dart_face[d] for d in self.rotation_darts[v])

    def adjacency(self):
        """Plain neighbour lists (rotation order), for oracle consumption."""
        return [list(nbrs) for nbrs in self.rotations]

    def __repr__(self):
        return (
            f"RotationEmbedding(n={self.n}, e={self.edge_count}, "
            f"f={self.face_count})"
        )
