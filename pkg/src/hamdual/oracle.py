"""Independent brute-force Hamiltonicity oracles and a corpus generator.

These exist solely to validate the dual-tree solver: they never share code
with it.  ``oracle_dfs`` is an exhaustive pruned path search; it handles
the corpus sizes and the shipped non-Hamiltonian fixtures quickly, but it
is exponential and can thrash on unlucky larger instances, so keep it to
its validation role.  ``oracle_dp`` is an exact subset DP limited to 24
vertices.  The corpus generator grows random 2-connected cubic planar
embeddings from K4 by face splitting, so every instance comes out
pre-validated.
"""

import random
from dataclasses import dataclass

from . import _kernels
from .embedding import RotationEmbedding
from .errors import TooLarge

DP_MAX_VERTICES = 24
CORPUS_MAX_VERTICES = 16

K4 = "k4"
PRISM = "prism"
CUBE = "cube"

SMALL_FIXTURES = {
    K4: ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)),
    PRISM: ((1, 2, 3), (0, 4, 2), (0, 1, 5), (0, 5, 4), (1, 3, 5), (2, 4, 3)),
    CUBE: (
        (1, 4, 3),
        (0, 2, 5),
        (1, 3, 6),
        (0, 7, 2),
        (0, 5, 7),
        (1, 6, 4),
        (2, 7, 5),
        (3, 4, 6),
    ),
}


@dataclass(frozen=True)
class OracleResult:
    hamiltonian: bool
    witness: tuple = None
    nodes_explored: int = 0


def _adjacency_of(graph):
    if isinstance(graph, RotationEmbedding):
        return graph.adjacency()
    return [list(nbrs) for nbrs in graph]


def oracle_dfs(graph):
    """Exact Hamiltonicity by exhaustive pruned DFS from vertex 0."""
    adj = _adjacency_of(graph)
    found, witness, nodes = _kernels.run_dfs(adj)
    return OracleResult(found, tuple(witness) if found else None, nodes)


def oracle_dp(graph):
    """Exact Hamiltonicity by bitmask DP over vertex subsets (n <= 24)."""
    adj = _adjacency_of(graph)
    if len(adj) > DP_MAX_VERTICES:
        raise TooLarge(f"subset DP supports n <= {DP_MAX_VERTICES}, got {len(adj)}")
    found, witness, states = _kernels.run_dp(adj)
    return OracleResult(found, tuple(witness) if found else None, states)


def split_face(rotations, face_boundary, pos_a, pos_b):
    """One cubic-preserving refinement: subdivide two distinct boundary
    edges of a face and join the new vertices across it.

    ``face_boundary`` is the (vertex, dart) walk of the face in an
    embedding built from ``rotations``; the darts at ``pos_a``/``pos_b``
    are replaced.  Returns new rotation lists with two extra vertices.
    """
    assert pos_a != pos_b
    rot = [list(nbrs) for nbrs in rotations]
    k = len(face_boundary)
    a = face_boundary[pos_a][0]
    b = face_boundary[(pos_a + 1) % k][0]
    c = face_boundary[pos_b][0]
    e = face_boundary[(pos_b + 1) % k][0]
    x, y = len(rot), len(rot) + 1
    rot[a][rot[a].index(b)] = x
    rot[b][rot[b].index(a)] = x
    rot[c][rot[c].index(e)] = y
    rot[e][rot[e].index(c)] = y
    rot.append([a, y, b])
    rot.append([c, x, e])
    return rot


def grow_random_embedding(target_n, rng):
    """Random cubic planar embedding on target_n vertices, grown from K4."""
    rot = [list(nbrs) for nbrs in SMALL_FIXTURES[K4]]
    emb = RotationEmbedding(rot)
    while emb.n < target_n:
        face = emb.faces[rng.randrange(emb.face_count)]
        k = len(face.boundary)
        pos_a = rng.randrange(k)
        pos_b = rng.randrange(k - 1)
        if pos_b >= pos_a:
            pos_b += 1
        emb = RotationEmbedding(split_face(emb.rotations, face.boundary, pos_a, pos_b))
    return emb


def generate_corpus(max_n, seed, samples=100):
    """Stored small fixtures plus seeded random embeddings, all with n <= max_n."""
    if max_n > CORPUS_MAX_VERTICES:
        raise ValueError(f"corpus generation supports max_n <= {CORPUS_MAX_VERTICES}")
    out = [
        RotationEmbedding(rot)
        for rot in SMALL_FIXTURES.values()
        if len(rot) <= max_n
    ]
    if max_n >= 6:
        rng = random.Random(seed)
        for _ in range(samples):
            target = 2 * rng.randint(3, max_n // 2)
            out.append(grow_random_embedding(target, rng))
    return out
