"""Cycle expansion: grow the outer face boundary into larger cycles.

The state tracks a simple cycle, the set of faces still inside it, and the
dual edge chosen at every step.  Expanding through a cycle edge e replaces
e with the rest of its interior-side face boundary, provided that detour
touches the cycle nowhere else.  Each step moves exactly one face from the
inside to the outside, and the chosen dual edges always form a tree rooted
at the outer face.

States are values: every operation returns a new state and never mutates
its input, so histories can be replayed and compared freely.
"""

import random
from collections import deque
from typing import NamedTuple

from .errors import EdgeNotOnCycle, NoComplementaryPath, ScriptEdgeInvalid


class DualTree(NamedTuple):
    root: int
    vertices: frozenset
    edges: tuple


class PathProbe:
    """Optional instrumentation shared by all states of one run.

    Records, per complementary-path query, which face boundary was read,
    whether that face was an interior face at query time, and how many
    candidate paths the query produced.
    """

    def __init__(self):
        self.records = []

    def record(self, step, edge_id, face_id, was_interior, n_candidates):
        self.records.append((step, edge_id, face_id, was_interior, n_candidates))


class CycleState:
    """Immutable snapshot of one expansion run."""

    __slots__ = (
        "embedding",
        "dual",
        "sigma",
        "sigma_edges",
        "on_sigma",
        "interior_faces",
        "chosen_dual_edges",
        "step",
        "probe",
    )

    def __init__(
        self,
        embedding,
        dual,
        sigma,
        sigma_edges,
        interior_faces,
        chosen_dual_edges,
        step,
        probe=None,
    ):
        self.embedding = embedding
        self.dual = dual
        self.sigma = tuple(sigma)
        self.sigma_edges = frozenset(sigma_edges)
        on = [False] * embedding.n
        for v in self.sigma:
            on[v] = True
        self.on_sigma = tuple(on)
        self.interior_faces = frozenset(interior_faces)
        self.chosen_dual_edges = tuple(chosen_dual_edges)
        self.step = step
        self.probe = probe

    @property
    def outside_faces(self):
        return frozenset(range(self.embedding.face_count)) - self.interior_faces

    def __repr__(self):
        return (
            f"CycleState(step={self.step}, |sigma|={len(self.sigma)}, "
            f"interior={len(self.interior_faces)})"
        )


def initial_cycle(embedding, dual, probe=None):
    """Base state: the boundary walk of the chosen outer face."""
    outer = embedding.faces[dual.outer_vertex]
    sigma = outer.vertices
    sigma_edges = {d // 2 for _, d in outer.boundary}
    interior = set(range(embedding.face_count)) - {dual.outer_vertex}
    return CycleState(embedding, dual, sigma, sigma_edges, interior, (), 0, probe)


def _interior_flank(state, edge_id):
    fa, fb, _ = state.dual.dual_edges[edge_id]
    a_in = fa in state.interior_faces
    b_in = fb in state.interior_faces
    if a_in == b_in:
        raise AssertionError(
            f"cycle edge {edge_id} flanked by {int(a_in) + int(b_in)} interior "
            f"faces; interior bookkeeping is broken"
        )
    return fa if a_in else fb


def _find_path(state, edge_id):
    """(face, path) for the interior-side detour, or (face, None).

    Only the interior-side face boundary is ever read; the probe records
    each read together with the candidate count.
    """
    if edge_id not in state.sigma_edges:
        raise EdgeNotOnCycle(f"edge {edge_id} is not on the current cycle")
    face_id = _interior_flank(state, edge_id)
    boundary = state.embedding.faces[face_id].boundary
    k = len(boundary)
    pos = next(i for i, (_, d) in enumerate(boundary) if d // 2 == edge_id)
    path = [boundary[(pos + i) % k][0] for i in range(1, k + 1)]
    internal_ok = all(not state.on_sigma[x] for x in path[1:-1])
    candidates = [path] if internal_ok else []
    if state.probe is not None:
        state.probe.record(
            state.step, edge_id, face_id, face_id in state.interior_faces,
            len(candidates),
        )
    assert len(candidates) <= 1
    return face_id, (candidates[0] if candidates else None)


def complementary_path(state, edge_id):
    """The interior-side detour for a cycle edge, or None if inadmissible.

    The returned vertex list starts and ends with the edge's endpoints; all
    interior vertices are off the cycle.
    """
    _, path = _find_path(state, edge_id)
    return path


def _expand_internal(state, edge_id):
    face_id, path = _find_path(state, edge_id)
    if path is None:
        raise NoComplementaryPath(
            f"edge {edge_id} admits no complementary path at step {state.step}"
        )
    sigma = state.sigma
    length = len(sigma)
    u, v = state.embedding.edge_endpoints(edge_id)
    pos = next(
        i
        for i in range(length)
        if {sigma[i], sigma[(i + 1) % length]} == {u, v}
    )
    first, second = sigma[pos], sigma[(pos + 1) % length]
    internal = path[1:-1] if path[0] == first else path[-2:0:-1]
    oriented = [first] + internal + [second]

    new_sigma = sigma[: pos + 1] + tuple(internal) + sigma[pos + 1 :]
    path_edge_ids = [
        state.embedding.edge_id(oriented[i], oriented[i + 1])
        for i in range(len(oriented) - 1)
    ]
    new_edges = (state.sigma_edges - {edge_id}) | set(path_edge_ids)
    new_state = CycleState(
        state.embedding,
        state.dual,
        new_sigma,
        new_edges,
        state.interior_faces - {face_id},
        state.chosen_dual_edges + (state.dual.dual_edge_of(edge_id),),
        state.step + 1,
        state.probe,
    )
    return new_state, face_id, oriented, path_edge_ids


def expand(state, edge_id):
    """Expand the cycle through edge_id; raises NoComplementaryPath."""
    new_state, _, _, _ = _expand_internal(state, edge_id)
    return new_state


def expandable_edges(state):
    """Cycle edges that currently admit a complementary path, sorted."""
    return [e for e in sorted(state.sigma_edges) if complementary_path(state, e)]


def run_expansion(
    embedding,
    dual,
    policy="fifo",
    seed=None,
    script=None,
    probe=None,
    check=False,
):
    """Drive expansion to termination under the chosen policy.

    fifo     - try cycle edges in creation order (outer boundary first, then
               detour edges in detour order); a rejected edge is dropped for
               good, which is safe because a blocked edge can never unblock
               (cycle vertices are never removed).
    random   - at each step pick uniformly among all expandable edges, using
               the given seed.
    scripted - apply exactly the given primal edge ids, then stop.

    With ``check`` set, every step is validated against the full set of
    state invariants.
    """
    state = initial_cycle(embedding, dual, probe)
    if check:
        check_state_invariants(state)

    def step_checked(st, edge_id):
        new, _, _, _ = _expand_internal(st, edge_id)
        if check:
            check_state_invariants(new, prev=st)
        return new

    if policy == "fifo":
        outer = embedding.faces[dual.outer_vertex]
        queue = deque(d // 2 for _, d in outer.boundary)
        while queue:
            edge_id = queue.popleft()
            assert edge_id in state.sigma_edges
            new = _find_path(state, edge_id)[1]
            if new is None:
                continue
            state, _, _, path_edge_ids = _expand_internal(state, edge_id)
            if check:
                check_state_invariants(state)
            queue.extend(path_edge_ids)
        return state

    if policy == "random":
        rng = random.Random(seed)
        while True:
            options = expandable_edges(state)
            if not options:
                return state
            state = step_checked(state, rng.choice(options))

    if policy == "scripted":
        if script is None:
            raise ScriptEdgeInvalid("scripted policy requires an edge id sequence")
        for edge_id in script:
            try:
                state = step_checked(state, edge_id)
            except (EdgeNotOnCycle, NoComplementaryPath) as exc:
                raise ScriptEdgeInvalid(
                    f"scripted edge {edge_id} cannot be expanded at step "
                    f"{state.step}: {exc}"
                ) from exc
        return state

    raise ValueError(f"unknown policy {policy!r}")


def replay_trace(embedding, dual, chosen_edges):
    """Per-step records for a finished run, by replaying its chosen edges.

    Chosen dual edge ids double as primal edge ids, so a run is fully
    determined by that sequence.  Returns (steps, final_state) where each
    step holds the expanded edge, the detour path, and the face that moved
    outside.
    """
    state = initial_cycle(embedding, dual)
    steps = []
    for k in chosen_edges:
        state, face_id, path, path_edge_ids = _expand_internal(
            state, dual.primal_edge_of(k)
        )
        steps.append(
            {
                "edge_id": k,
                "path": path,
                "removed_face": face_id,
                "new_edges": path_edge_ids,
            }
        )
    return steps, state


def tree_of(state):
    """The dual subgraph of all chosen edges plus the root.

    Aborts with a diagnostic if it is not a tree: that would mean the
    expansion bookkeeping itself is broken.
    """
    root = state.dual.outer_vertex
    vertices = {root}
    for k in state.chosen_dual_edges:
        fa, fb = state.dual.endpoints(k)
        vertices.add(fa)
        vertices.add(fb)
    edges = state.chosen_dual_edges
    assert len(edges) == len(vertices) - 1, (
        f"chosen dual edges do not form a tree: {len(edges)} edges on "
        f"{len(vertices)} vertices"
    )
    # Connectivity from the root over chosen edges only.
    adj = {v: [] for v in vertices}
    for k in edges:
        fa, fb = state.dual.endpoints(k)
        adj[fa].append(fb)
        adj[fb].append(fa)
    seen = {root}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    assert seen == vertices, "chosen dual edges form a disconnected subgraph"
    return DualTree(root, frozenset(vertices), tuple(edges))


def check_state_invariants(state, prev=None):
    """Assert every documented per-step invariant of an expansion state."""
    emb = state.embedding
    sigma = state.sigma

    # The cycle is simple and its edge bookkeeping is exact.
    assert len(sigma) >= 3
    assert len(set(sigma)) == len(sigma), "cycle repeats a vertex"
    walked = {
        emb.edge_id(sigma[i], sigma[(i + 1) % len(sigma)]) for i in range(len(sigma))
    }
    assert walked == set(state.sigma_edges), "cycle edge set out of sync"
    assert len(walked) == len(sigma)

    # Outside faces are exactly the root plus the expanded faces.
    tree = tree_of(state)
    assert state.outside_faces == tree.vertices

    # Off-cycle vertices touch interior faces only.
    for v in range(emb.n):
        if not state.on_sigma[v]:
            assert all(
                f in state.interior_faces for f in emb.faces_at_vertex(v)
            ), f"off-cycle vertex {v} touches an outside face"

    # Outside faces have their whole boundary on the cycle.
    for f in state.outside_faces:
        assert all(
            state.on_sigma[v] for v in emb.faces[f].vertices
        ), f"outside face {f} has an off-cycle boundary vertex"

    # Cycle edges are exactly the edges with one outside flank.
    split_edges = {
        k
        for k in range(emb.edge_count)
        if (state.dual.dual_edges[k][0] in state.interior_faces)
        != (state.dual.dual_edges[k][1] in state.interior_faces)
    }
    assert split_edges == set(state.sigma_edges), "edge/tree duality violated"

    # Step accounting.
    assert state.step == len(state.chosen_dual_edges)
    assert len(state.interior_faces) == emb.face_count - 1 - state.step

    if prev is not None:
        assert len(sigma) > len(prev.sigma), "cycle did not grow"
        gone = prev.interior_faces - state.interior_faces
        assert len(gone) == 1 and state.interior_faces < prev.interior_faces
