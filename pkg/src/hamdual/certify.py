"""Certificate checking, cycle reconstruction, and expansion replay.

A certificate claims a rooted dual tree with two properties: every
vertex-face triangle of the primal graph contains a tree face
(domination), and no dual edge joins two tree faces without belonging to
the tree (induced).  This module verifies such claims and rebuilds the
Hamiltonian cycle they encode, sharing only the embedding/dual data types
with the search code - none of its logic.

The reconstruction rule: a primal edge lies on the cycle exactly when one
of its two flanking faces is in the tree and the other is not.
"""

import json
from collections import deque
from dataclasses import dataclass

from . import expansion
from .errors import (
    EdgeNotOnCycle,
    IdOutOfRange,
    NoComplementaryPath,
    ReconstructionFailed,
    ReplayMismatch,
)


@dataclass(frozen=True)
class Certificate:
    """A rooted dual tree, optionally with its reconstructed cycle."""

    root: int
    tree_vertices: frozenset
    tree_edges: frozenset
    cycle: tuple = None

    def sorted_vertices(self):
        return sorted(self.tree_vertices)

    def sorted_edges(self):
        return sorted(self.tree_edges)


@dataclass(frozen=True)
class Violation:
    kind: str  # "root" | "treeness" | "domination" | "induced"
    detail: str

    def __str__(self):
        return f"[{self.kind}] {self.detail}"


def _check_ids(certificate, dual):
    if not 0 <= certificate.root < dual.face_count:
        raise IdOutOfRange(f"root face {certificate.root} does not exist")
    for f in certificate.tree_vertices:
        if not 0 <= f < dual.face_count:
            raise IdOutOfRange(f"tree vertex {f} is not a face id")
    for k in certificate.tree_edges:
        if not 0 <= k < len(dual.dual_edges):
            raise IdOutOfRange(f"tree edge {k} is not a dual edge id")


def check_certificate(certificate, dual, triangle_map):
    """All violations of the certificate; an empty list means valid.

    Checks, in order: the root matches the dual's outer vertex, the claimed
    edges form a tree on the claimed vertices containing the root, no dual
    edge joins two tree vertices outside the tree (induced), and every
    primal vertex has a tree face among its three incident faces
    (domination).  Id errors raise; semantic failures are all reported.
    """
    _check_ids(certificate, dual)
    violations = []
    vs = certificate.tree_vertices
    es = certificate.tree_edges

    if certificate.root != dual.outer_vertex:
        violations.append(
            Violation(
                "root",
                f"certificate rooted at face {certificate.root}, expected "
                f"outer vertex {dual.outer_vertex}",
            )
        )
    if certificate.root not in vs:
        violations.append(
            Violation("treeness", f"root face {certificate.root} not among tree vertices")
        )

    spans_ok = True
    for k in sorted(es):
        fa, fb = dual.endpoints(k)
        if fa not in vs or fb not in vs:
            violations.append(
                Violation("treeness", f"tree edge {k} leaves the tree vertex set")
            )
            spans_ok = False

    if spans_ok:
        if len(es) != len(vs) - 1:
            violations.append(
                Violation(
                    "treeness",
                    f"{len(es)} edges on {len(vs)} vertices cannot be a tree",
                )
            )
        else:
            adj = {f: [] for f in vs}
            for k in es:
                fa, fb = dual.endpoints(k)
                adj[fa].append(fb)
                adj[fb].append(fa)
            start = certificate.root if certificate.root in vs else min(vs)
            seen = {start}
            queue = deque([start])
            while queue:
                f = queue.popleft()
                for g in adj[f]:
                    if g not in seen:
                        seen.add(g)
                        queue.append(g)
            if seen != vs:
                violations.append(
                    Violation("treeness", "tree vertices are disconnected")
                )

    for fa, fb, k in dual.dual_edges:
        if fa in vs and fb in vs and k not in es:
            violations.append(
                Violation(
                    "induced",
                    f"dual edge {k} joins tree faces {fa} and {fb} but is "
                    f"not a tree edge",
                )
            )

    for v, triple in enumerate(triangle_map.triples):
        if not any(f in vs for f in triple):
            violations.append(
                Violation(
                    "domination",
                    f"vertex {v + 1} has no tree face among its faces {triple}",
                )
            )

    return violations


def split_edge_ids(tree_vertices, dual):
    """Primal edges with exactly one flanking face in the tree."""
    return [
        k
        for fa, fb, k in dual.dual_edges
        if (fa in tree_vertices) != (fb in tree_vertices)
    ]


def canonical_cycle(cycle):
    """Rotate to the smallest vertex, then pick the direction with the
    smaller second vertex, so equal cycles compare equal."""
    cycle = list(cycle)
    i = cycle.index(min(cycle))
    rotated = cycle[i:] + cycle[:i]
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


def reconstruct_cycle(certificate, dual, embedding):
    """Rebuild the Hamiltonian cycle encoded by a valid certificate.

    The split edges must form one simple cycle through all vertices; any
    other outcome raises ReconstructionFailed, which signals an
    inconsistency between checker and search rather than a bad input.
    """
    _check_ids(certificate, dual)
    edges = split_edge_ids(certificate.tree_vertices, dual)
    n = embedding.n
    adj = [[] for _ in range(n)]
    for k in edges:
        u, v = embedding.edge_endpoints(k)
        adj[u].append(v)
        adj[v].append(u)
    if len(edges) != n:
        raise ReconstructionFailed(
            f"{len(edges)} split edges on {n} vertices; expected exactly {n}"
        )
    if any(len(a) != 2 for a in adj):
        bad = next(v for v in range(n) if len(adj[v]) != 2)
        raise ReconstructionFailed(
            f"vertex {bad + 1} has {len(adj[bad])} split edges, expected 2"
        )
    cycle = [0, min(adj[0])]
    while len(cycle) < n:
        prev, cur = cycle[-2], cycle[-1]
        nxt = adj[cur][1] if adj[cur][0] == prev else adj[cur][0]
        if nxt == 0:
            raise ReconstructionFailed(
                f"split edges close a cycle of length {len(cycle)} < {n}"
            )
        cycle.append(nxt)
    last, first = cycle[-1], cycle[0]
    if first not in adj[last]:
        raise ReconstructionFailed("split edges do not close a spanning cycle")
    return canonical_cycle(cycle)


def verify_hamiltonian(cycle, embedding):
    """True iff the list visits every vertex once and walks real edges."""
    cycle = list(cycle)
    if len(cycle) != embedding.n or len(set(cycle)) != embedding.n:
        return False
    if not all(0 <= v < embedding.n for v in cycle):
        return False
    return all(
        embedding.has_edge(cycle[i], cycle[(i + 1) % len(cycle)])
        for i in range(len(cycle))
    )


def bfs_edge_order(certificate, dual):
    """Tree edges in breadth-first order from the root, ids ascending
    within each vertex."""
    adj = {f: [] for f in certificate.tree_vertices}
    for k in sorted(certificate.tree_edges):
        fa, fb = dual.endpoints(k)
        adj[fa].append((fb, k))
        adj[fb].append((fa, k))
    order = []
    seen = {certificate.root}
    queue = deque([certificate.root])
    while queue:
        f = queue.popleft()
        for g, k in adj[f]:
            if g not in seen:
                seen.add(g)
                order.append(k)
                queue.append(g)
    return order


def replay_expansion(certificate, embedding, dual, edge_order=None):
    """Replay the expansion run encoded by a certificate's tree.

    Tree edges are applied in breadth-first order from the root (each tree
    edge doubles as the primal edge to expand through).  For a certificate
    that passes the tree check this can never get stuck: a blocked step
    would require either two tree edges between the same face pair or a
    second already-expanded tree neighbour, both of which contradict
    treeness.  ``edge_order`` overrides the schedule for experiments; bad
    orders surface as ReplayMismatch.
    """
    order = bfs_edge_order(certificate, dual) if edge_order is None else list(edge_order)
    state = expansion.initial_cycle(embedding, dual)
    for step, k in enumerate(order):
        try:
            state = expansion.expand(state, dual.primal_edge_of(k))
        except (EdgeNotOnCycle, NoComplementaryPath) as exc:
            raise ReplayMismatch(
                f"step {step}: tree edge {k} cannot be expanded: {exc}",
                step=step,
                edge=k,
            ) from exc
    expected = reconstruct_cycle(certificate, dual, embedding)
    got = canonical_cycle(state.sigma)
    if got != expected:
        raise ReplayMismatch(
            f"replayed cycle {got} differs from reconstructed cycle {expected}"
        )
    if set(state.chosen_dual_edges) != set(certificate.tree_edges):
        raise ReplayMismatch("replay consumed a different dual edge set")
    return state


# --- wire format -------------------------------------------------------------


def certificate_to_json(certificate, dual):
    """Stable JSON encoding; cycle vertices use the 1-based convention."""
    payload = {
        "root": certificate.root,
        "tree_vertices": certificate.sorted_vertices(),
        "tree_edges": [
            sorted(dual.endpoints(k)) for k in certificate.sorted_edges()
        ],
        "cycle": [v + 1 for v in certificate.cycle] if certificate.cycle else None,
    }
    return json.dumps(payload, sort_keys=True, separators=(", ", ": ")) + "\n"


def certificate_from_json(text, dual):
    """Decode a certificate; face pairs resolve to the lowest dual edge id."""
    payload = json.loads(text)
    pair_to_ids = {}
    for fa, fb, k in dual.dual_edges:
        pair_to_ids.setdefault((min(fa, fb), max(fa, fb)), []).append(k)
    edge_ids = []
    for pair in payload["tree_edges"]:
        if len(pair) != 2:
            raise IdOutOfRange(f"tree edge {pair} is not a face pair")
        key = (min(pair), max(pair))
        if key not in pair_to_ids:
            raise IdOutOfRange(f"no dual edge between faces {pair[0]} and {pair[1]}")
        edge_ids.append(min(pair_to_ids[key]))
    cycle = payload.get("cycle")
    return Certificate(
        root=payload["root"],
        tree_vertices=frozenset(payload["tree_vertices"]),
        tree_edges=frozenset(edge_ids),
        cycle=tuple(v - 1 for v in cycle) if cycle else None,
    )
