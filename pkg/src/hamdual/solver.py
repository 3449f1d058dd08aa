"""Backtracking search for a rooted induced dominating subtree of the dual.

Every dual vertex (face) ends up labelled Tree or Excluded.  The search
propagates two forcing rules to a fixpoint after each decision:

R1  An unassigned face with two distinct dual edges into the same Tree
    fragment can never join the tree (one of the edges would become a
    chord), so it is forced Excluded.  Edges into different fragments
    force nothing - the fragments still need connecting.
R2  Around every primal vertex the three incident faces form a triangle;
    once two of them are Excluded the third is forced Tree, and a
    triangle with all three Excluded is a contradiction.

Whenever a face turns Tree it is joined to every adjacent Tree fragment
immediately (a second edge into one fragment is a contradiction), so at
any consistent point all Tree-Tree dual edges are tree edges.  Forced Tree
faces without Tree neighbours open new fragments; a repair mode then
branches on faces that can still connect a stranded fragment to another
one through unexcluded territory.  All work lands on a single trail, so
one undo mechanism serves decisions, propagation, and repairs alike.

A successful search is never trusted: the certificate is re-checked and
the cycle reconstructed and verified by the independent certify module.
"""

import time
from collections import deque
from dataclasses import dataclass, field

from . import certify
from .certify import Certificate

UNASSIGNED, TREE, EXCLUDED = 0, 1, 2

HAMILTONIAN = "hamiltonian"
NON_HAMILTONIAN = "non_hamiltonian"
ABORTED = "aborted"


class RollbackUnionFind:
    """Union by rank, no path compression; unions undo in LIFO order."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n
        self._ops = []

    def find(self, x):
        p = self.parent
        while p[x] != x:
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] > self.rank[rb]:
            ra, rb = rb, ra
        bumped = self.rank[ra] == self.rank[rb]
        self.parent[ra] = rb
        if bumped:
            self.rank[rb] += 1
        self._ops.append((ra, rb, bumped))
        return True

    def snapshot(self):
        return len(self._ops)

    def rollback(self, mark):
        while len(self._ops) > mark:
            child, parent, bumped = self._ops.pop()
            self.parent[child] = child
            if bumped:
                self.rank[parent] -= 1


@dataclass
class SolverConfig:
    max_nodes: int = None
    max_seconds: float = None
    debug_check: bool = False


@dataclass
class SearchStats:
    nodes: int = 0
    propagations: int = 0
    backtracks: int = 0
    repairs: int = 0
    wall_time_ms: float = 0.0
    budget_hit: bool = False


@dataclass
class SolveOutcome:
    result: str
    certificate: Certificate = None
    stats: SearchStats = field(default_factory=SearchStats)
    abort_reason: str = None


class _Search:
    def __init__(self, dual, triangle_map, config):
        self.dual = dual
        self.tmap = triangle_map
        self.config = config
        self.F = dual.face_count
        self.root = dual.outer_vertex
        self.labels = [UNASSIGNED] * self.F
        self.uf = RollbackUnionFind(self.F)
        self.tree_edges = set()
        self.fragments = 0
        self.trail = []
        self.queue = deque()
        self.stats = SearchStats()
        self._deadline = None
        self._abort_reason = None

    # -- trail ------------------------------------------------------------

    def _mark(self):
        return len(self.trail), self.uf.snapshot()

    def _undo_to(self, mark):
        trail_mark, uf_mark = mark
        while len(self.trail) > trail_mark:
            kind, x = self.trail.pop()
            if kind == "tree":
                self.labels[x] = UNASSIGNED
                self.fragments -= 1
            elif kind == "excl":
                self.labels[x] = UNASSIGNED
            elif kind == "edge":
                self.tree_edges.discard(x)
            else:  # "union"
                self.fragments += 1
        self.uf.rollback(uf_mark)
        self.queue.clear()

    # -- labelling ---------------------------------------------------------

    def _label_tree(self, v):
        lab = self.labels[v]
        if lab == EXCLUDED:
            return False
        if lab == TREE:
            return True
        self.labels[v] = TREE
        self.fragments += 1
        self.trail.append(("tree", v))
        self.queue.append(("tree", v))
        for t, k in self.dual.adjacency[v]:  # ascending edge id
            if self.labels[t] == TREE:
                if self.uf.find(v) == self.uf.find(t):
                    # Second edge into one fragment: chord or cycle.
                    return False
                self.uf.union(v, t)
                self.fragments -= 1
                self.trail.append(("union", v))
                self.tree_edges.add(k)
                self.trail.append(("edge", k))
                self.queue.append(("merge", v))
        return True

    def _label_excluded(self, v):
        lab = self.labels[v]
        if lab == TREE:
            return False
        if lab == EXCLUDED:
            return True
        self.labels[v] = EXCLUDED
        self.trail.append(("excl", v))
        self.queue.append(("excl", v))
        return True

    # -- propagation --------------------------------------------------------

    def _r1_forced(self, w):
        seen = None
        for t, _ in self.dual.adjacency[w]:
            if self.labels[t] == TREE:
                r = self.uf.find(t)
                if seen is None:
                    seen = {r}
                elif r in seen:
                    return True
                else:
                    seen.add(r)
        return False

    def _propagate(self):
        labels = self.labels
        while self.queue:
            kind, v = self.queue.popleft()
            if kind == "excl":
                for pv in self.tmap.triangles_at(v):
                    triple = self.tmap.triples[pv]
                    n_excl = sum(1 for f in triple if labels[f] == EXCLUDED)
                    if n_excl == 3:
                        return False
                    if n_excl == 2:
                        third = next(
                            f for f in triple if labels[f] != EXCLUDED
                        )
                        if labels[third] == UNASSIGNED:
                            self.stats.propagations += 1
                            if not self._label_tree(third):
                                return False
            elif kind == "tree":
                for w, _ in self.dual.adjacency[v]:
                    if labels[w] == UNASSIGNED and self._r1_forced(w):
                        self.stats.propagations += 1
                        if not self._label_excluded(w):
                            return False
            else:  # "merge": fragments joined; recheck around the new fragment
                for w in range(self.F):
                    if labels[w] == UNASSIGNED and self._r1_forced(w):
                        self.stats.propagations += 1
                        if not self._label_excluded(w):
                            return False
        return True

    # -- branch selection -----------------------------------------------------

    def _best(self, candidates):
        labels = self.labels
        best, best_key = None, None
        for w in candidates:
            assigned = sum(
                1 for t, _ in self.dual.adjacency[w] if labels[t] != UNASSIGNED
            )
            key = (-assigned, w)
            if best_key is None or key < best_key:
                best, best_key = w, key
        return best

    def _fragment_members(self):
        groups = {}
        for v in range(self.F):
            if self.labels[v] == TREE:
                groups.setdefault(self.uf.find(v), []).append(v)
        return groups

    def _reaches_other_fragment(self, start, avoid_root):
        labels = self.labels
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y, _ in self.dual.adjacency[x]:
                if y in seen:
                    continue
                lab = labels[y]
                if lab == EXCLUDED:
                    continue
                if lab == TREE:
                    if self.uf.find(y) != avoid_root:
                        return True
                    continue
                seen.add(y)
                stack.append(y)
        return False

    def _repair_candidates(self):
        groups = self._fragment_members()
        root_r = self.uf.find(self.root)
        stranded_r = min(
            (r for r in groups if r != root_r), key=lambda r: min(groups[r])
        )
        adjacent = sorted(
            {
                w
                for v in groups[stranded_r]
                for w, _ in self.dual.adjacency[v]
                if self.labels[w] == UNASSIGNED
            }
        )
        return [w for w in adjacent if self._reaches_other_fragment(w, stranded_r)]

    def _pick(self):
        labels = self.labels
        unassigned = [v for v in range(self.F) if labels[v] == UNASSIGNED]
        if not unassigned:
            return "done", None
        if self.fragments > 1:
            candidates = self._repair_candidates()
            if not candidates:
                return "stuck", None
            return "repair", self._best(candidates)
        candidates = [
            w
            for w in unassigned
            if any(labels[t] == TREE for t, _ in self.dual.adjacency[w])
        ]
        if not candidates:
            return "cascade", None
        return "branch", self._best(candidates)

    # -- validation ------------------------------------------------------------

    def _final_tree_ok(self):
        labels = self.labels
        if self.fragments != 1:
            return False
        tree_vs = [v for v in range(self.F) if labels[v] == TREE]
        if len(self.tree_edges) != len(tree_vs) - 1:
            return False
        for fa, fb, k in self.dual.dual_edges:
            if labels[fa] == TREE and labels[fb] == TREE and k not in self.tree_edges:
                return False
        for triple in self.tmap.triples:
            if not any(labels[f] == TREE for f in triple):
                return False
        return True

    def fingerprint(self):
        return (
            tuple(self.labels),
            tuple(sorted(self.tree_edges)),
            tuple(self.uf.parent),
            tuple(self.uf.rank),
            self.fragments,
        )

    def _assert_consistent(self):
        labels = self.labels
        for triple in self.tmap.triples:
            assert any(labels[f] != EXCLUDED for f in triple), (
                "triangle with three excluded faces survived propagation"
            )
        for fa, fb, k in self.dual.dual_edges:
            if labels[fa] == TREE and labels[fb] == TREE:
                if self.uf.find(fa) == self.uf.find(fb):
                    assert k in self.tree_edges, (
                        f"same-fragment chord {k} survived propagation"
                    )

    # -- search -------------------------------------------------------------------

    def _over_budget(self):
        cfg = self.config
        if cfg.max_nodes is not None and self.stats.nodes > cfg.max_nodes:
            self._abort_reason = "max_nodes"
            return True
        if self._deadline is not None and self.stats.nodes % 256 == 0:
            if time.monotonic() > self._deadline:
                self._abort_reason = "max_seconds"
                return True
        return False

    def _cascade_exclusions(self):
        # No unassigned face touches the root fragment, so no completion can
        # label any of them Tree; exclude them all and propagate.
        labels = self.labels
        while True:
            w = next((v for v in range(self.F) if labels[v] == UNASSIGNED), None)
            if w is None:
                return True
            self.stats.propagations += 1
            if not (self._label_excluded(w) and self._propagate()):
                return False

    def search(self):
        if self._over_budget():
            return "abort"
        mode, v = self._pick()
        if mode == "done":
            return "sat" if self._final_tree_ok() else "unsat"
        if mode == "stuck":
            return "unsat"
        if mode == "cascade":
            mark = self._mark()
            if self._cascade_exclusions():
                result = self.search()
                if result != "unsat":
                    return result
            self._undo_to(mark)
            self.stats.backtracks += 1
            return "unsat"

        self.stats.nodes += 1
        if mode == "repair":
            self.stats.repairs += 1
        before = self.fingerprint() if self.config.debug_check else None
        for value in (TREE, EXCLUDED):
            mark = self._mark()
            ok = (
                self._label_tree(v) if value == TREE else self._label_excluded(v)
            ) and self._propagate()
            if ok:
                if self.config.debug_check:
                    self._assert_consistent()
                result = self.search()
                if result != "unsat":
                    return result
            self._undo_to(mark)
            self.stats.backtracks += 1
            if self.config.debug_check:
                assert self.fingerprint() == before, "trail undo drifted"
        return "unsat"

    def run(self):
        cfg = self.config
        if cfg.max_seconds is not None:
            self._deadline = time.monotonic() + cfg.max_seconds
        ok = self._label_tree(self.root) and self._propagate()
        if not ok:
            return "unsat"
        return self.search()


def solve(embedding, dual, triangle_map, config=None):
    """Decide Hamiltonicity; successful outcomes carry a verified certificate."""
    config = config or SolverConfig()
    engine = _Search(dual, triangle_map, config)
    start = time.monotonic()
    verdict = engine.run()
    stats = engine.stats
    stats.wall_time_ms = (time.monotonic() - start) * 1000.0

    if verdict == "abort":
        stats.budget_hit = True
        return SolveOutcome(ABORTED, None, stats, engine._abort_reason)
    if verdict == "unsat":
        return SolveOutcome(NON_HAMILTONIAN, None, stats)

    tree_vertices = frozenset(
        v for v in range(dual.face_count) if engine.labels[v] == TREE
    )
    cert = Certificate(dual.outer_vertex, tree_vertices, frozenset(engine.tree_edges))
    violations = certify.check_certificate(cert, dual, triangle_map)
    if violations:
        raise AssertionError(
            f"search produced an invalid certificate: {[str(v) for v in violations]}"
        )
    cycle = certify.reconstruct_cycle(cert, dual, embedding)
    if not certify.verify_hamiltonian(cycle, embedding):
        raise AssertionError("reconstructed cycle failed primal verification")
    full = Certificate(cert.root, cert.tree_vertices, cert.tree_edges, cycle)
    return SolveOutcome(HAMILTONIAN, full, stats)
