"""Certificate checking, reconstruction, replay, and the JSON wire format."""

import pytest

from conftest import enumerate_valid_trees
from hamdual import certify
from hamdual.certify import Certificate
from hamdual.dual import build_dual
from hamdual.errors import IdOutOfRange, ReconstructionFailed, ReplayMismatch


def test_k4_two_vertex_tree_is_valid(k4):
    dual, tmap = build_dual(k4)
    cert = Certificate(0, frozenset({0, 1}), frozenset({0}))
    assert certify.check_certificate(cert, dual, tmap) == []


def test_k4_root_only_fails_domination(k4):
    dual, tmap = build_dual(k4)
    cert = Certificate(0, frozenset({0}), frozenset())
    violations = certify.check_certificate(cert, dual, tmap)
    assert [v.kind for v in violations] == ["domination"]


def test_cube_opposite_pair_fails_treeness(cube):
    dual, tmap = build_dual(cube)
    # Face 5 is the octahedron vertex opposite the root face 0.
    non_adj = set(range(6)) - {g for g, _ in dual.adjacency[0]} - {0}
    opposite = non_adj.pop()
    cert = Certificate(0, frozenset({0, opposite}), frozenset())
    violations = certify.check_certificate(cert, dual, tmap)
    assert any(v.kind == "treeness" for v in violations)


def test_chord_reported_as_induced_violation(cube):
    dual, tmap = build_dual(cube)
    # Take a valid tree and delete one edge while keeping its vertices.
    cert = max(enumerate_valid_trees(dual, tmap), key=lambda c: len(c.tree_edges))
    dropped = max(cert.tree_edges)
    bad = Certificate(
        cert.root, cert.tree_vertices, cert.tree_edges - {dropped}
    )
    violations = certify.check_certificate(bad, dual, tmap)
    kinds = {v.kind for v in violations}
    assert "induced" in kinds or "treeness" in kinds


def test_wrong_root_reported(k4):
    dual, tmap = build_dual(k4)
    cert = Certificate(1, frozenset({1, 0}), frozenset({0}))
    violations = certify.check_certificate(cert, dual, tmap)
    assert any(v.kind == "root" for v in violations)


def test_id_out_of_range(k4):
    dual, tmap = build_dual(k4)
    with pytest.raises(IdOutOfRange):
        certify.check_certificate(
            Certificate(0, frozenset({0, 9}), frozenset()), dual, tmap
        )
    with pytest.raises(IdOutOfRange):
        certify.check_certificate(
            Certificate(0, frozenset({0}), frozenset({99})), dual, tmap
        )


def test_k4_reconstruct_cycle(k4):
    dual, _ = build_dual(k4)
    cert = Certificate(0, frozenset({0, 1}), frozenset({0}))
    cycle = certify.reconstruct_cycle(cert, dual, k4)
    assert tuple(v + 1 for v in cycle) == (1, 3, 2, 4)
    assert certify.verify_hamiltonian(cycle, k4)


def test_reconstruct_all_faces_fails(k4):
    dual, _ = build_dual(k4)
    cert = Certificate(0, frozenset(range(4)), frozenset(range(6)))
    with pytest.raises(ReconstructionFailed):
        certify.reconstruct_cycle(cert, dual, k4)


def test_reconstruct_rejects_split_non_cycle(prism):
    # The two triangle faces alone split off the two triangle boundaries:
    # six degree-2 vertices but two 3-cycles instead of one 6-cycle.
    dual, _ = build_dual(prism)
    tri = [f.id for f in prism.faces if len(f) == 3]
    cert = Certificate(dual.outer_vertex, frozenset(tri), frozenset())
    with pytest.raises(ReconstructionFailed):
        certify.reconstruct_cycle(cert, dual, prism)


def test_verify_hamiltonian_cases(k4, prism):
    assert certify.verify_hamiltonian([0, 1, 2, 3], k4)
    assert not certify.verify_hamiltonian([0, 1, 2], k4)
    assert not certify.verify_hamiltonian([0, 1, 2, 2], k4)
    # Six vertices, but (1,5) external is not a prism edge.
    assert not certify.verify_hamiltonian([0, 4, 3, 5, 2, 1], prism)


def test_all_enumerated_trees_reconstruct_and_replay(k4, prism, cube):
    for emb in (k4, prism, cube):
        for root in range(emb.face_count):
            dual, tmap = build_dual(emb, outer_face_choice=root)
            for cert in enumerate_valid_trees(dual, tmap):
                assert certify.check_certificate(cert, dual, tmap) == []
                cycle = certify.reconstruct_cycle(cert, dual, emb)
                assert certify.verify_hamiltonian(cycle, emb)
                state = certify.replay_expansion(cert, emb, dual)
                assert certify.canonical_cycle(state.sigma) == cycle


def test_valid_tree_exists_for_every_root_when_hamiltonian():
    # Hamiltonian instances admit a valid tree no matter which face is the
    # root; non-Hamiltonian ones admit none.
    from hamdual.oracle import generate_corpus, oracle_dfs

    for emb in generate_corpus(10, seed=31, samples=12):
        expected = oracle_dfs(emb).hamiltonian
        for root in range(emb.face_count):
            dual, tmap = build_dual(emb, outer_face_choice=root)
            trees = enumerate_valid_trees(dual, tmap)
            assert bool(trees) == expected
            for cert in trees:
                cycle = certify.reconstruct_cycle(cert, dual, emb)
                assert certify.verify_hamiltonian(cycle, emb)


def test_non_bfs_order_can_mismatch(cube):
    dual, tmap = build_dual(cube)
    # Pick a path-shaped tree: one edge does not touch the root.
    cert = next(
        c
        for c in enumerate_valid_trees(dual, tmap)
        if any(dual.outer_vertex not in dual.endpoints(k) for k in c.tree_edges)
    )
    order = certify.bfs_edge_order(cert, dual)
    assert len(order) >= 2
    # Expanding the deep edge first hits a primal edge that is not yet on
    # the cycle.
    with pytest.raises(ReplayMismatch) as exc:
        certify.replay_expansion(cert, cube, dual, edge_order=order[::-1])
    assert exc.value.step == 0


def test_canonical_cycle():
    assert certify.canonical_cycle([2, 0, 1, 3]) == (0, 1, 3, 2)
    assert certify.canonical_cycle([0, 3, 1, 2]) == (0, 2, 1, 3)
    assert certify.canonical_cycle((1, 0, 2)) == (0, 1, 2)


def test_certificate_json_round_trip(cube):
    dual, tmap = build_dual(cube)
    cert = max(enumerate_valid_trees(dual, tmap), key=lambda c: len(c.tree_edges))
    cycle = certify.reconstruct_cycle(cert, dual, cube)
    full = Certificate(cert.root, cert.tree_vertices, cert.tree_edges, cycle)
    text = certify.certificate_to_json(full, dual)
    assert text == certify.certificate_to_json(full, dual)
    back = certify.certificate_from_json(text, dual)
    assert back == full


def test_certificate_json_bad_pair(k4):
    dual, _ = build_dual(k4)
    with pytest.raises(IdOutOfRange):
        certify.certificate_from_json(
            '{"root": 0, "tree_vertices": [0], "tree_edges": [[0, 9]], "cycle": null}',
            dual,
        )
