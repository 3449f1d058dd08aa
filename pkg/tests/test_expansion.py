"""Expansion algorithm: paths, growth, policies, per-step invariants."""

import pytest

from conftest import K4_ROTATIONS, embedding_from
from hamdual import expansion as ex
from hamdual.dual import build_dual
from hamdual.errors import (
    EdgeNotOnCycle,
    NoComplementaryPath,
    ScriptEdgeInvalid,
)


def cycle_edge_set(vertices):
    n = len(vertices)
    return {
        frozenset((vertices[i], vertices[(i + 1) % n])) for i in range(n)
    }


def test_initial_cycle_k4(k4):
    dual, _ = build_dual(k4)  # root = face 0
    state = ex.initial_cycle(k4, dual)
    assert len(state.sigma) == 3
    assert state.interior_faces == frozenset({1, 2, 3})
    assert state.chosen_dual_edges == ()
    assert state.step == 0


def test_initial_cycle_cube(cube):
    dual, _ = build_dual(cube)
    state = ex.initial_cycle(cube, dual)
    assert len(state.sigma) == 4
    assert len(state.interior_faces) == 5


def test_initial_cycle_prism_quad_root(prism):
    quad = next(f.id for f in prism.faces if len(f) == 4)
    dual, _ = build_dual(prism, outer_face_choice=quad)
    state = ex.initial_cycle(prism, dual)
    assert len(state.sigma) == 4
    assert len(state.interior_faces) == 4


def test_k4_complementary_path():
    # Root at the (2,1,3) face so that sigma_0 = (1,2,3) as a vertex set.
    k4 = embedding_from(K4_ROTATIONS)
    dual, _ = build_dual(k4, outer_face_choice=1)
    state = ex.initial_cycle(k4, dual)
    assert sorted(v + 1 for v in state.sigma) == [1, 2, 3]
    path = ex.complementary_path(state, 0)  # edge (1,2)
    assert [v + 1 for v in path] in ([1, 4, 2], [2, 4, 1])


def test_k4_expand_yields_hamiltonian_cycle():
    k4 = embedding_from(K4_ROTATIONS)
    dual, _ = build_dual(k4, outer_face_choice=1)
    state = ex.initial_cycle(k4, dual)
    new = ex.expand(state, 0)
    assert len(new.sigma) == 4
    assert cycle_edge_set(new.sigma) == {
        frozenset(p) for p in ((1, 3), (3, 0), (0, 2), (2, 1))
    }
    assert new.chosen_dual_edges == (0,)
    assert state.sigma != new.sigma  # input state untouched
    ex.check_state_invariants(new, prev=state)


def test_k4_everything_absent_after_first_expansion():
    k4 = embedding_from(K4_ROTATIONS)
    dual, _ = build_dual(k4, outer_face_choice=1)
    state = ex.expand(ex.initial_cycle(k4, dual), 0)
    assert ex.expandable_edges(state) == []
    with pytest.raises(NoComplementaryPath):
        ex.expand(state, sorted(state.sigma_edges)[0])


def test_query_edge_not_on_cycle():
    k4 = embedding_from(K4_ROTATIONS)
    dual, _ = build_dual(k4, outer_face_choice=1)
    state = ex.initial_cycle(k4, dual)
    # Edge (1,4) external is edge id 2 and not on sigma_0 = (1,2,3).
    with pytest.raises(EdgeNotOnCycle):
        ex.complementary_path(state, 2)


def test_cube_every_first_expansion_grows_to_six(cube):
    dual, _ = build_dual(cube)
    state = ex.initial_cycle(cube, dual)
    options = ex.expandable_edges(state)
    assert options == sorted(state.sigma_edges)
    for e in options:
        assert len(ex.expand(state, e).sigma) == 6


def test_fifo_k4_all_roots(k4):
    for root in range(4):
        dual, _ = build_dual(k4, outer_face_choice=root)
        final = ex.run_expansion(k4, dual, policy="fifo", check=True)
        assert len(final.sigma) == 4
        assert final.step == 1


def test_cube_scripted_known_good_sequence(cube):
    dual, _ = build_dual(cube)
    # Found by exhaustive search over expansion sequences.
    final = ex.run_expansion(cube, dual, policy="scripted", script=[0, 5], check=True)
    assert len(final.sigma) == 8
    assert final.chosen_dual_edges == (0, 5)


def test_scripted_bad_edge(cube):
    dual, _ = build_dual(cube)
    with pytest.raises(ScriptEdgeInvalid):
        ex.run_expansion(cube, dual, policy="scripted", script=[0, 0])
    with pytest.raises(ScriptEdgeInvalid):
        ex.run_expansion(cube, dual, policy="scripted", script=[11])
    with pytest.raises(ScriptEdgeInvalid):
        ex.run_expansion(cube, dual, policy="scripted")


def test_random_policy_deterministic(cube):
    dual, _ = build_dual(cube)
    a = ex.run_expansion(cube, dual, policy="random", seed=7)
    b = ex.run_expansion(cube, dual, policy="random", seed=7)
    assert a.sigma == b.sigma
    assert a.chosen_dual_edges == b.chosen_dual_edges


def test_unknown_policy(cube):
    dual, _ = build_dual(cube)
    with pytest.raises(ValueError):
        ex.run_expansion(cube, dual, policy="eager")


def test_step_count_bound(k4, prism, cube):
    for emb in (k4, prism, cube):
        dual, _ = build_dual(emb)
        final = ex.run_expansion(emb, dual, policy="fifo", check=True)
        assert final.step <= emb.face_count - 1


def test_tree_of_fresh_and_after_step(k4):
    dual, _ = build_dual(k4, outer_face_choice=1)
    state = ex.initial_cycle(k4, dual)
    tree = ex.tree_of(state)
    assert tree.vertices == frozenset({1})
    assert tree.edges == ()
    after = ex.expand(state, 0)
    tree = ex.tree_of(after)
    assert len(tree.vertices) == 2
    assert len(tree.edges) == 1


def test_tree_size_tracks_steps(prism, cube):
    for emb in (prism, cube):
        for seed in range(6):
            dual, _ = build_dual(emb)
            state = ex.initial_cycle(emb, dual)
            while True:
                options = ex.expandable_edges(state)
                if not options:
                    break
                state = ex.expand(state, options[seed % len(options)])
                assert len(ex.tree_of(state).vertices) == state.step + 1


def test_probe_never_sees_exterior_face(cube, prism):
    for emb in (cube, prism):
        for seed in range(8):
            probe = ex.PathProbe()
            dual, _ = build_dual(emb)
            ex.run_expansion(
                emb, dual, policy="random", seed=seed, probe=probe, check=True
            )
            assert probe.records
            for _, _, _, was_interior, n_candidates in probe.records:
                assert was_interior
                assert n_candidates <= 1


def test_random_runs_keep_invariants(k4, prism, cube):
    for emb in (k4, prism, cube):
        for seed in range(10):
            dual, _ = build_dual(emb)
            final = ex.run_expansion(emb, dual, policy="random", seed=seed, check=True)
            assert not ex.expandable_edges(final)


def test_fifo_terminates_only_when_nothing_expandable():
    # FIFO drops a blocked edge for good; that is only sound if blocked
    # edges can never unblock, so the terminal state must be saturated.
    from hamdual.oracle import generate_corpus

    for emb in generate_corpus(14, seed=3, samples=25):
        dual, _ = build_dual(emb)
        final = ex.run_expansion(emb, dual, policy="fifo", check=True)
        assert ex.expandable_edges(final) == []
