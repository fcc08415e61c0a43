import pytest
from hypothesis import given, settings

from conftest import kronecker, quivers
from oracles import canonical, contraction_creates_directed_cycle, fraction_rank, incidence
from quivertoric import Quiver, canonical_weight
from quivertoric.errors import PreconditionError
from quivertoric.quiver import ArrowIndex, validate
from quivertoric.structure import (
    ContractionStep,
    contract,
    contractible_arrows,
    cycle_basis,
    cycle_basis_through,
    cycle_space_dimension,
    decompose,
    has_proper_cycle,
    in_cycle,
    is_contractible,
    simplify,
)


def is_circulation(q, vec):
    m = incidence(q)
    return all(sum(vec[i] * m[i][j] for i in range(len(m))) == 0 for j in range(q.num_vertices))


def test_cycle_space_dimension_examples(example_quiver):
    assert cycle_space_dimension(kronecker(3)) == 2
    assert cycle_space_dimension(example_quiver) == 5
    assert cycle_space_dimension(Quiver.from_edges([("a", "b"), ("b", "c")])) == 0


def test_worked_example_cycle_basis(example_quiver):
    basis = cycle_basis(example_quiver)
    assert len(basis) == 5
    # the single proper cycle reads +X -Y +Z -W (a->c, b->c, b->d, a->d)
    proper = [c for c in basis if all(c[example_quiver.flat_index(ArrowIndex(i, 0))] for i in range(4))]
    assert len(proper) == 1
    signs = [proper[0][example_quiver.flat_index(ArrowIndex(i, 0))] for i in range(4)]
    assert signs in ([1, -1, 1, -1], [-1, 1, -1, 1])


def test_bundle_cycles_are_consecutive_copies():
    assert cycle_basis(kronecker(3)) == [(1, -1, 0), (0, 1, -1)]


@given(quivers())
def test_cycle_basis_is_a_basis_of_circulations(q):
    basis = cycle_basis(q)
    assert len(basis) == cycle_space_dimension(q)
    assert all(is_circulation(q, c) for c in basis)
    if basis:
        assert fraction_rank(basis) == len(basis)


@settings(max_examples=150)
@given(quivers())
def test_contractibility_matches_directed_cycle_oracle(q):
    for flat, a in enumerate(q.arrows):
        expected = q.bundles[a.bundle].mult == 1 and not contraction_creates_directed_cycle(q, flat)
        assert is_contractible(q, a) == expected


def test_contractibility_examples(example_quiver):
    assert not is_contractible(kronecker(2), ArrowIndex(0, 0))
    assert is_contractible(example_quiver, ArrowIndex(3, 0))
    shortcut = Quiver.from_edges([("a", "b"), ("b", "c"), ("a", "c")])
    assert not is_contractible(shortcut, ArrowIndex(2, 0))
    assert is_contractible(shortcut, ArrowIndex(0, 0))


def test_cycle_basis_through_requires_contractible():
    with pytest.raises(PreconditionError):
        cycle_basis_through(kronecker(2), ArrowIndex(0, 0))


@settings(max_examples=150)
@given(quivers())
def test_cycle_basis_through_is_sign_coherent(q):
    for x in contractible_arrows(q):
        fx = q.flat_index(x)
        basis = cycle_basis_through(q, x)
        assert len(basis) == cycle_space_dimension(q)
        assert all(is_circulation(q, c) for c in basis)
        if basis:
            assert fraction_rank(basis) == len(basis)
        for y in range(q.num_arrows):
            relative = {c[y] * c[fx] for c in basis if c[y] and c[fx]}
            assert len(relative) <= 1


def test_contract_worked_example(example_quiver):
    result = contract(example_quiver, ArrowIndex(3, 0))
    core = result.quiver
    assert core.vertices == ("ad", "b", "c")
    assert [(b.src, b.dst, b.mult) for b in core.bundles] == [("ad", "c", 3), ("b", "c", 2), ("b", "ad", 2)]
    assert result.vertex_map["a"] == result.vertex_map["d"] == "ad"


def test_contract_merges_parallel_bundles():
    q = Quiver.from_edges([("a", "b"), ("a", "c", 2), ("b", "c")])
    result = contract(q, ArrowIndex(0, 0))
    assert [(b.src, b.dst, b.mult) for b in result.quiver.bundles] == [("ab", "c", 3)]
    assert result.arrow_map[ArrowIndex(2, 0)] == ArrowIndex(0, 2)


def test_contract_rejects_non_contractible():
    with pytest.raises(PreconditionError):
        contract(kronecker(2), ArrowIndex(0, 0))


@settings(max_examples=150)
@given(quivers())
def test_contraction_pushes_weight_forward(q):
    theta = canonical_weight(q).as_dict()
    for x in contractible_arrows(q):
        result = contract(q, x)
        assert validate(result.quiver) == []
        pushed = {v: 0 for v in result.quiver.vertices}
        for v, w in theta.items():
            pushed[result.vertex_map[v]] += w
        assert canonical_weight(result.quiver).as_dict() == pushed
        assert result.quiver.num_arrows == q.num_arrows - 1
        # arrow map is a bijection onto the new arrows preserving endpoints
        assert sorted(result.arrow_map.values()) == list(result.quiver.arrows)
        for a, b in result.arrow_map.items():
            old, new = q.bundles[a.bundle], result.quiver.bundles[b.bundle]
            assert (result.vertex_map[old.src], result.vertex_map[old.dst]) == (new.src, new.dst)


def test_simplify_worked_example(example_quiver):
    core, log = simplify(example_quiver)
    assert [(b.src, b.dst, b.mult) for b in core.bundles] == [("ad", "c", 3), ("b", "c", 2), ("b", "ad", 2)]
    assert log == (ContractionStep("a", "d", "ad", "blowdown"),)
    assert has_proper_cycle(core)


def test_simplify_tree_to_single_bundle():
    q = Quiver.from_edges([("a", "b"), ("b", "c", 2)])
    core, log = simplify(q)
    assert [(b.src, b.dst, b.mult) for b in core.bundles] == [("ab", "c", 2)]
    assert [s.kind for s in log] == ["neutral"]


def test_in_cycle():
    q = Quiver.from_edges([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    assert in_cycle(q, ArrowIndex(0, 0))
    assert not in_cycle(q, ArrowIndex(3, 0))
    assert in_cycle(kronecker(2), ArrowIndex(0, 1))


@settings(max_examples=100)
@given(quivers())
def test_simplify_reaches_simple_quiver(q):
    for reverse in (False, True):
        core, log = simplify(q, reverse=reverse)
        assert contractible_arrows(core) == []
        assert len(log) == q.num_vertices - core.num_vertices
        assert cycle_space_dimension(core) == cycle_space_dimension(q)


def test_simplify_depends_on_contraction_order():
    # corpus quiver 2: one order ends in a single bundle, the other in a triangle
    q = Quiver.from_edges([("a", "c"), ("a", "b", 2), ("d", "c"), ("b", "c"), ("a", "d"), ("d", "b")], ["a", "b", "c", "d"])
    forward, _ = simplify(q)
    backward, _ = simplify(q, reverse=True)
    assert [(b.src, b.dst, b.mult) for b in forward.bundles] == [("ad", "bc", 5)]
    assert [(b.src, b.dst, b.mult) for b in backward.bundles] == [("a", "c", 1), ("a", "db", 3), ("db", "c", 2)]
    assert not has_proper_cycle(forward)
    assert has_proper_cycle(backward)


def test_has_proper_cycle(example_quiver):
    assert has_proper_cycle(example_quiver)
    assert not has_proper_cycle(kronecker(4))
    assert not has_proper_cycle(Quiver.from_edges([("a", "b", 2), ("b", "c", 3)]))


def test_decompose_cut_vertex():
    q = Quiver.from_edges([("a", "b", 2), ("b", "c", 3)])
    factors = decompose(q)
    assert [[(b.src, b.dst, b.mult) for b in sub.bundles] for sub, _ in factors] == [[("a", "b", 2)], [("b", "c", 3)]]
    assert [w.as_dict() for _, w in factors] == [{"a": -2, "b": 2}, {"b": -3, "c": 3}]


def test_decompose_block_is_whole_quiver(example_quiver):
    factors = decompose(example_quiver)
    assert len(factors) == 1
    assert factors[0][0] == example_quiver


@given(quivers())
def test_decompose_partitions_bundles_and_weights_are_canonical(q):
    factors = decompose(q)
    if not q.bundles:
        return
    seen = [b for sub, _ in factors for b in sub.bundles]
    assert sorted(seen, key=repr) == sorted(q.bundles, key=repr)
    for sub, w in factors:
        assert list(w) == canonical(sub)
