from math import prod

import pytest

from operadic_incidence.combinat import (Forest, blob_contents, blob_refinement,
                                         contract_blobbing, cut_layers,
                                         enumerate_blobbings, enumerate_keys,
                                         enumerate_layerings, enumerate_ptrees,
                                         glue)
from operadic_incidence.exceptions import ResidueMismatch, TrivialTreeHasNoBlobbing
from operadic_incidence.grammar import parse_tree
from operadic_incidence.special import word_to_tree
from operadic_incidence.trees import corolla, linear_tree, trivial_tree


def test_enumerate_counts_linear_trees(identity):
    trees = enumerate_ptrees(identity, 4, 1)
    assert sorted(t.num_nodes for t in trees) == [0, 1, 2, 3, 4]


def test_enumerate_naked_trees_small(terminal):
    # the trivial tree and three corollas; six more trees have two nodes
    keys = enumerate_keys(terminal, 1, 2)
    assert len(keys) == 4
    assert keys == sorted(keys)
    assert len(set(enumerate_keys(terminal, 2, 2))) == 4 + 6


def test_enumerate_is_up_to_isomorphism(terminal, freemonoid):
    assert len(enumerate_ptrees(freemonoid, 2, 2)) > len(enumerate_ptrees(terminal, 2, 2))


@pytest.mark.parametrize('descriptor, max_nodes, max_arity', [
    ('terminal', 4, 3),
    ('freemonoid', 4, 2),
    ('bd:id', 3, 2),
    ('poset:diamond.json', 4, 1),
])
def test_keys_are_assembled_like_built_trees(descriptor, max_nodes, max_arity, resolve):
    op = resolve(descriptor)
    trees = enumerate_ptrees(op, max_nodes, max_arity)
    assert [t.key for t in trees] == enumerate_keys(op, max_nodes, max_arity)
    assert all(t.canonical() is t for t in trees)


def test_layerings_of_linear_trees(identity):
    for n in range(6):
        t = linear_tree(identity, n)
        assert len(enumerate_layerings(t, 2)) == n + 1
        assert len(enumerate_layerings(t, 3)) == (n + 1) * (n + 2) // 2


def test_layerings_are_monotone(terminal):
    t = parse_tree('((* *) (*))', terminal)
    tree = t.tree
    for c in enumerate_layerings(t, 3):
        for n in tree.nodes:
            parent = tree.parent_node(n)
            assert parent is None or c.level[parent] <= c.level[n]


def test_cut_layers_of_cherry(terminal):
    t = parse_tree('((* *) (*))', terminal)
    results = {(crown, trunk.key) for crown, trunk in
               (cut_layers(t, c) for c in enumerate_layerings(t, 2))}
    root_only = parse_tree('(* *)', terminal)
    assert (Forest([parse_tree('(* *)', terminal), parse_tree('(*)', terminal)]), root_only.key) in results
    assert (Forest([t]), trivial_tree(terminal, 'o').key) in results
    assert (Forest(trivial_tree(terminal, 'o') for _ in range(3)), t.key) in results
    assert len(results) == 5


def test_counting_bridge(terminal):
    for t in enumerate_ptrees(terminal, 4, 3):
        cuts = [cut_layers(t, c) for c in enumerate_layerings(t, 2)]
        three = len(enumerate_layerings(t, 3))
        assert three == sum(len(enumerate_layerings(trunk, 2)) for _, trunk in cuts)
        assert three == sum(prod(len(enumerate_layerings(r, 2)) for r in crown) for crown, _ in cuts)


def test_product_of_trunk_and_crown_counts_overcounts(identity):
    t = linear_tree(identity, 1)
    cuts = [cut_layers(t, c) for c in enumerate_layerings(t, 2)]
    product = sum(len(enumerate_layerings(trunk, 2)) * prod(len(enumerate_layerings(r, 2)) for r in crown)
                  for crown, trunk in cuts)
    assert len(enumerate_layerings(t, 3)) == 3
    assert product == 4


def test_blobbings_are_subsets_of_inner_edges(terminal):
    for t in enumerate_ptrees(terminal, 6, 3):
        if t.is_trivial:
            with pytest.raises(TrivialTreeHasNoBlobbing):
                enumerate_blobbings(t)
            continue
        blobbings = enumerate_blobbings(t)
        assert len(blobbings) == 2 ** len(t.tree.inner_edges)
        for b in blobbings:
            assert sorted(n for blob in b.blobs for n in blob) == sorted(t.tree.nodes)


def test_blobbing_counts_up_to_seven_nodes(terminal):
    for t in enumerate_ptrees(terminal, 7, 3):
        if not t.is_trivial:
            assert len(enumerate_blobbings(t)) == 2 ** len(t.tree.inner_edges)


def test_cut_layers_split_along_levels(terminal):
    for t in enumerate_ptrees(terminal, 4, 3):
        for c in enumerate_layerings(t, 2):
            crown, trunk = cut_layers(t, c)
            assert trunk.num_nodes == len(c.layer(1))
            assert crown.num_nodes == len(c.layer(2))


def test_contract_blobbing_of_linear_tree(identity):
    t = linear_tree(identity, 3).canonical()
    blobbings = enumerate_blobbings(t)
    everything = blobbings[-1]
    assert len(everything.blobs) == 1
    assert contract_blobbing(identity, t, everything).key == corolla(identity, 'id').key
    assert blob_contents(t, everything) == Forest([t])
    nothing = blobbings[0]
    assert contract_blobbing(identity, t, nothing).key == t.key
    assert blob_contents(t, nothing) == Forest([linear_tree(identity, 1)] * 3)


def test_contract_blobbing_over_poset(nat):
    t = word_to_tree('35688', nat)
    everything = enumerate_blobbings(t)[-1]
    assert contract_blobbing(nat, t, everything).key == word_to_tree('38', nat).key


def test_glue_inverts_contraction(terminal):
    t = parse_tree('((* *) (*) *)', terminal)
    for b in enumerate_blobbings(t):
        skeleton = contract_blobbing(terminal, t, b)
        assert glue(terminal, skeleton, blob_refinement(t, b)).key == t.key


def test_glue_checks_residues(terminal):
    skeleton = corolla(terminal, 2)
    (n,) = skeleton.tree.nodes
    with pytest.raises(ResidueMismatch):
        glue(terminal, skeleton, {n: corolla(terminal, 3)})
    assert glue(terminal, skeleton, {n: parse_tree('((*) *)', terminal)}).key == parse_tree('((*) *)', terminal).key


@pytest.mark.parametrize('descriptor, max_nodes, max_arity', [
    ('terminal', 6, 2),
    ('terminal-reduced', 5, 3),
    ('freemonoid', 5, 2),
    ('zmod:2', 6, 1),
    ('poset:diamond.json', 5, 1),
    ('free:binary.json', 4, 2),
    ('quiver:square.json', 4, 1),
    ('bd:id', 4, 2),
    ('bd:freemonoid', 3, 2),
    ('bd-reduced:freemonoid', 3, 2),
    ('bd:bd:id', 3, 2),
])
def test_glue_inverts_every_contraction(descriptor, max_nodes, max_arity, resolve):
    op = resolve(descriptor)
    for t in enumerate_ptrees(op, max_nodes, max_arity):
        if t.is_trivial:
            continue
        for b in enumerate_blobbings(t):
            skeleton = contract_blobbing(op, t, b)
            assert glue(op, skeleton, blob_refinement(t, b)).key == t.key
