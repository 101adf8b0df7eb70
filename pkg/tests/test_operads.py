import itertools

import pytest

from operadic_incidence.combinat import (Forest, blob_contents, blob_refinement,
                                         contract_blobbing, enumerate_blobbings,
                                         enumerate_keys, enumerate_ptrees, glue)
from operadic_incidence.exceptions import (ArityMismatch, BoundsTooLargeForColourDomain,
                                           ColourMismatch, MalformedTable,
                                           UnsupportedNesting)
from operadic_incidence.grammar import parse_tree
from operadic_incidence.operads import (BaezDolanOperad, FreeMonoidOperad,
                                        FreeOperad, IdentityOperad,
                                        MonoidOperad, NaturalsOperad,
                                        PosetOperad, QuiverOperad,
                                        TerminalOperad, TreeOperation,
                                        make_operad, op_compose)
from operadic_incidence.special import word_to_tree
from operadic_incidence.trees import corolla, decorate, graft, linear_tree, transport


@pytest.mark.parametrize('descriptor, kind', [
    ('id', IdentityOperad),
    ('identity', IdentityOperad),
    ('freemonoid', FreeMonoidOperad),
    ('terminal', TerminalOperad),
    ('terminal-reduced', TerminalOperad),
    ('nat', NaturalsOperad),
    ('zmod:3', MonoidOperad),
    ('bd:id', BaezDolanOperad),
    ('bd(freemonoid)', BaezDolanOperad),
    ('bd-reduced:freemonoid', BaezDolanOperad),
])
def test_make_operad_descriptors(descriptor, kind):
    assert isinstance(make_operad(descriptor), kind)


def test_make_operad_from_files(data_path):
    assert isinstance(make_operad('monoid:' + data_path('z2.json')), MonoidOperad)
    assert isinstance(make_operad('poset:' + data_path('diamond.json')), PosetOperad)
    assert isinstance(make_operad('free:' + data_path('binary.json')), FreeOperad)
    assert isinstance(make_operad('quiver:' + data_path('square.json')), QuiverOperad)
    assert make_operad('bd:monoid:' + data_path('z2.json')).inner == make_operad('monoid:' + data_path('z2.json'))


def test_make_operad_rejects_unknown_descriptors():
    with pytest.raises(ValueError):
        make_operad('octonions')
    with pytest.raises(UnsupportedNesting):
        make_operad('bd:octonions')


def test_reduced_terminal_has_no_nullary_operation():
    op = make_operad('terminal-reduced')
    assert list(op.operations(2)) == [1, 2]
    assert not op.is_operation(0)


def test_compose_is_type_checked(terminal, nat):
    with pytest.raises(ArityMismatch):
        terminal.compose(2, [1])
    assert terminal.compose(2, [3, 0]) == 3
    with pytest.raises(ColourMismatch):
        nat.compose((2, 3), [(0, 1)])
    assert nat.compose((2, 3), [(0, 2)]) == (0, 3)


def test_monoid_table_is_checked():
    with pytest.raises(MalformedTable):
        MonoidOperad(['e', 'a'], [['e', 'a'], ['a', 'a'], ['a', 'e']])
    with pytest.raises(MalformedTable):
        MonoidOperad(['a', 'b'], [['a', 'a'], ['b', 'b']])
    with pytest.raises(MalformedTable):
        MonoidOperad(['e', 'a'], [['e', 'x'], ['a', 'e']])


def test_poset_relation_is_checked():
    with pytest.raises(MalformedTable):
        PosetOperad(['a', 'b'], [['a', 'b'], ['b', 'b']])
    with pytest.raises(MalformedTable):
        PosetOperad(['a', 'b', 'c'], [['a', 'a'], ['b', 'b'], ['c', 'c'], ['a', 'b'], ['b', 'c']])
    with pytest.raises(MalformedTable):
        PosetOperad(['a', 'b'], [['a', 'a'], ['b', 'b'], ['a', 'b'], ['b', 'a']])


def test_monoid_residue_is_the_ordered_product():
    op = MonoidOperad.cyclic(3)
    t = word_to_tree([1, 2, 2], op)
    assert op.residue(t) == 2
    assert op.norm([1, 2, 2]) == 2
    assert op.compose(1, [2]) == 0


def test_noncommutative_monoid_composes_leaf_first():
    # left-zero semigroup with an identity adjoined: x·y = x
    op = MonoidOperad(['e', 'a', 'b'], [['e', 'a', 'b'], ['a', 'a', 'a'], ['b', 'b', 'b']])
    assert op.compose('b', ['a']) == 'a'
    assert op.residue(word_to_tree('ab', op)) == 'a'


def test_poset_residue(diamond):
    t = word_to_tree('abd', diamond)
    assert diamond.residue(t) == ('a', 'd')


def test_infinite_colours_need_a_window(nat):
    with pytest.raises(BoundsTooLargeForColourDomain):
        enumerate_ptrees(nat, 2, 1)
    assert len(enumerate_ptrees(nat, 1, 1, colours=range(3))) == 3 + 6


def test_quiver_paths(data_path):
    op = make_operad('quiver:' + data_path('square.json'))
    assert op.compose(op.parse_op('b'), [op.parse_op('a')]) == op.parse_op('a.b')
    assert op.output_colour(op.parse_op('1_p')) == 'p'
    t = parse_tree('b(a(*:p):q):s', op)
    assert op.op_label(op.residue(t)) == 'a.b'


def test_free_operad_composes_by_grafting(data_path):
    op = make_operad('free:' + data_path('binary.json'))
    f = op.parse_op('f(* *)')
    g = op.parse_op('g(*)')
    composite = op.compose(f, [g, op.unit('x')])
    assert composite == op.parse_op('f(g(*) *)')
    assert op.arity(composite) == 2


def test_baez_dolan_over_identity(identity):
    op = BaezDolanOperad(identity)
    l2, l1 = TreeOperation(linear_tree(identity, 2)), TreeOperation(linear_tree(identity, 1))
    assert op.colours() == ('id',)
    assert op.arity(l2) == 2
    assert op.output_colour(l2) == 'id'
    assert op.unit('id') == l1
    assert op.compose(l2, [l1, l2]) == TreeOperation(linear_tree(identity, 3))
    assert op.compose(l2, [op.unit('id'), op.unit('id')]) == l2


def test_baez_dolan_over_identity_is_free_monoid(identity, freemonoid):
    bd = BaezDolanOperad(identity)
    transported = {
        transport(t, freemonoid, lambda b: b.size, lambda c: 'o').key
        for t in enumerate_ptrees(bd, 3, 2)
    }
    assert transported == set(enumerate_keys(freemonoid, 3, 2))


def test_baez_dolan_over_identity_is_free_monoid_up_to_five_nodes(identity, freemonoid):
    keys = enumerate_keys(BaezDolanOperad(identity), 5, 4,
                          op_label=lambda b: str(b.size), colour_label=lambda c: 'o')
    assert keys == enumerate_keys(freemonoid, 5, 4)


def test_reduced_baez_dolan_drops_trivial_trees(identity):
    op = BaezDolanOperad(identity, reduced=True)
    assert all(op.arity(b) >= 1 for b in op.operations(3))
    assert not op.is_operation(TreeOperation(linear_tree(identity, 0)))


@pytest.mark.parametrize('descriptor', ['bd:terminal', 'bd-reduced:terminal', 'bd(terminal-reduced)', 'bd:bd:terminal'])
def test_baez_dolan_needs_rigid_inner_operad(descriptor):
    with pytest.raises(UnsupportedNesting):
        make_operad(descriptor)


def test_rigid_operads(terminal, freemonoid, identity, data_path):
    assert not terminal.rigid
    assert freemonoid.rigid and identity.rigid
    assert make_operad('poset:' + data_path('diamond.json')).rigid
    assert make_operad('bd:bd:id').rigid
    with pytest.raises(UnsupportedNesting):
        BaezDolanOperad(terminal)


def test_baez_dolan_keeps_slot_order(freemonoid):
    op = BaezDolanOperad(freemonoid)
    fork = TreeOperation(parse_tree('((*) ())', freemonoid))
    assert op.input_colours(fork) == (2, 1, 0)
    assert op.output_colour(fork) == 1
    assert op.arrange(fork, ['z', 'y', 'x']) == (0, 1, 2)


def test_baez_dolan_contractions_are_well_typed():
    op = make_operad('bd:freemonoid')
    for t in enumerate_ptrees(op, 3, 2):
        if t.is_trivial:
            continue
        for b in enumerate_blobbings(t):
            c = contract_blobbing(op, t, b)
            decorate(c.tree, c.node_dec, c.edge_dec, op)


def test_signature_equality_and_hash():
    assert make_operad('zmod:2') == MonoidOperad.cyclic(2)
    assert hash(make_operad('terminal')) == hash(TerminalOperad())
    assert make_operad('terminal') != make_operad('terminal-reduced')
    assert corolla(make_operad('terminal'), 2).operad == TerminalOperad()


LAWFUL = [
    ('id', 3, 2),
    ('freemonoid', 3, 2),
    ('terminal', 4, 3),
    ('terminal-reduced', 4, 3),
    ('zmod:3', 4, 1),
    ('poset:diamond.json', 4, 1),
    ('free:binary.json', 3, 2),
    ('quiver:square.json', 3, 1),
    ('bd:id', 3, 2),
    ('bd:freemonoid', 3, 2),
    ('bd-reduced:freemonoid', 3, 2),
    ('bd:zmod:2', 3, 2),
    ('bd:bd:id', 3, 2),
]


@pytest.mark.parametrize('descriptor, max_nodes, max_arity', LAWFUL)
def test_units_are_neutral(descriptor, max_nodes, max_arity, resolve):
    op = resolve(descriptor)
    for b in op.operations(max_arity):
        assert op.compose(b, [op.unit(c) for c in op.input_colours(b)]) == b
        assert op.compose(op.unit(op.output_colour(b)), [b]) == b
        assert op.residue(corolla(op, b)) == b


@pytest.mark.parametrize('descriptor, max_nodes, max_arity', LAWFUL)
def test_residue_can_be_folded_blob_by_blob(descriptor, max_nodes, max_arity, resolve):
    op = resolve(descriptor)
    for t in enumerate_ptrees(op, max_nodes, max_arity):
        if t.is_trivial:
            continue
        total = op.residue(t)
        for b in enumerate_blobbings(t):
            assert op.residue(contract_blobbing(op, t, b)) == total


def test_residue_folds_over_a_colour_window(nat):
    for t in enumerate_ptrees(nat, 3, 1, colours=range(3)):
        if t.is_trivial:
            continue
        total = nat.residue(t)
        for b in enumerate_blobbings(t):
            assert nat.residue(contract_blobbing(nat, t, b)) == total


@pytest.mark.parametrize('descriptor', ['bd:id', 'bd:freemonoid', 'bd-reduced:freemonoid', 'bd:zmod:2'])
def test_composite_splits_back_into_its_arguments(descriptor, resolve):
    op = resolve(descriptor)
    ops = list(op.operations(2))
    for b in ops:
        choices = [[a for a in ops if op.output_colour(a) == c] for c in op.input_colours(b)]
        for args in itertools.product(*choices):
            if not args:
                continue
            t = graft(op, b, [corolla(op, a) for a in args])
            (everything,) = [x for x in enumerate_blobbings(t) if len(x) == 1]
            skeleton = contract_blobbing(op, t, everything)
            (top,) = skeleton.tree.nodes
            assert skeleton.node_dec[top] == op_compose(op, b, args)

            rebuilt = glue(op, skeleton, blob_refinement(t, everything))
            assert rebuilt.key == t.key
            root = rebuilt.tree.producer[rebuilt.tree.root]
            above = [rebuilt.node_dec[rebuilt.tree.producer[e]] for e in rebuilt.tree.inputs[root]]
            assert above == list(args)
            assert blob_contents(t, enumerate_blobbings(t)[0]) == Forest(
                [corolla(op, b)] + [corolla(op, a) for a in args])
