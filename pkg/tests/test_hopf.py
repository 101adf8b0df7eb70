from fractions import Fraction

import pytest

from operadic_incidence.combinat import Forest, enumerate_ptrees
from operadic_incidence.exceptions import (AxiomViolation, OperadMismatch,
                                           TrivialTreeInBlobsBasis)
from operadic_incidence.hopf import (AXIOMS, CoalgebraKind,
                                     IncidenceComoduleBialgebra, coaction,
                                     counit, delta, incidence_bialgebra, mul,
                                     verify)
from operadic_incidence.lincomb import LinComb
from operadic_incidence.operads import make_operad
from operadic_incidence.special import fdb_reference
from operadic_incidence.trees import corolla, linear_tree, trivial_tree


def forest(*trees):
    return Forest(trees)


@pytest.mark.parametrize('n', range(9))
def test_faa_di_bruno_cuts(identity, n):
    assert delta(CoalgebraKind.CUTS, identity, linear_tree(identity, n)) == fdb_reference('mult', n)


@pytest.mark.parametrize('n', range(1, 9))
def test_faa_di_bruno_blobs(identity, n):
    assert delta('blobs', identity, linear_tree(identity, n)) == fdb_reference('subst', n)


def test_blob_coproduct_of_l3(identity):
    l1, l2, l3 = (linear_tree(identity, k) for k in (1, 2, 3))
    expected = LinComb([
        ((forest(l1, l1, l1), forest(l3)), 1),
        ((forest(l2, l1), forest(l2)), 2),
        ((forest(l3), forest(l1)), 1),
    ])
    assert delta('blobs', identity, l3) == expected


def test_cut_coproduct_is_multiplicative(terminal):
    a, b = corolla(terminal, 2), corolla(terminal, 0)
    bialgebra = incidence_bialgebra(terminal)
    product = bialgebra.delta('cuts', forest(a, b))
    assert product == bialgebra.delta('cuts', a) * bialgebra.delta('cuts', b)


def test_coaction_on_trivial_tree(terminal):
    t = trivial_tree(terminal, 'o')
    assert coaction(terminal, t) == LinComb.basis(Forest(), forest(t))


def test_blob_coproduct_rejects_trivial_trees(terminal):
    with pytest.raises(TrivialTreeInBlobsBasis):
        delta('blobs', terminal, trivial_tree(terminal, 'o'))


def test_counits(terminal):
    assert counit('cuts', forest(trivial_tree(terminal, 'o'))) == 1
    assert counit('cuts', forest(corolla(terminal, 2))) == 0
    assert counit('blobs', forest(corolla(terminal, 2), corolla(terminal, 0))) == 1
    assert counit('blobs', forest(linear_tree(terminal, 2))) == 0
    assert counit('blobs', Forest()) == counit('cuts', Forest()) == Fraction(1)


def test_operads_do_not_mix(terminal, identity):
    with pytest.raises(OperadMismatch):
        mul(forest(corolla(terminal, 1)), forest(corolla(identity, 'id')))
    with pytest.raises(OperadMismatch):
        incidence_bialgebra(terminal).delta('cuts', corolla(identity, 'id'))


def test_incidence_bialgebra_is_shared():
    assert incidence_bialgebra(make_operad('terminal')) is incidence_bialgebra(make_operad('terminal'))


COALGEBRA_AXIOMS = [axiom for axiom in AXIOMS if axiom.startswith(('coassoc', 'counit'))]
COMODULE_AXIOMS = [axiom for axiom in AXIOMS if axiom not in COALGEBRA_AXIOMS]

COALGEBRA_BOUNDS = [
    ('id', 6, 1),
    ('zmod:2', 6, 1),
    ('poset:diamond.json', 6, 1),
    ('freemonoid', 5, 2),
    ('terminal', 5, 2),
    ('terminal', 4, 3),
    ('terminal-reduced', 5, 2),
    ('terminal-reduced', 4, 3),
    ('bd:id', 4, 2),
    ('bd:freemonoid', 3, 2),
    ('bd-reduced:freemonoid', 3, 2),
    ('bd:bd:id', 3, 2),
]

COMODULE_BOUNDS = [
    ('id', 6, 1),
    ('zmod:2', 6, 1),
    ('poset:diamond.json', 6, 1),
    ('freemonoid', 4, 2),
    ('terminal', 4, 3),
    ('terminal-reduced', 4, 3),
    ('bd:id', 4, 2),
    ('bd:freemonoid', 3, 2),
    ('bd-reduced:freemonoid', 3, 2),
]


@pytest.mark.parametrize('axiom', COALGEBRA_AXIOMS)
@pytest.mark.parametrize('descriptor, max_nodes, max_arity', COALGEBRA_BOUNDS)
def test_coalgebra_axioms_hold(descriptor, max_nodes, max_arity, axiom, resolve):
    report = verify(axiom, resolve(descriptor), max_nodes, max_arity)
    assert report.passed, str(report)
    assert report.checked
    report.raise_for_failure()


@pytest.mark.parametrize('axiom', COMODULE_AXIOMS)
@pytest.mark.parametrize('descriptor, max_nodes, max_arity', COMODULE_BOUNDS)
def test_comodule_axioms_hold(descriptor, max_nodes, max_arity, axiom, resolve):
    report = verify(axiom, resolve(descriptor), max_nodes, max_arity)
    assert report.passed, str(report)
    assert report.checked


@pytest.mark.parametrize('descriptor', ['terminal', 'freemonoid', 'bd:id', 'bd:freemonoid'])
def test_coproducts_conserve_nodes(descriptor, resolve):
    op = resolve(descriptor)
    bialgebra = incidence_bialgebra(op)
    for t in enumerate_ptrees(op, 3, 2):
        for crown, trunk in bialgebra.delta_cuts_tree(t):
            assert crown.num_nodes + trunk.num_nodes == t.num_nodes
        if t.is_trivial:
            continue
        for blobs, contracted in bialgebra.delta_blobs_tree(t):
            assert blobs.num_nodes == t.num_nodes
            assert contracted.num_nodes == len(blobs)


def test_verify_over_nat_needs_a_window(nat):
    report = verify('comodule-bialgebra', nat, 3, 1, colours=range(4))
    assert report.passed
    with pytest.raises(ValueError):
        verify('comodule-bialgebra', nat, 3, 1)


def test_verify_rejects_unknown_axiom(terminal):
    with pytest.raises(ValueError):
        verify('commutativity', terminal)


class DropSingleBlob(IncidenceComoduleBialgebra):
    """Forgets the one-blob cover of every two-node tree."""

    def blobbings(self, t):
        found = super().blobbings(t)
        return found[:-1] if t.num_nodes == 2 else found


def test_mutation_is_caught(identity):
    report = verify('coassoc-blobs', max_nodes=3, max_arity=1, bialgebra=DropSingleBlob(identity))
    assert not report.passed
    assert report.witness.generator == linear_tree(identity, 3).key
    assert report.witness.diff
    assert 'FAIL' in str(report)
    with pytest.raises(AxiomViolation) as info:
        report.raise_for_failure()
    assert info.value.report is report


def test_mutation_breaks_comodule_diagram(terminal):
    report = verify('comodule-bialgebra', max_nodes=3, max_arity=2, bialgebra=DropSingleBlob(terminal))
    assert not report.passed
