"""
Moulds: rational functions on words over a finite monoid, truncated at a
maximal length, with the product and composition that are dual to the cut
comultiplication and the coaction on word trees.
"""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Dict, Mapping, Tuple

from operadic_incidence.combinat import Forest
from operadic_incidence.exceptions import MonoidMismatch
from operadic_incidence.hopf import (CoalgebraKind, VerificationReport, Witness,
                                     incidence_bialgebra)
from operadic_incidence.lincomb import LinComb
from operadic_incidence.operads import MonoidOperad, make_operad
from operadic_incidence.special import tree_to_word, word_to_tree
from operadic_incidence.utils import block_decompositions, words

__all__ = [
    'Mould',
    'mould_product',
    'mould_compose',
    'product_unit',
    'composition_unit',
    'random_mould',
    'right_distributivity_witness',
    'mould_duality_check',
    'format_word',
]

LOG = logging.getLogger(__name__)

Word = Tuple


@dataclass(frozen=True, eq=False)
class Mould:
    """
    Description:
        A table of rationals indexed by the words of length at most
        ``max_len`` over the elements of ``monoid``; absent words are 0.
    """
    monoid: MonoidOperad
    max_len: int
    values: Mapping[Word, Fraction]

    def __getitem__(self, word) -> Fraction:
        word = tuple(word)
        if len(word) > self.max_len:
            raise KeyError("word {0} is longer than {1}".format(format_word(word), self.max_len))
        return Fraction(self.values.get(word, 0))

    def words(self):
        return words(self.monoid.elements, self.max_len)

    def table(self) -> Dict[Word, Fraction]:
        return {w: self[w] for w in self.words() if self[w]}

    def evaluate(self, forest: Forest) -> Fraction:
        """The mould as a multiplicative functional on forests of word trees."""
        return prod((self[tree_to_word(t)] for t in forest), start=Fraction(1))

    def pair(self, x: LinComb) -> Fraction:
        return sum((c * self.evaluate(f) for (f,), c in x.items()), Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, Mould) and self.monoid == other.monoid
                and self.max_len == other.max_len and self.table() == other.table())

    __hash__ = None

    def __repr__(self):
        return 'Mould({0}, {1})'.format(self.monoid.name, {format_word(w): str(v) for w, v in self.table().items()})


def format_word(word: Word) -> str:
    labels = [str(a) for a in word]
    if not labels:
        return '∅'
    return ','.join(labels) if any(len(a) > 1 for a in labels) else ''.join(labels)


def _compatible(m: Mould, n: Mould):
    if m.monoid != n.monoid or m.max_len != n.max_len:
        raise MonoidMismatch("moulds over {0} (length {1}) and {2} (length {3})".format(
            m.monoid.name, m.max_len, n.monoid.name, n.max_len))


def mould_product(m: Mould, n: Mould) -> Mould:
    """``(M×N)^w`` sums ``M^{w'} N^{w''}`` over the deconcatenations ``w = w'w''``."""
    _compatible(m, n)
    values = {w: sum((m[w[:i]] * n[w[i:]] for i in range(len(w) + 1)), Fraction(0))
              for w in m.words()}
    return Mould(m.monoid, m.max_len, values)


def mould_compose(m: Mould, n: Mould) -> Mould:
    """
    ``(M∘N)^w`` sums ``N^{w1}···N^{wk} M^{‖w1‖···‖wk‖}`` over the cuttings of
    ``w`` into nonempty blocks; on the empty word it is ``M^∅``.
    """
    _compatible(m, n)
    monoid = m.monoid
    values = {(): m[()]}
    for w in m.words():
        if not w:
            continue
        values[w] = sum((prod((n[block] for block in blocks), start=Fraction(1))
                         * m[tuple(monoid.norm(block) for block in blocks)]
                         for blocks in block_decompositions(w)), Fraction(0))
    return Mould(m.monoid, m.max_len, values)


def product_unit(monoid: MonoidOperad, max_len: int) -> Mould:
    return Mould(monoid, max_len, {(): Fraction(1)})


def composition_unit(monoid: MonoidOperad, max_len: int) -> Mould:
    return Mould(monoid, max_len, {(a,): Fraction(1) for a in monoid.elements} if max_len >= 1 else {})


def random_mould(monoid: MonoidOperad, max_len: int, rng: random.Random) -> Mould:
    return Mould(monoid, max_len, {w: Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                                   for w in words(monoid.elements, max_len)})


def right_distributivity_witness(monoid: MonoidOperad, max_len: int) -> Tuple[Mould, Mould, Mould, Word]:
    """
    Moulds with ``M∘(N×P) != (M∘N)×(M∘P)``: M and P are the indicator of a
    one-letter word, N the indicator of the empty word.
    """
    letter = monoid.elements[-1]
    m = Mould(monoid, max_len, {(letter,): Fraction(1)})
    n = Mould(monoid, max_len, {(): Fraction(1)})
    p = Mould(monoid, max_len, {(letter,): Fraction(1)})
    return m, n, p, (letter,)


def mould_duality_check(monoid, max_len: int, samples: int = 20, seed: int = 7) -> VerificationReport:
    """
    Description:
        Pairs sampled moulds with word trees and checks that the product is
        convolution through the cut comultiplication, the composition is
        convolution through the coaction, the units are the counits, left
        distributivity holds and right distributivity fails on the stored
        witness.

    Args:
        monoid: a monoid operad or descriptor.
        max_len: maximal word length.
        samples: number of sampled triples of moulds.
        seed: seed of the sampler.
    """
    op = make_operad(monoid)
    if not isinstance(op, MonoidOperad):
        raise MonoidMismatch("{0} is not a monoid".format(op.name))
    bialgebra = incidence_bialgebra(op)
    report = VerificationReport(axiom='mould-duality', subject=op.name,
                                notes=['seed {0}, {1} samples, words up to length {2}'.format(seed, samples, max_len)])
    rng = random.Random(seed)
    all_words = list(words(op.elements, max_len))
    trees = {w: word_to_tree(w, op) for w in all_words}
    cuts = {w: bialgebra.delta(CoalgebraKind.CUTS, trees[w]) for w in all_words}
    coactions = {w: bialgebra.coaction(trees[w]) for w in all_words}

    def convolve(x: LinComb, left: Mould, right: Mould) -> Fraction:
        return sum((c * left.evaluate(f1) * right.evaluate(f2) for (f1, f2), c in x.items()), Fraction(0))

    def check(label: str, w: Word, lhs: Fraction, rhs: Fraction) -> bool:
        if lhs == rhs:
            return True
        report.witness = Witness(generator='{0} on word {1}'.format(label, format_word(w)),
                                 lhs=LinComb.scalar(lhs), rhs=LinComb.scalar(rhs))
        return False

    one = product_unit(op, max_len)
    identity = composition_unit(op, max_len)
    for w in all_words:
        report.checked.append(format_word(w))
        counit_z = bialgebra.counit(CoalgebraKind.BLOBS, Forest([trees[w]]))
        if not (check('product unit', w, bialgebra.counit(CoalgebraKind.CUTS, Forest([trees[w]])), one[w])
                and (not w or check('composition unit', w, counit_z, identity[w]))):
            return report

    for i in range(samples):
        m, n, p = (random_mould(op, max_len, rng) for _ in range(3))
        product = mould_product(m, n)
        composite = mould_compose(m, n)
        left = mould_compose(mould_product(m, n), p)
        right = mould_product(mould_compose(m, p), mould_compose(n, p))
        with_unit = mould_compose(m, identity)
        for w in all_words:
            if not (check('right unit of composition', w, with_unit[w], m[w])
                    and check('product duality', w, convolve(cuts[w], m, n), product[w])
                    and check('composition duality', w, convolve(coactions[w], n, m), composite[w])
                    and check('left distributivity', w, left[w], right[w])):
                LOG.info("Mould sample %s fails", i)
                return report
        LOG.debug("Mould sample %s passes", i)

    m, n, p, w = right_distributivity_witness(op, max_len)
    lhs = mould_compose(m, mould_product(n, p))[w]
    rhs = mould_product(mould_compose(m, n), mould_compose(m, p))[w]
    if lhs == rhs:
        report.witness = Witness(generator='right distributivity counterexample on word {0}'.format(format_word(w)),
                                 lhs=LinComb.scalar(lhs), rhs=LinComb.scalar(rhs))
        return report
    report.notes.append('right distributivity fails on word {0}: M∘(N×P) = {1}, (M∘N)×(M∘P) = {2}'.format(
        format_word(w), lhs, rhs))
    return report
