import random
from fractions import Fraction

import pytest

from operadic_incidence.exceptions import MonoidMismatch
from operadic_incidence.moulds import (Mould, composition_unit, format_word,
                                       mould_compose, mould_duality_check,
                                       mould_product, product_unit,
                                       random_mould,
                                       right_distributivity_witness)
from operadic_incidence.operads import MonoidOperad


@pytest.fixture
def left_zero():
    return MonoidOperad(['e', 'a', 'b'], [['e', 'a', 'b'], ['a', 'a', 'a'], ['b', 'b', 'b']], name='left zero')


def test_product_deconcatenates(z2):
    m = Mould(z2, 2, {(): Fraction(1), (0,): Fraction(2)})
    n = Mould(z2, 2, {(): Fraction(3), (1,): Fraction(5)})
    product = mould_product(m, n)
    assert product[()] == 3
    assert product[(0, 1)] == 10
    assert product[(1, 1)] == 0


def test_composition_cuts_into_blocks(z2):
    m = Mould(z2, 2, {(0,): Fraction(1)})
    n = Mould(z2, 2, {(0,): Fraction(2), (1,): Fraction(3), (1, 1): Fraction(7)})
    composite = mould_compose(m, n)
    assert composite[(0,)] == 2
    assert composite[(1,)] == 0
    assert composite[(1, 1)] == 7
    assert composite[()] == 0


def test_units(z2):
    m = random_mould(z2, 3, random.Random(1))
    assert mould_product(product_unit(z2, 3), m) == m
    assert mould_product(m, product_unit(z2, 3)) == m
    assert mould_compose(m, composition_unit(z2, 3)) == m


def test_right_distributivity_fails(z2):
    m, n, p, w = right_distributivity_witness(z2, 2)
    assert mould_compose(m, mould_product(n, p))[w] == 1
    assert mould_product(mould_compose(m, n), mould_compose(m, p))[w] == 0


def test_words_beyond_the_truncation_are_rejected(z2):
    with pytest.raises(KeyError):
        product_unit(z2, 1)[(0, 1)]


def test_moulds_must_share_monoid_and_length(z2):
    with pytest.raises(MonoidMismatch):
        mould_product(product_unit(z2, 2), product_unit(z2, 3))
    with pytest.raises(MonoidMismatch):
        mould_compose(product_unit(z2, 2), product_unit(MonoidOperad.cyclic(3), 2))


def test_format_word():
    assert format_word(()) == '∅'
    assert format_word((0, 1, 1)) == '011'
    assert format_word((10, 2)) == '10,2'


@pytest.mark.parametrize('monoid', ['zmod:2', 'zmod:3'])
def test_duality_with_cuts_and_coaction(monoid):
    report = mould_duality_check(monoid, 4, samples=20, seed=7)
    assert report.passed, str(report)
    assert any('right distributivity fails' in note for note in report.notes)


def test_duality_over_a_monoid_file(data_path):
    report = mould_duality_check('monoid:' + data_path('z2.json'), 3, samples=5)
    assert report.passed, str(report)


def test_duality_over_a_noncommutative_monoid(left_zero):
    report = mould_duality_check(left_zero, 3, samples=5, seed=11)
    assert report.passed, str(report)


def test_duality_needs_a_monoid():
    with pytest.raises(MonoidMismatch):
        mould_duality_check('terminal', 2)
