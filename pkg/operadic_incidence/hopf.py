"""
Incidence bialgebras of P-trees.

The cut bialgebra (comultiplication summed over 2-layerings) is a left
comodule bialgebra over the blob bialgebra (comultiplication summed over
blobbings). Both are free commutative on trees; everything is defined on
single trees and extended multiplicatively, then linearly.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Collection, Dict, List, Optional, Tuple, Union

from operadic_incidence.combinat import (Forest, blob_contents, contract_blobbing,
                                         cut_layers, enumerate_blobbings,
                                         enumerate_layerings, enumerate_ptrees)
from operadic_incidence.exceptions import (AxiomViolation, OperadMismatch,
                                           TrivialTreeInBlobsBasis)
from operadic_incidence.lincomb import LinComb
from operadic_incidence.operads import make_operad
from operadic_incidence.trees import PTree

__all__ = [
    'CoalgebraKind',
    'AXIOMS',
    'Witness',
    'VerificationReport',
    'ComoduleBialgebra',
    'IncidenceComoduleBialgebra',
    'incidence_bialgebra',
    'as_lincomb',
    'mul',
    'mu13',
    'delta',
    'counit',
    'coaction',
    'verify',
]

LOG = logging.getLogger(__name__)


class CoalgebraKind(str, Enum):
    CUTS = 'cuts'
    BLOBS = 'blobs'
    COACTION = 'coaction'


AXIOMS = (
    'coassoc-cuts',
    'coassoc-blobs',
    'counit-cuts',
    'counit-blobs',
    'coaction-coassoc',
    'coaction-counit',
    'comodule-bialgebra',
    'comodule-counit',
)

# these axioms live on the blob bialgebra, whose generators have nodes
_NONTRIVIAL_AXIOMS = frozenset(('coassoc-blobs', 'counit-blobs'))


@dataclass
class Witness:
    generator: str
    lhs: LinComb
    rhs: LinComb

    @property
    def diff(self) -> LinComb:
        return self.lhs - self.rhs

    def __str__(self):
        return 'generator {0}\n  lhs:  {1}\n  rhs:  {2}\n  diff: {3}'.format(
            self.generator, self.lhs, self.rhs, self.diff)


@dataclass
class VerificationReport:
    """Outcome of checking one identity on every generator within bounds."""
    axiom: str
    subject: str
    checked: List[str] = field(default_factory=list)
    witness: Optional[Witness] = None
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.witness is None

    def raise_for_failure(self):
        if not self.passed:
            raise AxiomViolation(self)

    def __str__(self):
        lines = ['{0} on {1}: {2} ({3} generators checked)'.format(
            self.axiom, self.subject, 'PASS' if self.passed else 'FAIL', len(self.checked))]
        lines.extend(self.notes)
        if self.witness is not None:
            lines.append(str(self.witness))
        return '\n'.join(lines)


def as_lincomb(x) -> LinComb:
    """Reads a tree, a forest or a combination of forests as a combination of forests."""
    if isinstance(x, LinComb):
        return x
    if isinstance(x, Forest):
        return LinComb.basis(x)
    return LinComb.basis(Forest([x]))


def mu13(x: LinComb) -> LinComb:
    """``B1 ⊗ M1 ⊗ B2 ⊗ M2 -> B1·B2 ⊗ M1 ⊗ M2``."""
    return x.map_basis(lambda key: (key[0] * key[2], key[1], key[3]))


class ComoduleBialgebra(ABC):
    """
    Description:
        A bialgebra ``M`` (comultiplication by cuts) which is a left comodule
        bialgebra over a bialgebra ``B`` (comultiplication by blobs), both
        free commutative on trees. Subclasses supply the tree-level maps;
        the multiplicative extension and the axiom checks live here.
    """
    name = 'comodule bialgebra'

    def __init__(self):
        # (kind, forest key) -> coproduct of the forest
        self._forest_deltas: Dict[Tuple, LinComb] = {}

    @abstractmethod
    def delta_cuts_tree(self, t) -> LinComb:
        pass

    @abstractmethod
    def delta_blobs_tree(self, t) -> LinComb:
        pass

    @abstractmethod
    def generators(self, max_nodes: int, max_arity: int, colours: Optional[Collection] = None) -> List:
        pass

    def coaction_tree(self, t) -> LinComb:
        if t.is_trivial:
            return LinComb.basis(Forest(), Forest([t]))
        return self.delta_blobs_tree(t)

    def counit_cuts_tree(self, t) -> Fraction:
        return Fraction(1 if t.is_trivial else 0)

    def counit_blobs_tree(self, t) -> Fraction:
        return Fraction(1 if t.is_corolla else 0)

    def _tree_map(self, kind: CoalgebraKind) -> Callable:
        return {
            CoalgebraKind.CUTS: self.delta_cuts_tree,
            CoalgebraKind.BLOBS: self.delta_blobs_tree,
            CoalgebraKind.COACTION: self.coaction_tree,
        }[kind]

    def forest_delta(self, kind, forest: Forest) -> LinComb:
        kind = CoalgebraKind(kind)
        memo = (kind, forest.key)
        if memo not in self._forest_deltas:
            tree_map = self._tree_map(kind)
            result = LinComb.unit(2)
            for t in forest:
                result = result * tree_map(t)
            self._forest_deltas[memo] = result
        return self._forest_deltas[memo]

    def delta(self, kind, x) -> LinComb:
        kind = CoalgebraKind(kind)
        result = LinComb()
        for (forest,), c in as_lincomb(x).items():
            result += self.forest_delta(kind, forest) * c
        return result

    def coaction(self, x) -> LinComb:
        return self.delta(CoalgebraKind.COACTION, x)

    def counit(self, kind, forest: Forest) -> Fraction:
        kind = CoalgebraKind(kind)
        tree_counit = self.counit_cuts_tree if kind == CoalgebraKind.CUTS else self.counit_blobs_tree
        value = Fraction(1)
        for t in forest:
            value *= tree_counit(t)
        return value

    def _counit_map(self, kind) -> Callable[[Forest], LinComb]:
        return lambda forest: LinComb.scalar(self.counit(kind, forest))

    def _delta_map(self, kind) -> Callable[[Forest], LinComb]:
        return lambda forest: self.forest_delta(kind, forest)

    def check(self, axiom: str, t) -> List[Tuple[LinComb, LinComb]]:
        """
        Description:
            Both sides of the identities making up ``axiom`` on the generator ``t``.

        Returns:
            A list of ``(lhs, rhs)`` pairs; the axiom holds on ``t`` iff every pair is equal.
        """
        x = as_lincomb(t)
        if axiom in ('coassoc-cuts', 'coassoc-blobs'):
            kind = axiom.split('-')[1]
            d = self.delta(kind, x)
            return [(d.map_factor(0, self._delta_map(kind)), d.map_factor(1, self._delta_map(kind)))]
        if axiom in ('counit-cuts', 'counit-blobs'):
            kind = axiom.split('-')[1]
            d = self.delta(kind, x)
            return [(d.map_factor(0, self._counit_map(kind)), x),
                    (d.map_factor(1, self._counit_map(kind)), x)]
        g = self.coaction(x)
        if axiom == 'coaction-coassoc':
            return [(g.map_factor(0, self._delta_map(CoalgebraKind.BLOBS)),
                     g.map_factor(1, self._delta_map(CoalgebraKind.COACTION)))]
        if axiom == 'coaction-counit':
            return [(g.map_factor(0, self._counit_map(CoalgebraKind.BLOBS)), x)]
        if axiom == 'comodule-bialgebra':
            d = self.delta(CoalgebraKind.CUTS, x)
            gg = d.map_factor(0, self._delta_map(CoalgebraKind.COACTION))
            gg = gg.map_factor(2, self._delta_map(CoalgebraKind.COACTION))
            return [(g.map_factor(1, self._delta_map(CoalgebraKind.CUTS)), mu13(gg))]
        if axiom == 'comodule-counit':
            epsilon = sum((self.counit(CoalgebraKind.CUTS, f) * c for (f,), c in x.items()), Fraction(0))
            return [(g.map_factor(1, self._counit_map(CoalgebraKind.CUTS)),
                     LinComb.basis(Forest(), coeff=epsilon))]
        raise ValueError("unknown axiom {0!r}; expected one of {1}".format(axiom, ', '.join(AXIOMS)))

    def verify(self, axiom: str, max_nodes: int, max_arity: int,
               colours: Optional[Collection] = None) -> VerificationReport:
        if axiom not in AXIOMS:
            raise ValueError("unknown axiom {0!r}; expected one of {1}".format(axiom, ', '.join(AXIOMS)))
        generators = self.generators(max_nodes, max_arity, colours)
        if axiom in _NONTRIVIAL_AXIOMS:
            generators = [t for t in generators if not t.is_trivial]
        LOG.info("Verifying %s on %s generators of %s", axiom, len(generators), self.name)
        report = VerificationReport(axiom=axiom, subject=self.name)
        for t in generators:
            report.checked.append(t.key)
            for lhs, rhs in self.check(axiom, t):
                if lhs != rhs:
                    report.witness = Witness(generator=t.key, lhs=lhs, rhs=rhs)
                    LOG.info("%s fails on %s", axiom, t.key)
                    return report
        LOG.info("%s holds on all %s generators", axiom, len(report.checked))
        return report


class IncidenceComoduleBialgebra(ComoduleBialgebra):
    """
    Description:
        The incidence comodule bialgebra of an operad: cuts are 2-layerings
        (crown ⊗ trunk) and blobs are reduced covers (blob forest ⊗
        contracted tree). Coefficients count concrete cuts or blobbings of
        one canonical representative. Tree-level results are memoized by
        canonical key.
    """

    def __init__(self, operad):
        super().__init__()
        self.operad = operad
        self.name = operad.name
        self._cuts: Dict[str, LinComb] = {}
        self._blobs: Dict[str, LinComb] = {}

    def _own(self, t: PTree) -> PTree:
        if t.operad is not self.operad and t.operad != self.operad:
            raise OperadMismatch("a tree over {0} given to the bialgebra of {1}".format(
                t.operad.name, self.operad.name))
        return t.canonical()

    def layerings(self, t: PTree):
        return enumerate_layerings(t, 2)

    def blobbings(self, t: PTree):
        return enumerate_blobbings(t)

    def delta_cuts_tree(self, t: PTree) -> LinComb:
        t = self._own(t)
        if t.key not in self._cuts:
            result = LinComb()
            for c in self.layerings(t):
                crown, trunk = cut_layers(t, c)
                result += LinComb.basis(crown, Forest([trunk]))
            LOG.debug("Cut coproduct of %s has %s terms", t.key, len(result))
            self._cuts[t.key] = result
        return self._cuts[t.key]

    def delta_blobs_tree(self, t: PTree) -> LinComb:
        t = self._own(t)
        if t.is_trivial:
            raise TrivialTreeInBlobsBasis("{0} is not a generator of the blob bialgebra".format(t.key))
        if t.key not in self._blobs:
            result = LinComb()
            for b in self.blobbings(t):
                result += LinComb.basis(blob_contents(t, b), Forest([contract_blobbing(self.operad, t, b)]))
            LOG.debug("Blob coproduct of %s has %s terms", t.key, len(result))
            self._blobs[t.key] = result
        return self._blobs[t.key]

    def generators(self, max_nodes, max_arity, colours=None):
        return enumerate_ptrees(self.operad, max_nodes, max_arity, colours)


@lru_cache(maxsize=None)
def incidence_bialgebra(op) -> IncidenceComoduleBialgebra:
    return IncidenceComoduleBialgebra(op)


def _trees_operads(forest: Forest) -> set:
    return {getattr(t, 'operad', None) for t in forest}


def mul(a: Forest, b: Forest) -> Forest:
    """Disjoint union of forests."""
    operads = _trees_operads(a) | _trees_operads(b)
    if len(operads) > 1:
        raise OperadMismatch("cannot multiply forests over {0}".format(
            ', '.join(sorted(getattr(op, 'name', 'combinatorial trees') for op in operads))))
    return a * b


def delta(kind: Union[str, CoalgebraKind], op, x) -> LinComb:
    return incidence_bialgebra(make_operad(op)).delta(kind, x)


def coaction(op, x) -> LinComb:
    return incidence_bialgebra(make_operad(op)).coaction(x)


def counit(kind: Union[str, CoalgebraKind], m: Forest) -> Fraction:
    """Cuts: 1 iff every tree is trivial. Blobs: 1 iff every tree is a corolla."""
    kind = CoalgebraKind(kind)
    if kind == CoalgebraKind.CUTS:
        return Fraction(int(all(t.is_trivial for t in m)))
    return Fraction(int(all(t.is_corolla for t in m)))


def verify(axiom: str, op=None, max_nodes: int = 4, max_arity: int = 3,
           colours: Optional[Collection] = None,
           bialgebra: Optional[ComoduleBialgebra] = None) -> VerificationReport:
    """
    Description:
        Checks ``axiom`` exhaustively on the generators within bounds.

    Args:
        axiom: one of :data:`AXIOMS`.
        op: the operad, when ``bialgebra`` is not given.
        max_nodes: bound on generator size.
        max_arity: bound on node arities.
        colours: colour window for infinite colour domains.
        bialgebra: any :class:`ComoduleBialgebra`; defaults to the incidence
            comodule bialgebra of ``op``.
    """
    if bialgebra is None:
        bialgebra = incidence_bialgebra(make_operad(op))
    return bialgebra.verify(axiom, max_nodes, max_arity, colours)
