"""
Worked specializations of the incidence bialgebras: Faà di Bruno on linear
trees, monotone words over posets and monoids, and the core map onto
combinatorial rooted trees with their Butcher-Connes-Kreimer and
Calaque-Ebrahimi-Fard-Manchon coproducts.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial, prod
from typing import Callable, Collection, Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions

from operadic_incidence.combinat import Forest, enumerate_ptrees
from operadic_incidence.exceptions import EmptyTree, NotMonotone
from operadic_incidence.hopf import (ComoduleBialgebra, VerificationReport,
                                     Witness, incidence_bialgebra)
from operadic_incidence.lincomb import LinComb
from operadic_incidence.operads import IdentityOperad, TerminalOperad
from operadic_incidence.trees import PTree, graft, linear_tree, trivial_tree
from operadic_incidence.utils import powerset

__all__ = [
    'CombTree',
    'CombComoduleBialgebra',
    'fdb_reference',
    'core',
    'bck_delta',
    'cem_delta',
    'enumerate_comb_trees',
    'check_core_homomorphism',
    'word_to_tree',
    'tree_to_word',
    'split_word',
]

LOG = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CombTree:
    """
    A rooted tree with nodes only: ``parents[v]`` is the parent of node ``v``
    and ``None`` for the root. The empty tree is the unit.
    """
    parents: Tuple[Optional[int], ...]

    @property
    def size(self) -> int:
        return len(self.parents)

    num_nodes = size

    @property
    def is_trivial(self) -> bool:
        return not self.parents

    is_unit = is_trivial

    @property
    def is_corolla(self) -> bool:
        return len(self.parents) == 1

    @cached_property
    def root(self) -> Optional[int]:
        for v, parent in enumerate(self.parents):
            if parent is None:
                return v
        return None

    @cached_property
    def children(self) -> Tuple[Tuple[int, ...], ...]:
        children = [[] for _ in self.parents]
        for v, parent in enumerate(self.parents):
            if parent is not None:
                children[parent].append(v)
        return tuple(tuple(c) for c in children)

    @cached_property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((v, parent) for v, parent in enumerate(self.parents) if parent is not None)

    @cached_property
    def preorder(self) -> Tuple[int, ...]:
        if self.root is None:
            return ()
        order, stack = [], [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children[v]))
        return tuple(order)

    @cached_property
    def _codes(self) -> Dict[int, str]:
        codes = {}
        for v in reversed(self.preorder):
            codes[v] = '(' + ''.join(sorted(codes[c] for c in self.children[v])) + ')'
        return codes

    @cached_property
    def key(self) -> str:
        return '1' if self.root is None else self._codes[self.root]

    def descendants(self, v: int) -> Tuple[int, ...]:
        found, stack = [], [v]
        while stack:
            u = stack.pop()
            found.append(u)
            stack.extend(self.children[u])
        return tuple(found)

    def restrict(self, nodes: Collection[int]) -> 'CombTree':
        """The comb tree induced on a connected set of nodes."""
        kept = sorted(nodes)
        index = {v: i for i, v in enumerate(kept)}
        return CombTree(tuple(index.get(self.parents[v]) for v in kept))

    def contract(self, blocks: Sequence[Collection[int]]) -> 'CombTree':
        """One node per connected block; block ``i`` hangs below the block containing its top's parent."""
        block_of = {v: i for i, block in enumerate(blocks) for v in block}
        parents = []
        for i, block in enumerate(blocks):
            top = [v for v in block if self.parents[v] is None or block_of[self.parents[v]] != i]
            parent = self.parents[top[0]]
            parents.append(None if parent is None else block_of[parent])
        return CombTree(tuple(parents))

    def canonical(self) -> 'CombTree':
        if self.root is None:
            return self
        codes = self._codes
        order, stack = [], [(self.root, None)]
        while stack:
            v, parent = stack.pop()
            order.append((v, parent))
            stack.extend((c, v) for c in sorted(self.children[v], key=codes.__getitem__, reverse=True))
        index = {v: i for i, (v, _) in enumerate(order)}
        return CombTree(tuple(None if parent is None else index[parent] for _, parent in order))

    @classmethod
    def from_children(cls, branches: Sequence['CombTree']) -> 'CombTree':
        """A new root with the given trees as its branches."""
        parents = [None]
        for branch in branches:
            offset = len(parents)
            parents.extend(0 if p is None else p + offset for p in branch.parents)
        return cls(tuple(parents))

    def __str__(self):
        return self.key

    def __repr__(self):
        return 'CombTree({0})'.format(self.key)


def core(t: PTree) -> CombTree:
    """Forgets decorations and shaves off leaf and root edges."""
    tree = t.tree
    order = tree.node_order
    index = {n: i for i, n in enumerate(order)}
    return CombTree(tuple(index.get(tree.parent_node(n)) for n in order))


def _rooted_subtrees(t: CombTree, v: int) -> List[FrozenSet[int]]:
    """Node sets containing ``v`` and closed under taking parents up to ``v``."""
    options = [[frozenset()] + _rooted_subtrees(t, c) for c in t.children[v]]
    return [frozenset((v,)).union(*choice) for choice in itertools.product(*options)]


def bck_delta(t: CombTree) -> LinComb:
    """
    Description:
        The Butcher-Connes-Kreimer coproduct: a sum over admissible cuts
        of ``P_c ⊗ R_c`` where ``R_c`` is the (possibly empty) rooted
        subtree keeping the root and ``P_c`` the forest pruned above it.
    """
    if t.is_trivial:
        return LinComb.unit(2)
    result = LinComb()
    for trunk in [frozenset()] + _rooted_subtrees(t, t.root):
        if trunk:
            pruned = [c for v in trunk for c in t.children[v] if c not in trunk]
        else:
            pruned = [t.root]
        crown = Forest(t.restrict(t.descendants(c)) for c in pruned)
        result += LinComb.basis(crown, Forest([t.restrict(trunk)]))
    return result


def _blocks(t: CombTree, inside: Collection[Tuple[int, int]]) -> List[Tuple[int, ...]]:
    top = {}
    for v in t.preorder:
        parent = t.parents[v]
        top[v] = top[parent] if (v, parent) in inside else v
    groups = {}
    for v in t.preorder:
        groups.setdefault(top[v], []).append(v)
    return [tuple(group) for group in groups.values()]


def cem_delta(t: CombTree) -> LinComb:
    """Sum over partitions of the nodes into subtrees of (forest of blocks ⊗ contracted tree)."""
    if t.is_trivial:
        raise EmptyTree("the empty comb tree has no partition into subtrees")
    result = LinComb()
    for inside in powerset(t.edges):
        blocks = _blocks(t, set(inside))
        result += LinComb.basis(Forest(t.restrict(block) for block in blocks),
                                Forest([t.contract(blocks)]))
    return result


def enumerate_comb_trees(max_nodes: int, max_arity: Optional[int] = None) -> List[CombTree]:
    """Nonempty comb trees up to isomorphism, by size then key."""
    level = {'()': CombTree((None,))} if max_nodes >= 1 else {}
    found = list(level.values())
    for _ in range(max_nodes - 1):
        grown = {}
        for t in level.values():
            for v in range(t.size):
                if max_arity is not None and len(t.children[v]) >= max_arity:
                    continue
                bigger = CombTree(t.parents + (v,))
                grown.setdefault(bigger.key, bigger.canonical())
        level = grown
        found.extend(sorted(level.values(), key=lambda t: t.key))
    return found


class CombComoduleBialgebra(ComoduleBialgebra):
    """Butcher-Connes-Kreimer as a comodule bialgebra over Calaque-Ebrahimi-Fard-Manchon."""
    name = 'combinatorial trees'

    def __init__(self):
        super().__init__()
        self._cuts = {}
        self._blobs = {}

    def delta_cuts_tree(self, t: CombTree) -> LinComb:
        if t.key not in self._cuts:
            self._cuts[t.key] = bck_delta(t)
        return self._cuts[t.key]

    def delta_blobs_tree(self, t: CombTree) -> LinComb:
        if t.key not in self._blobs:
            self._blobs[t.key] = cem_delta(t)
        return self._blobs[t.key]

    def generators(self, max_nodes, max_arity, colours=None):
        return enumerate_comb_trees(max_nodes, max_arity)


def _map_trees(x: LinComb, fn: Callable) -> LinComb:
    return x.map_basis(lambda key: tuple(Forest(fn(t) for t in forest) for forest in key))


def check_core_homomorphism(max_nodes: int, max_arity: int = 3,
                            core_map: Callable[[PTree], CombTree] = core) -> VerificationReport:
    """
    Description:
        Checks that the core map sends the cut coproduct of naked trees to
        the Butcher-Connes-Kreimer coproduct and the blob coproduct to the
        Calaque-Ebrahimi-Fard-Manchon one.

    Args:
        max_nodes: bound on the naked trees checked.
        max_arity: bound on node arities.
        core_map: the map under test.
    """
    op = TerminalOperad()
    bialgebra = incidence_bialgebra(op)
    report = VerificationReport(axiom='core-homomorphism', subject=op.name)
    trees = enumerate_ptrees(op, max_nodes, max_arity)
    LOG.info("Checking the core map on %s naked trees", len(trees))
    for t in trees:
        report.checked.append(t.key)
        image = core_map(t)
        pairs = [(_map_trees(bialgebra.delta_cuts_tree(t), core_map), bck_delta(image))]
        if not t.is_trivial:
            pairs.append((_map_trees(bialgebra.delta_blobs_tree(t), core_map), cem_delta(image)))
        for lhs, rhs in pairs:
            if lhs != rhs:
                report.witness = Witness(generator=t.key, lhs=lhs, rhs=rhs)
                return report
    return report


def split_word(word: str) -> List[str]:
    """Letters are single characters unless the word contains commas."""
    if ',' in word:
        return [letter.strip() for letter in word.split(',') if letter.strip()]
    return list(word)


def word_to_tree(word, op) -> PTree:
    """
    Description:
        The linear tree spelling ``word``. Over a poset the letters are the
        edge colours, leaf first, and consecutive letters must be related;
        over a monoid they are the node operations, leaf first.

    Args:
        word: a string (see :func:`split_word`) or a sequence of letters.
        op: a poset or monoid operad.
    """
    letters = split_word(word) if isinstance(word, str) else list(word)
    if op.word_kind == 'edges':
        letters = [op.parse_colour(a) if isinstance(a, str) else a for a in letters]
        if not letters:
            raise EmptyTree("a word over {0} needs at least one letter".format(op.name))
        t = trivial_tree(op, letters[0])
        for a, b in zip(letters, letters[1:]):
            if not op.le(a, b):
                raise NotMonotone("{0} is not below {1}".format(op.colour_label(a), op.colour_label(b)))
            t = graft(op, (a, b), [t])
        return t
    if op.word_kind == 'nodes':
        letters = [op.parse_op(a) if isinstance(a, str) else a for a in letters]
        t = trivial_tree(op, op.single_colour)
        for a in letters:
            t = graft(op, a, [t])
        return t
    raise ValueError("{0} trees are not words".format(op.name))


def tree_to_word(t: PTree) -> Tuple:
    """The letters of a linear tree, leaf first."""
    tree = t.tree
    if any(len(tree.inputs[n]) != 1 for n in tree.nodes):
        raise ValueError("{0} is not a linear tree".format(t.key))
    if t.operad.word_kind == 'edges':
        return tuple(t.edge_dec[e] for e in reversed(tree.edge_order))
    return tuple(t.node_dec[n] for n in reversed(tree.node_order))


def fdb_reference(kind: str, n: int) -> LinComb:
    """
    Description:
        Closed forms of the two comultiplications of linear trees.
        ``mult`` (or ``cuts``): the sum of ``ℓi ⊗ ℓj`` over ``i + j = n``.
        ``subst`` (or ``blobs``): the sum over compositions of ``n`` into
        ``k`` parts of ``ℓn1···ℓnk ⊗ ℓk``, grouped by partitions.
    """
    op = IdentityOperad()
    if kind in ('mult', 'cuts'):
        if n < 0:
            raise ValueError("n must be non-negative")
        return sum((LinComb.basis(Forest([linear_tree(op, i)]), Forest([linear_tree(op, n - i)]))
                    for i in range(n + 1)), LinComb())
    if kind in ('subst', 'blobs'):
        if n < 1:
            raise ValueError("the substitution formula needs n >= 1")
        result = LinComb()
        for parts in partitions(n):
            k = sum(parts.values())
            coeff = Fraction(factorial(k), prod(factorial(m) for m in parts.values()))
            blocks = Forest(linear_tree(op, size) for size, m in parts.items() for _ in range(m))
            result += LinComb.basis(blocks, Forest([linear_tree(op, k)]), coeff=coeff)
        return result
    raise ValueError("unknown Faà di Bruno kind {0!r}".format(kind))
