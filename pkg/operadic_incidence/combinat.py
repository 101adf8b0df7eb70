"""
Enumeration and surgery on P-trees: trees up to isomorphism, layerings
(cuts), blobbings (reduced covers), contraction of blobs into their residues
and the inverse gluing.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Collection, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from operadic_incidence.exceptions import (BoundsTooLargeForColourDomain,
                                           ResidueMismatch,
                                           TrivialTreeHasNoBlobbing)
from operadic_incidence.trees import (PTree, Tree, graft, restrict,
                                      substitute, trivial_tree)
from operadic_incidence.utils import powerset, weak_compositions

__all__ = [
    'Forest',
    'Layering',
    'Blobbing',
    'enumerate_ptrees',
    'enumerate_keys',
    'enumerate_layerings',
    'cut_layers',
    'enumerate_blobbings',
    'blob_contents',
    'blob_refinement',
    'contract_blobbing',
    'glue',
]

LOG = logging.getLogger(__name__)


class Forest:
    """
    A commutative monomial: a multiset of canonical trees. Trees flagged as
    units (the empty comb tree) are dropped; the empty forest is the unit.
    """
    __slots__ = ('trees', 'key')

    def __init__(self, trees: Iterable = ()):
        canonical = [t.canonical() for t in trees if not t.is_unit]
        canonical.sort(key=lambda t: t.key)
        self.trees = tuple(canonical)
        self.key = tuple(t.key for t in canonical)

    def __eq__(self, other):
        return isinstance(other, Forest) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __mul__(self, other: 'Forest') -> 'Forest':
        return Forest(self.trees + other.trees)

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    @property
    def num_nodes(self) -> int:
        return sum(t.num_nodes for t in self.trees)

    def __str__(self):
        return '; '.join(self.key) if self.key else '1'

    def __repr__(self):
        return 'Forest({0})'.format(self)


@dataclass(frozen=True, eq=False)
class Layering:
    """A level function on the nodes of ``subject``, non-increasing towards the root."""
    subject: PTree
    k: int
    level: Mapping

    def layer(self, i: int) -> Tuple:
        return tuple(n for n in self.subject.tree.node_order if self.level[n] == i)


@dataclass(frozen=True, eq=False)
class Blobbing:
    """A set of inner edges of ``subject``; its blobs are the node groups they connect."""
    subject: PTree
    inside_edges: FrozenSet

    @cached_property
    def blobs(self) -> Tuple[Tuple, ...]:
        tree = self.subject.tree
        top = {}
        for n in tree.node_order:
            out = tree.output[n]
            top[n] = top[tree.consumer[out]] if out in self.inside_edges else n
        groups = {}
        for n in tree.node_order:
            groups.setdefault(top[n], []).append(n)
        return tuple(tuple(group) for group in groups.values())

    def __len__(self):
        return len(self.blobs)


def _grow(op, max_nodes: int, max_arity: int, colours: Optional[Collection], build: bool,
          op_label: Optional[Callable] = None, colour_label: Optional[Callable] = None) -> Dict[str, Optional[PTree]]:
    # A candidate's key is assembled from its operation and the keys of its
    # children; only a new key gets a grafted representative.
    if max_nodes < 0 or max_arity < 0:
        raise ValueError("bounds must be non-negative")
    palette = tuple(colours) if colours is not None else op.colours(max_arity)
    if palette is None:
        raise BoundsTooLargeForColourDomain(
            "{0} has infinitely many colours; give a colour window".format(op.name))
    op_label = op_label or op.op_label
    colour_label = colour_label or op.colour_label
    allowed = set(palette)
    ops = [(b, op.input_colours(b), op.output_colour(b)) for b in op.operations(max_arity, colours)]
    ops = [(b, slots, out, op_label(b), colour_label(out)) for b, slots, out in ops
           if out in allowed and allowed.issuperset(slots)]
    LOG.debug("Enumerating %s trees over %s colours and %s operations", op.name, len(palette), len(ops))

    found: Dict[str, Optional[PTree]] = {}
    # (colour, size) -> [(key of the tree as a child, representative)]
    by_size: Dict[Tuple, List[Tuple[str, Optional[PTree]]]] = {}
    for c in palette:
        t = trivial_tree(op, c).canonical() if build else None
        found['|:' + colour_label(c)] = t
        by_size[(c, 0)] = [('*:' + colour_label(c), t)]
    for size in range(1, max_nodes + 1):
        for b, slots, out, label, out_label in ops:
            grown = by_size.setdefault((out, size), [])
            for split in weak_compositions(size - 1, len(slots)):
                choices = [by_size.get((c, m), []) for c, m in zip(slots, split)]
                for children in itertools.product(*choices):
                    child_keys = [k for k, _ in children]
                    order = op.arrange(b, child_keys)
                    key = '{0}({1}):{2}'.format(label, ' '.join(child_keys[i] for i in order), out_label)
                    if key in found:
                        continue
                    t = graft(op, b, [c for _, c in children]).canonical() if build else None
                    found[key] = t
                    grown.append((key, t))
    return found


def enumerate_ptrees(op, max_nodes: int, max_arity: int,
                     colours: Optional[Collection] = None) -> List[PTree]:
    """
    Description:
        All iso-classes of P-trees with at most ``max_nodes`` nodes and node
        arities at most ``max_arity``, trivial trees included.

    Args:
        op: the operad (or signature).
        max_nodes: bound on the number of nodes.
        max_arity: bound on node arities.
        colours: colour window; mandatory when the colour domain is infinite.

    Returns:
        Canonical representatives sorted by canonical key.
    """
    found = _grow(op, max_nodes, max_arity, colours, build=True)
    return [found[key] for key in sorted(found)]


def enumerate_keys(op, max_nodes: int, max_arity: int, colours: Optional[Collection] = None,
                   op_label: Optional[Callable] = None, colour_label: Optional[Callable] = None) -> List[str]:
    """
    Sorted canonical keys of :func:`enumerate_ptrees`, without building the
    trees. ``op_label`` and ``colour_label`` override how operations and
    colours are printed, which compares enumerations along an operad map.
    """
    return sorted(_grow(op, max_nodes, max_arity, colours, build=False,
                        op_label=op_label, colour_label=colour_label))


def enumerate_layerings(t: PTree, k: int) -> List[Layering]:
    """All monotone level functions ``nodes -> {1..k}``; level 1 is the root layer."""
    if k < 1:
        raise ValueError("a layering needs at least one level")
    tree = t.tree
    order = tree.node_order
    parent = {n: tree.parent_node(n) for n in order}
    found = []

    def assign(i, level):
        if i == len(order):
            found.append(Layering(subject=t, k=k, level=dict(level)))
            return
        n = order[i]
        lowest = 1 if parent[n] is None else level[parent[n]]
        for value in range(lowest, k + 1):
            level[n] = value
            assign(i + 1, level)
        del level[n]

    assign(0, {})
    return found


def cut_layers(t: PTree, c: Layering) -> Tuple[Forest, PTree]:
    """
    Description:
        Splits ``t`` along a 2-layering into the crown forest (one full
        subtree above every edge crossing the cut) and the trunk (the
        level-1 nodes, or the trivial tree on the root edge).
    """
    if c.k != 2:
        raise ValueError("cut_layers needs a 2-layering, got k={0}".format(c.k))
    tree = t.tree
    bottom = c.layer(1)
    trunk = restrict(t, bottom, tree.root)
    if bottom:
        crossing = [e for n in bottom for e in tree.inputs[n]
                    if tree.producer.get(e) is None or c.level[tree.producer[e]] == 2]
    else:
        crossing = [tree.root]
    crown = Forest(restrict(t, tree.nodes_above(e), e) for e in crossing)
    return crown, trunk


def enumerate_blobbings(t: PTree) -> List[Blobbing]:
    if t.is_trivial:
        raise TrivialTreeHasNoBlobbing("the trivial tree has no nodes to blob")
    return [Blobbing(subject=t, inside_edges=frozenset(edges)) for edges in powerset(t.tree.inner_edges)]


def blob_refinement(t: PTree, b: Blobbing) -> Dict:
    """The subtree spanned by each blob, keyed by the blob's top node."""
    return {blob[0]: restrict(t, blob) for blob in b.blobs}


def blob_contents(t: PTree, b: Blobbing) -> Forest:
    return Forest(blob_refinement(t, b).values())


def contract_blobbing(op, t: PTree, b: Blobbing) -> PTree:
    """
    Description:
        Collapses every blob into one node decorated by the residue of the
        blob's subtree. The contracted node keeps the identifier of the
        blob's top node; its inputs are the subtree's leaves in the slot order
        of the residue.
    """
    tree = t.tree
    output = {}
    inputs = {}
    node_dec = {}
    for top, sub in blob_refinement(t, b).items():
        output[top] = sub.tree.root
        node_dec[top], inputs[top] = op.residue_slots(sub)
    edges = tree.edges - b.inside_edges
    contracted = Tree(edges=frozenset(edges), nodes=frozenset(output), root=tree.root,
                      output=output, inputs=inputs)
    return PTree(tree=contracted, operad=t.operad, node_dec=node_dec,
                 edge_dec={e: t.edge_dec[e] for e in edges})


def glue(op, skeleton: PTree, refinement: Mapping) -> PTree:
    """
    Substitutes ``refinement[n]`` into each node ``n``, matching its leaves to
    the inputs of ``n`` in the slot order of its residue. Nodes without a
    refinement stay.
    """
    leaf_orders = {}
    for n, r in refinement.items():
        if n not in skeleton.tree.nodes:
            raise ValueError("{0!r} is not a node of the skeleton".format(n))
        expected = skeleton.node_dec[n]
        try:
            got, leaf_orders[n] = op.residue_slots(r)
        except ValueError as exc:
            raise ResidueMismatch("refinement of node {0!r} has no residue: {1}".format(n, exc)) from exc
        if got != expected or r.arity != op.arity(expected):
            raise ResidueMismatch("refinement of node {0!r} has residue {1}, node carries {2}".format(
                n, op.op_label(got), op.op_label(expected)))
    return substitute(skeleton, refinement, operad=op, leaf_orders=leaf_orders)
