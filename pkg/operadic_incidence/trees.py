"""
Operadic trees in the polynomial presentation.

A tree is a diagram of finite sets: a set of edges, a set of nodes, the
output edge of every node and the ordered input edges of every node. A
P-tree additionally decorates nodes by operations and edges by colours of an
operad P. Isomorphism classes are represented through canonical keys; there
is no global interning.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import (Callable, Dict, FrozenSet, Hashable, Iterator, List,
                    Mapping, Optional, Sequence, Tuple, Union)

from operadic_incidence.exceptions import (ArityMismatch, Axiom1Violation,
                                           Axiom2Violation, Axiom3Violation,
                                           ColourMismatch, DecorationError,
                                           TreeAxiomViolation)

__all__ = [
    'Tree',
    'PTree',
    'validate_tree',
    'leaves',
    'decorate',
    'canonical_key',
    'canonical_form',
    'canonical_node_order',
    'aut_order',
    'automorphisms',
    'trivial_tree',
    'corolla',
    'graft',
    'linear_tree',
    'restrict',
    'substitute',
    'graft_leaves',
    'transport',
    'tree_from_levels',
]

LOG = logging.getLogger(__name__)

Edge = Hashable
Node = Hashable


@dataclass(frozen=True, eq=False)
class Tree:
    """
    Description:
        A finite rooted tree ``A <- M -> N -> A``. ``output`` is the map t,
        ``inputs`` lists the fibres of p in order (s restricted to them).
        Instances are assumed valid; build untrusted data with
        :func:`validate_tree`.
    """
    edges: FrozenSet[Edge]
    nodes: FrozenSet[Node]
    root: Edge
    output: Mapping[Node, Edge]
    inputs: Mapping[Node, Tuple[Edge, ...]]

    @cached_property
    def producer(self) -> Dict[Edge, Node]:
        return {e: n for n, e in self.output.items()}

    @cached_property
    def consumer(self) -> Dict[Edge, Node]:
        return {e: n for n, ins in self.inputs.items() for e in ins}

    def sigma(self, e: Edge) -> Edge:
        """The walk-to-root function."""
        if e == self.root:
            return e
        return self.output[self.consumer[e]]

    def walk(self, start: Optional[Edge] = None) -> Iterator[Tuple[Edge, Optional[Node]]]:
        """Preorder walk over the edges above ``start``, paired with their producing node."""
        stack = [self.root if start is None else start]
        while stack:
            e = stack.pop()
            n = self.producer.get(e)
            yield e, n
            if n is not None:
                stack.extend(reversed(self.inputs[n]))

    @cached_property
    def edge_order(self) -> Tuple[Edge, ...]:
        return tuple(e for e, _ in self.walk())

    @cached_property
    def node_order(self) -> Tuple[Node, ...]:
        return tuple(n for _, n in self.walk() if n is not None)

    @cached_property
    def leaves(self) -> Tuple[Edge, ...]:
        return tuple(e for e, n in self.walk() if n is None)

    @cached_property
    def inner_edges(self) -> Tuple[Edge, ...]:
        return tuple(e for e, n in self.walk() if n is not None and e != self.root)

    @cached_property
    def heights(self) -> Dict[Edge, int]:
        heights = {}
        for e, _ in self.walk():
            heights[e] = 0 if e == self.root else heights[self.sigma(e)] + 1
        return heights

    @property
    def is_trivial(self) -> bool:
        return not self.nodes

    def parent_node(self, n: Node) -> Optional[Node]:
        return self.consumer.get(self.output[n])

    def children(self, n: Node) -> Tuple[Optional[Node], ...]:
        return tuple(self.producer.get(e) for e in self.inputs[n])

    def nodes_above(self, e: Edge) -> Tuple[Node, ...]:
        return tuple(n for _, n in self.walk(e) if n is not None)

    def is_n_level(self, n: int) -> bool:
        """All edges have height at most ``n`` and all leaves height exactly ``n``."""
        heights = self.heights
        return (all(h <= n for h in heights.values())
                and all(heights[leaf] == n for leaf in self.leaves))


def validate_tree(raw: Union[Tree, Mapping]) -> Tree:
    """
    Description:
        Checks the three tree axioms and returns the tree.

    Args:
        raw: a :class:`Tree` or a mapping with keys ``edges``, ``nodes``,
            ``root``, ``output`` and ``inputs``.

    Returns:
        The validated :class:`Tree`.
    """
    if isinstance(raw, Tree):
        raw = {'edges': raw.edges, 'nodes': raw.nodes, 'root': raw.root,
               'output': raw.output, 'inputs': raw.inputs}
    edges = frozenset(raw['edges'])
    nodes = frozenset(raw['nodes'])
    root = raw['root']
    output = dict(raw['output'])
    inputs = {n: tuple(ins) for n, ins in raw['inputs'].items()}

    if (root not in edges or set(output) != nodes or set(inputs) != nodes
            or any(e not in edges for e in output.values())
            or any(e not in edges for ins in inputs.values() for e in ins)):
        raise TreeAxiomViolation("inconsistent identifier references")

    outputs_seen = {}
    for n, e in output.items():
        if e in outputs_seen:
            raise Axiom1Violation(
                "edge {0!r} is the output of both {1!r} and {2!r}".format(e, outputs_seen[e], n))
        outputs_seen[e] = n

    consumed = Counter(e for ins in inputs.values() for e in ins)
    if consumed[root]:
        raise Axiom2Violation("root edge {0!r} is an input edge".format(root))
    for e in edges:
        if e != root and consumed[e] != 1:
            raise Axiom2Violation("edge {0!r} is consumed {1} times".format(e, consumed[e]))

    consumer = {e: n for n, ins in inputs.items() for e in ins}
    for e in edges:
        x, steps = e, 0
        while x != root:
            x = output[consumer[x]]
            steps += 1
            if steps > len(edges):
                raise Axiom3Violation("walk to the root from {0!r} does not terminate".format(e))

    return Tree(edges=edges, nodes=nodes, root=root, output=output, inputs=inputs)


def leaves(t: Union[Tree, 'PTree']) -> Tuple[Edge, ...]:
    """Edges outside the image of the output map, in preorder."""
    return t.leaves


@dataclass(frozen=True, eq=False)
class PTree:
    """
    Description:
        A tree decorated over an operad: nodes carry operations, edges carry
        colours, compatibly with arities and slot colours.
        Equality is identity; compare iso-classes through :attr:`key`.
    """
    tree: Tree
    operad: object
    node_dec: Mapping[Node, Hashable]
    edge_dec: Mapping[Edge, Hashable]

    is_unit = False

    @property
    def colour(self):
        return self.edge_dec[self.tree.root]

    @property
    def is_trivial(self) -> bool:
        return self.tree.is_trivial

    @property
    def is_corolla(self) -> bool:
        return len(self.tree.nodes) == 1

    @property
    def num_nodes(self) -> int:
        return len(self.tree.nodes)

    @property
    def leaves(self) -> Tuple[Edge, ...]:
        return self.tree.leaves

    @property
    def arity(self) -> int:
        return len(self.tree.leaves)

    @property
    def leaf_colours(self) -> Tuple:
        return tuple(self.edge_dec[e] for e in self.tree.leaves)

    @cached_property
    def _canonical_data(self) -> Tuple[Dict[Edge, str], Dict[Node, Tuple[int, ...]]]:
        op = self.operad
        tree = self.tree
        keys = {}
        arrangement = {}
        for e in reversed(tree.edge_order):
            colour = op.colour_label(self.edge_dec[e])
            n = tree.producer.get(e)
            if n is None:
                keys[e] = '*:' + colour
                continue
            b = self.node_dec[n]
            child_keys = [keys[x] for x in tree.inputs[n]]
            order = tuple(op.arrange(b, child_keys))
            arrangement[n] = order
            keys[e] = '{0}({1}):{2}'.format(op.op_label(b), ' '.join(child_keys[i] for i in order), colour)
        return keys, arrangement

    @cached_property
    def key(self) -> str:
        if self.tree.is_trivial:
            return '|:' + self.operad.colour_label(self.colour)
        return self._canonical_data[0][self.tree.root]

    def canonical(self) -> 'PTree':
        return canonical_form(self)

    def child_keys(self, n: Node) -> List[str]:
        keys = self._canonical_data[0]
        return [keys[e] for e in self.tree.inputs[n]]

    def __repr__(self):
        return 'PTree({0})'.format(self.key)

    __str__ = __repr__


class _Builder:
    """Accumulates fresh integer edges and nodes."""

    def __init__(self):
        self.output = {}
        self.inputs = {}
        self.node_dec = {}
        self.edge_dec = {}

    def edge(self, colour) -> int:
        e = len(self.edge_dec)
        self.edge_dec[e] = colour
        return e

    def node(self, b, out: int, ins: Sequence[int]) -> int:
        n = len(self.node_dec)
        self.node_dec[n] = b
        self.output[n] = out
        self.inputs[n] = tuple(ins)
        return n

    def copy(self, t: PTree, start: Optional[Edge] = None, onto: Optional[int] = None,
             inputs_of: Optional[Callable] = None) -> int:
        """Copies the part of ``t`` above ``start``; ``onto`` reuses an existing edge as its root."""
        tree = t.tree
        inputs_of = inputs_of or tree.inputs.__getitem__
        visited = []
        stack = [tree.root if start is None else start]
        while stack:
            e = stack.pop()
            n = tree.producer.get(e)
            visited.append((e, n))
            if n is not None:
                stack.extend(reversed(inputs_of(n)))
        mapping = {}
        for i, (e, _) in enumerate(visited):
            mapping[e] = onto if (i == 0 and onto is not None) else self.edge(t.edge_dec[e])
        for e, n in visited:
            if n is not None:
                self.node(t.node_dec[n], mapping[e], [mapping[x] for x in inputs_of(n)])
        return mapping[visited[0][0]]

    def build(self, operad, root: int) -> PTree:
        tree = Tree(edges=frozenset(self.edge_dec), nodes=frozenset(self.node_dec), root=root,
                    output=self.output, inputs=self.inputs)
        return PTree(tree=tree, operad=operad, node_dec=self.node_dec, edge_dec=self.edge_dec)


def decorate(t: Tree, node_dec: Mapping, edge_dec: Mapping, op) -> PTree:
    """Decorates ``t`` over ``op``, enforcing the pullback condition."""
    missing = [e for e in t.edges if e not in edge_dec]
    if missing:
        raise DecorationError("edges without colour: {0!r}".format(missing))
    for n in t.nodes:
        if n not in node_dec:
            raise DecorationError("node {0!r} has no operation".format(n))
        b = node_dec[n]
        ins = t.inputs[n]
        if op.arity(b) != len(ins):
            raise ArityMismatch("operation {0} has arity {1} but node {2!r} has {3} inputs".format(
                op.op_label(b), op.arity(b), n, len(ins)))
        if op.output_colour(b) != edge_dec[t.output[n]]:
            raise ColourMismatch("output colour of {0} differs from edge {1!r}".format(
                op.op_label(b), t.output[n]))
        for i, (e, c) in enumerate(zip(ins, op.input_colours(b))):
            if edge_dec[e] != c:
                raise ColourMismatch("slot {0} of {1} expects colour {2} but edge {3!r} has {4}".format(
                    i, op.op_label(b), op.colour_label(c), e, op.colour_label(edge_dec[e])))
    return PTree(tree=t, operad=op,
                 node_dec={n: node_dec[n] for n in t.nodes},
                 edge_dec={e: edge_dec[e] for e in t.edges})


def canonical_key(t: PTree) -> str:
    return t.key


def canonical_form(t: PTree) -> PTree:
    """
    Description:
        The canonical representative of the iso-class of ``t``: edges and
        nodes renumbered in preorder, children in canonical slot order.
        Isomorphic inputs give identical representatives.
    """
    cached = t.__dict__.get('_canonical_form')
    if cached is not None:
        return cached
    _, arrangement = t._canonical_data

    def arranged(n):
        ins = t.tree.inputs[n]
        return tuple(ins[i] for i in arrangement[n])

    builder = _Builder()
    root = builder.copy(t, inputs_of=arranged)
    result = builder.build(t.operad, root)
    result.__dict__['_canonical_form'] = result
    t.__dict__['_canonical_form'] = result
    return result


def canonical_node_order(t: PTree) -> Tuple[Node, ...]:
    """The nodes of ``t`` in the order :func:`canonical_form` numbers them."""
    tree = t.tree
    _, arrangement = t._canonical_data
    order, stack = [], [tree.root]
    while stack:
        n = tree.producer.get(stack.pop())
        if n is not None:
            order.append(n)
            ins = tree.inputs[n]
            stack.extend(reversed([ins[i] for i in arrangement[n]]))
    return tuple(order)


def aut_order(t: PTree) -> int:
    """Order of the automorphism group: product over nodes of the slot stabilizers."""
    op = t.operad
    return prod(op.stabilizer_order(t.node_dec[n], t.child_keys(n)) for n in t.tree.nodes)


def automorphisms(t: PTree) -> List[Dict[Node, Node]]:
    """All decoration-preserving automorphisms of ``t``, as node permutations."""
    tree = t.tree
    op = t.operad
    keys = t._canonical_data[0]

    def isos(e1, e2):
        n1, n2 = tree.producer.get(e1), tree.producer.get(e2)
        if n1 is None:
            return [{}]
        ins1, ins2 = tree.inputs[n1], tree.inputs[n2]
        found = []
        for perm in itertools.permutations(range(len(ins1))):
            if any(keys[ins1[i]] != keys[ins2[perm[i]]] for i in range(len(ins1))):
                continue
            if not op.slot_symmetric(t.node_dec[n1], perm):
                continue
            partial = [{n1: n2}]
            for i, x in enumerate(ins1):
                below = isos(x, ins2[perm[i]])
                partial = [{**p, **q} for p in partial for q in below]
            found.extend(partial)
        return found

    if tree.is_trivial:
        return [{}]
    return isos(tree.root, tree.root)


def trivial_tree(op, colour) -> PTree:
    builder = _Builder()
    return builder.build(op, builder.edge(colour))


def graft(op, b, children: Sequence[PTree]) -> PTree:
    """The tree with a root node decorated by ``b`` whose inputs carry ``children``."""
    if len(children) != op.arity(b):
        raise ArityMismatch("operation {0} has arity {1}, got {2} children".format(
            op.op_label(b), op.arity(b), len(children)))
    for i, (child, colour) in enumerate(zip(children, op.input_colours(b))):
        if child.colour != colour:
            raise ColourMismatch("child {0} has root colour {1}, slot expects {2}".format(
                i, op.colour_label(child.colour), op.colour_label(colour)))
    builder = _Builder()
    roots = [builder.copy(child) for child in children]
    out = builder.edge(op.output_colour(b))
    builder.node(b, out, roots)
    return builder.build(op, out)


def corolla(op, b) -> PTree:
    return graft(op, b, [trivial_tree(op, c) for c in op.input_colours(b)])


def linear_tree(op, k: int, b=None) -> PTree:
    """The ``k``-node linear tree on a unary operation (the operad's unique one by default)."""
    if b is None:
        b = op.infer_operation(1)
    t = trivial_tree(op, op.input_colours(b)[0])
    for _ in range(k):
        t = graft(op, b, [t])
    return t


def restrict(t: PTree, nodes, root_edge: Optional[Edge] = None) -> PTree:
    """
    Description:
        The full subtree of ``t`` spanned by a connected set of nodes,
        keeping the identifiers of ``t``. An empty node set needs
        ``root_edge`` and yields the trivial tree on that edge.
    """
    tree = t.tree
    nodes = set(nodes)
    if not nodes:
        if root_edge is None:
            raise ValueError("an empty subtree needs its edge")
        edges = {root_edge}
    else:
        tops = [tree.output[n] for n in nodes if tree.consumer.get(tree.output[n]) not in nodes]
        if len(tops) != 1 or (root_edge is not None and tops[0] != root_edge):
            raise ValueError("nodes {0!r} do not span a subtree".format(sorted(nodes, key=repr)))
        root_edge = tops[0]
        edges = {root_edge}.union(*(tree.inputs[n] for n in nodes))
    sub = Tree(edges=frozenset(edges), nodes=frozenset(nodes), root=root_edge,
               output={n: tree.output[n] for n in nodes},
               inputs={n: tree.inputs[n] for n in nodes})
    return PTree(tree=sub, operad=t.operad,
                 node_dec={n: t.node_dec[n] for n in nodes},
                 edge_dec={e: t.edge_dec[e] for e in edges})


def substitute(t: PTree, refinement: Mapping[Node, PTree], operad=None,
               leaf_orders: Optional[Mapping[Node, Sequence[Edge]]] = None) -> PTree:
    """
    Description:
        Replaces each node ``n`` of ``t`` found in ``refinement`` by the tree
        ``refinement[n]``: its root is glued to the output edge of ``n`` and
        its leaves to the inputs of ``n``, in preorder unless
        ``leaf_orders[n]`` lists them in slot order. A trivial refining tree
        deletes a unary node. No residue check happens here.
    """
    tree = t.tree
    alias = {}

    def find(e):
        while e in alias:
            e = alias[e]
        return e

    for n in tree.node_order:
        r = refinement.get(n)
        if r is not None and r.is_trivial:
            if len(tree.inputs[n]) != 1:
                raise ArityMismatch("a trivial tree can only replace a unary node")
            alias[tree.inputs[n][0]] = tree.output[n]

    builder = _Builder()
    new_edge = {}
    for e in tree.edge_order:
        rep = find(e)
        if rep not in new_edge:
            new_edge[rep] = builder.edge(t.edge_dec[rep])

    def edge_of(e):
        return new_edge[find(e)]

    for n in tree.node_order:
        r = refinement.get(n)
        if r is None:
            builder.node(t.node_dec[n], edge_of(tree.output[n]), [edge_of(x) for x in tree.inputs[n]])
            continue
        if r.is_trivial:
            continue
        leaves = r.tree.leaves if leaf_orders is None or n not in leaf_orders else tuple(leaf_orders[n])
        if len(leaves) != len(tree.inputs[n]):
            raise ArityMismatch("refinement of node {0!r} has {1} leaves, node has {2} inputs".format(
                n, len(leaves), len(tree.inputs[n])))
        local = {r.tree.root: edge_of(tree.output[n])}
        local.update(zip(leaves, (edge_of(x) for x in tree.inputs[n])))
        for e in r.tree.edge_order:
            if e not in local:
                local[e] = builder.edge(r.edge_dec[e])
        for m in r.tree.node_order:
            builder.node(r.node_dec[m], local[r.tree.output[m]], [local[x] for x in r.tree.inputs[m]])
    return builder.build(operad or t.operad, edge_of(tree.root))


def graft_leaves(t: PTree, args: Sequence[PTree]) -> PTree:
    """Grafts ``args[i]`` onto the ``i``-th leaf of ``t`` (free-operad composition)."""
    if len(args) != len(t.tree.leaves):
        raise ArityMismatch("{0} trees for {1} leaves".format(len(args), len(t.tree.leaves)))
    builder = _Builder()
    mapping = {e: builder.edge(t.edge_dec[e]) for e, _ in t.tree.walk()}
    root = mapping[t.tree.root]
    for e, n in t.tree.walk():
        if n is not None:
            builder.node(t.node_dec[n], mapping[e], [mapping[x] for x in t.tree.inputs[n]])
    for leaf, arg in zip(t.tree.leaves, args):
        if arg.colour != t.edge_dec[leaf]:
            raise ColourMismatch("cannot graft a tree of colour {0!r} on a leaf of colour {1!r}".format(
                arg.colour, t.edge_dec[leaf]))
        builder.copy(arg, onto=mapping[leaf])
    return builder.build(t.operad, root)


def transport(t: PTree, target, op_map, colour_map) -> PTree:
    """Re-decorates ``t`` over ``target`` along maps of operations and colours."""
    f = op_map if callable(op_map) else op_map.__getitem__
    g = colour_map if callable(colour_map) else colour_map.__getitem__
    return decorate(t.tree,
                    {n: f(b) for n, b in t.node_dec.items()},
                    {e: g(c) for e, c in t.edge_dec.items()},
                    target)


def tree_from_levels(maps: Sequence[Sequence[int]]) -> Tree:
    """
    Description:
        The n-level tree of a sequence of maps ``A_n -> ... -> A_1 -> A_0 = 1``.

    Args:
        maps: ``maps[i][j]`` is the image in ``A_i`` of the ``j``-th element
            of ``A_{i+1}``.

    Returns:
        A tree whose edges are the pairs ``(i, j)`` and whose leaves are ``A_n``.
    """
    sizes = [1] + [len(m) for m in maps]
    for i, m in enumerate(maps):
        if any(not 0 <= parent < sizes[i] for parent in m):
            raise ValueError("map {0} leaves the level below".format(i + 1))
    edges = [(i, j) for i, size in enumerate(sizes) for j in range(size)]
    nodes = [(i, j) for i in range(len(maps)) for j in range(sizes[i])]
    return validate_tree({
        'edges': edges,
        'nodes': nodes,
        'root': (0, 0),
        'output': {n: n for n in nodes},
        'inputs': {(i, j): tuple((i + 1, x) for x, parent in enumerate(maps[i]) if parent == j)
                   for i, j in nodes},
    })
