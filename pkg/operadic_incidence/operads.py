"""
Pluggable coloured operads.

An operad is queried for its colours, the typing of its operations and its
substitution law. Infinite operation families are lazy: ``operations`` is
always bounded by a maximal arity and, for infinite colour domains, a colour
window.
"""
import itertools
import json
import logging
import os
from abc import ABC, abstractmethod
from collections import Counter
from functools import reduce
from math import factorial, prod
from typing import Collection, Hashable, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from operadic_incidence.exceptions import (ArityMismatch, BoundsTooLargeForColourDomain,
                                           ColourMismatch, DecorationError,
                                           InferenceAmbiguous, MalformedTable,
                                           UnsupportedNesting)
from operadic_incidence.trees import (PTree, canonical_form,
                                      canonical_node_order, corolla,
                                      graft_leaves, substitute, trivial_tree)

__all__ = [
    'Polynomial',
    'Operad',
    'TreeOperation',
    'IdentityOperad',
    'FreeMonoidOperad',
    'TerminalOperad',
    'MonoidOperad',
    'PosetOperad',
    'NaturalsOperad',
    'Signature',
    'FreeOperad',
    'QuiverOperad',
    'BaezDolanOperad',
    'make_operad',
    'op_compose',
    'residue',
    'load_monoid',
    'load_poset',
    'load_signature',
    'load_quiver',
]

LOG = logging.getLogger(__name__)

SINGLE_COLOUR = 'o'
RESERVED_CHARACTERS = frozenset(' \t\n()*|:;[],')


def _check_label(label: str, what: str) -> str:
    if not label or any(ch in RESERVED_CHARACTERS for ch in label) or '..' in label:
        raise MalformedTable("{0} label {1!r} is empty or uses a reserved character".format(what, label))
    return label


class Polynomial(ABC):
    """
    Description:
        Colours, operations and their typing (the polynomial ``I <- E -> B -> I``).
        Trees only need this much; :class:`Operad` adds the substitution law.
    """
    name = 'polynomial'
    planar = False
    # no operation has two interchangeable input slots
    rigid = False
    infers_labels = False
    # 'nodes' when words spell node decorations, 'edges' when they spell colours
    word_kind = None

    @abstractmethod
    def signature(self) -> tuple:
        """A hashable description identifying the instance."""

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return '{0}({1})'.format(type(self).__name__, self.name)

    @abstractmethod
    def colours(self, max_arity: Optional[int] = None) -> Optional[Tuple]:
        """All colours, or ``None`` when the colour domain is infinite."""

    def all_operations(self) -> Optional[Tuple]:
        """All operations when there are finitely many."""
        return None

    @abstractmethod
    def is_operation(self, b) -> bool:
        pass

    @abstractmethod
    def arity(self, b) -> int:
        pass

    @abstractmethod
    def output_colour(self, b) -> Hashable:
        pass

    @abstractmethod
    def input_colours(self, b) -> Tuple:
        pass

    @abstractmethod
    def operations(self, max_arity: int, colours: Optional[Collection] = None) -> Iterator:
        """Operations of arity at most ``max_arity`` with all colours in the window."""

    @property
    def single_colour(self):
        colours = self.colours()
        if colours is not None and len(colours) == 1:
            return colours[0]
        return None

    def op_label(self, b) -> str:
        return str(b)

    def colour_label(self, c) -> str:
        return str(c)

    def parse_op(self, text: str):
        ops = self.all_operations()
        if ops is not None:
            for b in ops:
                if self.op_label(b) == text:
                    return b
        raise DecorationError("{0} has no operation labelled {1!r}".format(self.name, text))

    def parse_colour(self, text: str):
        for c in self.colours() or ():
            if self.colour_label(c) == text:
                return c
        raise DecorationError("{0} has no colour labelled {1!r}".format(self.name, text))

    def infer_operation(self, arity: int, out=None, ins: Optional[Sequence] = None):
        """The unique operation of the given arity matching the known colours."""
        if not self.infers_labels:
            raise InferenceAmbiguous("{0} needs explicit operation labels".format(self.name))
        window = None
        if self.colours() is None:
            known = [out] + list(ins or ())
            if any(c is None for c in known):
                raise InferenceAmbiguous("{0} needs all colours around a node".format(self.name))
            window = tuple(sorted(set(known)))
        ins = tuple(ins) if ins is not None else (None,) * arity
        candidates = [
            b for b in self.operations(arity, window)
            if self.arity(b) == arity
            and (out is None or self.output_colour(b) == out)
            and all(c is None or c == d for c, d in zip(ins, self.input_colours(b)))
        ]
        if len(candidates) != 1:
            raise InferenceAmbiguous("{0} candidate operations of arity {1} in {2}".format(
                len(candidates), arity, self.name))
        return candidates[0]

    def arrange(self, b, child_keys: Sequence[str]) -> Tuple[int, ...]:
        """
        Canonical slot order of the children of a node decorated by ``b``:
        entry ``j`` is the slot printed in position ``j``.
        """
        k = len(child_keys)
        if self.planar:
            return tuple(range(k))
        order = list(range(k))
        colours = self.input_colours(b)
        for colour in set(colours):
            positions = [i for i in range(k) if colours[i] == colour]
            ranked = sorted(positions, key=lambda i: child_keys[i])
            for position, slot in zip(positions, ranked):
                order[position] = slot
        return tuple(order)

    def stabilizer_order(self, b, child_keys: Sequence[str]) -> int:
        if self.planar:
            return 1
        return prod(factorial(m) for m in Counter(child_keys).values())

    def slot_symmetric(self, b, perm: Sequence[int]) -> bool:
        if self.planar:
            return tuple(perm) == tuple(range(len(perm)))
        colours = self.input_colours(b)
        return all(colours[i] == colours[j] for i, j in enumerate(perm))


class Operad(Polynomial):
    """A polynomial with an associative and unital substitution law."""
    name = 'operad'

    @abstractmethod
    def _compose(self, b, args: Sequence):
        pass

    @abstractmethod
    def unit(self, colour):
        pass

    def compose(self, b, args: Sequence):
        args = list(args)
        if len(args) != self.arity(b):
            raise ArityMismatch("{0} has arity {1}, got {2} arguments".format(
                self.op_label(b), self.arity(b), len(args)))
        for i, (a, colour) in enumerate(zip(args, self.input_colours(b))):
            if self.output_colour(a) != colour:
                raise ColourMismatch("argument {0} has output colour {1}, slot expects {2}".format(
                    i, self.colour_label(self.output_colour(a)), self.colour_label(colour)))
        return self._compose(b, args)

    def residue(self, t: PTree):
        """Folds ``compose`` bottom-up over ``t``."""
        tree = t.tree
        value = {}
        for e in reversed(tree.edge_order):
            n = tree.producer.get(e)
            if n is None:
                value[e] = self.unit(t.edge_dec[e])
            else:
                value[e] = self.compose(t.node_dec[n], [value[x] for x in tree.inputs[n]])
        return value[tree.root]

    def residue_slots(self, t: PTree) -> Tuple:
        """The residue of ``t`` with the leaves of ``t`` listed in the slot order of the residue."""
        return self.residue(t), t.tree.leaves


class TreeOperation:
    """An operation given by the canonical representative of a tree."""
    __slots__ = ('tree', 'key')

    def __init__(self, tree: PTree):
        self.tree = canonical_form(tree)
        self.key = self.tree.key

    def __eq__(self, other):
        return isinstance(other, TreeOperation) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    @property
    def size(self) -> int:
        return self.tree.num_nodes

    def __repr__(self):
        return 'TreeOperation([{0}])'.format(self.key)


class IdentityOperad(Operad):
    """One colour and one operation, the unary identity."""
    name = 'identity'
    rigid = True
    infers_labels = True
    IDENTITY = 'id'

    def signature(self):
        return ('identity',)

    def colours(self, max_arity=None):
        return (SINGLE_COLOUR,)

    def all_operations(self):
        return (self.IDENTITY,)

    def is_operation(self, b):
        return b == self.IDENTITY

    def arity(self, b):
        if b != self.IDENTITY:
            raise DecorationError("{0!r} is not an operation of identity".format(b))
        return 1

    def output_colour(self, b):
        return SINGLE_COLOUR

    def input_colours(self, b):
        return (SINGLE_COLOUR,)

    def operations(self, max_arity, colours=None):
        if max_arity >= 1:
            yield self.IDENTITY

    def _compose(self, b, args):
        return self.IDENTITY

    def unit(self, colour):
        return self.IDENTITY


class TerminalOperad(Operad):
    """
    One colour and exactly one ``k``-ary operation for every ``k``, denoted by
    ``k``. Its trees are the naked trees. The reduced variant has no nullary
    operation.
    """
    infers_labels = True

    def __init__(self, reduced: bool = False):
        self.reduced = reduced
        self.name = 'terminal-reduced' if reduced else 'terminal'

    def signature(self):
        return ('terminal', self.reduced)

    def colours(self, max_arity=None):
        return (SINGLE_COLOUR,)

    def is_operation(self, b):
        return isinstance(b, int) and b >= (1 if self.reduced else 0)

    def arity(self, b):
        if not self.is_operation(b):
            raise DecorationError("{0!r} is not an operation of {1}".format(b, self.name))
        return b

    def output_colour(self, b):
        return SINGLE_COLOUR

    def input_colours(self, b):
        return (SINGLE_COLOUR,) * self.arity(b)

    def operations(self, max_arity, colours=None):
        return iter(range(1 if self.reduced else 0, max_arity + 1))

    def parse_op(self, text):
        try:
            b = int(text)
        except ValueError:
            raise DecorationError("{0} operations are arities, got {1!r}".format(self.name, text)) from None
        self.arity(b)
        return b

    def _compose(self, b, args):
        return sum(args)

    def unit(self, colour):
        return 1


class FreeMonoidOperad(TerminalOperad):
    """The planar counterpart of the terminal operad: one ``k``-ary operation per ``k``."""
    planar = True
    rigid = True

    def __init__(self):
        super().__init__(reduced=False)
        self.name = 'freemonoid'

    def signature(self):
        return ('freemonoid',)


class MonoidOperad(Operad):
    """
    Description:
        A monoid seen as a one-coloured operad with only unary operations.
        ``compose(b, [a])`` is the product ``a·b``, so the residue of a
        linear tree is the product of its node labels read from the leaf.

    Args:
        elements: the monoid elements.
        table: ``table[i][j]`` is the product of ``elements[i]`` and ``elements[j]``.
        name: display name.
    """
    word_kind = 'nodes'
    rigid = True

    def __init__(self, elements: Sequence, table: Sequence[Sequence], name: str = 'monoid'):
        self.elements = tuple(elements)
        self.name = name
        if len(set(self.elements)) != len(self.elements):
            raise MalformedTable("duplicate monoid elements")
        self._labels = {_check_label(str(e), 'element'): e for e in self.elements}
        if len(self._labels) != len(self.elements):
            raise MalformedTable("monoid element labels are not distinct")
        if len(table) != len(self.elements) or any(len(row) != len(self.elements) for row in table):
            raise MalformedTable("the table must be {0}x{0}".format(len(self.elements)))
        index = set(self.elements)
        self._product = {}
        for a, row in zip(self.elements, table):
            for b, c in zip(self.elements, row):
                if c not in index:
                    raise MalformedTable("{0!r}·{1!r} = {2!r} is not an element".format(a, b, c))
                self._product[a, b] = c
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self.multiply(self.multiply(a, b), c) != self.multiply(a, self.multiply(b, c)):
                raise MalformedTable("the table is not associative at ({0!r}, {1!r}, {2!r})".format(a, b, c))
        units = [e for e in self.elements
                 if all(self.multiply(e, x) == x == self.multiply(x, e) for x in self.elements)]
        if not units:
            raise MalformedTable("the table has no neutral element")
        self.identity = units[0]
        self.infers_labels = len(self.elements) == 1

    @classmethod
    def cyclic(cls, n: int) -> 'MonoidOperad':
        if n < 1:
            raise MalformedTable("Z/{0} is not a monoid".format(n))
        return cls(range(n), [[(i + j) % n for j in range(n)] for i in range(n)], name='Z/{0}'.format(n))

    def signature(self):
        return ('monoid', self.elements, tuple(sorted(self._product.items(), key=repr)))

    def multiply(self, a, b):
        return self._product[a, b]

    def norm(self, word: Sequence):
        """The ordered product of the letters of ``word``."""
        return reduce(self.multiply, word, self.identity)

    def colours(self, max_arity=None):
        return (SINGLE_COLOUR,)

    def all_operations(self):
        return self.elements

    def is_operation(self, b):
        return b in self._labels.values()

    def arity(self, b):
        if not self.is_operation(b):
            raise DecorationError("{0!r} is not an element of {1}".format(b, self.name))
        return 1

    def output_colour(self, b):
        return SINGLE_COLOUR

    def input_colours(self, b):
        return (SINGLE_COLOUR,)

    def operations(self, max_arity, colours=None):
        return iter(self.elements if max_arity >= 1 else ())

    def parse_op(self, text):
        try:
            return self._labels[text]
        except KeyError:
            raise DecorationError("{0!r} is not an element of {1}".format(text, self.name)) from None

    def _compose(self, b, args):
        return self.multiply(args[0], b)

    def unit(self, colour):
        return self.identity


class PosetOperad(Operad):
    """
    A poset as a unary operad: colours are the elements and there is one
    operation ``(a, b)``, printed ``a..b``, whenever ``a <= b``.
    """
    word_kind = 'edges'
    infers_labels = True
    rigid = True

    def __init__(self, elements: Sequence, le: Iterable[Sequence], name: str = 'poset'):
        self.elements = tuple(elements)
        self.name = name
        self._labels = {_check_label(str(e), 'element'): e for e in self.elements}
        if len(self._labels) != len(self.elements):
            raise MalformedTable("poset element labels are not distinct")
        index = set(self.elements)
        self._le = set()
        for pair in le:
            a, b = pair
            if a not in index or b not in index:
                raise MalformedTable("relation ({0!r}, {1!r}) mentions an unknown element".format(a, b))
            self._le.add((a, b))
        for a in self.elements:
            if (a, a) not in self._le:
                raise MalformedTable("the relation is not reflexive at {0!r}".format(a))
        for (a, b), (c, d) in itertools.product(self._le, repeat=2):
            if b == c and (a, d) not in self._le:
                raise MalformedTable("the relation is not transitive at ({0!r}, {1!r}, {2!r})".format(a, b, d))
            if (a, b) == (d, c) and a != b:
                raise MalformedTable("the relation is not antisymmetric at ({0!r}, {1!r})".format(a, b))

    def signature(self):
        return ('poset', self.elements, tuple(sorted(self._le, key=repr)))

    def le(self, a, b) -> bool:
        return (a, b) in self._le

    def colours(self, max_arity=None):
        return self.elements

    def all_operations(self):
        return tuple(sorted(self._le, key=lambda p: (self.elements.index(p[0]), self.elements.index(p[1]))))

    def is_operation(self, b):
        return isinstance(b, tuple) and len(b) == 2 and self.le(*b)

    def arity(self, b):
        if not self.is_operation(b):
            raise DecorationError("{0!r} is not a relation of {1}".format(b, self.name))
        return 1

    def output_colour(self, b):
        return b[1]

    def input_colours(self, b):
        return (b[0],)

    def operations(self, max_arity, colours=None):
        if max_arity < 1:
            return iter(())
        window = None if colours is None else set(colours)
        return iter([b for b in self.all_operations()
                     if window is None or (b[0] in window and b[1] in window)])

    def op_label(self, b):
        return '{0}..{1}'.format(self.colour_label(b[0]), self.colour_label(b[1]))

    def parse_colour(self, text):
        try:
            return self._labels[text]
        except KeyError:
            raise DecorationError("{0!r} is not an element of {1}".format(text, self.name)) from None

    def parse_op(self, text):
        lo, sep, hi = text.partition('..')
        if not sep:
            raise DecorationError("poset operations are written a..b, got {0!r}".format(text))
        b = (self.parse_colour(lo), self.parse_colour(hi))
        self.arity(b)
        return b

    def infer_operation(self, arity, out=None, ins=None):
        if arity == 1 and out is not None and ins and ins[0] is not None:
            b = (ins[0], out)
            self.arity(b)
            return b
        return super().infer_operation(arity, out, ins)

    def _compose(self, b, args):
        return (args[0][0], b[1])

    def unit(self, colour):
        return (colour, colour)


class NaturalsOperad(PosetOperad):
    """The poset of natural numbers; its colour domain is infinite."""

    def __init__(self):
        self.elements = None
        self.name = 'nat'

    def signature(self):
        return ('nat',)

    def le(self, a, b):
        return isinstance(a, int) and isinstance(b, int) and 0 <= a <= b

    def colours(self, max_arity=None):
        return None

    def all_operations(self):
        return None

    def operations(self, max_arity, colours=None):
        if colours is None:
            raise BoundsTooLargeForColourDomain("nat needs a colour window")
        if max_arity < 1:
            return iter(())
        window = sorted(set(colours))
        return iter([(a, b) for a in window for b in window if self.le(a, b)])

    def parse_colour(self, text):
        if not text.isdigit():
            raise DecorationError("{0!r} is not a natural number".format(text))
        return int(text)

    def infer_operation(self, arity, out=None, ins=None):
        if arity == 1 and out is not None and ins and ins[0] is not None:
            b = (ins[0], out)
            self.arity(b)
            return b
        raise InferenceAmbiguous("nat needs the colours around every node")


class Signature(Polynomial):
    """
    An ordered signature: named generators with typed inputs. Trees over a
    signature are the operations of the free operad it generates.
    """
    planar = True
    rigid = True

    def __init__(self, colours: Sequence, ops: Sequence[Mapping], name: str = 'signature'):
        self._colours = tuple(colours)
        self.name = name
        for c in self._colours:
            _check_label(str(c), 'colour')
        known = set(self._colours)
        self._ops = {}
        for spec in ops:
            try:
                label, out, ins = spec['name'], spec['out'], tuple(spec['in'])
            except (KeyError, TypeError):
                raise MalformedTable("generators need 'name', 'out' and 'in'") from None
            _check_label(str(label), 'operation')
            if out not in known or any(c not in known for c in ins):
                raise MalformedTable("generator {0!r} uses an unknown colour".format(label))
            if label in self._ops:
                raise MalformedTable("duplicate generator {0!r}".format(label))
            self._ops[label] = (out, ins)

    def signature(self):
        return ('signature', self._colours, tuple(self._ops.items()))

    def colours(self, max_arity=None):
        return self._colours

    def all_operations(self):
        return tuple(self._ops)

    def is_operation(self, b):
        return b in self._ops

    def arity(self, b):
        return len(self._typing(b)[1])

    def output_colour(self, b):
        return self._typing(b)[0]

    def input_colours(self, b):
        return self._typing(b)[1]

    def _typing(self, b):
        try:
            return self._ops[b]
        except KeyError:
            raise DecorationError("{0!r} is not a generator of {1}".format(b, self.name)) from None

    def operations(self, max_arity, colours=None):
        window = None if colours is None else set(colours)
        return iter([b for b, (out, ins) in self._ops.items()
                     if len(ins) <= max_arity
                     and (window is None or (out in window and window.issuperset(ins)))])


class FreeOperad(Operad):
    """The free planar operad on a signature: operations are signature trees grafted at leaves."""
    planar = True
    rigid = True

    def __init__(self, generators: Signature):
        self.generators = generators
        self.name = 'free({0})'.format(generators.name)

    def signature(self):
        return ('free', self.generators.signature())

    def colours(self, max_arity=None):
        return self.generators.colours()

    def is_operation(self, b):
        return isinstance(b, TreeOperation) and b.tree.operad == self.generators

    def arity(self, b):
        return b.tree.arity

    def output_colour(self, b):
        return b.tree.colour

    def input_colours(self, b):
        return b.tree.leaf_colours

    def operations(self, max_arity, colours=None):
        from operadic_incidence.combinat import enumerate_ptrees
        for t in enumerate_ptrees(self.generators, max_arity, max_arity, colours=colours):
            if t.arity <= max_arity:
                yield TreeOperation(t)

    def op_label(self, b):
        return '[{0}]'.format(b.key)

    def colour_label(self, c):
        return self.generators.colour_label(c)

    def parse_colour(self, text):
        return self.generators.parse_colour(text)

    def parse_op(self, text):
        from operadic_incidence.grammar import parse_tree
        return TreeOperation(parse_tree(text, self.generators))

    def _compose(self, b, args):
        return TreeOperation(graft_leaves(b.tree, [a.tree for a in args]))

    def unit(self, colour):
        return TreeOperation(trivial_tree(self.generators, colour))


class QuiverOperad(Operad):
    """
    The free category on a quiver, as a unary operad: colours are vertices,
    operations are paths ``(source, arrows)``. Enumeration stops at
    ``max_path_length`` arrows.
    """
    rigid = True

    def __init__(self, vertices: Sequence, arrows: Sequence[Mapping], max_path_length: int = 2,
                 name: str = 'quiver'):
        self.vertices = tuple(vertices)
        self.name = name
        self.max_path_length = max_path_length
        for v in self.vertices:
            _check_label(str(v), 'vertex')
        self._arrows = {}
        for spec in arrows:
            try:
                label, source, target = spec['name'], spec['source'], spec['target']
            except (KeyError, TypeError):
                raise MalformedTable("arrows need 'name', 'source' and 'target'") from None
            _check_label(str(label), 'arrow')
            if source not in self.vertices or target not in self.vertices:
                raise MalformedTable("arrow {0!r} uses an unknown vertex".format(label))
            if label in self._arrows or str(label).startswith('1_'):
                raise MalformedTable("arrow name {0!r} is taken".format(label))
            self._arrows[label] = (source, target)

    def signature(self):
        return ('quiver', self.vertices, tuple(self._arrows.items()), self.max_path_length)

    def colours(self, max_arity=None):
        return self.vertices

    def is_operation(self, b):
        if not (isinstance(b, tuple) and len(b) == 2 and b[0] in self.vertices):
            return False
        here = b[0]
        for arrow in b[1]:
            if arrow not in self._arrows or self._arrows[arrow][0] != here:
                return False
            here = self._arrows[arrow][1]
        return True

    def arity(self, b):
        if not self.is_operation(b):
            raise DecorationError("{0!r} is not a path of {1}".format(b, self.name))
        return 1

    def output_colour(self, b):
        return self._arrows[b[1][-1]][1] if b[1] else b[0]

    def input_colours(self, b):
        return (b[0],)

    def operations(self, max_arity, colours=None):
        if max_arity < 1:
            return
        window = None if colours is None else set(colours)
        frontier = [(v, ()) for v in self.vertices]
        for _ in range(self.max_path_length + 1):
            for b in frontier:
                if window is None or (b[0] in window and self.output_colour(b) in window):
                    yield b
            frontier = [(v, path + (a,)) for v, path in frontier
                        for a, (source, _) in self._arrows.items()
                        if source == self.output_colour((v, path))]

    def op_label(self, b):
        return '.'.join(map(str, b[1])) if b[1] else '1_{0}'.format(b[0])

    def parse_op(self, text):
        if text.startswith('1_'):
            b = (self.parse_colour(text[2:]), ())
        else:
            names = {str(a): a for a in self._arrows}
            try:
                arrows = tuple(names[part] for part in text.split('.'))
            except KeyError:
                raise DecorationError("{0!r} is not a path of {1}".format(text, self.name)) from None
            b = (self._arrows[arrows[0]][0], arrows)
        self.arity(b)
        return b

    def _compose(self, b, args):
        a = args[0]
        return (a[0], a[1] + b[1])

    def unit(self, colour):
        return (colour, ())


class BaezDolanOperad(Operad):
    """
    Description:
        The Baez-Dolan construction over an operad ``P``: colours are the
        operations of ``P``, operations are ``P``-trees whose input slots are
        their nodes (in canonical preorder), the output colour is the
        residue, composition substitutes trees into nodes and the unit on
        ``b`` is the corolla. The reduced variant drops the trivial trees,
        which are its only nullary operations.

        ``P`` must be rigid: a tree substituted into a node with
        interchangeable inputs has no preferred matching of its leaves to
        those inputs. Over a rigid ``P`` operation trees have no
        automorphisms, so slots keep their order as in a planar operad.
    """
    planar = True
    rigid = True

    def __init__(self, inner: Operad, reduced: bool = False):
        if not inner.rigid:
            raise UnsupportedNesting("cannot nest {0}: its operations have interchangeable inputs".format(
                inner.name))
        self.inner = inner
        self.reduced = reduced
        self.name = '{0}({1})'.format('bd-reduced' if reduced else 'bd', inner.name)
        self._residues = {}
        self._leaf_orders = {}
        self._operations = {}

    def signature(self):
        return ('bd', self.inner.signature(), self.reduced)

    def colours(self, max_arity=None):
        ops = self.inner.all_operations()
        if ops is not None:
            return ops
        if max_arity is None:
            return None
        return tuple(self.inner.operations(max_arity))

    def is_operation(self, b):
        return (isinstance(b, TreeOperation) and b.tree.operad == self.inner
                and not (self.reduced and b.tree.is_trivial))

    def arity(self, b):
        if not self.is_operation(b):
            raise DecorationError("{0!r} is not an operation of {1}".format(b, self.name))
        return b.tree.num_nodes

    def output_colour(self, b):
        if b.key not in self._residues:
            self._residues[b.key] = self.inner.residue(b.tree)
        return self._residues[b.key]

    def input_colours(self, b):
        return tuple(b.tree.node_dec[i] for i in range(b.tree.num_nodes))

    def operations(self, max_arity, colours=None):
        from operadic_incidence.combinat import enumerate_ptrees
        if max_arity not in self._operations:
            self._operations[max_arity] = [
                TreeOperation(t) for t in enumerate_ptrees(self.inner, max_arity, max_arity)
                if not (self.reduced and t.is_trivial)
            ]
        window = None if colours is None else set(colours)
        for b in self._operations[max_arity]:
            if window is None or (self.output_colour(b) in window and window.issuperset(self.input_colours(b))):
                yield b

    def op_label(self, b):
        return '[{0}]'.format(b.key)

    def colour_label(self, c):
        return self.inner.op_label(c)

    def parse_op(self, text):
        from operadic_incidence.grammar import parse_tree
        b = TreeOperation(parse_tree(text, self.inner))
        self.arity(b)
        return b

    def parse_colour(self, text):
        return self.inner.parse_op(text)

    def leaf_order(self, a) -> Tuple:
        """The leaves of the operation tree ``a`` in the slot order of its residue."""
        if a.key not in self._leaf_orders:
            self._leaf_orders[a.key] = tuple(self.inner.residue_slots(a.tree)[1])
        return self._leaf_orders[a.key]

    def _substituted(self, b, args) -> PTree:
        return substitute(b.tree, {i: a.tree for i, a in enumerate(args)},
                          leaf_orders={i: self.leaf_order(a) for i, a in enumerate(args)})

    def _compose(self, b, args):
        return TreeOperation(self._substituted(b, args))

    def residue_slots(self, t):
        # slots of a composite are the concatenated slots of its arguments,
        # renumbered by canonicalization
        tree = t.tree
        value = {}
        for e in reversed(tree.edge_order):
            n = tree.producer.get(e)
            if n is None:
                value[e] = (self.unit(t.edge_dec[e]), (e,))
                continue
            b = t.node_dec[n]
            args = [value[x][0] for x in tree.inputs[n]]
            composite = self.compose(b, args)
            fed = [leaf for x in tree.inputs[n] for leaf in value[x][1]]
            raw = self._substituted(b, args)
            value[e] = (composite, tuple(fed[m] for m in canonical_node_order(raw)))
        return value[tree.root]

    def unit(self, colour):
        return TreeOperation(corolla(self.inner, colour))


def op_compose(op: Operad, b, args: Sequence):
    return op.compose(b, args)


def residue(op: Operad, t: PTree):
    return op.residue(t)


def _read_json(path: str) -> Mapping:
    with open(path, 'r') as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedTable("{0} is not valid JSON: {1}".format(path, exc)) from None


def _name_of(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def load_monoid(data: Mapping, name: str = 'monoid') -> MonoidOperad:
    try:
        return MonoidOperad(data['elements'], data['table'], name=name)
    except (KeyError, TypeError):
        raise MalformedTable("a monoid needs 'elements' and 'table'") from None


def load_poset(data: Mapping, name: str = 'poset') -> PosetOperad:
    try:
        return PosetOperad(data['elements'], data['le'], name=name)
    except (KeyError, TypeError, ValueError):
        raise MalformedTable("a poset needs 'elements' and 'le' pairs") from None


def load_signature(data: Mapping, name: str = 'signature') -> FreeOperad:
    try:
        return FreeOperad(Signature(data['colours'], data['ops'], name=name))
    except (KeyError, TypeError):
        raise MalformedTable("a signature needs 'colours' and 'ops'") from None


def load_quiver(data: Mapping, name: str = 'quiver') -> QuiverOperad:
    try:
        return QuiverOperad(data['vertices'], data['arrows'], data.get('max_path_length', 2), name=name)
    except (KeyError, TypeError):
        raise MalformedTable("a quiver needs 'vertices' and 'arrows'") from None


_LOADERS = {
    'monoid': load_monoid,
    'poset': load_poset,
    'free': load_signature,
    'quiver': load_quiver,
}


def _kind_of(data: Mapping) -> str:
    if 'kind' in data:
        return data['kind']
    for key, kind in (('table', 'monoid'), ('le', 'poset'), ('ops', 'free'), ('arrows', 'quiver')):
        if key in data:
            return kind
    raise ValueError("cannot tell the operad kind of {0!r}".format(sorted(data)))


def make_operad(spec) -> Operad:
    """
    Description:
        Resolves an operad descriptor.

    Args:
        spec: an :class:`Operad`, a descriptor string (``id``, ``identity``,
            ``freemonoid``, ``terminal``, ``terminal-reduced``, ``nat``,
            ``zmod:N``, ``monoid:FILE``, ``poset:FILE``, ``free:FILE``,
            ``quiver:FILE``, ``bd:SPEC``, ``bd-reduced:SPEC``, ``bd(SPEC)``)
            or a loaded JSON descriptor.

    Returns:
        The operad.
    """
    if isinstance(spec, Operad):
        return spec
    if isinstance(spec, Mapping):
        kind = _kind_of(spec)
        if kind in ('bd', 'bd-reduced'):
            return _baez_dolan(spec['inner'], reduced=kind == 'bd-reduced' or spec.get('reduced', False))
        if kind not in _LOADERS:
            raise ValueError("unknown operad kind {0!r}".format(kind))
        return _LOADERS[kind](spec, name=spec.get('name', kind))
    if not isinstance(spec, str):
        raise ValueError("unknown operad descriptor {0!r}".format(spec))

    spec = spec.strip()
    simple = {
        'id': IdentityOperad,
        'identity': IdentityOperad,
        'freemonoid': FreeMonoidOperad,
        'terminal': TerminalOperad,
        'terminal-reduced': lambda: TerminalOperad(reduced=True),
        'nat': NaturalsOperad,
    }
    if spec in simple:
        return simple[spec]()
    for prefix in ('bd-reduced', 'bd'):
        if spec.startswith(prefix + '(') and spec.endswith(')'):
            return _baez_dolan(spec[len(prefix) + 1:-1], reduced=prefix == 'bd-reduced')
        if spec.startswith(prefix + ':'):
            return _baez_dolan(spec[len(prefix) + 1:], reduced=prefix == 'bd-reduced')
    kind, sep, argument = spec.partition(':')
    if sep and kind == 'zmod':
        if not argument.isdigit():
            raise ValueError("zmod needs a positive modulus, got {0!r}".format(argument))
        return MonoidOperad.cyclic(int(argument))
    if sep and kind in _LOADERS:
        LOG.debug("Loading %s operad from %s", kind, argument)
        return _LOADERS[kind](_read_json(argument), name=_name_of(argument))
    raise ValueError("unknown operad descriptor {0!r}".format(spec))


def _baez_dolan(inner_spec, reduced: bool) -> BaezDolanOperad:
    try:
        inner = make_operad(inner_spec)
    except (ValueError, OSError) as exc:
        raise UnsupportedNesting("invalid inner operad {0!r}: {1}".format(inner_spec, exc)) from exc
    return BaezDolanOperad(inner, reduced=reduced)
