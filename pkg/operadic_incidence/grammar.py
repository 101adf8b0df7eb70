"""
The tree expression grammar::

    tree  := '|' [':' colour] | node
    node  := [label] '(' child* ')' [':' colour]
    child := '*' [':' colour] | node

Children are whitespace separated. Labels and colours are bare tokens or
bracketed ``[...]`` texts (nested brackets allowed, used for operations
that are themselves trees). Labels may be omitted for operads with one
operation per arity (or whose operations are determined by colours) and
colours for single-coloured operads. Shorthands: ``word:<letters>`` for
words over posets and monoids, ``linear:N`` for the N-node linear tree.
Forests separate trees by ``;``; the empty forest is ``1``. Combinatorial
trees are written with parentheses only, e.g. ``(()())``.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Union

from operadic_incidence.combinat import Forest
from operadic_incidence.exceptions import InferenceAmbiguous, TreeSyntaxError
from operadic_incidence.special import CombTree, tree_to_word, word_to_tree
from operadic_incidence.trees import PTree, Tree, decorate, linear_tree

__all__ = [
    'parse_tree',
    'print_tree',
    'parse_forest',
    'print_forest',
    'parse_comb_tree',
]

LOG = logging.getLogger(__name__)

_DELIMITERS = frozenset(' \t\n()*|:;[],')


@dataclass
class _Leaf:
    colour: Optional[str]


@dataclass
class _Node:
    label: Optional[str]
    children: List[Union['_Node', _Leaf]] = field(default_factory=list)
    colour: Optional[str] = None


class _Parser:

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise TreeSyntaxError(message, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else 'end of input'
            self.error("expected {0!r}, found {1}".format(ch, found))
        self.pos += 1

    def token(self) -> Optional[str]:
        if self.peek() == '[':
            start = self.pos
            depth = 0
            while self.pos < len(self.text):
                ch = self.text[self.pos]
                depth += (ch == '[') - (ch == ']')
                self.pos += 1
                if depth == 0:
                    return self.text[start + 1:self.pos - 1]
            self.pos = start
            self.error("unbalanced '['")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _DELIMITERS:
            self.pos += 1
        return self.text[start:self.pos] or None

    def colour(self) -> Optional[str]:
        if self.peek() != ':':
            return None
        self.pos += 1
        self.skip()
        colour = self.token()
        if colour is None:
            self.error("expected a colour")
        return colour

    def node(self) -> _Node:
        label = self.token()
        self.expect('(')
        node = _Node(label)
        while True:
            ch = self.peek()
            if ch == ')':
                self.pos += 1
                break
            if ch == '*':
                self.pos += 1
                node.children.append(_Leaf(self.colour()))
            elif ch == '' or ch in ');|:,':
                self.error("expected a child or ')'")
            else:
                node.children.append(self.node())
        node.colour = self.colour()
        return node

    def tree(self) -> Union[_Node, _Leaf]:
        if self.peek() == '|':
            self.pos += 1
            result = _Leaf(self.colour())
        else:
            if self.peek() == '':
                self.error("expected a tree")
            result = self.node()
        if self.peek() != '':
            self.error("unexpected {0!r}".format(self.text[self.pos]))
        return result


def _resolve(raw: Union[_Node, _Leaf], op) -> PTree:
    """Assigns identifiers, infers missing labels and colours, then decorates."""
    output, inputs, labels, colours = {}, {}, {}, {}
    counter = iter(range(1 << 30))

    def visit(item) -> int:
        e = next(counter)
        colours[e] = None if item.colour is None else op.parse_colour(item.colour)
        if isinstance(item, _Node):
            n = next(counter)
            output[n] = e
            labels[n] = None if item.label is None else op.parse_op(item.label)
            inputs[n] = tuple(visit(child) for child in item.children)
        return e

    root = visit(raw)
    single = op.single_colour
    if single is not None:
        for e, c in colours.items():
            if c is None:
                colours[e] = single

    pending = [n for n in output if labels[n] is None]
    while True:
        for n, b in labels.items():
            if b is None:
                continue
            if colours[output[n]] is None:
                colours[output[n]] = op.output_colour(b)
            for e, c in zip(inputs[n], op.input_colours(b)):
                if colours[e] is None:
                    colours[e] = c
        progress = False
        for n in list(pending):
            try:
                labels[n] = op.infer_operation(len(inputs[n]), colours[output[n]],
                                               [colours[e] for e in inputs[n]])
            except InferenceAmbiguous:
                continue
            pending.remove(n)
            progress = True
        if not progress:
            break
    if pending:
        n = pending[0]
        op.infer_operation(len(inputs[n]), colours[output[n]], [colours[e] for e in inputs[n]])
    unknown = [e for e, c in colours.items() if c is None]
    if unknown:
        raise InferenceAmbiguous("cannot infer the colour of {0} edges over {1}".format(len(unknown), op.name))

    tree = Tree(edges=frozenset(colours), nodes=frozenset(output), root=root, output=output, inputs=inputs)
    return decorate(tree, labels, colours, op)


def parse_tree(s: str, op) -> PTree:
    """
    Description:
        Parses a tree expression over ``op``.

    Args:
        s: the expression.
        op: the operad.

    Returns:
        The decorated tree.
    """
    text = s.strip()
    if text.startswith('word:'):
        return word_to_tree(text[len('word:'):], op)
    if text.startswith('linear:'):
        count = text[len('linear:'):].strip()
        if not count.isdigit():
            raise TreeSyntaxError("expected a node count", len('linear:'))
        return linear_tree(op, int(count))
    return _resolve(_Parser(s).tree(), op)


def _format_word(letters: List[str]) -> str:
    if any(len(a) > 1 for a in letters):
        return 'word:' + ','.join(letters) + (',' if len(letters) == 1 else '')
    return 'word:' + ''.join(letters)


def print_tree(t: Union[PTree, CombTree]) -> str:
    """Canonical text of a tree: children in canonical order, inferable annotations elided."""
    if isinstance(t, CombTree):
        return t.key
    op = t.operad
    if op.word_kind == 'edges' or (op.word_kind == 'nodes' and not t.is_trivial):
        labels = op.colour_label if op.word_kind == 'edges' else op.op_label
        return _format_word([labels(a) for a in tree_to_word(t)])
    t = t.canonical()
    tree = t.tree
    show_colour = op.single_colour is None

    def colour(e):
        return ':' + op.colour_label(t.edge_dec[e]) if show_colour else ''

    if tree.is_trivial:
        return '|' + colour(tree.root)

    def render(e):
        n = tree.producer.get(e)
        if n is None:
            return '*' + colour(e)
        label = '' if op.infers_labels else op.op_label(t.node_dec[n])
        return '{0}({1}){2}'.format(label, ' '.join(render(x) for x in tree.inputs[n]), colour(e))

    return render(tree.root)


def _split_top_level(text: str) -> List[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        depth += (ch == '[') - (ch == ']')
        if ch == ';' and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def parse_forest(s: str, op=None) -> Forest:
    """``;``-separated trees, or ``1`` for the empty forest. Without an operad, comb trees are read."""
    text = s.strip()
    if text in ('', '1'):
        return Forest()
    parse = parse_comb_tree if op is None else (lambda part: parse_tree(part, op))
    return Forest(parse(part) for part in _split_top_level(text))


def print_forest(forest: Forest) -> str:
    return '; '.join(print_tree(t) for t in forest) if len(forest) else '1'


def parse_comb_tree(s: str) -> CombTree:
    text = s.strip()
    if text == '1':
        return CombTree(())
    parser = _Parser(s)
    parents = []

    def node(parent):
        parser.expect('(')
        v = len(parents)
        parents.append(parent)
        while parser.peek() == '(':
            node(v)
        parser.expect(')')

    node(None)
    if parser.peek() != '':
        parser.error("unexpected {0!r}".format(parser.text[parser.pos]))
    return CombTree(tuple(parents))
