import argparse
import logging
import os
import sys
from pprint import pformat

from operadic_incidence.combinat import enumerate_ptrees
from operadic_incidence.exceptions import OperadicError
from operadic_incidence.grammar import parse_comb_tree, parse_tree, print_tree
from operadic_incidence.hopf import AXIOMS, CoalgebraKind, incidence_bialgebra, verify
from operadic_incidence.lincomb import LinComb
from operadic_incidence.moulds import mould_duality_check
from operadic_incidence.operads import IdentityOperad, make_operad
from operadic_incidence.serializer import LinCombSerializer
from operadic_incidence.special import (CombComoduleBialgebra, bck_delta, cem_delta,
                                        check_core_homomorphism, core,
                                        enumerate_comb_trees, fdb_reference)
from operadic_incidence.trees import linear_tree
from operadic_incidence.utils import batched

LOG = logging.getLogger(__name__)

DEFAULT_SEED = 7
DEFAULT_MAX_NODES = 4
DEFAULT_MAX_ARITY = 3
DEFAULT_MAX_LEN = 4
DEFAULT_SAMPLES = 20
DEFAULT_BATCH_SIZE = 100

COMB = 'comb'

COMMANDS = ('enumerate', 'coproduct', 'verify', 'faadibruno', 'mould', 'core', 'bck', 'cem')


def _colour_window(text):
    if text is None:
        return None
    lo, sep, hi = text.partition(':')
    if not sep or not lo.isdigit() or not hi.isdigit() or int(lo) > int(hi):
        raise ValueError("colour window must read LO:HI, got {0!r}".format(text))
    return tuple(range(int(lo), int(hi) + 1))


def _monoid_descriptor(text: str) -> str:
    if text.endswith('.json') and ':' not in text:
        return 'monoid:' + text
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='operadic-incidence',
                                     description='Incidence bialgebras of operadic trees')
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("-l",
                        "--log-level",
                        default="WARNING",
                        choices=list(logging._nameToLevel.keys()))
    parser.add_argument("--operad", default="id", help="Operad descriptor, or 'comb' for combinatorial trees")
    parser.add_argument("--tree", help="Tree expression")
    parser.add_argument("--kind", default="cuts", choices=[k.value for k in CoalgebraKind])
    parser.add_argument("--axiom", default="all", choices=list(AXIOMS) + ['all'])
    parser.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    parser.add_argument("--max-arity", type=int, default=DEFAULT_MAX_ARITY)
    parser.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    parser.add_argument("--n", type=int, help="Size of the linear tree")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    parser.add_argument("--colours", help="Colour window LO:HI for infinite colour domains")
    parser.add_argument("--monoid", help="Monoid descriptor or monoid JSON file")
    parser.add_argument("--op", default="check-duality", choices=["check-duality"])
    parser.add_argument("--check", action="store_true", help="Check the core map on all trees within bounds")
    parser.add_argument("-b",
                        "--batch-size",
                        help="Batch Size",
                        default=DEFAULT_BATCH_SIZE,
                        type=int)
    parser.add_argument(
                        "-f",
                        "--format",
                        help="Serialization format",
                        default="text",
                        choices=["text", "json"])
    parser.add_argument("-o", "--output", help="Output file")
    return parser


class _Command:
    """Runs one subcommand; returns the exit status and writes results to stdout."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.serializer = LinCombSerializer(args.format)
        self.colours = _colour_window(args.colours)

    def emit(self, text: str):
        if self.args.output:
            with open(self.args.output, "w") as output_file:
                output_file.write(text + "\n")
            LOG.info("Wrote output to %s", self.args.output)
        else:
            print(text)

    def emit_lincomb(self, x: LinComb) -> int:
        self.emit(self.serializer.serialize(x))
        return 0

    def emit_reports(self, reports) -> int:
        self.emit("\n".join(self.serializer.serialize_report(r) for r in reports))
        failed = [r for r in reports if not r.passed]
        for report in failed:
            LOG.error("%s fails on %s", report.axiom, report.subject)
        return 1 if failed else 0

    def require_tree(self) -> str:
        if self.args.tree is None:
            raise ValueError("--tree is required for {0}".format(self.args.command))
        return self.args.tree

    def enumerate(self) -> int:
        if self.args.operad == COMB:
            trees = enumerate_comb_trees(self.args.max_nodes, self.args.max_arity)
        else:
            trees = enumerate_ptrees(make_operad(self.args.operad), self.args.max_nodes,
                                     self.args.max_arity, self.colours)
        lines = []
        for batch in batched(trees, batch_size=self.args.batch_size):
            lines.extend(print_tree(t) for t in batch)
            LOG.info("Enumerated batch %s trees", len(batch))
        LOG.info("Enumerated a total of %s trees", len(lines))
        self.emit("\n".join(lines))
        return 0

    def coproduct(self) -> int:
        if self.args.operad == COMB:
            bialgebra = CombComoduleBialgebra()
            t = parse_comb_tree(self.require_tree())
        else:
            op = make_operad(self.args.operad)
            bialgebra = incidence_bialgebra(op)
            t = parse_tree(self.require_tree(), op)
        return self.emit_lincomb(bialgebra.delta(self.args.kind, t))

    def verify(self) -> int:
        axioms = AXIOMS if self.args.axiom == 'all' else (self.args.axiom,)
        bialgebra = CombComoduleBialgebra() if self.args.operad == COMB else None
        op = None if bialgebra is not None else make_operad(self.args.operad)
        reports = [verify(axiom, op, self.args.max_nodes, self.args.max_arity, self.colours, bialgebra)
                   for axiom in axioms]
        return self.emit_reports(reports)

    def faadibruno(self) -> int:
        if self.args.n is None:
            raise ValueError("--n is required for faadibruno")
        kind = CoalgebraKind(self.args.kind)
        if kind == CoalgebraKind.COACTION:
            raise ValueError("faadibruno takes --kind cuts or blobs")
        op = IdentityOperad()
        computed = incidence_bialgebra(op).delta(kind, linear_tree(op, self.args.n))
        expected = fdb_reference(kind.value, self.args.n)
        if computed != expected:
            LOG.error("Faà di Bruno %s formula fails at n = %s", kind.value, self.args.n)
            self.emit(self.serializer.serialize(computed - expected))
            return 1
        LOG.info("Faà di Bruno %s formula holds at n = %s", kind.value, self.args.n)
        return self.emit_lincomb(computed)

    def mould(self) -> int:
        if self.args.monoid is None:
            raise ValueError("--monoid is required for mould")
        report = mould_duality_check(_monoid_descriptor(self.args.monoid), self.args.max_len,
                                     samples=self.args.samples, seed=self.args.seed)
        return self.emit_reports([report])

    def core(self) -> int:
        if self.args.check:
            return self.emit_reports([check_core_homomorphism(self.args.max_nodes, self.args.max_arity)])
        op = make_operad(self.args.operad)
        self.emit(print_tree(core(parse_tree(self.require_tree(), op))))
        return 0

    def bck(self) -> int:
        return self.emit_lincomb(bck_delta(parse_comb_tree(self.require_tree())))

    def cem(self) -> int:
        return self.emit_lincomb(cem_delta(parse_comb_tree(self.require_tree())))

    def __call__(self) -> int:
        return getattr(self, self.args.command)()


def run(argv=None) -> int:
    """
    Description:
        Parses ``argv`` and runs the subcommand.

    Returns:
        0 on success, 1 when a verification fails, 2 on usage or input errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    logging.basicConfig(
        level=logging._nameToLevel[args.log_level],
        format="%(asctime)s :: [%(levelname)s] :: [%(name)s] :: %(message)s",
        stream=sys.stderr,
    )

    if args.output is not None and not os.path.isdir(os.path.dirname(os.path.abspath(args.output))):
        LOG.error("Path %s does not exist", os.path.dirname(args.output))
        return 2

    kwargs = {k: v for k, v in vars(args).items() if v is not None}
    LOG.info("VERIFY: arguments passed %s", pformat(kwargs))

    try:
        return _Command(args)()
    except (OperadicError, ValueError, OSError) as exc:
        LOG.error("%s: %s", type(exc).__name__, exc)
        return 2


def main():
    """
    Description:
        Entry point to the operadic incidence engine

    """
    sys.exit(run())
