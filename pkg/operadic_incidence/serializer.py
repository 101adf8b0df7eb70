import json
import logging
from fractions import Fraction

from operadic_incidence.grammar import parse_forest, print_forest, print_tree
from operadic_incidence.hopf import VerificationReport
from operadic_incidence.lincomb import LinComb

__all__ = ['LinCombSerializer', 'serialize_lincomb', 'deserialize_lincomb']

LOG = logging.getLogger(__name__)

FORMATS = ('text', 'json')


class LinCombSerializer:
    def __init__(self, serialization_format: str = "text"):
        if serialization_format not in FORMATS:
            raise ValueError("unknown serialization format {0!r}".format(serialization_format))
        self.serialization_format = serialization_format
        self.serializer = (self._to_json
                           if serialization_format == "json" else self._to_text)

    def serialize(self, x: LinComb) -> str:
        return self.serializer(x)

    def write(self, x: LinComb, file_path: str):
        with open(file_path, "w") as output_file:
            output_file.write(self.serialize(x) + "\n")
        LOG.info("Wrote %s terms to %s", len(x), file_path)

    def serialize_report(self, report: VerificationReport) -> str:
        if self.serialization_format == "text":
            return str(report)
        items = {
            "axiom": report.axiom,
            "subject": report.subject,
            "passed": report.passed,
            "checked": len(report.checked),
            "notes": list(report.notes),
        }
        if report.witness is not None:
            items["witness"] = {
                "generator": report.witness.generator,
                "lhs": json.loads(self._to_json(report.witness.lhs)),
                "rhs": json.loads(self._to_json(report.witness.rhs)),
            }
        return json.dumps(items, indent=4, ensure_ascii=False)

    @staticmethod
    def _to_text(x: LinComb) -> str:
        if not x:
            return "0"
        lines = []
        for key, coeff in x.sorted_items():
            if key:
                lines.append("{0} · {1}".format(coeff, " ⊗ ".join(print_forest(f) for f in key)))
            else:
                lines.append(str(coeff))
        return "\n".join(lines)

    @staticmethod
    def _to_json(x: LinComb) -> str:
        if not x:
            return json.dumps({"terms": []}, indent=4)
        terms = [
            {
                "coeff": {"num": str(coeff.numerator), "den": str(coeff.denominator)},
                "factors": [[print_tree(t) for t in forest] for forest in key],
            }
            for key, coeff in x.sorted_items()
        ]
        items = {"basis": "tensor{0}".format(x.degree), "terms": terms}
        return json.dumps(items, indent=4, ensure_ascii=False)


def serialize_lincomb(x: LinComb, serialization_format: str = "text") -> str:
    return LinCombSerializer(serialization_format).serialize(x)


def deserialize_lincomb(text: str, op=None) -> LinComb:
    """
    Description:
        Reads the JSON form back. Trees are parsed over ``op``; without an
        operad they are read as combinatorial trees.

    Args:
        text: JSON produced by :class:`LinCombSerializer`.
        op: the operad the trees live over.

    Returns:
        The linear combination.
    """
    try:
        items = json.loads(text)
        terms = items["terms"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValueError("not a serialized linear combination: {0}".format(exc)) from None
    result = LinComb()
    for term in terms:
        coeff = Fraction(int(term["coeff"]["num"]), int(term["coeff"]["den"]))
        key = tuple(parse_forest('; '.join(factor), op) for factor in term["factors"])
        result += LinComb([(key, coeff)])
    return result

