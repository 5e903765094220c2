import re
from decimal import Decimal
from enum import Enum
from fractions import Fraction

from ..logic import (
    BinaryAtom,
    CondProbCmp,
    Conj,
    Exists,
    Forall,
    Formula,
    Implies,
    Possibly,
    UnaryAtom,
)
from ..vocab import Comparison


class RenderStyle(Enum):
    UNICODE = "unicode"
    ASCII = "ascii"
    LATEX = "latex"


def decimal_text(q: Fraction) -> str:
    """
    Exact decimal text of a fraction with a terminating expansion (all thresholds).
    """
    d = Decimal(q.numerator) / Decimal(q.denominator)
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


class FormulaRenderer:
    """
    Renders a formula tree to text. Dispatches on the node class name, the way lark's
    Interpreter dispatches on rule names.
    """

    EXISTS = "∃"
    FORALL = "∀"
    AND = "∧"
    IMPLIES = "→"
    DIAMOND = "◇"
    GIVEN = "|"
    COMPARATORS = {
        Comparison.EQUAL: "=",
        Comparison.AT_LEAST: "≥",
        Comparison.AT_MOST: "≤",
    }

    def visit(self, node: Formula) -> str:
        method = re.sub(r"(?<!^)(?=[A-Z])", "_", type(node).__name__).lower()
        return getattr(self, method)(node)

    def _quantifier(self, symbol: str, variable: str) -> str:
        return f"{symbol}{variable}"

    def cond_prob_cmp(self, node: CondProbCmp) -> str:
        event = self.visit(node.event)
        if not isinstance(node.event, Possibly):
            event = f"({event})"
        return (
            f"P( {event} {self.GIVEN} {self.visit(node.condition)} ) "
            f"{self.COMPARATORS[node.comparison]} {decimal_text(node.threshold)}"
        )

    def possibly(self, node: Possibly) -> str:
        return f"{self.DIAMOND}({self.visit(node.body)})"

    def exists(self, node: Exists) -> str:
        return f"{self._quantifier(self.EXISTS, node.variable)}( {self.visit(node.body)} )"

    def forall(self, node: Forall) -> str:
        prefix = " ".join(self._quantifier(self.FORALL, v) for v in node.variables)
        return f"{prefix}( {self.visit(node.body)} )"

    def implies(self, node: Implies) -> str:
        return f"{self.visit(node.antecedent)} {self.IMPLIES} {self.visit(node.consequent)}"

    def conj(self, node: Conj) -> str:
        def bracket_complex(part: Formula) -> str:
            if isinstance(part, (Conj, Implies)):
                return f"({self.visit(part)})"
            return self.visit(part)

        return f" {self.AND} ".join(map(bracket_complex, node.parts))

    def unary_atom(self, node: UnaryAtom) -> str:
        return f"{node.predicate}({node.arg})"

    def binary_atom(self, node: BinaryAtom) -> str:
        return f"{node.predicate}({node.arg1},{node.arg2})"


class AsciiFormulaRenderer(FormulaRenderer):
    EXISTS = "EXISTS"
    FORALL = "FORALL"
    AND = "AND"
    IMPLIES = "->"
    DIAMOND = "DIAMOND"
    COMPARATORS = {
        Comparison.EQUAL: "=",
        Comparison.AT_LEAST: ">=",
        Comparison.AT_MOST: "<=",
    }

    def _quantifier(self, symbol: str, variable: str) -> str:
        return f"{symbol} {variable}"


class LatexFormulaRenderer(FormulaRenderer):
    EXISTS = r"\exists"
    FORALL = r"\forall"
    AND = r"\wedge"
    IMPLIES = r"\rightarrow"
    DIAMOND = r"\Diamond"
    GIVEN = r"\mid"
    COMPARATORS = {
        Comparison.EQUAL: "=",
        Comparison.AT_LEAST: r"\geq",
        Comparison.AT_MOST: r"\leq",
    }

    def _quantifier(self, symbol: str, variable: str) -> str:
        return f"{symbol} {variable}"

    def unary_atom(self, node: UnaryAtom) -> str:
        return rf"\mathit{{{node.predicate}}}({node.arg})"

    def binary_atom(self, node: BinaryAtom) -> str:
        return rf"\mathit{{{node.predicate}}}({node.arg1},{node.arg2})"


_RENDERERS = {
    RenderStyle.UNICODE: FormulaRenderer,
    RenderStyle.ASCII: AsciiFormulaRenderer,
    RenderStyle.LATEX: LatexFormulaRenderer,
}


def render_formula(f: Formula, style: RenderStyle = RenderStyle.UNICODE) -> str:
    return _RENDERERS[style]().visit(f)
