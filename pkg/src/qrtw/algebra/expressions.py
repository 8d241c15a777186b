"""
Reader for formula files.

A formula file is a sequence of lines ``name := expression`` where an
expression uses identifiers, integer literals, ``+ - * / ^``, parentheses,
and parenthesized comma lists for maps and vector fields. ``#`` starts a
comment. A name may be reused on any later line; every other identifier is
a symbol of the function field.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from tokenize import TokenError
from typing import Any, Dict, List, Optional, Union

from sympy import Add, Mul, Pow, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from ..utils.error_handler import ExpressionSyntaxError
from .field import FunctionField
from .rational_function import RationalFunction

logger = logging.getLogger(__name__)

TRANSFORMATIONS = standard_transformations + (convert_xor,)
IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
DEFINITION = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*:=\s*(.*?)\s*$")
ALLOWED = re.compile(r"^[A-Za-z_0-9\s+\-*/^(),]*$")

Value = Union[RationalFunction, tuple]


@dataclass
class Definition:
    """One ``name := expression`` line."""
    name: str
    text: str
    line: int
    tree: Any = None


@dataclass
class FormulaFile:
    """Parsed definitions of one file, in file order."""
    source: str
    definitions: List[Definition] = field(default_factory=list)

    @classmethod
    def parse(cls, text: str, source: str = '<string>') -> 'FormulaFile':
        formulas = cls(source=source)
        seen: Dict[str, int] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0]
            if not line.strip():
                continue
            match = DEFINITION.match(line)
            if not match:
                raise ExpressionSyntaxError(source, number, "expected 'name := expression'")
            name, body = match.groups()
            if name in seen:
                raise ExpressionSyntaxError(source, number, f"'{name}' already defined on line {seen[name]}")
            if not body:
                raise ExpressionSyntaxError(source, number, f"empty definition of '{name}'")
            seen[name] = number
            formulas.definitions.append(Definition(name, body, number, _parse_tree(body, source, number)))
        if not formulas.definitions:
            raise ExpressionSyntaxError(source, 0, "no definitions found")
        formulas._check_order()
        return formulas

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'FormulaFile':
        path = Path(path)
        logger.debug(f"📁 Reading formulas from {path}")
        return cls.parse(path.read_text(encoding='utf-8'), source=str(path))

    @property
    def names(self) -> List[str]:
        return [d.name for d in self.definitions]

    def _check_order(self) -> None:
        defined_at = {d.name: d.line for d in self.definitions}
        for definition in self.definitions:
            for ident in IDENTIFIER.findall(definition.text):
                if ident in defined_at and defined_at[ident] >= definition.line:
                    raise ExpressionSyntaxError(
                        self.source, definition.line, f"'{ident}' is used before its definition"
                    )

    def free_symbols(self) -> List[str]:
        """Identifiers that are never defined, in order of first appearance."""
        defined = set(self.names)
        symbols: List[str] = []
        for definition in self.definitions:
            for ident in IDENTIFIER.findall(definition.text):
                if ident not in defined and ident not in symbols:
                    symbols.append(ident)
        return symbols

    def evaluate(self, function_field: FunctionField) -> Dict[str, Value]:
        """Convert every definition into rational functions of the field."""
        env: Dict[str, Value] = {}
        for definition in self.definitions:
            try:
                env[definition.name] = convert_tree(definition.tree, function_field, env)
            except ExpressionSyntaxError:
                raise
            except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
                raise ExpressionSyntaxError(self.source, definition.line, str(exc)) from exc
        return env

    def last_tuple(self) -> Optional[str]:
        """Name of the last definition whose value is a comma list."""
        for definition in reversed(self.definitions):
            if isinstance(definition.tree, tuple):
                return definition.name
        return None


def _parse_tree(text: str, source: str, line: int):
    if not ALLOWED.match(text):
        bad = sorted(set(c for c in text if not ALLOWED.match(c)))
        raise ExpressionSyntaxError(source, line, f"unexpected characters {''.join(bad)!r}")
    local_dict = {ident: Symbol(ident) for ident in IDENTIFIER.findall(text)}
    try:
        return parse_expr(text, local_dict=local_dict, transformations=TRANSFORMATIONS, evaluate=False)
    except (SyntaxError, TypeError, ValueError, TokenError) as exc:
        raise ExpressionSyntaxError(source, line, f"cannot parse '{text}'") from exc


def convert_tree(node, function_field: FunctionField, env: Dict[str, Value]) -> Value:
    """Turn an unevaluated sympy tree into rational functions of the field."""
    if isinstance(node, tuple):
        return tuple(convert_tree(item, function_field, env) for item in node)
    if isinstance(node, Symbol):
        if node.name in env:
            return env[node.name]
        return function_field.gen(node.name)
    if node.is_Integer or node.is_Rational:
        return function_field.constant(Fraction(int(node.p), int(node.q)))
    if isinstance(node, (Add, Mul)):
        args = [_scalar(convert_tree(arg, function_field, env), node) for arg in node.args]
        result = args[0]
        for arg in args[1:]:
            result = result + arg if isinstance(node, Add) else result * arg
        return result
    if isinstance(node, Pow):
        base = _scalar(convert_tree(node.base, function_field, env), node)
        if not node.exp.is_Integer:
            raise ValueError(f"non-integer exponent in {node}")
        return base ** int(node.exp)
    raise ValueError(f"unsupported expression {node}")


def _scalar(value: Value, node) -> RationalFunction:
    if isinstance(value, tuple):
        raise ValueError(f"a comma list cannot be used inside {node}")
    return value


def parse_expression(text: str, function_field: FunctionField,
                     env: Optional[Dict[str, Value]] = None) -> Value:
    """Parse one expression against a field and earlier definitions."""
    return convert_tree(_parse_tree(text, '<expression>', 1), function_field, env or {})

