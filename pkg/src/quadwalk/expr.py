"""Parse rational expressions in x, y, t into functions on the kernel curve."""

from __future__ import annotations

import ast
from fractions import Fraction

from .function_field import CurveFunction, FunctionField


class ExprError(ValueError):
    def __init__(self, message: str, column: int | None = None):
        self.column = column
        super().__init__(f"column {column}: {message}" if column is not None else message)


_BIN = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def parse_function(text: str, ff: FunctionField) -> CurveFunction:
    """Evaluate an expression over tokens x, y, t, rational literals, + - * / ^ and parentheses."""
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as e:
        raise ExprError(f"syntax error: {e.msg}", e.offset) from None
    names = {"x": ff.x(), "y": ff.y(), "t": ff.t()}

    def ev(node):
        col = getattr(node, "col_offset", None)
        col = col + 1 if col is not None else None
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            seg = ast.get_source_segment(src, node) or repr(node.value)
            return ff.const(Fraction(seg))
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ExprError(f"unknown symbol {node.id!r}", col)
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                sign = 1
                if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                    sign, e = -1, e.operand
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                    raise ExprError("exponent must be an integer literal", col)
                return ev(node.left) ** (sign * e.value)
            op = _BIN.get(type(node.op))
            if op is None:
                raise ExprError(f"unsupported operator {type(node.op).__name__}", col)
            try:
                return op(ev(node.left), ev(node.right))
            except ZeroDivisionError:
                raise ExprError("division by zero", col) from None
        raise ExprError(f"unsupported syntax {type(node).__name__}", col)

    return ev(tree)
