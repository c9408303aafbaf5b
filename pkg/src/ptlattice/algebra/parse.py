"""Parse polynomial expressions written in the canonical text syntax.

Accepts ``+ - * / ^ **`` and parentheses over integer/decimal literals, the
reduced couplings and the polynomial variable ``t``.  Number literals are read
as exact ``Fraction`` from their source text.
"""

from __future__ import annotations

import ast
from fractions import Fraction

from .multipoly import VARS, MultiPoly
from .poly import Poly


def parse_expr(text: str, poly_var: str = "t"):
    """Return a ``Fraction``, ``MultiPoly``, ``PolyFrac`` or ``Poly`` (if ``poly_var`` occurs)."""
    source = text.replace("^", "**").strip()
    tree = ast.parse(source, mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return Fraction(ast.get_source_segment(source, node))
        if isinstance(node, ast.Name):
            if node.id == poly_var:
                return Poly.x(poly_var)
            if node.id in VARS:
                return MultiPoly.var(node.id)
            raise ValueError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if isinstance(right, Poly):
                    if right.degree > 0:
                        raise ValueError(f"division by a polynomial in {poly_var}")
                    right = right.coeffs[0]
                if isinstance(left, Poly):
                    return left.map_coeffs(lambda c: _div(c, right))
                return _div(left, right)
            if isinstance(node.op, ast.Pow):
                if not isinstance(right, Fraction) or right.denominator != 1 or right < 0:
                    raise ValueError("only nonnegative integer powers are supported")
                return left ** int(right)
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    return ev(tree)


def _div(a, b):
    if isinstance(a, Fraction) and isinstance(b, MultiPoly) and not b.is_constant():
        a = MultiPoly.const(a)
    return a / b


def parse_poly(text: str, poly_var: str = "t") -> Poly:
    val = parse_expr(text, poly_var)
    if isinstance(val, Poly):
        return val
    return Poly([val], poly_var)
