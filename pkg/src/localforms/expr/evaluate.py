"""AST evaluation on Dual values."""

from __future__ import annotations

import numpy as np

from ..errors import ValidationError
from .dual import Dual
from .nodes import Binary, Call, MatLit, Name, Num, Unary


def evaluate(node, bindings, n_seeds) -> Dual:
    if isinstance(node, Num):
        return Dual.constant(node.value, n_seeds)
    if isinstance(node, Name):
        try:
            return bindings[node.ident]
        except KeyError:
            raise ValidationError(f"unbound identifier '{node.ident}'") from None
    if isinstance(node, Unary):
        return -evaluate(node.operand, bindings, n_seeds)
    if isinstance(node, Binary):
        left = evaluate(node.left, bindings, n_seeds)
        if node.op == "^":
            return left.powi(int(node.right.value))
        right = evaluate(node.right, bindings, n_seeds)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left / right
    if isinstance(node, Call):
        args = [evaluate(a, bindings, n_seeds) for a in node.args]
        if node.fn == "atan2":
            return Dual.atan2(args[0], args[1])
        return getattr(args[0], node.fn)()
    if isinstance(node, MatLit):
        rows = len(node.rows)
        cols = len(node.rows[0])
        primal = np.empty((rows, cols))
        tangent = np.empty((n_seeds, rows, cols))
        for i, row in enumerate(node.rows):
            for j, entry in enumerate(row):
                value = evaluate(entry, bindings, n_seeds)
                primal[i, j] = value.primal
                tangent[:, i, j] = value.tangent
        return Dual(primal, tangent)
    raise ValidationError(f"unknown node type {type(node).__name__}")
