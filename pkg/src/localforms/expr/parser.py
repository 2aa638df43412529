"""Recursive-descent parser for the chart-expression grammar.

See docs/grammar.md for the grammar.  Operator precedence is the standard
one (unary minus binds tighter than * and /, '^' tighter still); '*' doubles
as the (left-associative) matrix product whenever an operand is a matrix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Mapping, Sequence, Tuple

from ..errors import ExpressionSyntaxError, ValidationError
from .evaluate import evaluate
from .dual import Dual
from .nodes import (Binary, Call, MatLit, Name, Node, Num, Unary,
                    MATRIX_FUNCTIONS, SCALAR_FUNCTIONS, infer_shape)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<punct>[-+*/^(),\[\]]))")

_FUNCTIONS = set(SCALAR_FUNCTIONS) | set(MATRIX_FUNCTIONS) | {"atan2"}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(source):
    tokens = []
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            stripped = source[pos:].lstrip()
            if not stripped:
                break
            at = len(source) - len(stripped)
            raise ExpressionSyntaxError(
                f"unexpected character '{source[at]}'", at)
        if match.lastgroup is None:
            break
        tokens.append(_Token(match.lastgroup, match.group(match.lastgroup),
                             match.start(match.lastgroup)))
        pos = match.end()
    tokens.append(_Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source):
        self.source = source
        self.tokens = _tokenize(source)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, text):
        token = self.advance()
        if token.text != text:
            raise ExpressionSyntaxError(
                f"expected '{text}', found '{token.text or 'end of input'}'",
                token.pos)
        return token

    def parse(self):
        node = self.expression()
        token = self.peek()
        if token.kind != "end":
            raise ExpressionSyntaxError(
                f"unexpected trailing '{token.text}'", token.pos)
        return node

    def expression(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.advance().text
            node = Binary(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek().text in ("*", "/"):
            op = self.advance().text
            node = Binary(op, node, self.factor())
        return node

    def factor(self):
        if self.peek().text == "-":
            self.advance()
            return Unary(self.factor())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek().text == "^":
            self.advance()
            sign = 1
            if self.peek().text == "-":
                self.advance()
                sign = -1
            token = self.advance()
            if token.kind != "num" or float(token.text) != int(float(token.text)):
                raise ExpressionSyntaxError(
                    "'^' requires an integer exponent", token.pos)
            node = Binary("^", node, Num(sign * float(token.text)))
        return node

    def atom(self):
        token = self.advance()
        if token.kind == "num":
            return Num(float(token.text))
        if token.kind == "ident":
            if self.peek().text == "(":
                if token.text not in _FUNCTIONS:
                    raise ExpressionSyntaxError(
                        f"unknown function '{token.text}'", token.pos)
                self.advance()
                args = [self.expression()]
                while self.peek().text == ",":
                    self.advance()
                    args.append(self.expression())
                self.expect(")")
                return Call(token.text, tuple(args))
            return Name(token.text)
        if token.text == "(":
            node = self.expression()
            self.expect(")")
            return node
        if token.text == "[":
            return self.matrix(token.pos)
        raise ExpressionSyntaxError(
            f"unexpected '{token.text or 'end of input'}'", token.pos)

    def matrix(self, start):
        rows = [self.row()]
        while self.peek().text == ",":
            self.advance()
            rows.append(self.row())
        self.expect("]")
        widths = {len(row) for row in rows}
        if len(widths) != 1:
            raise ValidationError("ragged matrix literal")
        return MatLit(tuple(rows))

    def row(self):
        self.expect("[")
        entries = [self.expression()]
        while self.peek().text == ",":
            self.advance()
            entries.append(self.expression())
        self.expect("]")
        return tuple(entries)


@dataclass(frozen=True)
class ExprAST:
    """A validated expression over chart coordinates and parameters."""

    root: Node
    coords: Tuple[str, ...]
    params: Tuple[str, ...] = ()
    matrix_params: Mapping[str, Tuple[int, int]] = field(default_factory=dict)

    @property
    def shape(self):
        return infer_shape(self.root, self._name_shapes())

    def _name_shapes(self):
        shapes: Dict[str, object] = {name: None for name in self.coords}
        shapes.update({name: None for name in self.params})
        shapes.update(dict(self.matrix_params))
        return shapes

    def to_source(self):
        return str(self.root)

    def __str__(self):
        return self.to_source()

    def _bindings(self, point, params, seeds):
        point = [float(v) for v in point]
        if len(point) != len(self.coords):
            raise ValidationError(
                f"expected {len(self.coords)} coordinates, got {len(point)}")
        params = dict(params or {})
        k = len(seeds)
        bindings = {}
        for j, name in enumerate(self.coords):
            bindings[name] = Dual.scalar(point[j], [s[j] for s in seeds])
        for name in self.params:
            if name not in params:
                raise ValidationError(f"parameter '{name}' is not bound")
            bindings[name] = Dual.constant(float(params[name]), k)
        for name in self.matrix_params:
            if name not in params:
                raise ValidationError(f"parameter '{name}' is not bound")
            bindings[name] = Dual.constant(params[name], k)
        return bindings

    def eval(self, point, params=None):
        """Evaluate at a coordinate point; returns a float or an ndarray."""
        result = evaluate(self.root, self._bindings(point, params, []), 0)
        return result.primal

    def eval_dual(self, point, params=None, seeds=()):
        """Evaluate together with directional derivatives along each seed.

        Returns (value, [derivative per seed]).
        """
        seeds = [list(map(float, s)) for s in seeds]
        for s in seeds:
            if len(s) != len(self.coords):
                raise ValidationError("seed dimension mismatch")
        result = evaluate(self.root, self._bindings(point, params, seeds),
                          len(seeds))
        return result.primal, [result.tangent[k] for k in range(len(seeds))]

    def eval_bound(self, bindings, n_seeds):
        """Evaluate with explicit Dual bindings (used to differentiate through
        matrix-valued parameters)."""
        return evaluate(self.root, bindings, n_seeds)


def parse(source, coords, params=(), matrix_params=None) -> ExprAST:
    """Parse and validate an expression over the given names.

    Raises ExpressionSyntaxError on malformed text and
    ValidationError/ShapeError on unknown names or dimension mismatches.
    """
    root = _Parser(source).parse()
    ast = ExprAST(root, tuple(coords), tuple(params),
                  dict(matrix_params or {}))
    ast.shape  # validates names and dimensions
    return ast
