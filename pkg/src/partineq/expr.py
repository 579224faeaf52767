"""Index maps n -> RealInterval, optionally written as arithmetic expressions.

Expressions are parsed with :mod:`ast` and restricted to arithmetic,
a few elementary functions and named parameters.  Every numeric literal is
re-read from its source text, so ``0.2315`` means the decimal 0.2315 and is
enclosed outward, not the nearest binary double.

>>> f = IndexMap.from_expr("pi/6*sqrt(24*n - 1)")
>>> f.at(1).contains(0)
False
"""
from __future__ import annotations

import ast
from typing import Callable, Mapping, Optional

from mpmath import iv

from .errors import InvalidSpec
from .intervals import START_BITS, RealInterval, working_precision

_FUNCS: dict[str, Callable] = {
    "sqrt": iv.sqrt,
    "exp": iv.exp,
    "log": iv.log,
    "cbrt": lambda x: iv.mpf(x) ** (iv.mpf(1) / 3),
    "abs": abs,
}
_CONSTS: dict[str, Callable] = {
    "pi": lambda: iv.pi,
    "e": lambda: iv.e,
}
_ALLOWED = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult,
    ast.Div, ast.Pow, ast.USub, ast.UAdd, ast.Call, ast.Name, ast.Constant, ast.Load,
)


class _Rewrite(ast.NodeTransformer):
    def __init__(self, src: str, params: Mapping[str, str]):
        self.src = src
        self.params = params

    def visit_Constant(self, node: ast.Constant) -> ast.AST:
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise InvalidSpec(f"unsupported literal {node.value!r}")
        text = ast.get_source_segment(self.src, node) or repr(node.value)
        call = ast.Call(ast.Name("_num", ast.Load()), [ast.Constant(text)], [])
        return ast.copy_location(call, node)

    def visit_Name(self, node: ast.Name) -> ast.AST:
        if node.id == "n":
            call = ast.Call(ast.Name("_num", ast.Load()), [ast.Name("_n", ast.Load())], [])
        elif node.id in _CONSTS or node.id in self.params:
            call = ast.Call(ast.Name("_k_" + node.id, ast.Load()), [], [])
        elif node.id in _FUNCS:
            return node
        else:
            raise InvalidSpec(f"unknown name {node.id!r} in expression {self.src!r}")
        return ast.copy_location(call, node)

    def visit_Call(self, node: ast.Call) -> ast.AST:
        if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCS:
            raise InvalidSpec(f"unsupported call in expression {self.src!r}")
        if node.keywords or len(node.args) != 1:
            raise InvalidSpec(f"functions take exactly one argument: {self.src!r}")
        node.args = [self.visit(a) for a in node.args]
        return node


def compile_expr(src: str, params: Optional[Mapping[str, str]] = None) -> Callable[[int], object]:
    """Compile ``src`` into ``fn(n) -> iv.mpf`` evaluated at the current iv precision.

    ``params`` maps parameter names to expressions of their own (without ``n``),
    e.g. ``{"alpha": "0.23151681", "beta": "43/100"}``.
    """
    params = dict(params or {})
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as exc:
        raise InvalidSpec(f"cannot parse expression {src!r}") from exc
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise InvalidSpec(f"disallowed syntax {type(node).__name__} in {src!r}")
    tree = ast.fix_missing_locations(_Rewrite(src.strip(), params).visit(tree))
    code = compile(tree, "<expr>", "eval")

    ns: dict = {"__builtins__": {}, "_num": iv.mpf}
    ns.update(_FUNCS)
    for name, const in _CONSTS.items():
        ns["_k_" + name] = const
    for name, psrc in params.items():
        if "n" in {x.id for x in ast.walk(ast.parse(psrc, mode="eval")) if isinstance(x, ast.Name)}:
            raise InvalidSpec(f"parameter {name!r} must not depend on n")
        inner = compile_expr(psrc, {k: v for k, v in params.items() if k != name})
        ns["_k_" + name] = lambda inner=inner: inner(0)

    def fn(n: int):
        local = dict(ns)
        local["_n"] = n
        return eval(code, local)

    fn.__doc__ = src
    return fn


class IndexMap:
    """A map n -> RealInterval with per-(n, precision) memoization."""

    def __init__(self, fn: Callable[[int], object], label: str = "", source: Optional[str] = None):
        self.fn = fn
        self.label = label
        self.source = source
        self._memo: dict[tuple[int, int], RealInterval] = {}

    @classmethod
    def from_expr(cls, src: str, params: Optional[Mapping[str, str]] = None, label: str = "") -> IndexMap:
        return cls(compile_expr(src, params), label or src, source=src)

    @classmethod
    def constant(cls, value: str, label: str = "") -> IndexMap:
        return cls.from_expr(value, label=label or value)

    def at(self, n: int, bits: int = START_BITS) -> RealInterval:
        key = (n, bits)
        hit = self._memo.get(key)
        if hit is None:
            with working_precision(bits):
                hit = RealInterval.from_iv(self.fn(n), bits)
            self._memo[key] = hit
        return hit

    def __call__(self, n: int):
        """Raw iv value at the current working precision (for composition)."""
        return self.fn(n)

    def __repr__(self) -> str:
        return f"IndexMap({self.label!r})"
