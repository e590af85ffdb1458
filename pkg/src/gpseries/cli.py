"""Command-line front end.

A small expression language over declared variables, evaluated into
truncated exact series, plus subcommands for coefficient extraction,
residues, parameter representation and Dyson verification.

Grammar:
    expr  := term (('+'|'-') term)*
    term  := unary (('*'|'/') unary)*
    unary := '-'? power
    power := atom ('^' '-'? int)?
    atom  := rational | int | ident | '(' expr ')'

A rational literal "p/q" is recognized only when both sides are digit
strings with no whitespace around the slash; any other '/' is series
division, which (like negative powers of non-monomials) requires --box.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BoxUnderflow,
    GPSeriesError,
    ParseError,
    UndeclaredVariable,
)
from .exponents import Box, GroupSplit, lex_order, parse_order, zero_exp
from .fields import field_from_name
from .identities import DysonInstance, dyson_verify
from .residues import check_parameters, jacobi_coefficient, represent
from .series import (
    Ambient,
    Series,
    h_coefficient_at,
    invert,
    mul,
    power,
    series_to_json,
)

# -- tokenizer -----------------------------------------------------------

_PUNCT = "+-*/^()"


def tokenize(text: str):
    """Yields (kind, value, line, col) with kind in
    {rational, int, ident, punct, eof}."""
    line, col = 1, 1
    i = 0
    out = []
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            # "p/q" with no whitespace is a rational literal; a zero
            # denominator falls through to series division
            if j < len(text) and text[j] == "/" and j + 1 < len(text) \
                    and text[j + 1].isdigit():
                k = j + 1
                while k < len(text) and text[k].isdigit():
                    k += 1
                if int(text[j + 1:k]) != 0:
                    out.append(("rational",
                                Fraction(int(text[i:j]), int(text[j + 1:k])),
                                line, start_col))
                    col += k - i
                    i = k
                    continue
            out.append(("int", int(text[i:j]), line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            out.append(("punct", ch, line, start_col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col,
                         ("digit", "identifier") + tuple(_PUNCT))
    out.append(("eof", None, line, col))
    return out


# -- parser --------------------------------------------------------------

# AST nodes: ("num", Fraction) ("var", name) ("neg", e)
#            ("add"|"sub"|"mul"|"div", l, r) ("pow", e, int)

class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected):
        kind, val, line, col = self.peek()
        what = "end of input" if kind == "eof" else repr(val)
        raise ParseError(f"unexpected {what}", line, col, expected)

    def expect_punct(self, ch):
        kind, val, line, col = self.peek()
        if kind != "punct" or val != ch:
            self.fail((ch,))
        return self.take()

    def expr(self):
        node = self.term()
        while self.peek()[:2] in (("punct", "+"), ("punct", "-")):
            op = self.take()[1]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[:2] in (("punct", "*"), ("punct", "/")):
            op = self.take()[1]
            rhs = self.unary()
            node = ("mul" if op == "*" else "div", node, rhs)
        return node

    def unary(self):
        if self.peek()[:2] == ("punct", "-"):
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[:2] == ("punct", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("punct", "-"):
                self.take()
                sign = -1
            kind, val, line, col = self.peek()
            if kind != "int":
                self.fail(("integer exponent",))
            self.take()
            node = ("pow", node, sign * val)
        return node

    def atom(self):
        kind, val, line, col = self.peek()
        if kind == "rational":
            self.take()
            return ("num", val)
        if kind == "int":
            self.take()
            return ("num", Fraction(val))
        if kind == "ident":
            self.take()
            return ("var", val)
        if kind == "punct" and val == "(":
            self.take()
            node = self.expr()
            self.expect_punct(")")
            return node
        self.fail(("number", "variable", "("))


def parse(text: str):
    return _Parser(tokenize(text)).expr()


# -- session configuration and evaluation --------------------------------

@dataclass(frozen=True)
class SessionConfig:
    ambient: Ambient
    var_names: tuple
    box: object  # Box | None

    @property
    def n(self) -> int:
        return len(self.var_names)


def config_from_args(args) -> SessionConfig:
    var_names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    if not var_names:
        raise ParseError("no variables declared", 1, 1, ("name",))
    m = args.hdim
    k = m + len(var_names)
    order = lex_order(k) if args.order is None else parse_order(args.order)
    fld = field_from_name(args.field)
    ambient = Ambient(GroupSplit(m, len(var_names)), order, fld)
    box = None
    if args.box is not None:
        los, his = [], []
        for part in args.box.split(","):
            lo, _, hi = part.partition("..")
            los.append(int(lo))
            his.append(int(hi))
        box = Box(tuple(los), tuple(his))
        if box.k != k:
            raise ParseError(f"box has {box.k} coordinates, expected {k}",
                             1, 1, ())
    return SessionConfig(ambient, var_names, box)


def evaluate(ast, cfg: SessionConfig) -> Series:
    kind = ast[0]
    if kind == "num":
        return cfg.ambient.constant(ast[1])
    if kind == "var":
        name = ast[1]
        if name not in cfg.var_names:
            raise UndeclaredVariable(f"variable {name!r} not declared")
        return cfg.ambient.var(cfg.var_names.index(name) + 1)
    if kind == "neg":
        return evaluate(ast[1], cfg).scale(-1)
    if kind == "add":
        return evaluate(ast[1], cfg) + evaluate(ast[2], cfg)
    if kind == "sub":
        return evaluate(ast[1], cfg) - evaluate(ast[2], cfg)
    if kind == "mul":
        return mul(evaluate(ast[1], cfg), evaluate(ast[2], cfg))
    if kind == "div":
        num = evaluate(ast[1], cfg)
        den = evaluate(ast[2], cfg)
        return mul(num, invert(den, cfg.box))
    if kind == "pow":
        return power(evaluate(ast[1], cfg), ast[2], cfg.box)
    raise AssertionError(f"unknown node {kind}")


# -- output formatting ----------------------------------------------------

def _scalar_text(fld, c) -> str:
    if fld.characteristic == 0:
        return str(fld.coerce(c))
    return str(fld.coerce(c).val)


def _monomial_text(cfg: SessionConfig, g) -> str:
    split = cfg.ambient.split
    parts = []
    h = g[:split.m]
    if any(h):
        parts.append("e^(" + ",".join(str(v) for v in h) + ")")
    for name, e in zip(cfg.var_names, g[split.m:]):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_series(f: Series, cfg: SessionConfig) -> str:
    terms = f.sorted_terms()
    if not terms:
        return "0"
    fld = f.field
    out = []
    for g, c in terms:
        mono = _monomial_text(cfg, g)
        cs = _scalar_text(fld, c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        body = mono if mono and cs == "1" else (f"{cs}*{mono}" if mono else cs)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


# -- subcommands ----------------------------------------------------------

def _parse_params(cfg: SessionConfig, spec: str):
    members = [evaluate(parse(p), cfg) for p in spec.split(";") if p.strip()]
    return check_parameters(members)


def _h_series_text(f: Series, cfg: SessionConfig) -> str:
    if cfg.ambient.split.m == 0:
        return _scalar_text(f.field, f.coefficient_at(zero_exp(f.order.k)))
    return format_series(f, cfg)


def _cmd_eval(args, cfg):
    f = evaluate(parse(args.expr), cfg)
    if args.json:
        print(json.dumps(series_to_json(f)))
    else:
        print(format_series(f, cfg))
    return 0


def _cmd_coeff(args, cfg):
    f = evaluate(parse(args.expr), cfg)
    at = tuple(int(v) for v in args.at.split(","))
    c = h_coefficient_at(f, at)
    if args.json:
        print(json.dumps(series_to_json(c)))
    else:
        print(_h_series_text(c, cfg))
    return 0


def _cmd_ct(args, cfg):
    f = evaluate(parse(args.expr), cfg)
    c = h_coefficient_at(f, (0,) * cfg.n)
    if args.json:
        print(json.dumps(series_to_json(c)))
    else:
        print(_h_series_text(c, cfg))
    return 0


def _cmd_residue(args, cfg):
    psi = evaluate(parse(args.expr), cfg)
    params = _parse_params(cfg, args.params)
    r = jacobi_coefficient(psi, params, (0,) * cfg.n, cfg.box)
    if args.json:
        print(json.dumps(series_to_json(r)))
    else:
        print(_h_series_text(r, cfg))
    return 0


def _cmd_represent(args, cfg):
    psi = evaluate(parse(args.expr), cfg)
    params = _parse_params(cfg, args.params)
    lo, hi = [], []
    for part in args.degrees.split(","):
        a, _, b = part.partition("..")
        lo.append(int(a))
        hi.append(int(b))
    coeffs = represent(psi, params, (tuple(lo), tuple(hi)), cfg.box)
    if args.json:
        print(json.dumps({",".join(str(i) for i in idx): series_to_json(s)
                          for idx, s in sorted(coeffs.items())}))
    else:
        for idx, s in sorted(coeffs.items()):
            print(",".join(str(i) for i in idx) + ": " + _h_series_text(s, cfg))
    return 0


def _cmd_dyson(args, _cfg):
    inst = DysonInstance(tuple(int(v) for v in args.a.split(",")))
    lhs, rhs, equal = dyson_verify(inst, args.method)
    if args.json:
        print(json.dumps({"lhs": str(lhs), "rhs": str(rhs), "equal": equal}))
    else:
        print(f"lhs={lhs} rhs={rhs} equal={'true' if equal else 'false'}")
    return 0


def build_argparser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", default=None,
                        help='order matrix rows, e.g. "1,0;0,1" (default: lex)')
    common.add_argument("--vars", default="X",
                        help="comma-separated variable names")
    common.add_argument("--hdim", type=int, default=0,
                        help="number of leading coefficient-group coordinates")
    common.add_argument("--field", default="q", help='"q" or "fp:<p>"')
    common.add_argument("--box", default=None,
                        help='exactness box "lo..hi,lo..hi,..." over all coordinates')
    common.add_argument("--json", action="store_true", help="JSON output")
    ap = argparse.ArgumentParser(
        prog="gpseries", parents=[common],
        description="exact arithmetic with generalized power series")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("eval", help="evaluate an expression to a series")
    p.add_argument("expr")
    p.set_defaults(fn=_cmd_eval, needs_cfg=True)

    p = add_parser("coeff", help="coefficient at a variable monomial")
    p.add_argument("expr")
    p.add_argument("--at", required=True, help="j1,...,jn")
    p.set_defaults(fn=_cmd_coeff, needs_cfg=True)

    p = add_parser("ct", help="constant term")
    p.add_argument("expr")
    p.set_defaults(fn=_cmd_ct, needs_cfg=True)

    p = add_parser("residue", help="residue over a parameter system")
    p.add_argument("expr")
    p.add_argument("--params", required=True, help="expr;expr;...")
    p.set_defaults(fn=_cmd_residue, needs_cfg=True)

    p = add_parser("represent", help="coefficients in regular parameters")
    p.add_argument("expr")
    p.add_argument("--params", required=True, help="expr;expr;...")
    p.add_argument("--degrees", required=True, help="lo..hi,lo..hi,...")
    p.set_defaults(fn=_cmd_represent, needs_cfg=True)

    p = add_parser("dyson", help="verify the Dyson constant-term identity")
    p.add_argument("--a", required=True, help="a1,a2,...")
    p.add_argument("--method", default="direct",
                   choices=("direct", "wilson", "egorychev"))
    p.set_defaults(fn=_cmd_dyson, needs_cfg=False)

    return ap


GRAMMAR_HELP = __doc__[__doc__.index("Grammar:"):]


def run(argv) -> int:
    ap = build_argparser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = config_from_args(args) if args.needs_cfg else None
        return args.fn(args, cfg)
    except ParseError as e:
        print(f"parse error at line {e.line}, column {e.column}: {e.message}"
              f" (expected one of: {', '.join(map(str, e.expected))})",
              file=sys.stderr)
        print(GRAMMAR_HELP, file=sys.stderr)
        return 2
    except BoxUnderflow as e:
        if args.needs_cfg and getattr(args, "box", None) is None:
            print(f"error: {e}; pass --box to choose a truncation window",
                  file=sys.stderr)
            return 2
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (GPSeriesError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
