"""Text syntax for order terms, groups, group elements and series.

Order terms::

    fin(3)   Q   w   w*   inv(t)   t1 + t2   (t)   wsum(p1, p2; q1, q2)   zsum(t)

Groups::

    sum over fin(3) of [Z, Z_(2), Q]        also Z[1/2,1/3]

Elements: ``{0: 1, 2: -3/5}``.  Series: ``3*t^{0:1} + 1 - 2*t^{1:2}``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .hahn import HahnSeries
from .linorder import Fin, Inv, OmegaSum, OrderTerm, Rationals, Sum, omega, to_dsl, zsum
from .oag import Q, Z, BaseGroup, GroupElement, OAGroup, Z_inv, Z_loc


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(fin|inv|wsum|zsum|w\*|w|Q|\d+|[()+;,])")


def _tokenize(s: str) -> list[str]:
    out, pos = [], 0
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ParseError(f"unexpected input at {pos}: {s[pos:pos + 10]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, toks):
        self.toks, self.i = toks, 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise ParseError(f"expected {want or 'a token'}, got {tok!r}")
        self.i += 1
        return tok

    def sum(self) -> OrderTerm:
        parts = [self.atom()]
        while self.peek() == "+":
            self.take("+")
            parts.append(self.atom())
        return parts[0] if len(parts) == 1 else Sum(*parts)

    def terms(self, stop) -> list:
        out = []
        if self.peek() in stop:
            return out
        out.append(self.sum())
        while self.peek() == ",":
            self.take(",")
            out.append(self.sum())
        return out

    def atom(self) -> OrderTerm:
        tok = self.take()
        if tok == "fin":
            self.take("(")
            n = self.take()
            if not n.isdigit():
                raise ParseError("fin needs a number")
            self.take(")")
            return Fin(int(n))
        if tok == "Q":
            return Rationals()
        if tok == "w":
            return omega()
        if tok == "w*":
            return Inv(omega())
        if tok in ("inv", "zsum"):
            self.take("(")
            t = self.sum()
            self.take(")")
            return Inv(t) if tok == "inv" else zsum(t)
        if tok == "wsum":
            self.take("(")
            prefix = self.terms((";",))
            self.take(";")
            period = self.terms((")",))
            self.take(")")
            if not period:
                raise ParseError("wsum needs a nonempty period")
            return OmegaSum(prefix, period)
        if tok == "(":
            if self.peek() == ")":
                self.take(")")
                return Sum()
            t = self.sum()
            self.take(")")
            return t
        raise ParseError(f"unexpected token {tok!r}")


def parse_order(s: str) -> OrderTerm:
    p = _Parser(_tokenize(s))
    t = p.sum()
    if p.peek() is not None:
        raise ParseError(f"trailing input from {p.peek()!r}")
    return t


format_order = to_dsl


def parse_base(s: str) -> BaseGroup:
    s = s.strip()
    if s == "Z":
        return Z
    if s == "Q":
        return Q
    m = re.fullmatch(r"Z_\((\d+(?:\s*,\s*\d+)*)\)", s)
    if m:
        return Z_loc(*(int(x) for x in m.group(1).split(",")))
    m = re.fullmatch(r"Z\[(1/\d+(?:\s*,\s*1/\d+)*)\]", s)
    if m:
        return Z_inv(*(int(x.strip()[2:]) for x in m.group(1).split(",")))
    raise ParseError(f"unknown base group {s!r}")


def parse_group(s: str) -> OAGroup:
    m = re.fullmatch(r"\s*sum\s+over\s+fin\((\d+)\)\s+of\s+\[(.*)\]\s*", s)
    if not m:
        raise ParseError("expected 'sum over fin(m) of [B1, ..., Bm]'")
    m_, body = int(m.group(1)), m.group(2)
    parts = [x for x in re.split(r",(?![^()\[\]]*[)\]])", body) if x.strip()]
    comps = [parse_base(x) for x in parts]
    if len(comps) == 1 and m_ != 1:
        comps = comps * m_
    if len(comps) != m_:
        raise ParseError(f"fin({m_}) needs {m_} components, got {len(comps)}")
    return OAGroup(comps)


def format_group(G: OAGroup) -> str:
    return str(G)


def parse_element(G: OAGroup, s: str) -> GroupElement:
    s = s.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError("elements look like {0: 1, 2: -3/5}")
    vals = {}
    body = s[1:-1].strip()
    if body:
        for item in body.split(","):
            k, _, v = item.partition(":")
            try:
                vals[int(k)] = Fraction(v.strip())
            except ValueError as exc:
                raise ParseError(f"bad element entry {item!r}") from exc
    try:
        return G.element(vals)
    except (ValueError, IndexError) as exc:
        raise ParseError(str(exc)) from exc


def format_element(g: GroupElement) -> str:
    return repr(g)


_SERIES_TERM = re.compile(r"""\s*([+-])?\s*
    (?:(\d+(?:/\d+)?)\s*(\*)?\s*)?
    (?:t\^(\{[^}]*\}))?""", re.X)


def parse_series(G: OAGroup, s: str) -> HahnSeries:
    s = s.strip()
    prec = None
    m = re.search(r"\+\s*O\(t\^(\{[^}]*\})\)\s*$", s)
    if m:
        prec = parse_element(G, m.group(1))
        s = s[:m.start()].strip()
    terms, pos = [], 0
    if s == "0":
        return HahnSeries.make(G, [], prec)
    while pos < len(s):
        m = _SERIES_TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(4) is None):
            raise ParseError(f"cannot read series at {s[pos:pos + 12]!r}")
        if pos and m.group(1) is None:
            raise ParseError("terms must be joined by + or -")
        if m.group(3) and m.group(4) is None:
            raise ParseError("dangling '*'")
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            c = -c
        e = parse_element(G, m.group(4)) if m.group(4) else G.zero()
        terms.append((e, c))
        pos = m.end()
    return HahnSeries.make(G, terms, prec)


def format_series(x: HahnSeries) -> str:
    return repr(x)
