"""Hahn series with rational coefficients and exponents in an OAGroup.

A series is a finite list of terms plus an optional precision ``prec``:
the coefficients at exponents >= prec are unknown, like a big-O term.
Sums and products of exact series are exact.  Inverses generally have
infinite support, so ``invert`` returns the first terms together with the
precision up to which they are certified.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .oag import ConvexSubgroup, GroupElement, GroupMismatch, OAGroup, ZeroElement

DEFAULT_TERMS = 8


class Indeterminate(ArithmeticError):
    """The answer depends on coefficients hidden by truncation."""


class NegativeValuation(ValueError):
    pass


def _key(g: GroupElement):
    return g.coords  # lexicographic order on coordinate tuples = group order


@dataclass(frozen=True)
class HahnSeries:
    group: OAGroup
    terms: tuple                      # ((exponent, coefficient), ...) increasing
    prec: Optional[GroupElement] = None

    @classmethod
    def make(cls, group: OAGroup, terms: Iterable, prec: Optional[GroupElement] = None) -> "HahnSeries":
        items = []
        # sort and merge equal exponents; cheaper than hashing Fractions
        for e, c in sorted(terms, key=lambda ec: _key(ec[0])):
            if e.group is not group and e.group != group:
                raise GroupMismatch("exponent from another group")
            if items and items[-1][0].coords == e.coords:
                items[-1] = (items[-1][0], items[-1][1] + c)
            else:
                items.append((e, Fraction(c)))
        items = [(e, c) for e, c in items if c]
        if prec is not None:
            items = [(e, c) for e, c in items if e < prec]
        return cls(group, tuple(items), prec)

    @classmethod
    def constant(cls, group: OAGroup, c) -> "HahnSeries":
        return cls.make(group, [(group.zero(), c)])

    @classmethod
    def monomial(cls, exponent: GroupElement, c=1) -> "HahnSeries":
        return cls.make(exponent.group, [(exponent, c)])

    @property
    def exact(self) -> bool:
        return self.prec is None

    @property
    def is_zero(self) -> bool:
        """True only for the exact zero series."""
        return self.exact and not self.terms

    def leading(self):
        if not self.terms:
            if self.exact:
                raise ZeroElement("the zero series has no leading term")
            raise Indeterminate("no known terms below the precision")
        return self.terms[0]

    def _same(self, other: "HahnSeries") -> None:
        if not isinstance(other, HahnSeries) or other.group != self.group:
            raise GroupMismatch("series over different value groups")

    def _lower_val(self) -> Optional[GroupElement]:
        """A lower bound for the valuation (None for exact zero)."""
        if self.terms:
            return self.terms[0][0]
        return self.prec

    def __neg__(self):
        return HahnSeries(self.group, tuple((e, -c) for e, c in self.terms), self.prec)

    def __add__(self, other):
        if not isinstance(other, HahnSeries):
            other = HahnSeries.constant(self.group, other)
        self._same(other)
        return HahnSeries.make(self.group, self.terms + other.terms, _min_prec(self.prec, other.prec))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, HahnSeries):
            other = HahnSeries.constant(self.group, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, HahnSeries):
            c = Fraction(other)
            return HahnSeries.make(self.group, [(e, c * a) for e, a in self.terms], self.prec if c else None)
        self._same(other)
        prods = [(e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms]
        prec = None
        vx, vy = self._lower_val(), other._lower_val()
        if self.prec is not None and vy is not None:
            prec = self.prec + vy
        if other.prec is not None and vx is not None:
            prec = _min_prec(prec, other.prec + vx)
        return HahnSeries.make(self.group, prods, prec)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return series_to_dsl(self)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a < b else b


def add(x: HahnSeries, y: HahnSeries) -> HahnSeries:
    return x + y


def sub(x: HahnSeries, y: HahnSeries) -> HahnSeries:
    return x - y


def mul(x: HahnSeries, y: HahnSeries) -> HahnSeries:
    return x * y


def v_nat(x: HahnSeries) -> GroupElement:
    """The least exponent of the support."""
    return x.leading()[0]


def sign(x: HahnSeries) -> int:
    if x.is_zero:
        return 0
    return 1 if x.leading()[1] > 0 else -1


def compare(x: HahnSeries, y: HahnSeries) -> str:
    """Sign of the leading coefficient of x - y; t is a positive infinitesimal."""
    d = x - y
    if not d.terms:
        if d.exact:
            return "="
        raise Indeterminate("the difference vanishes up to the known precision")
    return ">" if d.terms[0][1] > 0 else "<"


@dataclass(frozen=True)
class InverseCertificate:
    last_exponent: GroupElement
    remainder_valuation: Optional[GroupElement]   # None when x*y == 1 exactly


def invert(x: HahnSeries, term_count: int = DEFAULT_TERMS, *, certify: bool = True) -> HahnSeries:
    """First ``term_count`` terms of 1/x by long division.

    Each step divides the leading term of the remainder 1 - x*y by the
    leading term of x, which produces the terms of 1/x in increasing order.
    The result carries precision v(1 - x*y) - v(x): all terms of 1/x below
    it are known.  With ``certify`` the bound v(x*y - 1) > v(x) + last
    exponent is re-checked by an exact multiplication.
    """
    y, _ = invert_with_certificate(x, term_count, certify=certify)
    return y


def invert_with_certificate(x: HahnSeries, term_count: int = DEFAULT_TERMS, *, certify: bool = True):
    if not x.exact:
        raise ValueError("invert needs an exact series")
    if x.is_zero:
        raise ZeroDivisionError("0 has no inverse")
    if term_count < 1:
        raise ValueError("term_count >= 1")
    G = x.group
    e0, c0 = x.terms[0]
    one = HahnSeries.constant(G, 1)
    found = []
    rem = one
    for _ in range(term_count):
        if not rem.terms:
            break
        er, cr = rem.terms[0]
        term = (er - e0, cr / c0)
        found.append(term)
        rem = rem - x * HahnSeries.make(G, [term])
    y_terms = HahnSeries.make(G, found)
    if rem.terms:
        y = HahnSeries.make(G, found, rem.terms[0][0] - e0)
    else:
        y = y_terms
    last = found[-1][0]
    cert = InverseCertificate(last, rem.terms[0][0] if rem.terms else None)
    if certify:
        check = x * y_terms - one
        if check.terms:
            if not v_nat(check) > e0 + last or v_nat(check) != cert.remainder_valuation:
                raise AssertionError("inverse certificate failed")
        elif cert.remainder_valuation is not None:
            raise AssertionError("inverse certificate failed")
    return y, cert


def divide(x: HahnSeries, y: HahnSeries, term_count: int = DEFAULT_TERMS) -> HahnSeries:
    return x * invert(y, term_count)


@dataclass(frozen=True)
class ValuationRing:
    """O_H = {x : v(x) >= h for some h in H} together with 0."""
    subgroup: ConvexSubgroup

    @property
    def group(self) -> OAGroup:
        return self.subgroup.group

    @property
    def is_trivial(self) -> bool:
        """O_G is the whole field."""
        return not self.subgroup.is_proper

    def __le__(self, other: "ValuationRing") -> bool:
        return self.subgroup <= other.subgroup

    def __lt__(self, other: "ValuationRing") -> bool:
        return self.subgroup < other.subgroup

    def __repr__(self) -> str:
        return f"O[{self.subgroup!r}]"


def natural_ring(G: OAGroup) -> ValuationRing:
    return ValuationRing(G.trivial)


def in_ring(x: HahnSeries, O: ValuationRing) -> bool:
    """Membership in O_H: v(x) >= 0 or v(x) in H.

    If v(x) < 0 lies outside H every element of H is archimedean-smaller
    than v(x), hence bigger; so some h in H is <= v(x) iff v(x) >= 0 or
    v(x) is in H.
    """
    if x.is_zero:
        return True
    v = v_nat(x)
    return v.sign() >= 0 or O.subgroup.contains(v)


def is_unit(x: HahnSeries, O: ValuationRing) -> bool:
    if x.is_zero:
        return False
    return O.subgroup.contains(v_nat(x))


def residue(x: HahnSeries) -> Fraction:
    if x.is_zero:
        return Fraction(0)
    if v_nat(x).sign() < 0:
        raise NegativeValuation("residue needs v(x) >= 0")
    zero = x.group.zero()
    if x.prec is not None and not zero < x.prec:
        raise Indeterminate("constant coefficient not known")
    for e, c in x.terms:
        if e == zero:
            return c
    return Fraction(0)


def convex_rings(G: OAGroup) -> list[ValuationRing]:
    """The convex non-trivial valuation rings O_H, increasing."""
    return [ValuationRing(H) for H in G.convex_subgroups() if H.is_proper]


def series_to_dsl(x: HahnSeries) -> str:
    from .oag import element_to_dsl
    parts = []
    for e, c in x.terms:
        mono = "" if e.is_zero else f"t^{element_to_dsl(e)}"
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        out = "0"
    else:
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
    if x.prec is not None:
        out += f" + O(t^{element_to_dsl(x.prec)})"
    return out
