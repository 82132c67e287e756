"""Gurevich-Schmitt spines of finite lexicographic sums.

All the convex subgroups involved are sums over end segments of the index
order, so every operation reduces to scanning the finite chain of convex
subgroups and asking divisibility questions about single components.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .oag import (
    BaseGroup, ConvexSubgroup, GroupElement, OAGroup, arch_class, in_nG,
    padic_val, prime_factors, quotient_discrete, smallest_convex,
)


class DivisibleElement(ValueError):
    pass


class _EmptyType:
    """The value A_n(0) and F_n(g) for n-divisible g: not a subgroup.

    It sits strictly below every convex subgroup.
    """
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Empty"

    def __bool__(self):
        return False


Empty = _EmptyType()
SpineValue = Union[ConvexSubgroup, _EmptyType]


def subset(a: SpineValue, b: SpineValue) -> bool:
    if a is Empty:
        return True
    if b is Empty:
        return False
    return a <= b


def proper_subset(a: SpineValue, b: SpineValue) -> bool:
    return subset(a, b) and a != b


# -- finite abelian groups -------------------------------------------------

@dataclass(frozen=True)
class FiniteAbelianPresentation:
    """Direct sum of cyclic groups, stored as sorted elementary divisors.

    ``0`` stands for an infinite cyclic (torsion-free) summand.
    """
    factors: tuple

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FiniteAbelianPresentation":
        out = []
        for m in orders:
            if m == 0:
                out.append(0)
                continue
            for p in prime_factors(m):
                out.append(p ** int(padic_val(m, p)))
        return cls(tuple(sorted(out)))

    @property
    def order(self) -> Union[int, float]:
        if 0 in self.factors:
            return float("inf")
        n = 1
        for f in self.factors:
            n *= f
        return n

    @property
    def invariant_factors(self) -> tuple:
        """d_1 | d_2 | ... | d_r, torsion-free rank appended as zeros."""
        by_p: dict = {}
        for f in self.factors:
            if f:
                by_p.setdefault(min(prime_factors(f)), []).append(f)
        r = max((len(v) for v in by_p.values()), default=0)
        inv = [1] * r
        for p, fs in by_p.items():
            fs = sorted(fs)
            for i, f in enumerate(fs):
                inv[r - len(fs) + i] *= f
        return tuple(inv) + tuple(0 for f in self.factors if f == 0)

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " + ".join("Z" if f == 0 else f"Z/{f}" for f in self.factors)


def szmielew_alpha(H: FiniteAbelianPresentation, p: int, k: int) -> int:
    """dim over F_p of (p^k H)[p] / (p^(k+1) H)[p].

    A summand Z/p^e contributes exactly when e = k + 1; torsion-free summands
    and other primes contribute nothing.
    """
    return sum(1 for f in H.factors if f and f == p ** (k + 1))


# -- regularity and the A_n / F_n maps -------------------------------------

def is_n_regular(G: Union[OAGroup, Sequence[BaseGroup]], n: int) -> bool:
    """Every quotient by a nonzero convex subgroup is n-divisible.

    For a lexicographic sum the nonzero convex subgroups are the tails, so
    this asks for every component except the last to be n-divisible.
    """
    if n < 2:
        raise ValueError("n >= 2")
    comps = G.components if isinstance(G, OAGroup) else tuple(G)
    for s in range(1, len(comps)):
        if not all(b.is_divisible(n) for b in comps[:s]):
            return False
    return True


def A_n(g: GroupElement, n: int) -> SpineValue:
    """Intersection of the C inside A(g) with B(g)/C n-regular."""
    if g.is_zero:
        return Empty
    G = g.group
    A, B = arch_class(g), smallest_convex(g)
    best = A
    for C in G.convex_subgroups():
        if C <= A and is_n_regular(G.components[B.start:C.start], n):
            if C < best:
                best = C
    return best


def F_n(g: GroupElement, n: int) -> SpineValue:
    """Largest convex C with C and g + nG disjoint; Empty if g is in nG.

    g + nG meets the tail starting at s iff every coordinate before s is
    n-divisible in its component.
    """
    if in_nG(g, n):
        return Empty
    G = g.group
    best = None
    for C in G.convex_subgroups():
        meets = all(G.components[j].in_multiple(g.coords[j], n) for j in range(C.start))
        if not meets and (best is None or best < C):
            best = C
    return best


def fundament_index(g: GroupElement, n: int) -> int:
    """The least position where g is not n-divisible."""
    for j, (b, c) in enumerate(zip(g.group.components, g.coords)):
        if not b.in_multiple(c, n):
            return j
    raise DivisibleElement(f"{g} is in {n}G")


def in_E(h: GroupElement, g: GroupElement, n: int) -> bool:
    return subset(F_n(h, n), F_n(g, n))


def in_E_star(h: GroupElement, g: GroupElement, n: int) -> bool:
    return proper_subset(F_n(h, n), F_n(g, n))


def E_chain(g: GroupElement, n: int):
    """Membership predicates for E_n(g) and E_n*(g)."""
    if in_nG(g, n):
        raise DivisibleElement(f"{g} is in {n}G")
    return (lambda h: in_E(h, g, n)), (lambda h: in_E_star(h, g, n))


def F_star(g: GroupElement, n: int) -> FiniteAbelianPresentation:
    """E_n(g)/E_n*(g).

    Reading off the coordinate at the fundament index i0 identifies the
    quotient with G_{i0} / n G_{i0}, a cyclic group whose order keeps the
    prime powers of n whose primes are not inverted in G_{i0}.
    """
    i0 = fundament_index(g, n)
    return FiniteAbelianPresentation.from_orders([g.group.components[i0].quotient_order(n)])


# -- representatives and spines --------------------------------------------

def representatives(G: OAGroup, n: int) -> list[GroupElement]:
    """One element per (support pattern, divisibility class mod n) choice.

    Each coordinate takes 0, n (nonzero and n-divisible) or 1 when the
    component is not n-divisible.  A_n, F_n, the D colour and F_n* depend on
    nothing else.
    """
    choices = []
    for b in G.components:
        c = [Fraction(0), Fraction(n)]
        if not b.is_divisible(n):
            c.append(Fraction(1))
        choices.append(c)
    return [GroupElement(G, tuple(v)) for v in itertools.product(*choices)]


def alpha_keys(n: int) -> list[tuple[int, int]]:
    """(p, k) with p | n and 0 <= k < v_p(n), i.e. p^(k+1) | n."""
    return [(p, k) for p in sorted(prime_factors(n)) for k in range(int(padic_val(n, p)))]


@dataclass(frozen=True)
class SpinePoint:
    subgroup: ConvexSubgroup
    isA: bool
    isF: bool
    isD: bool
    alpha: tuple = ()   # sorted ((p, k), value) pairs; empty for non-F points

    def colours(self) -> tuple:
        return (self.isA, self.isF, self.isD, self.alpha)


@dataclass(frozen=True)
class Spine:
    n: int
    points: tuple

    def __len__(self):
        return len(self.points)

    def constant_colours(self) -> bool:
        return len({p.colours() for p in self.points}) <= 1

    def as_rows(self) -> list[dict]:
        return [{
            "point": repr(p.subgroup),
            "A": p.isA, "F": p.isF, "D": p.isD,
            "alpha": {f"{pk[0]},{pk[1]}": v for pk, v in p.alpha},
        } for p in self.points]


def build_spine(G: OAGroup, n: int) -> Spine:
    if n < 2:
        raise ValueError("n >= 2")
    a_pts, f_pts, f_alpha = set(), set(), {}
    for g in representatives(G, n):
        if not g.is_zero:
            a_pts.add(A_n(g, n))
        if not in_nG(g, n):
            F = F_n(g, n)
            f_pts.add(F)
            H = F_star(g, n)
            f_alpha[F] = tuple(((p, k), szmielew_alpha(H, p, k)) for p, k in alpha_keys(n))
    pts = sorted(a_pts | f_pts, key=lambda C: -C.start)
    return Spine(n, tuple(
        SpinePoint(C, C in a_pts, C in f_pts, quotient_discrete(G, C), f_alpha.get(C, ()))
        for C in pts))


# -- the L3 predicates -----------------------------------------------------

def pred_M(g: GroupElement, n: int, k: int) -> bool:
    """G/A_n(g) is discrete and g + A_n(g) is k times its least positive element."""
    A = A_n(g, n)
    if A is Empty or not quotient_discrete(g.group, A):
        return False
    t = A.start - 1
    return all(c == 0 for c in g.coords[:t]) and g.coords[t] == k


def pred_D(g: GroupElement, p: int, r: int, i: int) -> bool:
    """g is p^r-divisible, or its image in F*_{p^r}(g) is p^i-divisible.

    The image is g_{i0} mod p^r G_{i0}, which is p^i-divisible in the quotient
    iff g_{i0} lies in p^i G_{i0} + p^r G_{i0} = p^min(i,r) G_{i0}.
    """
    n = p ** r
    if in_nG(g, n):
        return True
    if i <= 0:
        return True
    i0 = fundament_index(g, n)
    return g.group.components[i0].in_multiple(g.coords[i0], p ** min(i, r))


def pred_E(g: GroupElement, p: int, r: int, k: int) -> Optional[GroupElement]:
    """Search for the h required by E_{p,r,k}; returns it, or None.

    The conditions on h only involve h's coordinates up to the fundament
    index of g: A_{p^r}(h) = F_{p^r}(g) fixes h's leading index, and h being
    the least positive element modulo that subgroup fixes the leading
    coordinate to 1 in a copy of Z.  Representatives cover every such
    pattern, so the search is complete.
    """
    n = p ** r
    G = g.group
    Fg = F_n(g, n)
    if Fg is Empty:
        return None
    for h in representatives(G, n):
        if h.is_zero:
            continue
        Ah = A_n(h, n)
        if Ah != Fg or not quotient_discrete(G, Ah):
            continue
        t = Ah.start - 1
        if any(h.coords[:t]) or h.coords[t] != 1:
            continue
        if proper_subset(F_n(g - k * h, n), Fg):
            return h
    return None
