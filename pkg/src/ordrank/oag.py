"""Lexicographic sums of subgroups of Q over a finite index order.

``OAGroup((Z, Z_loc(2), Q))`` is the group of vectors (g_0, g_1, g_2) with
g_i in the i-th component, ordered lexicographically: the first nonzero
coordinate decides the sign.  Position 0 therefore carries the largest
archimedean class, and the convex subgroups are exactly the sums over the
end segments {s, s+1, ..., m-1} of the index order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .linorder import EndSegment, Fin


class GroupMismatch(ValueError):
    pass


class ZeroElement(ValueError):
    pass


class ImproperSubgroup(ValueError):
    pass


def prime_factors(n: int) -> set[int]:
    n, p, out = abs(n), 2, set()
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def padic_val(x: Union[int, Fraction], p: int) -> float:
    x = Fraction(x)
    if x == 0:
        return float("inf")
    v, a, b = 0, x.numerator, x.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


@dataclass(frozen=True)
class BaseGroup:
    """Z_S = {a/b in Q : every prime of b lies in S}.

    ``primes`` lists S itself when ``cofinite`` is false and the primes
    missing from S when it is true; so Z has no primes, Q is cofinite with no
    exceptions and the localization Z_(p) is cofinite with exception p.
    """
    primes: frozenset = frozenset()
    cofinite: bool = False

    def allows(self, p: int) -> bool:
        return (p in self.primes) != self.cofinite

    def contains(self, x) -> bool:
        return all(self.allows(p) for p in prime_factors(Fraction(x).denominator))

    def is_divisible(self, n: int) -> bool:
        return all(self.allows(p) for p in prime_factors(n))

    @property
    def discrete(self) -> bool:
        """Z_S has a least positive element iff S is empty."""
        return not self.cofinite and not self.primes

    def in_multiple(self, x, n: int) -> bool:
        """Whether x lies in n * Z_S."""
        return self.contains(Fraction(x) / n)

    def quotient_order(self, n: int) -> int:
        """|Z_S / n Z_S|: the primes of n outside S survive."""
        out = 1
        for p in prime_factors(n):
            if not self.allows(p):
                out *= p ** int(padic_val(n, p))
        return out

    def __str__(self) -> str:
        if not self.cofinite:
            if not self.primes:
                return "Z"
            return "Z[" + ",".join(f"1/{p}" for p in sorted(self.primes)) + "]"
        if not self.primes:
            return "Q"
        if len(self.primes) == 1:
            return f"Z_({next(iter(self.primes))})"
        return "Z_(" + ",".join(map(str, sorted(self.primes))) + ")"


Z = BaseGroup()
Q = BaseGroup(cofinite=True)


def Z_loc(*ps: int) -> BaseGroup:
    """Localization of Z at the primes ``ps``: denominators avoid ``ps``."""
    return BaseGroup(frozenset(ps), True)


def Z_inv(*ps: int) -> BaseGroup:
    """Z[1/p, ...]: only the primes ``ps`` may appear in denominators."""
    return BaseGroup(frozenset(ps), False)


@dataclass(frozen=True)
class OAGroup:
    components: tuple

    def __init__(self, components: Iterable[BaseGroup]):
        object.__setattr__(self, "components", tuple(components))

    @classmethod
    def power(cls, base: BaseGroup, m: int) -> "OAGroup":
        return cls([base] * m)

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def index(self) -> Fin:
        return Fin(self.size)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (Fraction(0),) * self.size)

    def element(self, values: Union[Sequence, Mapping]) -> "GroupElement":
        if isinstance(values, Mapping):
            coords = [Fraction(0)] * self.size
            for i, v in values.items():
                if not 0 <= i < self.size:
                    raise IndexError(f"position {i} outside the index order")
                coords[i] = Fraction(v)
        else:
            coords = [Fraction(v) for v in values]
            if len(coords) != self.size:
                raise ValueError("wrong number of coordinates")
        for c, b in zip(coords, self.components):
            if not b.contains(c):
                raise ValueError(f"{c} is not in {b}")
        return GroupElement(self, tuple(coords))

    def unit(self, i: int, value=1) -> "GroupElement":
        return self.element({i: value})

    def subgroup(self, start: int) -> "ConvexSubgroup":
        return ConvexSubgroup(self, start)

    @property
    def trivial(self) -> "ConvexSubgroup":
        return ConvexSubgroup(self, self.size)

    @property
    def whole(self) -> "ConvexSubgroup":
        return ConvexSubgroup(self, 0)

    def convex_subgroups(self) -> list["ConvexSubgroup"]:
        """All convex subgroups, {0} first, G last."""
        return [ConvexSubgroup(self, s) for s in range(self.size, -1, -1)]

    def __str__(self) -> str:
        return f"sum over fin({self.size}) of [" + ", ".join(map(str, self.components)) + "]"


@dataclass(frozen=True)
class GroupElement:
    group: OAGroup
    coords: tuple

    @property
    def support(self) -> tuple:
        return tuple(i for i, c in enumerate(self.coords) if c)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def leading_index(self) -> int:
        for i, c in enumerate(self.coords):
            if c:
                return i
        raise ZeroElement("0 has no leading index")

    def _same(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupMismatch("elements of different groups")

    def __add__(self, other):
        self._same(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return GroupElement(self.group, tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def sign(self) -> int:
        for c in self.coords:
            if c:
                return 1 if c > 0 else -1
        return 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return compare(self, other) == "<"

    def __le__(self, other):
        return compare(self, other) != ">"

    def __gt__(self, other):
        return compare(self, other) == ">"

    def __ge__(self, other):
        return compare(self, other) != "<"

    def __repr__(self) -> str:
        return element_to_dsl(self)


def element_to_dsl(g: GroupElement) -> str:
    return "{" + ", ".join(f"{i}: {g.coords[i]}" for i in g.support) + "}"


@dataclass(frozen=True)
class ConvexSubgroup:
    """Sum of the components at positions >= ``start``."""
    group: OAGroup
    start: int

    def __post_init__(self):
        if not 0 <= self.start <= self.group.size:
            raise ValueError("start outside the index order")

    @property
    def segment(self) -> EndSegment:
        return EndSegment(frozenset(range(self.start, self.group.size)))

    @property
    def is_proper(self) -> bool:
        return self.start > 0

    @property
    def is_trivial(self) -> bool:
        return self.start == self.group.size

    def contains(self, g: GroupElement) -> bool:
        if g.group != self.group:
            raise GroupMismatch("element from another group")
        return all(i >= self.start for i in g.support)

    __contains__ = contains

    def __le__(self, other: "ConvexSubgroup") -> bool:
        return self.start >= other.start

    def __lt__(self, other: "ConvexSubgroup") -> bool:
        return self.start > other.start

    def __repr__(self) -> str:
        if self.is_trivial:
            return "{0}"
        return "Σ" + repr(self.segment)


def add(g: GroupElement, h: GroupElement) -> GroupElement:
    return g + h


def negate(g: GroupElement) -> GroupElement:
    return -g


def scalar_mul(n: int, g: GroupElement) -> GroupElement:
    return n * g


def compare(g: GroupElement, h: GroupElement) -> str:
    g._same(h)
    for a, b in zip(g.coords, h.coords):
        if a != b:
            return ">" if a > b else "<"
    return "="


def arch_class(g: GroupElement) -> ConvexSubgroup:
    """A(g), the largest convex subgroup not containing g."""
    if g.is_zero:
        raise ZeroElement("A(0) is undefined")
    return ConvexSubgroup(g.group, g.leading_index + 1)


def smallest_convex(g: GroupElement) -> ConvexSubgroup:
    """B(g), the smallest convex subgroup containing g."""
    if g.is_zero:
        return g.group.trivial
    return ConvexSubgroup(g.group, g.leading_index)


def same_arch_class(g: GroupElement, h: GroupElement, bound: int = 1000) -> bool:
    """|g| < n|h| and |h| < n|g| for some n <= bound (the definition, searched)."""
    if g.is_zero or h.is_zero:
        return g.is_zero and h.is_zero
    ag, ah = abs(g), abs(h)
    return any(ag < n * ah and ah < n * ag for n in range(1, bound + 1))


def arch_spine(G: OAGroup) -> list[ConvexSubgroup]:
    """The archimedean classes in increasing class order.

    A class is represented by A(g).  Smaller |g| means a larger class, so the
    class of position i precedes the class of position j iff i < j, and the
    list is the identification i -> sum over positions > i.
    """
    return [ConvexSubgroup(G, i + 1) for i in range(G.size)]


def rank(G: OAGroup) -> list[ConvexSubgroup]:
    """Proper convex subgroups, increasing under inclusion."""
    return [C for C in G.convex_subgroups() if C.is_proper]


def quotient_discrete(G: OAGroup, H: ConvexSubgroup) -> bool:
    """Whether G/H has a least positive element."""
    if not H.is_proper:
        raise ImproperSubgroup("G/G is trivial")
    return G.components[H.start - 1].discrete


def quotient_min_positive(G: OAGroup, H: ConvexSubgroup) -> Optional[GroupElement]:
    """Representative of the least positive element of G/H, if any."""
    return G.unit(H.start - 1) if quotient_discrete(G, H) else None


def in_nG(g: GroupElement, n: int) -> bool:
    return all(b.in_multiple(c, n) for b, c in zip(g.group.components, g.coords))


def convex_ndivisible_part(G: OAGroup, n: int) -> ConvexSubgroup:
    """Largest proper convex subgroup all of whose elements are n-divisible."""
    best = G.trivial
    for C in rank(G):
        if all(G.components[i].is_divisible(n) for i in range(C.start, G.size)):
            best = C
    return best


def check_divisibility_density(G: OAGroup, n: int) -> bool:
    """Decide  forall g != 0 exists h (|h| <= |g| and h not in nG).

    For g with leading index i every h with |h| <= |g| lies in the convex
    subgroup B(g) = sum over positions >= i.  If some position j >= i has a
    component that is not n-divisible, a witness exists (see
    ``density_witness``); otherwise B(g) is n-divisible and none does.  As
    the positions >= i shrink with i, the sentence holds iff the last
    component is not n-divisible (vacuously for the empty index).
    """
    if G.size == 0:
        return True
    return not G.components[-1].is_divisible(n)


def _small_nondivisible(b: BaseGroup, n: int, below: Fraction) -> Fraction:
    """A positive x in b with x not in n*b and x <= below."""
    bad = next(p for p in sorted(prime_factors(n)) if not b.allows(p))
    if b.discrete:
        return Fraction(1)
    q = 2
    while q == bad or not b.allows(q):
        q += 1
    x = Fraction(1, q)
    while x > below:
        x /= q
    return x


def density_witness(g: GroupElement, n: int) -> GroupElement:
    """An h with |h| <= |g| and h not in nG, when the sentence provides one.

    Certificate schema: take the first position j >= lead(g) whose component
    is not n-divisible.  If j > lead(g) any non-divisible h supported at j is
    infinitesimal against g.  If j = lead(g) use g itself when g is not
    n-divisible, otherwise a non-divisible value of size at most |g_j| (for Z
    this is 1, adjusted below g's tail when needed).
    """
    G = g.group
    if g.is_zero:
        raise ZeroElement("the sentence only concerns g != 0")
    if not in_nG(g, n):
        return g
    i = g.leading_index
    js = [j for j in range(i, G.size) if not G.components[j].is_divisible(n)]
    if not js:
        raise ValueError("no witness: the tail of G is n-divisible")
    j = js[0]
    if j > i:
        return G.unit(j, _small_nondivisible(G.components[j], n, Fraction(1)))
    # j == lead(g) and g in nG: |g_j| is a nonzero multiple, so a smaller
    # non-divisible value exists in that component
    return G.unit(j, _small_nondivisible(G.components[j], n, abs(g.coords[j])))


def all_groups(max_size: int, bases: Sequence[BaseGroup]) -> list[OAGroup]:
    """Every OAGroup with 1..max_size positions and components from bases."""
    from itertools import product
    return [OAGroup(c) for m in range(1, max_size + 1) for c in product(bases, repeat=m)]


CATALOG_BASES = (Z, Q, Z_loc(2), Z_loc(3))
