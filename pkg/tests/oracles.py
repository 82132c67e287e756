"""Brute-force reference computations shared by the tests.

Nothing here calls the package's symbolic shortcuts; groups are handled as
explicit finite sets or bounded grids of coordinates.
"""
import itertools
from fractions import Fraction
from functools import lru_cache

from ordrank.oag import GroupElement, OAGroup


def _prime_powers(n):
    out, p = [], 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _partitions(e, largest=None):
    largest = e if largest is None else largest
    if e == 0:
        yield ()
        return
    for first in range(min(e, largest), 0, -1):
        for rest in _partitions(e - first, first):
            yield (first,) + rest


def abelian_groups_upto(limit):
    """Every finite abelian group of order <= limit, as cyclic factor orders."""
    out = []
    for n in range(1, limit + 1):
        per_prime = [[tuple(p ** a for a in part) for part in _partitions(e)]
                     for p, e in _prime_powers(n)]
        for choice in itertools.product(*per_prime):
            out.append(tuple(x for part in choice for x in part))
    return out


def explicit_group_elements(orders):
    return list(itertools.product(*(range(o) for o in orders)))


def alpha_brute(orders, elems, p, k):
    """log_p of |(p^k H)[p]| / |(p^(k+1) H)[p]| by enumeration."""
    def times(c, x):
        return tuple(c * xi % o for xi, o in zip(x, orders))

    def torsion_of_image(c):
        image = {times(c, x) for x in elems}
        zero = times(0, elems[0])
        return sum(1 for y in image if times(p, y) == zero)

    a, b = torsion_of_image(p ** k), torsion_of_image(p ** (k + 1))
    assert a % b == 0
    ratio, dim = a // b, 0
    while ratio > 1:
        assert ratio % p == 0
        ratio //= p
        dim += 1
    return dim


@lru_cache(maxsize=None)
def _denominator_ok(base, d):
    for q in range(2, d + 1):
        if d % q == 0 and all(q % r for r in range(2, q)) and not base.allows(q):
            return False
    return True


def in_component(base, x):
    return _denominator_ok(base, Fraction(x).denominator)


@lru_cache(maxsize=None)
def divisible_in_component(base, x, n):
    return in_component(base, Fraction(x) / n)


def element_in_nG(g, n):
    return all(divisible_in_component(b, c, n) for b, c in zip(g.group.components, g.coords))


G_VALUES = [Fraction(v) for v in ("1", "2", "6", "1/2", "1/3", "1/5", "4/5", "12/7")]
H_VALUES = sorted({Fraction(a, b) for a in range(1, 21) for b in range(1, 21)})


def small_support_elements(G, values, max_support=2, signs=True):
    vals = [v for v in values] + ([-v for v in values] if signs else [])
    for s in range(1, max_support + 1):
        for pos in itertools.combinations(range(G.size), s):
            choices = [[v for v in vals if in_component(G.components[i], v)] for i in pos]
            for vs in itertools.product(*choices):
                coords = [Fraction(0)] * G.size
                for i, v in zip(pos, vs):
                    coords[i] = v
                yield GroupElement(G, tuple(coords))


def density_brute(G: OAGroup, ns) -> dict:
    """Bounded search for: every g != 0 has some h with |h| <= |g|, h not in nG.

    g ranges over elements of support <= 2 built from G_VALUES, h over
    positive monomials a/b * e_i with 1 <= a, b <= 20.  Returns {n: verdict}.
    """
    sizes = sorted({abs(g) for g in small_support_elements(G, G_VALUES)}, key=lambda g: g.coords)
    monomials = list(small_support_elements(G, H_VALUES, 1, signs=False))
    out = {}
    for n in ns:
        smallest = min((h for h in monomials if not element_in_nG(h, n)), default=None)
        out[n] = all(smallest is not None and not smallest > g for g in sizes)
    return out


def grid_values(base, nums=range(-6, 7), dens=(1, 2, 3, 6)):
    return sorted({Fraction(a, d) for a in nums for d in dens if in_component(base, Fraction(a, d))})


def grid(G, **kw):
    return [GroupElement(G, c) for c in itertools.product(*(grid_values(b, **kw) for b in G.components))]


def regular_by_intervals(G, n):
    """Look for an interval with >= n grid points and no n-divisible grid point."""
    pts = sorted(grid(G), key=lambda g: g.coords)
    div = [element_in_nG(p, n) for p in pts]
    for i in range(len(pts)):
        for j in range(i + n - 1, len(pts)):
            if any(div[i:j + 1]):
                break
            return False
    return True


def coset_meets_tail(g, n, start):
    """Is there y with g + n*y vanishing before start? Coordinatewise y = -g/n is forced."""
    return all(in_component(g.group.components[j], -g.coords[j] / n) for j in range(start))
