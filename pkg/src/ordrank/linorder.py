"""Symbolic linear orders and end segments of finite orders.

Order terms are built from a small grammar::

    Fin(n)                      n-element chain, Fin(0) is the empty order
    Rationals()                 the order type of Q
    Inv(t)                      t with the order reversed
    Sum(t1, ..., tn)            ordered sum, left to right
    OmegaSum(prefix, period)    omega-indexed sum of the blocks
                                prefix[0], prefix[1], ..., then period repeated

``omega()``, ``omega_star()`` and ``zsum(b)`` are derived forms.  All terms
are immutable and hashable, which lets the EF engine memoize on them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union


class NotFinite(ValueError):
    """Raised when a finite order is required but the term is infinite."""


class OrderTerm:
    __slots__ = ()

    def __add__(self, other: "OrderTerm") -> "Sum":
        return Sum(self, other)


@dataclass(frozen=True)
class Fin(OrderTerm):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("Fin(n) needs n >= 0")


@dataclass(frozen=True)
class Rationals(OrderTerm):
    pass


@dataclass(frozen=True)
class Inv(OrderTerm):
    t: OrderTerm


@dataclass(frozen=True, init=False)
class Sum(OrderTerm):
    parts: tuple

    def __init__(self, *parts: OrderTerm):
        if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
            parts = tuple(parts[0])
        object.__setattr__(self, "parts", tuple(parts))

    @property
    def left(self) -> OrderTerm:
        return self.parts[0] if len(self.parts) == 1 else Sum(*self.parts[:-1])

    @property
    def right(self) -> OrderTerm:
        return self.parts[-1]


@dataclass(frozen=True)
class OmegaSum(OrderTerm):
    prefix: tuple
    period: tuple

    def __init__(self, prefix: Iterable[OrderTerm], period: Iterable[OrderTerm]):
        prefix, period = tuple(prefix), tuple(period)
        if not period:
            raise ValueError("OmegaSum period must be nonempty")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def block(self, i: int) -> OrderTerm:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def tail_index(self, i: int) -> int:
        """Canonical index of the tail starting at block ``i``."""
        lp = len(self.prefix)
        if i < lp:
            return i
        return lp + (i - lp) % len(self.period)

    def tail(self, i: int) -> "OmegaSum":
        """The omega-sum of blocks i, i+1, ...; tails with equal index are equal."""
        j = self.tail_index(i)
        lp = len(self.prefix)
        if j < lp:
            return OmegaSum(self.prefix[j:], self.period)
        r = j - lp
        return OmegaSum((), self.period[r:] + self.period[:r])


def omega() -> OmegaSum:
    return OmegaSum((), (Fin(1),))


def omega_star() -> Inv:
    return Inv(omega())


def zsum(block: OrderTerm) -> Sum:
    """Z-indexed sum of copies of ``block``: ... + block + block + ..."""
    return Sum(Inv(OmegaSum((), (Inv(block),))), OmegaSum((), (block,)))


def gamma_seq(prefix: Sequence[int], period: Sequence[int]) -> OmegaSum:
    """The order sum_{k in omega} (Q + a_k + 2) for an ultimately periodic a."""
    blk = lambda a: Sum(Rationals(), Fin(a + 2))
    return OmegaSum([blk(a) for a in prefix], [blk(a) for a in period])


# -- normalization ---------------------------------------------------------

def normalize(t: OrderTerm) -> OrderTerm:
    """Canonical representative of ``t`` up to the rewrite rules below.

    Rules: Inv is pushed down to omega-sums (Inv(Inv t) = t, Inv of a sum is
    the reversed sum of inverses, Fin and Q are self-dual); sums are flattened,
    Fin(0) summands dropped and adjacent Fin summands merged; omega-sum blocks
    are flattened into the period, the period is reduced to its primitive
    root, prefix blocks are rotated into the period where possible and the
    prefix is pulled out into an enclosing sum.
    """
    if isinstance(t, (Fin, Rationals)):
        return t
    if isinstance(t, Inv):
        return _invert(normalize(t.t))
    if isinstance(t, Sum):
        return _make_sum([normalize(p) for p in t.parts])
    if isinstance(t, OmegaSum):
        return _make_sum([normalize(p) for p in t.prefix] + [_omega_core(t.period)])
    raise TypeError(f"not an order term: {t!r}")


def _atoms(t: OrderTerm) -> list:
    return list(t.parts) if isinstance(t, Sum) else ([] if t == Fin(0) else [t])


def _merge_fins(items: list) -> list:
    out: list = []
    for x in items:
        if isinstance(x, Fin):
            if x.n == 0:
                continue
            if out and isinstance(out[-1], Fin):
                out[-1] = Fin(out[-1].n + x.n)
                continue
        out.append(x)
    return out


def _make_sum(parts: list) -> OrderTerm:
    flat: list = []
    for p in parts:
        flat.extend(_atoms(p))
    flat = _merge_fins(flat)
    # rotate summands sitting just before an omega-sum into its period
    changed = True
    while changed:
        changed = False
        for i in range(1, len(flat)):
            w = flat[i]
            if not (isinstance(w, OmegaSum) and not w.prefix):
                continue
            prev, last = flat[i - 1], w.period[-1]
            if prev == last:
                flat[i - 1:i + 1] = [OmegaSum((), (last,) + w.period[:-1])]
                changed = True
                break
            if isinstance(prev, Fin) and w.period == (Fin(1),):
                del flat[i - 1]
                changed = True
                break
            if isinstance(prev, Fin) and isinstance(last, Fin) and prev.n > last.n:
                flat[i - 1] = Fin(prev.n - last.n)
                flat[i] = OmegaSum((), (last,) + w.period[:-1])
                changed = True
                break
        if changed:
            redone: list = []
            for x in flat:
                redone.extend(_atoms(_omega_canon(x)) if isinstance(x, OmegaSum) else [x])
            flat = _merge_fins(redone)
    if not flat:
        return Fin(0)
    if len(flat) == 1:
        return flat[0]
    return Sum(*flat)


def _omega_core(period) -> OrderTerm:
    blocks: list = []
    for b in period:
        blocks.extend(_atoms(normalize(b)))
    blocks = _merge_fins(blocks)
    if not blocks:
        return Fin(0)
    return _omega_canon(OmegaSum((), blocks))


def _omega_canon(w: OmegaSum) -> OrderTerm:
    blocks = list(w.period)
    if all(isinstance(b, Fin) for b in blocks):
        return OmegaSum((), (Fin(1),))
    # a Fin block at both ends of the period: fold the head into the tail
    if len(blocks) > 1 and isinstance(blocks[0], Fin) and isinstance(blocks[-1], Fin):
        head = blocks.pop(0)
        blocks[-1] = Fin(blocks[-1].n + head.n)
        return _make_sum([head, OmegaSum((), _primitive(blocks))])
    return OmegaSum((), _primitive(blocks))


def _primitive(blocks: list) -> tuple:
    n = len(blocks)
    for d in range(1, n + 1):
        if n % d == 0 and blocks == blocks[:d] * (n // d):
            return tuple(blocks[:d])
    return tuple(blocks)


def _invert(t: OrderTerm) -> OrderTerm:
    if isinstance(t, (Fin, Rationals)):
        return t
    if isinstance(t, Inv):
        return t.t
    if isinstance(t, Sum):
        return _make_sum([_invert(p) for p in reversed(t.parts)])
    return Inv(t)


# -- finite orders and end segments ----------------------------------------

def is_finite(t: OrderTerm) -> bool:
    return isinstance(normalize(t), Fin)


def enumerate_finite(t: OrderTerm) -> list[int]:
    nt = normalize(t)
    if not isinstance(nt, Fin):
        raise NotFinite(f"{to_dsl(t)} is not a finite order")
    return list(range(nt.n))


@dataclass(frozen=True)
class EndSegment:
    """Upward-closed subset of a finite order, compared by inclusion."""
    elements: frozenset

    def __le__(self, other: "EndSegment") -> bool:
        return self.elements <= other.elements

    def __lt__(self, other: "EndSegment") -> bool:
        return self.elements < other.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __repr__(self) -> str:
        return "{" + ", ".join(map(str, sorted(self.elements))) + "}" if self.elements else "∅"


@dataclass(frozen=True)
class MiddleCut:
    """The distinguished end segment of ``left + right``: all of ``right``."""
    left: OrderTerm
    right: OrderTerm


RankOrder = list  # list[EndSegment], strictly increasing under inclusion
FiniteLike = Union[OrderTerm, Sequence]


def _elements(order: FiniteLike) -> list:
    if isinstance(order, OrderTerm):
        return enumerate_finite(order)
    return list(order)


def end_segments(order: FiniteLike) -> list[EndSegment]:
    """All end segments (including the empty one and the whole order)."""
    xs = _elements(order)
    return [EndSegment(frozenset(xs[i:])) for i in range(len(xs), -1, -1)]


def is_end_segment(order: FiniteLike, s: Iterable) -> bool:
    xs = _elements(order)
    s = set(s)
    pos = {x: i for i, x in enumerate(xs)}
    return all(y in s for x in s for y in xs[pos[x]:])


def rank(order: FiniteLike) -> RankOrder:
    """Proper end segments of a finite order, ordered by inclusion.

    >>> rank(Fin(3))
    [∅, {2}, {1, 2}]
    """
    return end_segments(order)[:-1]


def segment_formula(order: FiniteLike, seg: EndSegment) -> tuple[str, object]:
    """A defining formula ``(text, parameter)`` for a proper end segment."""
    xs = _elements(order)
    if not seg.elements:
        return ("x != x", None)
    first = min(seg.elements, key=xs.index)
    return ("x >= c", first)


def _satisfies(order: list, formula: str, param, x) -> bool:
    if formula == "x != x":
        return False
    return order.index(x) >= order.index(param)


def drk_finite(order: FiniteLike) -> RankOrder:
    """Proper end segments definable with parameters.

    In a finite order each nonempty proper end segment is cut out by
    ``x >= c`` for its least element and the empty one by ``x != x``; every
    candidate is kept only after its formula is evaluated back on the order.
    """
    xs = _elements(order)
    out = []
    for seg in rank(xs):
        formula, c = segment_formula(xs, seg)
        if {x for x in xs if _satisfies(xs, formula, c, x)} == seg.elements:
            out.append(seg)
    return out


def is_chain(c: Sequence[EndSegment]) -> bool:
    return all(a < b for a, b in zip(c, c[1:]))


def check_no_dense_part(c: Sequence) -> bool:
    """For every a < b in the chain ``c`` (given in increasing order) look for
    some d in [a, b) with an immediate successor in ``c`` and some d' in
    (a, b] with an immediate predecessor."""
    c = list(c)
    if not is_chain(c):
        raise ValueError("expected a strictly increasing chain")
    n = len(c)
    has_succ = [i + 1 < n for i in range(n)]
    has_pred = [i > 0 for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if not any(has_succ[d] for d in range(i, j)):
                return False
            if not any(has_pred[d] for d in range(i + 1, j + 1)):
                return False
    return True


# -- text syntax -------------------------------------------------------------

def to_dsl(t: OrderTerm) -> str:
    if isinstance(t, Fin):
        return f"fin({t.n})"
    if isinstance(t, Rationals):
        return "Q"
    if isinstance(t, OmegaSum):
        if t == omega():
            return "w"
        pre = ", ".join(to_dsl(b) for b in t.prefix)
        per = ", ".join(to_dsl(b) for b in t.period)
        return f"wsum({pre}; {per})" if pre else f"wsum(; {per})"
    if isinstance(t, Inv):
        if t.t == omega():
            return "w*"
        return f"inv({to_dsl(t.t)})"
    if isinstance(t, Sum):
        if not t.parts:
            return "()"
        return " + ".join(f"({to_dsl(p)})" if isinstance(p, Sum) else to_dsl(p) for p in t.parts)
    raise TypeError(t)
