"""Rank-k elementary equivalence of linear orders by composition.

A level-k type of a linear order L is an interned integer.  Level 0 has a
single type.  For k >= 1 the type of L is the set of pairs

    (type_{k-1}(L_{<a}), type_{k-1}(L_{>a}))     for a in L,

which is exactly the back-and-forth condition of the (k)-round
Ehrenfeucht-Fraisse game: L and M agree on all sentences of quantifier rank
<= k iff their level-k types coincide.  Types of sums, reversals and
restrictions to lower levels are computed inside this algebra, so the type
of a symbolic term never requires unfolding an infinite order:

* Fin(n) is a power of the one-point type (square-and-multiply);
* Q has the single split (Q, Q) one level down;
* an omega-sum walks its blocks while tracking the state
  (type of the blocks already passed, index of the remaining tail); both
  components range over finite sets, so the walk stops at the first repeated
  state.

Every recursive call strictly lowers the level, so no cycle handling is
needed.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .linorder import Fin, Inv, OmegaSum, OrderTerm, Rationals, Sum, to_dsl

DEFAULT_MAX_RANK = 4


class BoundExceeded(ValueError):
    pass


class SizeExceeded(ValueError):
    pass


@dataclass(frozen=True)
class KProfile:
    """Canonical identifier of the rank-k equivalence class of an order."""
    k: int
    id: int


@dataclass(frozen=True)
class SplitType:
    """Rank-k classes of the two open sides of a point."""
    left: KProfile
    right: KProfile


@dataclass(frozen=True)
class CutVerdict:
    """Outcome of a bounded-rank definability analysis of a cut.

    ``status`` is one of ``"DefinableParamFree"`` (a proof: a formula of the
    stated quantifier rank separates the two sides), ``"NotSeparableUpTo"``
    and ``"CoAugmentEvidence"``; the last two are evidence only.
    """
    status: str
    k: int
    left_types: frozenset = frozenset()
    right_types: frozenset = frozenset()
    witness: Optional[OrderTerm] = None

    @property
    def definable(self) -> bool:
        return self.status == "DefinableParamFree"

    def as_record(self) -> dict:
        rec = {
            "status": self.status,
            "k": self.k,
            "left_split_types": len(self.left_types),
            "right_split_types": len(self.right_types),
            "evidence_only": self.status != "DefinableParamFree",
        }
        if self.witness is not None:
            rec["witness"] = to_dsl(self.witness)
        return rec


class EFEngine:
    """Interning table plus memoized type computations.

    Interning is serialized by a lock; everything else is a pure function of
    interned ids, so concurrent readers see consistent results.
    """

    def __init__(self, max_rank: int = DEFAULT_MAX_RANK):
        self.max_rank = max_rank
        self._lock = threading.Lock()
        self._index: dict = {}
        self._members: list = []
        self._level: list = []
        self._type_memo: dict = {}
        self._compose_memo: dict = {}
        self._down_memo: dict = {}
        self._rev_memo: dict = {}
        self.ZERO = self._intern(0, frozenset())

    # -- algebra of interned types --------------------------------------

    def _intern(self, k: int, members: frozenset) -> int:
        key = (k, members)
        tid = self._index.get(key)
        if tid is None:
            with self._lock:
                tid = self._index.get(key)
                if tid is None:
                    tid = len(self._members)
                    self._members.append(members)
                    self._level.append(k)
                    self._index[key] = tid
        return tid

    def members(self, tid: int) -> frozenset:
        return self._members[tid]

    def level(self, tid: int) -> int:
        return self._level[tid]

    def n_types(self) -> int:
        return len(self._members)

    def empty(self, k: int) -> int:
        return self._intern(k, frozenset())

    def point(self, k: int) -> int:
        if k == 0:
            return self.ZERO
        e = self.empty(k - 1)
        return self._intern(k, frozenset({(e, e)}))

    def down(self, tid: int) -> int:
        """The type one level lower."""
        k = self._level[tid]
        if k == 0:
            raise ValueError("level 0 has no lower level")
        if k == 1:
            return self.ZERO
        res = self._down_memo.get(tid)
        if res is None:
            res = self._intern(k - 1, frozenset((self.down(l), self.down(r)) for l, r in self._members[tid]))
            self._down_memo[tid] = res
        return res

    def restrict(self, tid: int, k: int) -> int:
        while self._level[tid] > k:
            tid = self.down(tid)
        return tid

    def compose(self, a: int, b: int) -> int:
        """Type of an ordered sum from the types of its summands."""
        k = self._level[a]
        if k != self._level[b]:
            raise ValueError("types of different levels")
        if k == 0:
            return self.ZERO
        key = (a, b)
        res = self._compose_memo.get(key)
        if res is None:
            da, db = self.down(a), self.down(b)
            pairs = {(l, self.compose(r, db)) for l, r in self._members[a]}
            pairs.update((self.compose(da, l), r) for l, r in self._members[b])
            res = self._intern(k, frozenset(pairs))
            self._compose_memo[key] = res
        return res

    def reverse(self, tid: int) -> int:
        k = self._level[tid]
        if k == 0:
            return self.ZERO
        res = self._rev_memo.get(tid)
        if res is None:
            res = self._intern(k, frozenset((self.reverse(r), self.reverse(l)) for l, r in self._members[tid]))
            self._rev_memo[tid] = res
        return res

    def power(self, tid: int, n: int) -> int:
        """Type of ``n`` consecutive copies."""
        result = self.empty(self._level[tid]) if self._level[tid] else self.ZERO
        base = tid
        while n:
            if n & 1:
                result = self.compose(result, base)
            n >>= 1
            if n:
                base = self.compose(base, base)
        return result

    # -- types of terms ----------------------------------------------------

    def type_of(self, t: OrderTerm, k: int) -> int:
        key = (t, k)
        res = self._type_memo.get(key)
        if res is None:
            res = self._compute(t, k)
            self._type_memo[key] = res
        return res

    def _compute(self, t: OrderTerm, k: int) -> int:
        if isinstance(t, Fin):
            return self.power(self.point(k), t.n)
        if k == 0:
            return self.ZERO
        if isinstance(t, Rationals):
            q = self.type_of(t, k - 1)
            return self._intern(k, frozenset({(q, q)}))
        if isinstance(t, Inv):
            return self.reverse(self.type_of(t.t, k))
        if isinstance(t, Sum):
            res = self.empty(k)
            for p in t.parts:
                res = self.compose(res, self.type_of(p, k))
            return res
        if isinstance(t, OmegaSum):
            return self._omega_type(t, k)
        raise TypeError(f"not an order term: {t!r}")

    def _omega_type(self, w: OmegaSum, k: int) -> int:
        pairs = set()
        passed = self.empty(k - 1)
        seen = set()
        i = 0
        while True:
            state = (passed, w.tail_index(i))
            if state in seen:
                break
            seen.add(state)
            block = w.block(i)
            rest = self.type_of(w.tail(i + 1), k - 1)
            for l, r in self._members[self.type_of(block, k)]:
                pairs.add((self.compose(passed, l), self.compose(r, rest)))
            passed = self.compose(passed, self.type_of(block, k - 1))
            i += 1
        return self._intern(k, frozenset(pairs))

    # -- public surface ------------------------------------------------------

    def _check(self, k: int) -> None:
        if k < 0:
            raise ValueError("k must be nonnegative")
        if k > self.max_rank:
            raise BoundExceeded(f"k={k} exceeds the configured maximum {self.max_rank}")

    def profile(self, t: OrderTerm, k: int) -> KProfile:
        self._check(k)
        return KProfile(k, self.type_of(t, k))

    def equiv(self, t1: OrderTerm, t2: OrderTerm, k: int) -> bool:
        return self.profile(t1, k) == self.profile(t2, k)

    def split_types(self, t: OrderTerm, k: int) -> frozenset:
        """The finite set of SplitTypes realized by points of ``t`` at rank k."""
        self._check(k)
        top = self.type_of(t, k + 1)
        return frozenset(SplitType(KProfile(k, l), KProfile(k, r)) for l, r in self._members[top])

    def pointed_types(self, left: OrderTerm, right: OrderTerm, k: int) -> tuple[frozenset, frozenset]:
        """Rank-k pointed types of points of ``left + right``, split by side.

        A pointed type is the pair of rank-k types of the open sides of the
        point inside the whole sum.
        """
        self._check(k)
        tl, tr = self.type_of(left, k), self.type_of(right, k)
        lhs = frozenset((l, self.compose(r, tr)) for l, r in self._members[self.type_of(left, k + 1)])
        rhs = frozenset((self.compose(tl, l), r) for l, r in self._members[self.type_of(right, k + 1)])
        return lhs, rhs

    def cut_verdict(self, left: OrderTerm, right: OrderTerm, k: int) -> CutVerdict:
        lhs, rhs = self.pointed_types(left, right, k)
        status = "NotSeparableUpTo" if lhs & rhs else "DefinableParamFree"
        return CutVerdict(status, k, lhs, rhs)

    def minimal_separating_rank(self, left: OrderTerm, right: OrderTerm, kmax: Optional[int] = None) -> CutVerdict:
        """Scan k = 0, 1, ... and stop at the first separating rank.

        Separation at k persists at every larger k, so a NotSeparableUpTo
        answer at ``kmax`` covers all k <= kmax.
        """
        kmax = self.max_rank if kmax is None else kmax
        verdict = None
        for k in range(kmax + 1):
            verdict = self.cut_verdict(left, right, k)
            if verdict.definable:
                break
        return verdict

    def coaugment_evidence(self, left: OrderTerm, right: OrderTerm, x: OrderTerm, k: int,
                           literal: bool = False) -> bool:
        """Rank-k shadow of "left < left + X and right < X + right".

        X is inserted into the cut: it extends the left side at its top and
        the right side at its bottom.  ``literal=True`` tests "X = X + right"
        in place of "right = X + right"; that variant is kept only to
        document why it is rejected (it already fails on omega + omega* with
        X = zeta at rank 2).
        """
        if self.equiv(x, Fin(0), 1):
            raise ValueError("the augment X must be nonempty")
        if not self.equiv(left, Sum(left, x), k):
            return False
        if literal:
            return self.equiv(x, Sum(x, right), k)
        return self.equiv(right, Sum(x, right), k)


_default: Optional[EFEngine] = None
_default_lock = threading.Lock()


def default_engine() -> EFEngine:
    global _default
    if _default is None:
        with _default_lock:
            if _default is None:
                _default = EFEngine()
    return _default


def _eng(engine):
    return engine if engine is not None else default_engine()


def ef_profile(t: OrderTerm, k: int, engine: Optional[EFEngine] = None) -> KProfile:
    return _eng(engine).profile(t, k)


def ef_equiv(t1: OrderTerm, t2: OrderTerm, k: int, engine: Optional[EFEngine] = None) -> bool:
    return _eng(engine).equiv(t1, t2, k)


def enumerate_split_types(t: OrderTerm, k: int, engine: Optional[EFEngine] = None) -> frozenset:
    return _eng(engine).split_types(t, k)


def cut_definable_param_free(left: OrderTerm, right: OrderTerm, k: int,
                             engine: Optional[EFEngine] = None) -> CutVerdict:
    return _eng(engine).cut_verdict(left, right, k)


def coaugment_evidence(left: OrderTerm, right: OrderTerm, x: OrderTerm, k: int,
                       engine: Optional[EFEngine] = None, literal: bool = False) -> bool:
    return _eng(engine).coaugment_evidence(left, right, x, k, literal=literal)


def coaugment_verdict(left: OrderTerm, right: OrderTerm, x: OrderTerm, k: int,
                      engine: Optional[EFEngine] = None) -> CutVerdict:
    """CoAugmentEvidence if ``x`` passes the rank-k test at every level <= k."""
    eng = _eng(engine)
    ok = all(eng.coaugment_evidence(left, right, x, j) for j in range(k + 1))
    return CutVerdict("CoAugmentEvidence" if ok else "NoEvidence", k, witness=x)


# -- brute-force oracle ------------------------------------------------------

def _as_size(order) -> int:
    return order if isinstance(order, int) else len(list(order))


def brute_force_ef(a, b, k: int, start: Sequence[tuple[int, int]] = ()) -> bool:
    """Play the k-round EF game on two explicit finite orders exhaustively.

    ``a`` and ``b`` are sizes or element sequences (taken in listed order);
    ``start`` is an optional initial position of already matched pairs.
    """
    n, m = _as_size(a), _as_size(b)
    if n > 12 or m > 12 or k > 3:
        raise SizeExceeded("brute force is limited to 12 elements and 3 rounds")
    pos = tuple(sorted(set(start)))
    if not _partial_iso(pos):
        return False
    return _dup_wins(n, m, k, pos)


def _partial_iso(pos) -> bool:
    for (x1, y1), (x2, y2) in itertools.combinations(pos, 2):
        if (x1 < x2) != (y1 < y2) or (x1 == x2) != (y1 == y2):
            return False
    return True


@lru_cache(maxsize=None)
def _dup_wins(n: int, m: int, k: int, pos: tuple) -> bool:
    if k == 0:
        return True
    for x in range(n):
        if not any(_extend(n, m, k, pos, (x, y)) for y in range(m)):
            return False
    for y in range(m):
        if not any(_extend(n, m, k, pos, (x, y)) for x in range(n)):
            return False
    return True


def _extend(n, m, k, pos, pair) -> bool:
    new = tuple(sorted(set(pos) | {pair}))
    return _partial_iso(new) and _dup_wins(n, m, k - 1, new)
