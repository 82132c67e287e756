import itertools
import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordrank import efengine
from ordrank.efengine import (BoundExceeded, EFEngine, SizeExceeded, brute_force_ef,
                              coaugment_evidence, coaugment_verdict, cut_definable_param_free,
                              ef_equiv, ef_profile, enumerate_split_types)
from ordrank.linorder import (Fin, Inv, OmegaSum, Rationals, Sum, enumerate_finite, gamma_seq,
                              normalize, omega, omega_star, zsum)

from strategies import finite_terms, order_terms

ENGINE = EFEngine(max_rank=4)
Q = Rationals()


def size(t):
    return len(enumerate_finite(t))


# -- oracle ------------------------------------------------------------------

def test_brute_force_examples():
    assert brute_force_ef(2, 3, 1)
    assert brute_force_ef(0, 0, 3)
    assert not brute_force_ef(0, 1, 1)
    # one round can only test for existence: a point of Fin(1) and of Fin(2) look alike
    assert brute_force_ef(1, 2, 1)
    assert not brute_force_ef(1, 2, 2)


def test_brute_force_start_positions():
    # pointed Fin(3) with the middle point vs an end point differ after one round
    assert not brute_force_ef(3, 3, 1, start=[(1, 0)])
    assert brute_force_ef(3, 3, 1, start=[(1, 1)])
    assert not brute_force_ef(3, 3, 0, start=[(0, 1), (1, 0)])


def test_brute_force_size_limit():
    with pytest.raises(SizeExceeded):
        brute_force_ef(13, 2, 1)


@pytest.mark.parametrize("k", range(4))
def test_finite_orders_match_brute_force(k):
    for a, b in itertools.product(range(10), repeat=2):
        assert ef_equiv(Fin(a), Fin(b), k) == brute_force_ef(a, b, k)


@settings(max_examples=80, deadline=None)
@given(finite_terms, finite_terms, st.integers(0, 3))
def test_composite_finite_terms_match_brute_force(s, t, k):
    assert ENGINE.equiv(s, t, k) == brute_force_ef(size(s), size(t), k)


# -- invariants ----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(order_terms(4), order_terms(4), st.integers(0, 3))
def test_monotone_in_rank(s, t, k):
    if ENGINE.equiv(s, t, k + 1):
        assert ENGINE.equiv(s, t, k)


@settings(max_examples=60, deadline=None)
@given(order_terms(3), order_terms(3), order_terms(3), st.integers(0, 3))
def test_profile_determines_lower_levels(s, t, u, k):
    eq = ENGINE.profile(s, k + 1) == ENGINE.profile(t, k + 1)
    assert not eq or ENGINE.profile(s, k) == ENGINE.profile(t, k)
    assert ENGINE.restrict(ENGINE.type_of(u, k + 1), k) == ENGINE.type_of(u, k)


def _variants(t, k):
    """Terms equivalent to t for reasons independent of the engine."""
    out = [t, normalize(t), Inv(Inv(t)), Sum(Fin(0), t)]
    nt = normalize(t)
    if isinstance(nt, Fin) and nt.n >= 2 ** k - 1:
        out.append(Fin(nt.n + 3))
    return out


@settings(max_examples=60, deadline=None)
@given(order_terms(3), order_terms(3), st.integers(0, 3), st.data())
def test_congruence_under_sums(a, b, k, data):
    a2 = data.draw(st.sampled_from(_variants(a, k)))
    b2 = data.draw(st.sampled_from(_variants(b, k)))
    assert ENGINE.equiv(a, a2, k) and ENGINE.equiv(b, b2, k)
    assert ENGINE.equiv(Sum(a, b), Sum(a2, b2), k)


@settings(max_examples=60, deadline=None)
@given(finite_terms, finite_terms, finite_terms, finite_terms, st.integers(0, 3))
def test_congruence_against_oracle(a, a2, b, b2, k):
    if brute_force_ef(size(a), size(a2), k) and brute_force_ef(size(b), size(b2), k):
        assert ENGINE.equiv(Sum(a, b), Sum(a2, b2), k)


@pytest.mark.parametrize("s,t", [
    (Q, Sum(Q, Q)),
    (Q, Sum(Q, Fin(1), Q)),
    (omega(), Sum(Fin(3), omega())),
    (omega(), OmegaSum((), (Fin(1), Fin(2)))),
    (zsum(Fin(1)), Sum(omega_star(), omega())),
    (zsum(Fin(1)), Inv(zsum(Fin(1)))),
    (OmegaSum((), (Q,)), Q),
    (OmegaSum((Fin(2),), (Q,)), Sum(Fin(2), Q)),
])
def test_isomorphic_orders_are_equivalent(s, t):
    # each pair is isomorphic, so every rank must agree
    for k in range(5):
        assert ENGINE.equiv(s, t, k)


def test_known_separations():
    assert not ENGINE.equiv(omega(), Sum(omega(), Fin(1)), 2)
    assert ENGINE.equiv(omega(), Sum(omega(), Fin(1)), 1)
    assert not ENGINE.equiv(Q, Sum(Q, Fin(1)), 2)
    assert not ENGINE.equiv(omega(), omega_star(), 2)
    assert ef_equiv(Fin(7), Fin(9), 3)
    assert not ef_equiv(Fin(6), Fin(9), 3)


def test_rank_bound():
    with pytest.raises(BoundExceeded):
        ENGINE.profile(Q, 5)
    assert ef_profile(Q, 2).k == 2


# -- split types and cuts --------------------------------------------------------

def test_split_type_counts():
    assert len(enumerate_split_types(Fin(2), 1)) == 2
    assert len(enumerate_split_types(Q, 3)) == 1
    assert len(enumerate_split_types(omega(), 2)) == 4


def test_omega_split_types_have_capped_left_sides():
    lefts = {s.left for s in ENGINE.split_types(omega(), 2)}
    rights = {s.right for s in ENGINE.split_types(omega(), 2)}
    assert lefts == {ENGINE.profile(Fin(i), 2) for i in range(4)}
    assert rights == {ENGINE.profile(omega(), 2)}
    # the oracle agrees that lefts of size >= 3 are indistinguishable at rank 2
    assert brute_force_ef(3, 7, 2) and not brute_force_ef(2, 3, 2)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 8) for k in range(3)])
def test_split_types_of_finite_orders_match_oracle(n, k):
    classes = set()
    for i in range(n):
        key = frozenset(j for j in range(n)
                        if brute_force_ef(i, j, k) and brute_force_ef(n - 1 - i, n - 1 - j, k))
        classes.add(key)
    assert len(enumerate_split_types(Fin(n), k)) == len(classes)


@pytest.mark.parametrize("a,b,k", [(a, b, k) for a in range(1, 4) for b in range(1, 4) for k in range(3)])
def test_cut_verdict_matches_pointed_games(a, b, k):
    n = a + b
    separable = all(not brute_force_ef(n, n, k, start=[(x, y)])
                    for x in range(a) for y in range(a, n))
    v = cut_definable_param_free(Fin(a), Fin(b), k)
    assert v.definable == separable
    if v.definable:
        assert not (v.left_types & v.right_types)


def test_cut_examples():
    assert cut_definable_param_free(Fin(2), Fin(2), 2).status == "DefinableParamFree"
    g0, g1 = gamma_seq((), (0,)), gamma_seq((), (1,))
    eng = EFEngine(max_rank=6)
    for k in range(5):
        v = eng.cut_verdict(g0, Inv(g0), k)
        assert v.status == "NotSeparableUpTo" and not v.definable
    v = eng.minimal_separating_rank(g0, Inv(g1), 6)
    assert v.definable and v.k <= 6
    assert not eng.cut_verdict(g0, Inv(g1), v.k - 1).definable


def test_cut_verdict_record():
    # far-out points of omega and of omega* look alike at any fixed rank
    for k in range(5):
        assert not cut_definable_param_free(omega(), omega_star(), k).definable
    rec = cut_definable_param_free(omega(), omega_star(), 2).as_record()
    assert rec["status"] == "NotSeparableUpTo" and rec["evidence_only"]
    assert set(rec) >= {"status", "k", "evidence_only"}


# -- co-augmentation ---------------------------------------------------------------

def test_coaugment_examples():
    g0 = gamma_seq((), (0,))
    X = zsum(Sum(Q, Fin(2)))
    assert all(coaugment_evidence(g0, Inv(g0), X, k) for k in range(5))
    assert all(coaugment_evidence(Q, Q, Q, k) for k in range(5))


def test_coaugment_single_points_follow_the_oracle():
    # Fin(1) + Fin(1) against Fin(1) + Fin(1) + Fin(1): the answer is whatever
    # the finite games say about Fin(1) vs Fin(2)
    expected = brute_force_ef(1, 2, 1) and brute_force_ef(1, 2, 1)
    assert coaugment_evidence(Fin(1), Fin(1), Fin(1), 1) == expected


def test_coaugment_on_omega_plus_omega_star():
    # omega is an elementary initial segment of omega + zeta, so zeta fits into
    # the middle cut of omega + omega*; the literal reading rejects it already
    zeta = zsum(Fin(1))
    assert all(coaugment_evidence(omega(), omega_star(), zeta, k) for k in range(5))
    assert not coaugment_evidence(omega(), omega_star(), zeta, 2, literal=True)


def test_coaugment_fails_when_x_adds_an_endpoint():
    # omega + 1 has a last point, omega does not
    assert not coaugment_evidence(omega(), omega_star(), Fin(1), 2)


def test_coaugment_needs_nonempty_x():
    with pytest.raises(ValueError):
        coaugment_evidence(Q, Q, Fin(0), 1)


def test_coaugment_verdict_labels():
    v = coaugment_verdict(Q, Q, Q, 3)
    assert v.status == "CoAugmentEvidence" and v.witness == Q


# -- concurrency -----------------------------------------------------------------

def test_results_independent_of_threads():
    terms = [gamma_seq((), (i % 3,)) for i in range(6)] + [omega(), Q, zsum(Fin(2))]
    serial = EFEngine()
    expected = [serial.profile(t, 3) for t in terms]
    shared = EFEngine()
    out = [None] * len(terms)

    def work(i):
        out[i] = shared.profile(terms[i], 3)

    threads = [threading.Thread(target=work, args=(i,)) for i in range(len(terms))]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    # ids are engine-local, so compare the equivalence pattern
    pattern = lambda ps: [[a == b for b in ps] for a in ps]
    assert pattern(out) == pattern(expected)


def test_default_engine_is_shared():
    assert efengine.default_engine() is efengine.default_engine()
