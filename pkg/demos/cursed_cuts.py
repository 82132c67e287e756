"""Probe the middle cut of two glued omega-sums.

When the right half repeats a different block the cut becomes definable at
a small rank; when both halves repeat the same block the engine only finds
evidence of non-definability, backed by a co-augmenting order.
"""
from ordrank.corresp import gallery
from ordrank.efengine import EFEngine
from ordrank.linorder import Fin, Inv, OmegaSum, Rationals, Sum, to_dsl, zsum


def block(extra):
    return Sum(Rationals(), Fin(2 + extra))


def main():
    eng = EFEngine(max_rank=6)
    for a, b in [(0, 0), (0, 1)]:
        left, right = OmegaSum((), (block(a),)), Inv(OmegaSum((), (block(b),)))
        v = eng.minimal_separating_rank(left, right, 4)
        print(f"blocks {a} | {b}: {v.status} at k={v.k}")

    left, right = OmegaSum((), (block(0),)), Inv(OmegaSum((), (block(0),)))
    x = zsum(block(0))
    print("co-augmenting candidate:", to_dsl(x))
    print("passes by rank:", [eng.coaugment_evidence(left, right, x, k) for k in range(4)])

    for claim in gallery("cursed-0-vs-0").claims:
        print(f"[{claim.label}] {claim.text}")


if __name__ == "__main__":
    main()
