"""Compare finite and infinite orders with the bounded back-and-forth engine.

Finite chains of length at least 2**k - 1 cannot be told apart in k rounds;
the script checks that threshold against the exhaustive game solver.
"""
from ordrank.dsl import parse_order
from ordrank.efengine import brute_force_ef, ef_equiv


def main():
    for k in range(1, 4):
        threshold = 2 ** k - 1
        row = []
        for n in range(1, threshold + 3):
            fast = ef_equiv(parse_order(f"fin({n})"), parse_order(f"fin({threshold})"), k)
            assert fast == brute_force_ef(n, threshold, k)
            row.append("=" if fast else ".")
        print(f"k={k}: fin(n) vs fin({threshold}) for n=1..{threshold + 2}: {''.join(row)}")

    pairs = [("w", "w + w"), ("w", "w + fin(1)"), ("Q", "Q + fin(1) + Q"), ("zsum(fin(1))", "zsum(fin(1)) + zsum(fin(1))")]
    for a, b in pairs:
        verdicts = [ef_equiv(parse_order(a), parse_order(b), k) for k in range(4)]
        first = next((k for k, v in enumerate(verdicts) if not v), None)
        where = f"separated at rank {first}" if first is not None else "equivalent up to rank 3"
        print(f"{a:>12}  vs  {b:<28} {where}")


if __name__ == "__main__":
    main()
