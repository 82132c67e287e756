"""Arithmetic in a Hahn series field and its chain of convex valuation rings."""
from ordrank.corresp import verify_rank_correspondence
from ordrank.dsl import parse_group, parse_series
from ordrank.hahn import compare, convex_rings, in_ring, invert_with_certificate, v_nat


def main():
    G = parse_group("sum over fin(2) of [Z, Q]")
    x = parse_series(G, "1 - t^{1: 1/2}")
    y, cert = invert_with_certificate(x, 5)
    print("x        =", x)
    print("1/x      ~", y)
    print("error has value", cert.remainder_valuation)

    big = parse_series(G, "t^{0: -1}")
    print("t^{0: -1} > 10**9:", compare(big, parse_series(G, "1000000000")) == ">")
    print("v(x * big) =", v_nat(x * big))

    small_inverse = parse_series(G, "t^{1: -1}")
    for O in convex_rings(G):
        print(f"ring over {O.subgroup}: t^{{0: -1}} {in_ring(big, O)}, t^{{1: -1}} {in_ring(small_inverse, O)}")

    report = verify_rank_correspondence(G, seed=1)
    print("rank correspondence:", report.as_record()["verdict"])


if __name__ == "__main__":
    main()
