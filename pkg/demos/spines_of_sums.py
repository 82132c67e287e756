"""Print n-spines of a few lexicographic sums and their Szmielew data."""
from ordrank.dsl import parse_group
from ordrank.spines import build_spine, is_n_regular

GROUPS = [
    "sum over fin(3) of [Z, Z, Z]",
    "sum over fin(2) of [Z_(2), Z_(3)]",
    "sum over fin(2) of [Q, Q]",
    "sum over fin(3) of [Z[1/2], Z, Q]",
]


def main():
    for text in GROUPS:
        G = parse_group(text)
        for n in (2, 3):
            spine = build_spine(G, n)
            print(f"{text}  n={n}  regular={is_n_regular(G, n)}  points={len(spine)}")
            for row in spine.as_rows():
                print("   ", row)


if __name__ == "__main__":
    main()
