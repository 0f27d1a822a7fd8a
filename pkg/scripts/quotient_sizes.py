"""Print the size of the quotient monoid A*/≡_k for small alphabets and k,
and check that x^(2^k - 1) = x^(2^k) holds in each."""
import argparse

from omegaterms.efclass import quotient_monoid


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alphabets", nargs="+", default=["a", "ab"])
    ap.add_argument("--kmax", type=int, default=2)
    ap.add_argument("--cap", type=int, default=100_000)
    args = ap.parse_args(argv)
    print("alphabet k size aperiodic_index_ok")
    for alpha in args.alphabets:
        for k in range(args.kmax + 1):
            m, _, _ = quotient_monoid(alpha, k, cap=args.cap)
            n = 2 ** k
            ok = all(m.power(x, n - 1) == m.power(x, n) for x in m.elements)
            print(alpha, k, len(m), ok)


if __name__ == "__main__":
    main()
