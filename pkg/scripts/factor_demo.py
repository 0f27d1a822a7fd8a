"""Show prefix, suffix and factor automata and the regular J-classes of terms."""
import argparse

from omegaterms import automata as fa
from omegaterms.factors import FactorReport
from omegaterms.term import parse


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("terms", nargs="*", default=["(ab)^w", "a^w b a^w", "(a^w b)^w c"])
    ap.add_argument("--words", type=int, default=4, help="list words up to this length")
    args = ap.parse_args(argv)
    for text in args.terms:
        r = FactorReport.build(parse(text))
        print(f"== {text}")
        for name in ("prefix_dfa", "suffix_dfa", "factor_dfa"):
            d = getattr(r, name)
            ws = list(fa.enumerate_words(d, args.words))
            print(f"  {name}: {d.nstates} states, finite={fa.is_finite_language(d)}, "
                  f"words: {' '.join(w or '1' for w in ws)}")
        print("  regular J-classes:", ", ".join(str(x) for x in r.reg_jclasses))


if __name__ == "__main__":
    main()
