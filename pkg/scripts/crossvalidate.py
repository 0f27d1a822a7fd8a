"""Cross-validate the word-problem decision on random and perturbed term pairs.

Equal pairs are checked against random aperiodic monoids; unequal pairs must
be separated by some projection level. Pairs that are neither are written out
for review.
"""
import argparse
import json
import random
import time

from omegaterms import automata as fa
from omegaterms.generators import perturb, random_dfa, random_pair, random_term
from omegaterms.monoid import evaluate, is_aperiodic
from omegaterms.regword import InconsistencyError, equal, separate
from omegaterms.term import to_text


def monoid_bank(rng, n, letters):
    bank = []
    while len(bank) < n:
        m, _ = fa.transition_monoid(fa.minimize(random_dfa(rng, letters, rng.randint(2, 6))))
        if len(m) <= 50 and is_aperiodic(m):
            bank.append(m)
    return bank


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", "--pairs", type=int, default=1000)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--mode", choices=["random", "perturbed"], default="random")
    ap.add_argument("--kmax", type=int, default=4)
    ap.add_argument("--review", help="write unresolved pairs to this JSON file")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    bank = monoid_bank(rng, 20, "abc")
    stats = dict(equal=0, separated=0, review=0, inconsistent=0, eval_mismatch=0)
    review = []
    start = time.perf_counter()
    for _ in range(args.pairs):
        letters = "abc"[:rng.randint(1, 3)]
        if args.mode == "random":
            t1, t2 = random_pair(rng, letters, args.depth)
        else:
            t1 = random_term(rng, letters, args.depth)
            t2 = perturb(rng, t1, 2)
        try:
            same = equal(t1, t2, crosscheck=True, kcheck=args.kmax)
        except InconsistencyError as exc:
            stats["inconsistent"] += 1
            review.append({"t1": to_text(t1), "t2": to_text(t2), "why": str(exc)})
            continue
        if same:
            stats["equal"] += 1
            for m in bank:
                h = {x: rng.randrange(len(m)) for x in letters}
                if evaluate(t1, m, h) != evaluate(t2, m, h):
                    stats["eval_mismatch"] += 1
        elif separate(t1, t2, args.kmax) is not None:
            stats["separated"] += 1
        else:
            stats["review"] += 1
            review.append({"t1": to_text(t1), "t2": to_text(t2), "why": "no witness"})
    stats["seconds"] = round(time.perf_counter() - start, 1)
    print(json.dumps(stats))
    if args.review:
        with open(args.review, "w") as fh:
            json.dump(review, fh, indent=1)
    return 1 if stats["inconsistent"] or stats["eval_mismatch"] else 0


if __name__ == "__main__":
    raise SystemExit(main())
