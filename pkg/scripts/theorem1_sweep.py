#!/usr/bin/env python3
"""Exhaustive two-sided sweep of the subgroup membership criterion.

For every v in N = ker(F_2 -> Z/2 x Z/2) up to a word length bound,
compare the derivative criterion (all D_k(v) = 0 mod N for k outside K)
with the certified lattice membership of v vhat^-1 in (F_K cap N)^F [N,N].
Any mismatch is printed; the exit code reflects the tally.
"""
import argparse
import sys
import time

from foxcalc.fox_group import free_index, theorem1_check
from foxcalc.group_ring import finite_index_oracle
from foxcalc.words import Alphabet, format_word, shortlex_words


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-length", type=int, default=6)
    ap.add_argument("--keep", type=int, default=1, help="free index kept in K")
    args = ap.parse_args()

    alphabet = Alphabet(2)
    q = finite_index_oracle(alphabet, (2, 2), [(1, 0), (0, 1)])
    K = frozenset({free_index(args.keep)})

    t0 = time.perf_counter()
    total = holds = mismatches = 0
    for v in shortlex_words(alphabet, args.max_length):
        if not q.contains(v):
            continue
        rep = theorem1_check(v, K, q)
        total += 1
        holds += rep.holds
        if rep.status != "decided" or rep.holds != rep.witness_member:
            mismatches += 1
            print(f"MISMATCH {format_word(v)}: criterion={rep.holds} "
                  f"membership={rep.witness_member} status={rep.status}")
    dt = time.perf_counter() - t0
    print(f"{total} words in N checked, {holds} satisfy the criterion, "
          f"{mismatches} mismatches ({dt:.1f}s)")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
