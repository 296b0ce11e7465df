#!/usr/bin/env python3
"""
Search short virtual braids whose closure has a prescribed H.

Used once to prepare the derived-input corpus entries: a target polynomial
is given, words with a fixed number of classical letters are enumerated up
to cyclic rotation, and every single-component hit is printed.  A hit only
shows that the braid reproduces the target value; it is then checked by the
corpus tests through both pipelines.

    python tools/derive_braids.py "(q^2-s^2)*(t^2*q^2-1)*(s*t-1)" --classical 3 --strands 3 --virtual 4
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time

from valex.braid import VirtualBraid, generator_block
from valex.laurent import LaurentPoly, PolyMatrix, UnitGroup, normalize_canonical, parse_poly

FULL = UnitGroup.full()


def _is_min_rotation(word) -> bool:
    n = len(word)
    return all(word <= word[i:] + word[:i] for i in range(1, n))


def search(target: LaurentPoly, classical: int, strands: int, vmax: int, limit: int, vmin: int = 0):
    goal = normalize_canonical(target, FULL)
    blocks = {kind: generator_block(kind) for kind in "bBv"}
    cl = [(k, i) for k in "bB" for i in range(1, strands)]
    vl = [("v", i) for i in range(1, strands)]
    one, zero = LaurentPoly.one(), LaurentPoly.zero()
    found = []
    for nv in range(vmin, vmax + 1):
        n = classical + nv
        for pos in itertools.combinations(range(n), classical):
            posset = set(pos)
            for cw in itertools.product(cl, repeat=classical):
                for vw in itertools.product(vl, repeat=nv):
                    ci, vi = iter(cw), iter(vw)
                    word = tuple(next(ci) if j in posset else next(vi) for j in range(n))
                    if not _is_min_rotation(word):
                        continue
                    b = VirtualBraid(strands, word)
                    if len(b.permutation_cycles()) != 1:
                        continue
                    m = [[one if r == c else zero for c in range(strands)] for r in range(strands)]
                    for kind, i in word:
                        (g00, g01), (g10, g11) = blocks[kind]
                        for row in m:
                            x, y = row[i - 1], row[i]
                            row[i - 1] = x * g00 + y * g10
                            row[i] = x * g01 + y * g11
                    for r in range(strands):
                        m[r][r] = m[r][r] - one
                    h = PolyMatrix(m).det()
                    if h and normalize_canonical(h, FULL) == goal:
                        found.append(b)
                        print(b, flush=True)
                        if len(found) >= limit:
                            return found
    return found


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[1])
    ap.add_argument("target")
    ap.add_argument("--classical", type=int, required=True)
    ap.add_argument("--strands", type=int, default=3)
    ap.add_argument("--virtual", type=int, default=4, help="maximum number of virtual letters")
    ap.add_argument("--min-virtual", type=int, default=0)
    ap.add_argument("--limit", type=int, default=5)
    args = ap.parse_args(argv)
    t0 = time.time()
    hits = search(parse_poly(args.target), args.classical, args.strands, args.virtual, args.limit, args.min_virtual)
    print(f"{len(hits)} hit(s) in {time.time() - t0:.1f}s", file=sys.stderr)
    return 0 if hits else 1


if __name__ == "__main__":
    sys.exit(main())
