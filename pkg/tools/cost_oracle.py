"""Evaluate bead costs in 50-digit arithmetic, for freezing test oracles.

Independent of the package: the closed form is re-typed here from its
definition rather than imported.

    python tools/cost_oracle.py 50 180 1-2 100 100 2-2
"""
import sys

import mpmath

mpmath.mp.dps = 50
PRIORS = {"1-1": "0.89", "1-0": "0.0099", "0-1": "0.0099", "1-2": "0.089", "2-1": "0.089", "2-2": "0.011"}


def cost(src, tgt, kind, c="1.0", s2="6.8"):
    delta = (mpmath.mpf(tgt) - mpmath.mpf(src) * mpmath.mpf(c)) / mpmath.sqrt(max(src, 1) * mpmath.mpf(s2))
    return -mpmath.log(mpmath.mpf(PRIORS[kind])) - mpmath.log(mpmath.erfc(abs(delta) / mpmath.sqrt(2)))


def main(argv):
    if len(argv) % 3:
        sys.exit("usage: cost_oracle.py SRC TGT TYPE [SRC TGT TYPE ...]")
    for i in range(0, len(argv), 3):
        src, tgt, kind = int(argv[i]), int(argv[i + 1]), argv[i + 2]
        print(f"({src}, {tgt}, {kind!r}) = {mpmath.nstr(cost(src, tgt, kind), 20)}")


if __name__ == "__main__":
    main(sys.argv[1:])
