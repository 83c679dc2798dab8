#!/usr/bin/env python3
"""
Independent check of the one-point vectors v(1).

Expands the degree-one I-function coefficient directly with sympy: substitute
t = 1 (the series is homogeneous), expand the rational function in H to order
r, and read the coefficients.  Nothing from the gwci package is imported.

    python3 scripts/oracle_ifunction.py 6 5     # quintic in P^6
    python3 scripts/oracle_ifunction.py 4       # P^4
"""
import sys

import sympy as sp


def v_one(n, degrees):
    H = sp.symbols("H")
    r = n - len(degrees)
    num = sp.prod([sp.prod([l * H + k for k in range(1, l + 1)]) for l in degrees])
    expr = num / (H + 1) ** (n + 1)
    poly = sp.series(expr, H, 0, r + 1).removeO()
    return [sp.Rational(poly.coeff(H, j)) for j in range(r + 1)]


def main(argv):
    n = int(argv[0])
    degrees = [int(x) for x in argv[1:]]
    print(" ".join(str(x) for x in v_one(n, degrees)))


if __name__ == "__main__":
    main(sys.argv[1:])
