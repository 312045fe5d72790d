#!/usr/bin/env python3
"""Write the positive imaginary parts of the first N nontrivial zeta zeros,
one per line, ascending, using mpmath.zetazero."""
import sys
import mpmath

def main():
    n = int(sys.argv[1])
    out = sys.argv[2]
    mpmath.mp.dps = 25
    with open(out, "w") as f:
        f.write(f"# imaginary parts of the first {n} nontrivial zeros of zeta(s), mpmath.zetazero, dps=25\n")
        for k in range(1, n + 1):
            g = mpmath.zetazero(k).imag
            f.write(mpmath.nstr(g, 18, strip_zeros=False) + "\n")
            if k % 500 == 0:
                f.flush()

if __name__ == "__main__":
    main()
