#!/usr/bin/env python3
"""Writes data/mckay_thompson.csv: q-expansions of a few McKay-Thompson series.

Each series is built from eta quotients with exact integer arithmetic:
  1A  E4^3 / Delta - 744
  2A  (eta(t)/eta(2t))^24 + 24 + 4096 (eta(2t)/eta(t))^24
  2B  (eta(t)/eta(2t))^24 + 24
  3A  (eta(t)/eta(3t))^12 + 12 + 729 (eta(3t)/eta(t))^12
  3B  (eta(t)/eta(3t))^12 + 12
  4C  (eta(t)/eta(4t))^8 + 8
  5B  (eta(t)/eta(5t))^6 + 6
Usage: gen_mckay_thompson.py [--terms N] [--out PATH]
"""

import argparse
import csv
from pathlib import Path


def mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def power(a, k, n):
    out = [1] + [0] * n
    for _ in range(k):
        out = mul(out, a, n)
    return out


def inverse(a, n):
    assert a[0] == 1
    out = [1] + [0] * n
    for m in range(1, n + 1):
        out[m] = -sum(a[i] * out[m - i] for i in range(1, m + 1))
    return out


def euler(step, n):
    """prod_{m >= 1} (1 - q^{step m}) through q^n."""
    p = [1] + [0] * n
    for m in range(step, n + 1, step):
        for e in range(n, m - 1, -1):
            p[e] -= p[e - m]
    return p


def eta_quotient(level, exponent, n):
    """(eta(t)/eta(level t))^exponent without its leading power of q, through q^n."""
    ratio = mul(euler(1, n), inverse(euler(level, n), n), n)
    return power(ratio, exponent, n)


def hauptmodul(level, exponent, n, extra=0):
    """q^-1 (series) + constant, plus extra * reciprocal; indices are exponents + 1."""
    base = eta_quotient(level, exponent, n + 1)
    coeffs = {e - 1: c for e, c in enumerate(base)}
    coeffs[0] = 0
    if extra:
        recip = inverse(base, n)
        for e in range(0, n):
            coeffs[e + 1] = coeffs.get(e + 1, 0) + extra * recip[e]
    return {e: coeffs[e] for e in range(-1, n + 1)}


def sigma(m, k):
    return sum(d**k for d in range(1, m + 1) if m % d == 0)


def big_j(n):
    e4 = [1] + [240 * sigma(m, 3) for m in range(1, n + 2)]
    delta = power(euler(1, n + 1), 24, n + 1)  # Delta / q
    j = mul(power(e4, 3, n + 1), inverse(delta, n + 1), n + 1)  # q * j
    coeffs = {e - 1: c for e, c in enumerate(j)}
    coeffs[0] = 0
    return {e: coeffs[e] for e in range(-1, n + 1)}


def table(n):
    return {
        "1A": big_j(n),
        "2A": hauptmodul(2, 24, n, 4096),
        "2B": hauptmodul(2, 24, n),
        "3A": hauptmodul(3, 12, n, 729),
        "3B": hauptmodul(3, 12, n),
        "4C": hauptmodul(4, 8, n),
        "5B": hauptmodul(5, 6, n),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--terms", type=int, default=200)
    parser.add_argument("--out", type=Path,
                        default=Path(__file__).resolve().parent.parent / "data" / "mckay_thompson.csv")
    args = parser.parse_args()
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["class", "n", "value"])
        for label, coeffs in table(args.terms).items():
            for e, c in coeffs.items():
                if e == 0:
                    continue
                writer.writerow([label, e, c])


if __name__ == "__main__":
    main()
