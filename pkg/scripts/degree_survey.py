#!/usr/bin/env python3
"""Minimal annihilator degree survey for the power-sum maps.

Measures the smallest total degree admitting a nonzero annihilator for the
x_i^d - 1 family (classical prediction: d^n) and its constant-locality chain
variant, which is measured rather than asserted.

Each degree is first screened over GF(2^61 - 1): the mod-p kernel can only
be larger than the rational one, so an empty mod-p kernel certifies an empty
rational kernel.  The first degree with a nonzero mod-p kernel is confirmed
by the exact rational search, whose basis vectors are certificates.

    python3 scripts/degree_survey.py            # desk-scale cases, ~15 s
    python3 scripts/degree_survey.py --full     # adds n=3 d=2 (about a minute)
"""

from __future__ import annotations

import argparse
import time

from annforge import annihilator_basis_search, verify_annihilates
from annforge.fields import QQ, PrimeField

from annforge.instances import kayal_chain_map, kayal_map

SCREEN_FIELD = PrimeField(2**61 - 1)
CEILING = 100_000


def minimal_degree(build_map, max_degree: int) -> tuple[int | None, int]:
    """(min degree with nonzero annihilator space, its exact dimension)."""
    screen_map = build_map(SCREEN_FIELD)
    for degree in range(1, max_degree + 1):
        if not annihilator_basis_search(screen_map, degree, ceiling=CEILING):
            continue  # certified empty over the rationals too
        exact_map = build_map(QQ)
        basis = annihilator_basis_search(exact_map, degree, ceiling=CEILING)
        assert basis, "mod-p kernel was nonzero but the rational kernel is empty"
        assert all(verify_annihilates(q, exact_map) for q in basis)
        return degree, len(basis)
    return None, 0


def report(family: str, n: int, d: int, build_map, max_degree: int) -> None:
    start = time.monotonic()
    found, dim = minimal_degree(build_map, max_degree)
    elapsed = time.monotonic() - start
    shown = str(found) if found is not None else f"> {max_degree}"
    dim_shown = str(dim) if found is not None else "-"
    print(f"{family:<12}{n:>3}{d:>3}{shown:>12}{dim_shown:>6}{d ** n:>6}"
          f"{elapsed:>9.1f}s")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true",
                        help="include the minute-scale n=3 d=2 case")
    parser.add_argument("--chain-max", type=int, default=6,
                        help="degree cap for the chain variant (default 6)")
    args = parser.parse_args()

    print(f"{'family':<12}{'n':>3}{'d':>3}{'min degree':>12}{'dim':>6}"
          f"{'d^n':>6}{'time':>10}")
    cases = [(1, 2, 3), (2, 2, 5), (1, 3, 4), (2, 3, 9)]
    if args.full:
        cases.append((3, 2, 8))
    for n, d, cap in cases:
        report("power-sum", n, d,
               lambda field, n=n, d=d: kayal_map(n, d, field), cap)
    for n, d in [(3, 2)]:
        report("chain", n, d,
               lambda field, n=n, d=d: kayal_chain_map(n, d, field),
               args.chain_max)


if __name__ == "__main__":
    main()
