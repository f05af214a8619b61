#!/usr/bin/env python3
"""Regenerates tests/fixtures/hash_golden.txt.

Computes the grid-corner hash with arbitrary-precision integers and an
explicit wrap to 32 bits, so the fixture is independent of any C++
arithmetic: each coordinate is multiplied by its prime modulo 2^32, the
products are XORed, and the result is reduced modulo the table size.

Run from the repository root:  python3 tests/oracles/hash_golden.py
"""

import random
from pathlib import Path

PRIMES = (1, 2654435761, 805459861)
WRAP = 1 << 32


def corner_hash(i, j, k, table_size):
    acc = 0
    for coord, prime in zip((i, j, k), PRIMES):
        acc ^= (coord * prime) % WRAP
    return acc % table_size


def main():
    rng = random.Random(20260801)
    cases = [
        (0, 0, 0, 1 << 14),
        (1, 0, 0, 1 << 14),
        (0, 1, 0, 1 << 14),
        (0, 0, 1, 1 << 14),
        (1, 2, 3, 1 << 19),
        (1024, 1024, 1024, 1 << 20),
        (2, 2, 0, 1 << 16),
        (4, 4, 0, 1 << 16),
    ]
    # Mix of power-of-two caps and cube-sized (non-power-of-two) tables.
    sizes = [1 << 14, 1 << 16, 1 << 19, 1 << 20, 1 << 24, 10648, 274625, 1404928]
    while len(cases) < 64:
        c = (
            rng.randrange(0, 1 << 20),
            rng.randrange(0, 1 << 20),
            rng.randrange(0, 1 << 20),
            rng.choice(sizes),
        )
        cases.append(c)

    out = Path(__file__).resolve().parents[1] / "fixtures" / "hash_golden.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w") as fh:
        fh.write("# i j k table_size expected_index\n")
        for i, j, k, size in cases:
            fh.write(f"{i} {j} {k} {size} {corner_hash(i, j, k, size)}\n")
    print(f"wrote {out} ({len(cases)} cases)")


if __name__ == "__main__":
    main()
