#!/usr/bin/env python3
"""Reference sampler used to freeze the sampling golden file.

Independent implementation of the documented PRNG (splitmix64 finalizer
seeding an xorshift64* stream) and Fisher-Yates prefix selection.
"""
import sys

MASK = (1 << 64) - 1


def seed_state(seed):
    z = (seed + 0x9E3779B97F4A7C15) & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    z ^= z >> 31
    return z if z != 0 else 0x9E3779B97F4A7C15


def sample(pool_size, n, seed):
    state = seed_state(seed)

    def next_u64():
        nonlocal state
        x = state
        x ^= x >> 12
        x = (x ^ (x << 25)) & MASK
        x ^= x >> 27
        state = x
        return (x * 0x2545F4914F6CDD1D) & MASK

    indices = list(range(pool_size))
    for i in range(n):
        j = i + next_u64() % (len(indices) - i)
        indices[i], indices[j] = indices[j], indices[i]
    return indices[:n]


if __name__ == "__main__":
    pool_size, n, seed = (int(a) for a in sys.argv[1:4])
    for idx in sample(pool_size, n, seed):
        print(idx)
