#!/usr/bin/env python3
"""Freezes reference Spearman rho values (midrank handling of ties) using an
independent implementation, cross-checked against scipy.
Writes fixtures/oracles/spearman_cases.json."""
import json
import random

from scipy.stats import spearmanr

random.seed(77)


def midranks(v):
    order = sorted(range(len(v)), key=lambda i: v[i])
    ranks = [0.0] * len(v)
    i = 0
    while i < len(v):
        j = i
        while j + 1 < len(v) and v[order[j + 1]] == v[order[i]]:
            j += 1
        r = (i + 1 + j + 1) / 2
        for k in range(i, j + 1):
            ranks[order[k]] = r
        i = j + 1
    return ranks


def pearson(x, y):
    n = len(x)
    mx, my = sum(x) / n, sum(y) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    return sxy / (sxx * syy) ** 0.5


cases = []
sizes = [4, 5, 6, 8, 8, 10, 10, 12, 15, 15, 20, 20, 25, 30, 30, 40, 50, 50, 7, 9]
for n in sizes:
    if random.random() < 0.5:
        # Tied integer scores.
        x = [random.randint(1, 5) for _ in range(n)]
        y = [min(5, max(1, xi + random.randint(-1, 1))) for xi in x]
        if len(set(x)) < 2 or len(set(y)) < 2:
            x[0], y[-1] = x[0] % 5 + 1, y[-1] % 5 + 1
    else:
        x = [round(random.gauss(0, 1), 4) for _ in range(n)]
        y = [round(0.7 * xi + random.gauss(0, 0.5), 4) for xi in x]
    rho = pearson(midranks(x), midranks(y))
    ref = spearmanr(x, y).statistic
    assert abs(rho - ref) < 1e-9, (rho, ref)
    cases.append({"x": x, "y": y, "rho": rho})

with open("/root/crate/fixtures/oracles/spearman_cases.json", "w") as f:
    json.dump(cases, f, indent=1)
print(len(cases), "cases frozen")
