#!/usr/bin/env python3
"""Freezes reference p-values for the one-sided Mann-Whitney U test
(asymptotic path with tie correction and continuity correction) using scipy.
Writes fixtures/oracles/wmw_cases.json."""
import json
import random

from scipy.stats import mannwhitneyu

random.seed(20260823)

cases = []

# Integer 1-5 score samples with heavy ties, various shifts and sizes.
specs = [
    (15, 15, 0.0), (20, 18, 0.6), (14, 22, 1.0), (30, 30, 0.3),
    (16, 16, -0.5), (25, 13, 0.8), (40, 35, 0.2), (18, 18, 1.4),
]
for n, m, shift in specs:
    a = [min(5, max(1, round(random.gauss(3 + shift, 1)))) for _ in range(n)]
    b = [min(5, max(1, round(random.gauss(3, 1)))) for _ in range(m)]
    cases.append((a, b))

# Continuous case: 50 vs 50 normals shifted by +1 sigma.
a = [round(random.gauss(1.0, 1.0), 6) for _ in range(50)]
b = [round(random.gauss(0.0, 1.0), 6) for _ in range(50)]
cases.append((a, b))

# A tie-free moderate case above the exact-path cutoff.
pool = random.sample(range(1000), 26)
cases.append(([p + 0.5 for p in pool[:13]], [float(p) for p in pool[13:]]))

out = []
for a, b in cases:
    res = mannwhitneyu(a, b, alternative="greater", use_continuity=True,
                       method="asymptotic")
    out.append({"a": a, "b": b, "p_greater": float(res.pvalue)})

with open("/root/crate/fixtures/oracles/wmw_cases.json", "w") as f:
    json.dump(out, f, indent=1)
print(len(out), "cases")
for c in out:
    print(len(c["a"]), len(c["b"]), c["p_greater"])
