"""Exceptional indices: i in np <= i <= np + p - k + 1 with i^2 + (k-1)i - n^2 = 0 mod p.

Those with n <= i' < p - k + 1 - n are low points of the cycle; the others
sit where the filtration is only bounded.
"""
from __future__ import annotations

from thetacycles.cycle import compute_cycle, exceptional_indices

for p in (13, 17, 19, 23):
    print(p, exceptional_indices(p, 12))

p, k = 19, 12
rep = compute_cycle("Delta", p, 2)
lows = set(rep.low_points())
for i in rep.exceptional_indices:
    n, ip = divmod(i, p)
    regular = n <= ip < p - k + 1 - n
    print(f"i = {i:4d} (n = {n:2d}, i' = {ip}) regular range: {regular!s:5}  low: {i in lows}")
