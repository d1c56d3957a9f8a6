"""The theta cycle of Delta modulo 17 and 17^2, with its low points and a figure.

    python3 demos/03_theta_cycles.py [outdir]
"""
from __future__ import annotations

import sys
from pathlib import Path

from thetacycles.cycle import compute_cycle
from thetacycles.io import atomic_write_text, report_to_csv
from thetacycles.svg import cycle_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")

mod_p = compute_cycle("Delta", 17, 1)
print("mod 17   :", mod_p.weights())
print("   lows  :", mod_p.low_points(), "ordinary:", mod_p.ordinary)

full = compute_cycle("Delta", 17, 2)
print("mod 17^2 : first interval", full.weights()[:18])
print("   lows  :", full.low_points()[:12], "...")
print("   exceptional indices:", full.exceptional_indices)
print("   coverage:", {k: v for k, v in full.coverage.items() if not k.endswith("fraction")})

atomic_write_text(out / "delta-17.svg", cycle_svg(full, mod_p))
atomic_write_text(out / "delta-17.csv", report_to_csv(full))
print("wrote", out / "delta-17.svg")

# Successive falls occur too: modulo 13^2 the filtration drops twice in a row.
r13 = compute_cycle("Delta", 13, 2, i_max=136)
print("mod 13^2, i = 132..135:", r13.weights()[132:136],
      [r13[i].classification for i in range(132, 136)])
