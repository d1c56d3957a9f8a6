"""Machine-check the stated exact values and bounds for one (form, prime).

    python3 demos/04_verify.py "E4*Delta" 19
"""
from __future__ import annotations

import sys

from thetacycles.verify import run_claims, summary_table

form = sys.argv[1] if len(sys.argv) > 1 else "Delta"
p = int(sys.argv[2]) if len(sys.argv) > 2 else 13
outcomes = run_claims(form, p)
print(summary_table(outcomes))
bad = [o for o in outcomes if o.verdict == "fail"]
for o in bad[:5]:
    print("FAIL", o.claim, o.params, "expected", o.expected, "got", o.computed, o.repro)
sys.exit(1 if bad else 0)
