"""Weight filtration versus factor filtration modulo p and p^2.

The weight filtration is the least weight (in the right congruence class)
of a form congruent to s; the factor filtration also lets s absorb powers of
E_{p-1}.  Modulo p they agree, modulo p^2 they can differ by multiples of p-1.
"""
from __future__ import annotations

from thetacycles.filtration import factor_filtration, weight_filtration, weight_from_factor
from thetacycles.forms import FormExpr, dimension, eval_form_expr
from thetacycles.series import Modulus

p = 17
for m in (1, 2):
    mod = Modulus(p, m)
    step = p + 1 if m == 1 else 2 + 2 * p * (p - 1)
    N = dimension(12 + step) + 5
    delta = eval_form_expr(FormExpr.parse("Delta"), mod, N)
    s = delta.theta().with_weight(12 + step)
    wf = weight_filtration(s)
    ff = factor_filtration(s, start=wf)
    print(f"mod {p}^{m}: theta Delta has weight filtration {wf.value}, "
          f"factor filtration {ff.value} (E_{p - 1}^{ff.exponent} factored out)")
    print("   smallest lift of the factor value into the weight class:",
          weight_from_factor(ff.value, 14, mod))

# A p-divisible series is handled by dividing out p first.
mod = Modulus(13, 2)
s = eval_form_expr(FormExpr.parse("Delta"), mod, 30).scale(13)
res = weight_filtration(s)
print("13 * Delta mod 169:", res.value, "after dividing by 13^%d" % res.p_divisible)
