"""q-expansions modulo p^m: Eisenstein series, Delta, and E2 as a modular form mod p^2.

    python3 demos/01_q_expansions.py
"""
from __future__ import annotations

from thetacycles.forms import (FormExpr, bernoulli, delta_qexp, e2_representative_mod_p2,
                               eisenstein_qexp, eval_form_expr)
from thetacycles.series import Modulus

# Coefficients are stored as residues; a big prime shows the integers themselves.
big = Modulus(1000003, 1)
print("B_12          =", bernoulli(12))
print("E4            =", eisenstein_qexp(4, big, 6).coeffs.tolist())
print("Delta         =", [c if c < 500000 else c - big.pm for c in delta_qexp(big, 8).coeffs.tolist()])

# E_{p-1} is 1 modulo p, and E_{p-1}^p is 1 modulo p^2.
mod = Modulus(7, 2)
e6 = eisenstein_qexp(6, mod, 40).with_weight(6)
print("E6 mod 7      =", e6.reduce(1).coeffs[:10].tolist())
print("E6^7 mod 49   =", (e6 ** 7).coeffs[:10].tolist())

# E2 is only quasi-modular, but mod p^2 it agrees with a form of weight 2 + 2p(p-1).
rep = e2_representative_mod_p2(mod, 200)
print("E2 representative weight", rep.weight_tag, "agrees to q^200:",
      rep.agrees_with(eisenstein_qexp(2, mod, 200)))

# Forms are written in a tiny language over E4, E6 and Delta.
f = FormExpr.parse("3/2*E4^3 - 1/2*Delta")
print("weight", f.weight, "->", eval_form_expr(f, Modulus(13, 2), 6).coeffs.tolist())
