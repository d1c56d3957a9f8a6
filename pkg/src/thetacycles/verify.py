"""Checks of the exact values, bounds and identities for theta cycles mod p and p^2.

Every check returns a list of :class:`CheckOutcome`.  Hypotheses are never
coerced: if the form fails 0 < k < p, omega_p(f) = k, the check reports a
single ``inapplicable`` outcome.  Failures carry enough data to reproduce the
offending series.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass

from .cycle import (CycleReport, HypothesisError, check_hypothesis, compute_cycle,
                    is_exceptional, ordinarity_criteria,
                    theorem_row, _theta_power)
from .filtration import (InsufficientPrecision, factor_filtration, membership,
                         weight_filtration, weight_from_factor)
from .forms import (FormExpr, dimension, e2_representative_mod_p2, eisenstein_cached,
                    eval_form_expr, modified_serre_derivatives, serre_derivative,
                    theta_power_expansion)
from .series import Modulus, QSeries, series_pow

__all__ = [
    "CheckOutcome",
    "CLAIM_SETS",
    "cycle_for",
    "check_prop_jochnowitz",
    "check_theorem_A",
    "check_corollary_B",
    "check_theorem_C",
    "check_census",
    "check_corollary_D",
    "check_e2_powers_lemma",
    "check_bounds",
    "check_identities",
    "check_bounds_and_identities",
    "run_claims",
    "to_jsonl",
    "summary_table",
]


@dataclass
class CheckOutcome:
    claim: str
    params: dict
    expected: object
    computed: object
    relation: str  # "==", "<=", "is", "holds"
    verdict: str  # pass | fail | inapplicable
    provenance: str = ""
    repro: dict | None = None

    def as_dict(self) -> dict:
        return asdict(self)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def _holds(relation, expected, computed) -> bool:
    if relation == "==" or relation == "is":
        return computed == expected
    if relation == "<=":
        return computed is not None and computed <= expected
    if relation == ">=":
        return computed is not None and computed >= expected
    if relation == "holds":
        return bool(computed)
    raise ValueError(relation)


def _outcome(claim, params, expected, computed, relation="==", provenance="", repro=None):
    verdict = "pass" if _holds(relation, expected, computed) else "fail"
    if verdict == "fail" and callable(repro):
        repro = repro()
    elif verdict == "pass":
        repro = None
    return CheckOutcome(claim, params, expected, computed, relation, verdict, provenance, repro)


def _inapplicable(claim, params, reason):
    return CheckOutcome(claim, params, None, reason, "holds", "inapplicable", "hypothesis")


def _form(f) -> FormExpr:
    return FormExpr.parse(f) if isinstance(f, str) else f


_reports: dict = {}


def cycle_for(f, p: int, m: int, i_max: int, method: str = "xbasis") -> CycleReport:
    """Cycle report covering at least 0..i_max, shared across checks.

    A cached report for a longer span is reused.  The classification of the
    last record needs its successor, so one extra index is always computed.
    """
    f = _form(f)
    key = (str(f), p, m, method)
    rep = _reports.get(key)
    if rep is None or rep.i_max < i_max + 1:
        rep = compute_cycle(f, p, m, i_max=i_max + 1, method=method)
        if len(_reports) > 16:
            _reports.pop(next(iter(_reports)))
        _reports[key] = rep
    return rep


def clear_cycle_cache() -> None:
    _reports.clear()


def _repro(f, report: CycleReport, i: int):
    def build():
        base = eval_form_expr(f, report.modulus, report.precision)
        s = _theta_power(base, i)
        return {"p": report.p, "m": report.m, "form": str(f), "i": i,
                "precision": report.precision, "series_hash": s.digest()}
    return build


def _hypothesis(f, p):
    try:
        check_hypothesis(f, p)
        return None
    except HypothesisError as exc:
        return str(exc)


# --------------------------------------------------------- mod p cycle

def jochnowitz_value(p: int, k: int, i: int, ordinary: bool) -> int:
    """omega_p(theta^i f) for 0 <= i < p."""
    if i < p - k + 1:
        return k + i * (p + 1)
    if ordinary:
        return k + i * (p + 1) - (p - k + 1) * (p - 1)
    if i < p - 1:
        return k + i * (p + 1) - (p - k + 2) * (p - 1)
    return k


def check_prop_jochnowitz(f, p: int) -> list[CheckOutcome]:
    f = _form(f)
    k = f.weight
    base = {"p": p, "k": k, "form": str(f)}
    why = _hypothesis(f, p)
    if why:
        return [_inapplicable("prop2.2", base, why)]
    out = []
    mod = Modulus(p, 1)
    guard = 5
    g = eval_form_expr(f, mod, dimension(k + (p + 1) * (p - 1)) + guard)
    scan, fixed = ordinarity_criteria(g)
    out.append(_outcome("prop2.2.ordinarity-criteria", base, scan, fixed, "==",
                        "coefficient scan vs theta^(p-1) fixed point"))
    ordinary = scan
    report = cycle_for(f, p, 1, p + 1)
    branch = "ordinary" if ordinary else "non-ordinary"
    for i in range(p):
        expected = jochnowitz_value(p, k, i, ordinary)
        out.append(_outcome(f"prop2.2.{branch}", {**base, "i": i}, expected,
                            report[i].weight_filt, "==", "mod-p cycle formula",
                            _repro(f, report, i)))
    # theta^i f = theta^(i-p+1) f mod p for i >= p, on series and on filtrations
    for i in range(p, p + 2):
        lhs = _theta_power(g, i)
        rhs = _theta_power(g, i - p + 1)
        out.append(_outcome("prop2.2.periodicity-series", {**base, "i": i}, True,
                            lhs.agrees_with(rhs), "holds", "theta^i f = theta^(i-p+1) f mod p"))
        out.append(_outcome("prop2.2.periodicity", {**base, "i": i},
                            report[i - p + 1].weight_filt, report[i].weight_filt, "==",
                            "filtration periodicity mod p"))
    return out


# --------------------------------------------------- first interval mod p^2

def first_interval_weight(p: int, k: int, i: int) -> int:
    if i == 0:
        return k
    if i == p - k + 1 or i == p:
        return k + 2 * i + p * (p - 1)
    return k + 2 * i + 2 * p * (p - 1)


def first_interval_factor(p: int, k: int, i: int, ordinary: bool) -> tuple[str, int]:
    """(claim id, factor filtration) for 0 < i <= p."""
    if 0 < i < p - k + 1:
        return "thmA.factor.before-low", k + 2 * i + (i + p + 1) * (p - 1)
    if i == p - k + 1:
        return "thmA.factor.at-low", k + i * (p + 1)
    if p - k + 1 < i < p:
        if ordinary:
            return "thmA.factor.after-low.ordinary", k + 2 * i + (i + k) * (p - 1)
        return "thmA.factor.after-low.non-ordinary", k + 2 * i + (i + k - 1) * (p - 1)
    if i == p:
        return "thmA.factor.at-p", k + 2 * p + p * (p - 1)
    raise ValueError(i)


def _thm_a_case(p, k, i):
    if i == 0:
        return "i=0"
    if i < p - k + 1:
        return "0<i<p-k+1"
    if i == p - k + 1:
        return "i=p-k+1"
    if i < p:
        return "p-k+1<i<p"
    return "i=p"


def check_theorem_A(f, p: int, include_corollary: bool = True) -> list[CheckOutcome]:
    f = _form(f)
    k = f.weight
    base = {"p": p, "k": k, "form": str(f)}
    why = _hypothesis(f, p)
    if why:
        return [_inapplicable("thmA", base, why)]
    report = cycle_for(f, p, 2, p + 1)
    out = []
    for i in range(p + 1):
        rec = report[i]
        out.append(_outcome(f"thmA.{_thm_a_case(p, k, i)}", {**base, "i": i},
                            first_interval_weight(p, k, i), rec.weight_filt, "==",
                            "first-interval weight filtration", _repro(f, report, i)))
        if i > 0:
            claim, expected = first_interval_factor(p, k, i, report.ordinary)
            out.append(_outcome(claim, {**base, "i": i, "ordinary": report.ordinary},
                                expected, rec.factor_filt, "==",
                                "first-interval factor filtration", _repro(f, report, i)))
    if include_corollary:
        out.extend(check_corollary_B(f, p))
    return out


def check_corollary_B(f, p: int) -> list[CheckOutcome]:
    f = _form(f)
    k = f.weight
    base = {"p": p, "k": k, "form": str(f)}
    why = _hypothesis(f, p)
    if why:
        return [_inapplicable("corB", base, why)]
    report = cycle_for(f, p, 2, p + 1)
    lows = [i for i in range(1, p + 1) if report[i].classification == "low"]
    out = [_outcome("corB.low-points", base, [p - k + 1, p], lows, "==",
                    "low points of the first interval")]
    # the step out of the first low point is forced by the exact values to be
    # p(p-1) + 2, so i = p - k + 1 is excluded from the rise-by-2 range as well
    for i in range(1, p - 1):
        if i in (p - k, p - k + 1):
            continue
        out.append(_outcome("corB.rise-by-2", {**base, "i": i},
                            report[i].weight_filt + 2, report[i + 1].weight_filt, "==",
                            "rise by 2 in the first interval", _repro(f, report, i + 1)))
    i = p - k + 1
    if i + 1 <= p:
        out.append(_outcome("corB.jump-after-low", {**base, "i": i},
                            report[i].weight_filt + p * (p - 1) + 2, report[i + 1].weight_filt,
                            "==", "step out of the first low point", _repro(f, report, i + 1)))
    return out


# ---------------------------------------------- first part of each interval

def interval_weight_claim(p: int, k: int, i: int) -> tuple[str, str, int]:
    """(claim id, relation, value) for np <= i <= np + p - k + 1, 1 <= n < p."""
    row = theorem_row(p, k, i)
    if row == "A":  # i = p opens the n = 1 block with i' = 0
        row = "C.1"
    low = k + 2 * i + p * (p - 1)
    if row == "C.3":
        return "thmC.row3", "==", k + 2 * i + 2 * p * (p - 1)
    if row == "C.2":
        return "thmC.row2", "==", low
    if row == "C.exceptional":
        return "thmC.exceptional", "<=", low
    return f"thmC.row{row[-1]}", "<=", low


def interval_factor_claim(p: int, k: int, i: int) -> tuple[str, str, int] | None:
    """Factor filtration statement for 0 < i' < p - k + 1, or None outside it."""
    n, ip = divmod(i, p)
    if not (1 <= n < p and 0 < ip < p - k + 1):
        return None
    if ip <= p - k + 1 - n and not is_exceptional(p, k, i):
        return "thmC.factor.equality", "==", k + 2 * i + (ip + p - n + 1) * (p - 1)
    slack = k - 1 if n == 1 else k - 2
    return f"thmC.factor.bound.{'n=1' if n == 1 else 'n>1'}", "<=", k + 2 * i + (ip + slack) * (p - 1)


def check_theorem_C(f, p: int) -> list[CheckOutcome]:
    f = _form(f)
    k = f.weight
    base = {"p": p, "k": k, "form": str(f)}
    why = _hypothesis(f, p)
    if why:
        return [_inapplicable("thmC", base, why)]
    top = (p - 1) * p + p - k + 1
    report = cycle_for(f, p, 2, top)
    out = []
    for n in range(1, p):
        for i in range(n * p, n * p + p - k + 2):
            rec = report[i]
            params = {**base, "i": i, "n": n, "i_prime": i - n * p,
                      "exceptional": is_exceptional(p, k, i)}
            claim, rel, value = interval_weight_claim(p, k, i)
            out.append(_outcome(claim, params, value, rec.weight_filt, rel,
                                "interval weight filtration", _repro(f, report, i)))
            fc = interval_factor_claim(p, k, i)
            if fc:
                claim, rel, value = fc
                out.append(_outcome(claim, params, value, rec.factor_filt, rel,
                                    "interval factor filtration", _repro(f, report, i)))
    out.extend(check_census(report))
    return out


def census_bounds(p: int, k: int) -> tuple[int, int]:
    exact = p + (p - k - 4) * (p - k + 1) // 2
    bounded = p + (p - k + 1) * (p - 1)
    return exact, bounded


def check_census(report: CycleReport) -> list[CheckOutcome]:
    p, k = report.p, report.k
    base = {"p": p, "k": k, "form": report.form}
    if report.i_max < p * (p - 1) + 1 or not report.coverage:
        return [_inapplicable("census", base, "cycle does not cover a full period")]
    exact, bounded = census_bounds(p, k)
    cov = report.coverage
    return [
        _outcome("census.exact", base, exact, cov["exact"], ">=", "count of exact positions"),
        _outcome("census.bounded", base, bounded, cov["bounded"], ">=",
                 "count of bounded positions"),
    ]


def check_corollary_D(f, p: int) -> list[CheckOutcome]:
    f = _form(f)
    k = f.weight
    base = {"p": p, "k": k, "form": str(f)}
    why = _hypothesis(f, p)
    if why:
        return [_inapplicable("corD", base, why)]
    report = cycle_for(f, p, 2, p * p + 3)
    w = report.weights()

    def is_low(i):
        return report[i].classification == "low"

    out = []
    q = p * (p - 1)
    for n in range(1, (p - k + 1) // 2 + 1):
        i = n * p + p - k + 2 - n
        alternative = (w[i] == k + 2 * i + q and w[i + 1] == k + 2 * (i + 1))
        target = i + 1 if alternative else i
        out.append(_outcome("corD.part1", {**base, "n": n, "i": i,
                                           "branch": "i+1" if alternative else "i"},
                            True, is_low(target), "holds", "regular low point",
                            _repro(f, report, target)))
    for n in range(1, p):
        lo = n * p
        for i in range(lo + n, lo + p - k + 1 - n):
            if is_exceptional(p, k, i):
                out.append(_outcome("corD.part2", {**base, "n": n, "i": i}, True, is_low(i),
                                    "holds", "exceptional low point", _repro(f, report, i)))
        for i in range(lo + 1, lo + p - k + 2 - n):
            if not is_exceptional(p, k, i):
                out.append(_outcome("corD.part3", {**base, "n": n, "i": i}, False, is_low(i),
                                    "is", "non-exceptional index is not low",
                                    _repro(f, report, i)))
        for i in range(lo + 1, lo + p - k + 1 - n):
            if i == lo + n - 1 or is_exceptional(p, k, i) or is_exceptional(p, k, i + 1):
                continue
            out.append(_outcome("corD.part4", {**base, "n": n, "i": i}, w[i] + 2, w[i + 1],
                                "==", "rise by 2", _repro(f, report, i + 1)))
    return out


# ----------------------------------------------------------- E2 powers

def check_e2_powers_lemma(f, p: int, n_max: int) -> list[CheckOutcome]:
    f = _form(f)
    k = f.weight
    base = {"p": p, "k": k, "form": str(f)}
    guard = 5
    rep_weight = 2 + 2 * p * (p - 1)
    # f E2^(n+1) is tagged with omega(f E2^n) + weight of the E2 representative,
    # which keeps the tags below the bound used for the precision
    top = k + 2 * n_max + n_max * (p - 1) + (p + 1) * (p - 1) + p * (p - 1) + rep_weight
    N = dimension(top) + guard
    while True:
        try:
            return _e2_powers(f, p, n_max, N, base, guard, rep_weight)
        except InsufficientPrecision:
            N *= 2


def _e2_powers(f, p, n_max, N, base, guard, rep_weight):
    k = f.weight
    mod = Modulus(p, 2)
    fs = eval_form_expr(f, mod, N)
    if weight_filtration(fs.reduce(1), guard).value != k:
        return [_inapplicable("lemma2.4", base, f"omega_{p}(f) != {k}")]
    second = factor_filtration(fs, guard).value == k
    e2 = eisenstein_cached(2, mod, N)
    out = []
    s = fs
    W = k
    for n in range(n_max + 1):
        if n:
            s = s * e2
        s = s.with_weight(W)
        params = {**base, "n": n, "tag": W}
        expected = k + 2 * n + n * (p - 1)
        res = factor_filtration(s.scale(p), guard)
        out.append(_outcome("lemma2.4.p-multiple", params, expected, res.value, "==",
                            "factor filtration of p f E2^n"))
        wf = weight_filtration(s, guard)
        if second:
            extra = 0 if n % p == 0 else (p + 1) * (p - 1)
            branch = "p|n" if n % p == 0 else "p∤n"
            ff = factor_filtration(s, guard, start=wf)
            out.append(_outcome(f"lemma2.4.{branch}", params, expected + extra, ff.value, "==",
                                "factor filtration of f E2^n"))
        W = wf.value + rep_weight
    if not second:
        out.append(_inapplicable("lemma2.4.second", base, "factor filtration of f is not k"))
    return out


# ------------------------------------------------------ bounds and identities

def check_bounds(report: CycleReport, sample_series: int = 6) -> list[CheckOutcome]:
    """Congruence class, weight-from-factor consistency, upper bounds and periodicity on all records."""
    p, k = report.p, report.k
    base = {"p": p, "k": k, "form": report.form}
    if report.m != 2:
        return [_inapplicable("bounds", base, "bounds are stated modulo p^2")]
    mod = report.modulus
    q = p * (p - 1)
    cubic_factor = k + 2 * (q + 1) + (p * p + 2) * (p - 1)
    cubic_weight = k + 2 * (q + 1) + (p + 1) * q
    failures = Counter()
    checked = 0
    first_fail = {}
    for r in report.records:
        i, w, fv = r.i, r.weight_filt, r.factor_filt
        if w is None:
            failures["nonzero"] += 1
            continue
        checked += 1
        tests = {
            "filtcong": (w - k - 2 * i) % q == 0,
            "weight-from-factor": weight_from_factor(fv, k + 2 * i, mod) == w,
            "naive-factor": fv <= k + 2 * i + (i + p + 1) * (p - 1),
            "naive-weight": w <= k + 2 * i + (-(-(i + 1) // p) + 1) * q,
            "trivial": fv <= w <= k + 2 * i + 2 * i * q,
            "cubic-factor": fv <= cubic_factor,
            "cubic-weight": w <= cubic_weight,
        }
        for name, ok in tests.items():
            if not ok:
                failures[name] += 1
                first_fail.setdefault(name, i)
    out = []
    for name in ("filtcong", "weight-from-factor", "naive-factor", "naive-weight", "trivial",
                 "cubic-factor", "cubic-weight"):
        rep = None
        if name in first_fail:
            rep = {"p": p, "form": report.form, "i": first_fail[name]}
        out.append(CheckOutcome(f"bounds.{name}", {**base, "records": checked}, 0,
                                failures[name], "==",
                                "pass" if failures[name] == 0 else "fail",
                                "failures over all records", rep))
    if failures["nonzero"]:
        out.append(CheckOutcome("bounds.nonzero", base, 0, failures["nonzero"], "==", "fail",
                                "theta^i f vanished mod p^2"))
    # periodicity of records
    mismatches = [r.i for r in report.records
                  if r.i >= 2 and r.i + q <= report.i_max
                  and (report[r.i + q].weight_filt, report[r.i + q].factor_filt)
                  != (r.weight_filt, r.factor_filt)]
    pairs = max(0, report.i_max - q - 1)
    if pairs:
        out.append(CheckOutcome("bounds.periodicity-records", {**base, "pairs": pairs}, 0,
                                len(mismatches), "==", "pass" if not mismatches else "fail",
                                "filtrations at i and i + p(p-1)"))
    # periodicity of series, sampled
    f = FormExpr.parse(report.form)
    fs = eval_form_expr(f, mod, min(report.precision, 200))
    step = max(1, (q - 2) // max(sample_series, 1))
    for i in range(2, q, step):
        ok = _theta_power(fs, i + q).agrees_with(_theta_power(fs, i))
        out.append(_outcome("bounds.periodicity-series", {**base, "i": i}, True, ok, "holds",
                            "theta^(i+p(p-1)) f = theta^i f mod p^2"))
    return out


def e2_power_congruence(mod: Modulus, n: int, N: int) -> QSeries:
    """(12 dE_{p-1})^n E_{p-1}^(n(2p-1)) + p n E_{p+1}^(n+p-1) E_{p-1}^((n-1)(2p-1)+p-2)."""
    p = mod.p
    ep1 = eisenstein_cached(p - 1, mod, N)
    epp1 = eisenstein_cached(p + 1, mod, N)
    d = serre_derivative(ep1).scale(12)
    first = series_pow(d, n) * series_pow(ep1, n * (2 * p - 1))
    second = series_pow(epp1, n + p - 1) * series_pow(ep1, (n - 1) * (2 * p - 1) + p - 2)
    return first + second.scale(p * n)


def check_identities(f, p: int, i_max: int = 10, precision: int = 100,
                     e2_precision: int = 200, e2_power_max: int | None = None,
                     membership_checks: int = 5) -> list[CheckOutcome]:
    """Series identities: E2 expansion of theta^i f, E2 mod p^2 and its powers."""
    f = _form(f)
    k = f.weight
    mod = Modulus(p, 2)
    base = {"p": p, "k": k, "form": str(f)}
    out = []
    fs = eval_form_expr(f, mod, precision)
    derivs = modified_serre_derivatives(fs, i_max)
    it = fs
    for i in range(i_max + 1):
        if i:
            it = it.theta()
        lhs = theta_power_expansion(fs, i, derivs)
        out.append(_outcome("identities.theta-expansion", {**base, "i": i, "N": precision},
                            True, lhs.agrees_with(it), "holds",
                            "E2 expansion of theta^i f equals iterated theta"))
    # modified Serre derivatives land in M_{k+2j}
    for j in range(min(membership_checks, i_max) + 1):
        fj = derivs[j]
        need = dimension(k + 2 * j) + 5
        ok = precision >= need and membership(fj, k + 2 * j) is not None
        out.append(_outcome("identities.serre-modularity", {**base, "j": j}, True, ok, "holds",
                            "modified Serre derivative is modular of weight k + 2j"))
    e2 = eisenstein_cached(2, mod, e2_precision)
    rep = e2_representative_mod_p2(mod, e2_precision)
    out.append(_outcome("identities.e2-congruence", {**base, "N": e2_precision}, True,
                        rep.agrees_with(e2), "holds", "E2 modulo p^2 is modular"))
    mod1 = Modulus(p, 1)
    d1 = serre_derivative(eisenstein_cached(p - 1, mod1, e2_precision)).scale(12)
    out.append(_outcome("identities.de-congruence", {**base, "N": e2_precision}, True,
                        d1.agrees_with(eisenstein_cached(p + 1, mod1, e2_precision)), "holds",
                        "12 d E_{p-1} = E_{p+1} mod p"))
    if e2_power_max:
        pw = QSeries.constant(1, mod, precision)
        e2s = e2.truncate(precision)
        for n in range(1, e2_power_max + 1):
            pw = pw * e2s
            ok = e2_power_congruence(mod, n, precision).agrees_with(pw)
            out.append(_outcome("identities.e2-power", {**base, "n": n, "N": precision}, True,
                                ok, "holds", "E2^n modulo p^2"))
    return out


def check_bounds_and_identities(f, p: int) -> list[CheckOutcome]:
    return _bounds_for(f, p) + check_identities(f, p, e2_power_max=2 * p)


# ------------------------------------------------------------------ driver

def _bounds_for(f, p):
    f = _form(f)
    why = _hypothesis(f, p)
    if why:
        return [_inapplicable("bounds", {"p": p, "k": f.weight, "form": str(f)}, why)]
    return check_bounds(cycle_for(f, p, 2, p * p + 3))


CLAIM_SETS = {
    "prop2.2": lambda f, p: check_prop_jochnowitz(f, p),
    "thmA": lambda f, p: check_theorem_A(f, p, include_corollary=False),
    "corB": check_corollary_B,
    "thmC": check_theorem_C,
    "corD": check_corollary_D,
    "lemma2.4": lambda f, p: check_e2_powers_lemma(f, p, p + 2),
    "bounds": lambda f, p: _bounds_for(f, p),
    "identities": lambda f, p: check_identities(f, p, e2_power_max=2 * p),
}


# largest theta index each claim set reads, as a function of (p, k)
_SPANS = {
    "prop2.2": None,
    "thmA": lambda p, k: p + 1,
    "corB": lambda p, k: p + 1,
    "thmC": lambda p, k: p * p - k + 1,
    "corD": lambda p, k: p * p + 3,
    "lemma2.4": None,
    "bounds": lambda p, k: p * p + 3,
    "identities": None,
}


def run_claims(f, p: int, claims=("all",)) -> list[CheckOutcome]:
    if isinstance(claims, str):
        claims = [c for c in claims.split(",") if c]
    names = list(CLAIM_SETS) if "all" in claims else list(claims)
    unknown = [c for c in names if c not in CLAIM_SETS]
    if unknown:
        raise ValueError(f"unknown claim sets {unknown}; choose from {sorted(CLAIM_SETS)} or all")
    f = _form(f)
    spans = [_SPANS[n](p, f.weight) for n in names if _SPANS[n] is not None]
    if spans and _hypothesis(f, p) is None:
        cycle_for(f, p, 2, max(spans))
    out = []
    for name in names:
        out.extend(CLAIM_SETS[name](f, p))
    return out


def to_jsonl(outcomes) -> str:
    return "".join(json.dumps(o.as_dict(), default=str) + "\n" for o in outcomes)


def summary_table(outcomes) -> str:
    rows = Counter()
    for o in outcomes:
        rows[(o.claim, o.verdict)] += 1
    claims = sorted({c for c, _ in rows})
    width = max([len(c) for c in claims] + [5])
    lines = [f"{'claim':<{width}}  {'pass':>5} {'fail':>5} {'n/a':>5}"]
    for c in claims:
        lines.append(f"{c:<{width}}  {rows[(c, 'pass')]:>5} {rows[(c, 'fail')]:>5}"
                     f" {rows[(c, 'inapplicable')]:>5}")
    total = Counter(o.verdict for o in outcomes)
    lines.append(f"{'total':<{width}}  {total['pass']:>5} {total['fail']:>5}"
                 f" {total['inapplicable']:>5}")
    return "\n".join(lines)
