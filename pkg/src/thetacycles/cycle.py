"""Theta cycles: filtrations of theta^i f for consecutive i, with classification.

The q-expansion of theta^i f is simply n^i a(n), so the iteration only has to
track the weight class.  After each step the working series is tagged with
its weight filtration w; theta of a form in M_w mod p^2 comes from
M_{w + 2 + 2p(p-1)} (through the modular representative of E2), and modulo p
from M_{w + p + 1}.  This keeps the comparison weight, hence the precision,
quadratic in p.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .filtration import DEFAULT_GUARD, factor_filtration, weight_filtration
from .forms import FormExpr, dimension, eval_form_expr
from .series import Modulus, QSeries

log = logging.getLogger(__name__)

__all__ = [
    "HypothesisError",
    "FiltrationRecord",
    "CycleReport",
    "compute_cycle",
    "classify_points",
    "is_ordinary",
    "ordinarity_criteria",
    "is_exceptional",
    "exceptional_indices",
    "in_exceptional_range",
    "theorem_row",
    "theorem_status",
    "coverage",
    "theta_step",
    "extended_length",
]


class HypothesisError(ValueError):
    """The form does not satisfy 0 < k < p and omega_p(f) = k."""


@dataclass(frozen=True)
class FiltrationRecord:
    i: int
    n: int
    i_prime: int
    weight_filt: int | None
    factor_filt: int | None
    status: str  # exact | theorem-bound | engine-computed
    classification: str = "boundary"  # low | rise | fall | plateau | boundary
    exceptional: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class CycleReport:
    modulus: Modulus
    k: int
    form: str
    i_max: int
    records: list[FiltrationRecord]
    ordinary: bool | None
    exceptional_indices: list[int] = field(default_factory=list)
    coverage: dict = field(default_factory=dict)
    precision: int = 0
    theorem_mode: bool = True

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def m(self) -> int:
        return self.modulus.m

    @property
    def periodic_from(self) -> int:
        """Index where the periodic part of the cycle starts."""
        return self.modulus.m

    def weights(self) -> list[int | None]:
        return [r.weight_filt for r in self.records]

    def factors(self) -> list[int | None]:
        return [r.factor_filt for r in self.records]

    def low_points(self) -> list[int]:
        return [r.i for r in self.records if r.classification == "low"]

    def __getitem__(self, i: int) -> FiltrationRecord:
        return self.records[i]


def theta_step(mod: Modulus) -> int:
    """Weight increase of one theta application on representatives."""
    if mod.m == 1:
        return mod.p + 1
    if mod.m == 2:
        return 2 + 2 * mod.p * (mod.p - 1)
    raise ValueError("theta cycles are supported modulo p and p^2 only")


def extended_length(mod: Modulus) -> int:
    """Last index (p-1)p^(m-1) + m - 1 of the extended theta cycle."""
    return (mod.p - 1) * mod.p ** (mod.m - 1) + mod.m - 1


# -------------------------------------------------------- exceptional indices

def in_exceptional_range(p: int, k: int, i: int) -> bool:
    n, ip = divmod(i, p)
    return 1 <= n < p and ip <= p - k + 1


def is_exceptional(p: int, k: int, i: int) -> bool:
    """i in np <= i <= np + p - k + 1 (1 <= n < p) solving i^2 + (k-1)i - n^2 = 0 mod p."""
    if not in_exceptional_range(p, k, i):
        return False
    n = i // p
    return (i * i + (k - 1) * i - n * n) % p == 0


def exceptional_indices(p: int, k: int, indices=None) -> list[int]:
    if indices is None:
        indices = range(p, p * (p - 1) + p - k + 2)
    return [i for i in indices if is_exceptional(p, k, i)]


# ---------------------------------------------------- which rows pin down i

def theorem_row(p: int, k: int, i: int) -> str | None:
    """Which exact-value or bound statement covers index i (mod p^2), if any.

    Returns ``"A"`` on the first interval 0 <= i <= p, one of
    ``"C.exceptional"``, ``"C.1"`` ... ``"C.5"`` on the ranges
    np <= i <= np + p - k + 1 (rows ordered by i' as in the bound table),
    and None elsewhere.
    """
    if 0 <= i <= p:
        return "A"
    if not in_exceptional_range(p, k, i):
        return None
    n, ip = divmod(i, p)
    if is_exceptional(p, k, i):
        return "C.exceptional"
    if ip == 0:
        return "C.1"
    if ip == p - k + 1:
        return "C.5"
    if ip <= p - k + 1 - n:
        return "C.2" if ip < n else "C.3"
    return "C.4"


_EXACT_ROWS = {"A", "C.2", "C.3"}


def _status_direct(p, k, i):
    row = theorem_row(p, k, i)
    if row is None:
        return "engine-computed"
    return "exact" if row in _EXACT_ROWS else "theorem-bound"


def theorem_status(p: int, k: int, i: int) -> str:
    """exact / theorem-bound / engine-computed, using periodicity for i >= 2."""
    rank = {"exact": 2, "theorem-bound": 1, "engine-computed": 0}
    period = p * (p - 1)
    best = _status_direct(p, k, i)
    j = i
    while j - period >= 2:
        j -= period
        alt = _status_direct(p, k, j)
        if rank[alt] > rank[best]:
            best = alt
    return best


def coverage(records: list[FiltrationRecord], p: int) -> dict:
    upto = p * (p - 1) + 1
    considered = [r for r in records if r.i <= upto]
    total = len(considered)
    exact = sum(r.status == "exact" for r in considered)
    bounded = sum(r.status in ("exact", "theorem-bound") for r in considered)
    return {
        "positions": total,
        "exact": exact,
        "bounded": bounded,
        "exact_fraction": exact / total if total else 0.0,
        "bounded_fraction": bounded / total if total else 0.0,
    }


# ---------------------------------------------------------------- ordinarity

def ordinarity_criteria(f: QSeries, guard: int = DEFAULT_GUARD) -> tuple[bool, bool]:
    """(coefficient scan, theta^(p-1) fixed point) verdicts of ordinarity mod p.

    f must be tagged with its weight and carry enough precision for the
    Sturm-type bound dim M_{k + (p+1)(p-1)}.
    """
    p = f.modulus.p
    k = f.weight_tag
    mod_p = f.reduce(1) if f.modulus.m > 1 else f
    need = dimension(k + (p + 1) * (p - 1)) + guard
    if f.precision < need:
        raise ValueError(f"ordinarity test needs precision {need}, got {f.precision}")
    g = mod_p.truncate(need)
    scan = bool(np.any(g.coeffs[::p][1:] % p))
    iterated = g
    for _ in range(p - 1):
        iterated = iterated.theta()
    fixed = iterated.agrees_with(g)
    return scan, not fixed


def is_ordinary(f, p: int, guard: int = DEFAULT_GUARD) -> bool:
    """Whether some a(np) is nonzero mod p (no U_p congruence)."""
    if isinstance(f, str):
        f = FormExpr.parse(f)
    if isinstance(f, FormExpr):
        k = f.weight
        N = dimension(k + (p + 1) * (p - 1)) + guard
        f = eval_form_expr(f, Modulus(p, 1), N)
    if f.reduce(1).is_zero():
        raise ValueError("form vanishes modulo p")
    scan, fixed_point = ordinarity_criteria(f, guard)
    if scan != fixed_point:
        raise RuntimeError("ordinarity criteria disagree")
    return scan


# ------------------------------------------------------------ classification

def _lt(a, b):
    # None is the zero series, filtration minus infinity
    if a is None:
        return b is not None
    if b is None:
        return False
    return a < b


def classify_points(report: CycleReport) -> CycleReport:
    recs = report.records
    out = []
    for idx, r in enumerate(recs):
        if idx == 0 or idx == len(recs) - 1:
            label = "boundary"
        else:
            prev, cur, nxt = recs[idx - 1].weight_filt, r.weight_filt, recs[idx + 1].weight_filt
            if _lt(cur, prev) and _lt(cur, nxt):
                label = "low"
            elif _lt(cur, nxt):
                label = "rise"
            elif _lt(nxt, cur):
                label = "fall"
            else:
                label = "plateau"
        out.append(replace(r, classification=label))
    report.records = out
    return report


# ------------------------------------------------------------------- cycles

def _initial_precision(mod: Modulus, k: int, i_max: int, guard: int) -> int:
    p = mod.p
    if mod.m == 1:
        top = k + (p + 1) * p + 2 * p
    else:
        top = k + 6 * p * (p - 1) + 2 * min(i_max, p * (p - 1))
    return dimension(top) + guard + 8


def _theta_power(base: QSeries, i: int) -> QSeries:
    pm = base.modulus.pm
    powers = np.array([pow(n, i, pm) for n in range(base.precision)], dtype=np.int64)
    return QSeries(base.modulus, base.coeffs * powers % pm)


def check_hypothesis(f: FormExpr, p: int, guard: int = DEFAULT_GUARD) -> int:
    """omega_p(f); raises HypothesisError unless 0 < k < p and omega_p(f) = k."""
    k = f.weight
    mod = Modulus(p, 1)
    s = eval_form_expr(f, mod, dimension(k) + guard)
    if s.is_zero():
        raise HypothesisError(f"form {f} vanishes modulo {p}")
    w = weight_filtration(s, guard).value
    if not 0 < k < p:
        raise HypothesisError(f"weight k = {k} is not in 0 < k < p = {p}")
    if w != k:
        raise HypothesisError(f"omega_{p}({f}) = {w} != {k}")
    return w


def compute_cycle(f, p: int, m: int = 2, i_max: int | None = None,
                  precision: int | None = None, theorem_mode: bool = True,
                  method: str = "xbasis", guard: int = DEFAULT_GUARD, cache=None,
                  classify: bool = True) -> CycleReport:
    """Weight and factor filtrations of theta^i f for 0 <= i <= i_max.

    ``f`` is a :class:`FormExpr` or its string form.  In theorem mode the
    standing hypothesis 0 < k < p, omega_p(f) = k is verified first.
    """
    if isinstance(f, str):
        f = FormExpr.parse(f)
    mod = Modulus(p, m)
    step = theta_step(mod)
    k = f.weight
    if i_max is None:
        i_max = extended_length(mod)
    if theorem_mode:
        check_hypothesis(f, p, guard)
    N = precision or _initial_precision(mod, k, i_max, guard)
    base = eval_form_expr(f, mod, N)
    if base.reduce(1).is_zero():
        raise HypothesisError(f"form {f} vanishes modulo {p}")
    try:
        ordinary = is_ordinary(f, p, guard)
    except ValueError:
        ordinary = None

    weights: list[int | None] = []
    factors: list[int | None] = []
    s = base
    W = k
    i = 0
    while i <= i_max:
        if weights and weights[-1] is None:
            weights.append(None)
            factors.append(None)
            i += 1
            continue
        if i > 0:
            W = weights[-1] + step
        need = dimension(W) + guard
        if need > s.precision:
            if precision is not None:
                raise ValueError(f"precision {precision} too small at i = {i} (need {need})")
            N = max(need + need // 4, int(N * 1.5))
            log.info("raising precision to %d at i = %d", N, i)
            base = eval_form_expr(f, mod, N)
            s = _theta_power(base, i)
        elif i > 0:
            s = s.theta()
        s = s.with_weight(W)
        wf = weight_filtration(s, guard, method, cache)
        ff = factor_filtration(s, guard, method, cache, start=wf)
        weights.append(wf.value)
        factors.append(ff.value)
        i += 1

    use_rows = theorem_mode and m == 2
    records = []
    for i, (w, fv) in enumerate(zip(weights, factors)):
        n, ip = divmod(i, p)
        if use_rows:
            status = theorem_status(p, k, i)
        elif theorem_mode:
            status = "exact"  # the cycle modulo p is completely known
        else:
            status = "engine-computed"
        records.append(FiltrationRecord(i, n, ip, w, fv, status,
                                        exceptional=is_exceptional(p, k, i)))
    report = CycleReport(mod, k, str(f), i_max, records, ordinary,
                         exceptional_indices=[r.i for r in records if r.exceptional],
                         precision=N, theorem_mode=theorem_mode)
    if use_rows:
        report.coverage = coverage(records, p)
    if classify:
        classify_points(report)
    return report
