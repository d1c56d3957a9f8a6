"""Command line: ``thetacycles {cycle,verify,figure,exceptional}``."""
from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import io as tio
from .cycle import HypothesisError, compute_cycle, exceptional_indices
from .forms import FormExpr
from .series import Modulus

log = logging.getLogger("thetacycles")


@dataclass(frozen=True)
class RunConfig:
    command: str
    primes: tuple[int, ...]
    m: int
    form: str
    i_max: int | None
    precision: int | None
    fmt: str
    out: str | None
    cache_dir: str | None
    jobs: int
    method: str
    theorem_mode: bool
    claims: tuple[str, ...] = ("all",)
    k: int | None = None


def _primes(values) -> tuple[int, ...]:
    out = []
    for v in values:
        for tok in str(v).split(","):
            tok = tok.strip()
            if tok:
                out.append(int(tok))
    return tuple(out)


def _validate(cfg: RunConfig) -> None:
    if not cfg.primes:
        raise ValueError("at least one --p is required")
    for p in cfg.primes:
        Modulus(p, 1)
    if cfg.m not in (1, 2):
        raise ValueError(f"m must be 1 or 2, got {cfg.m}")
    if cfg.command != "exceptional" or cfg.k is None:
        FormExpr.parse(cfg.form)


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", text).strip("_") or "form"


def _cycle(cfg: RunConfig, p: int, m: int | None = None):
    if cfg.cache_dir:
        tio.set_default_cache(tio.BasisCache(cfg.cache_dir))
    return compute_cycle(cfg.form, p, cfg.m if m is None else m, i_max=cfg.i_max,
                         precision=cfg.precision, theorem_mode=cfg.theorem_mode,
                         method=cfg.method)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        tio.atomic_write_text(Path(path), text)


def _out_path(cfg: RunConfig, p: int, suffix: str) -> str | None:
    """--out names a file for a single prime, or a directory for several."""
    if cfg.out is None:
        return None
    if len(cfg.primes) == 1 and not cfg.out.endswith(os.sep):
        return cfg.out
    return os.path.join(cfg.out, f"theta-{_slug(cfg.form)}-p{p}-m{cfg.m}.{suffix}")


def _job(args):
    cfg, p = args
    if cfg.command == "cycle":
        report = _cycle(cfg, p)
        text = tio.report_to_json(report) if cfg.fmt == "json" else tio.report_to_csv(report)
        if cfg.fmt == "svg":
            from .svg import cycle_svg
            return [(_out_path(cfg, p, "svg"), cycle_svg(report)),
                    (_svg_csv_path(_out_path(cfg, p, "svg")), text)]
        return [(_out_path(cfg, p, cfg.fmt), text)]
    if cfg.command == "figure":
        from .svg import cycle_svg
        report = _cycle(cfg, p)
        mod_p = None
        if cfg.m == 2:
            mod_p = compute_cycle(cfg.form, p, 1, theorem_mode=cfg.theorem_mode,
                                  method=cfg.method)
        svg_path = _out_path(cfg, p, "svg") or f"theta-{_slug(cfg.form)}-p{p}-m{cfg.m}.svg"
        return [(svg_path, cycle_svg(report, mod_p)),
                (_svg_csv_path(svg_path), tio.report_to_csv(report))]
    if cfg.command == "verify":
        from .verify import run_claims, summary_table, to_jsonl
        outcomes = run_claims(cfg.form, p, cfg.claims)
        fails = sum(o.verdict == "fail" for o in outcomes)
        return [(_out_path(cfg, p, "jsonl"), to_jsonl(outcomes)),
                ("stderr", f"p = {p}\n{summary_table(outcomes)}\n"), ("fails", fails)]
    raise ValueError(cfg.command)


def _svg_csv_path(svg_path: str | None) -> str | None:
    if svg_path is None:
        return None
    return str(Path(svg_path).with_suffix(".csv"))


def _run_jobs(cfg: RunConfig) -> int:
    tasks = [(cfg, p) for p in cfg.primes]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_job, tasks))
    else:
        results = [_job(t) for t in tasks]
    fails = 0
    for items in results:
        for target, payload in items:
            if target == "stderr":
                sys.stderr.write(payload)
            elif target == "fails":
                fails += payload
            else:
                _write(target, payload)
    if cfg.command == "verify":
        return 1 if fails else 0
    return 0


def cmd_exceptional(cfg: RunConfig) -> int:
    k = cfg.k if cfg.k is not None else FormExpr.parse(cfg.form).weight
    lines = []
    for p in cfg.primes:
        for i in exceptional_indices(p, k):
            n, ip = divmod(i, p)
            lines.append(f"{p},{k},{i},{n},{ip}\n")
    _write(cfg.out, "p,k,i,n,i_prime\n" + "".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thetacycles",
                                     description="Theta cycles of modular forms mod p and p^2")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, form_default="Delta"):
        sp.add_argument("--p", action="append", default=[], required=True,
                        help="prime(s); repeat or separate by commas")
        sp.add_argument("--form", default=form_default,
                        help='e.g. "Delta", "E4*Delta", "3/2*E4^2*E6 + Delta"')
        sp.add_argument("--out", help="output file (one prime) or directory (several)")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes across primes")

    def engine(sp):
        sp.add_argument("--m", type=int, default=2, choices=(1, 2))
        sp.add_argument("--i-max", type=int, dest="i_max")
        sp.add_argument("--precision", type=int)
        sp.add_argument("--cache-dir", dest="cache_dir",
                        help=f"basis cache directory (env {tio.CACHE_ENV})")
        sp.add_argument("--method", default="xbasis", choices=("xbasis", "echelon"))
        sp.add_argument("--engine", action="store_true",
                        help="skip the theorem hypothesis and mark all rows engine-computed")

    sp = sub.add_parser("cycle", help="weight and factor filtrations along the theta cycle")
    common(sp)
    engine(sp)
    sp.add_argument("--format", dest="fmt", default="csv", choices=("csv", "json", "svg"))

    sp = sub.add_parser("verify", help="check the stated exact values, bounds and identities")
    common(sp)
    sp.add_argument("--claims", default="all",
                    help="comma list of prop2.2, thmA, thmC, corB, corD, lemma2.4, bounds,"
                         " identities, all")

    sp = sub.add_parser("figure", help="SVG chart of the cycle plus its CSV")
    common(sp)
    engine(sp)

    sp = sub.add_parser("exceptional", help="exceptional indices with their (n, i') split")
    common(sp)
    sp.add_argument("--k", type=int)
    return parser


def config_from_args(ns) -> RunConfig:
    return RunConfig(
        command=ns.command,
        primes=_primes(ns.p),
        m=getattr(ns, "m", 2),
        form=ns.form,
        i_max=getattr(ns, "i_max", None),
        precision=getattr(ns, "precision", None),
        fmt=getattr(ns, "fmt", "csv"),
        out=ns.out,
        cache_dir=getattr(ns, "cache_dir", None),
        jobs=max(1, ns.jobs),
        method=getattr(ns, "method", "xbasis"),
        theorem_mode=not getattr(ns, "engine", False),
        claims=tuple(c for c in getattr(ns, "claims", "all").split(",") if c),
        k=getattr(ns, "k", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        cfg = config_from_args(ns)
        _validate(cfg)
        if cfg.command == "exceptional":
            return cmd_exceptional(cfg)
        return _run_jobs(cfg)
    except HypothesisError as exc:
        print(f"thetacycles: hypothesis failed: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OverflowError) as exc:
        print(f"thetacycles: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
