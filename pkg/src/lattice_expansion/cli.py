"""Command-line interface: ``lattice-expansion <command> [options]``.

Every command prints a document that records the engine version and the
full run configuration, so reruns with the same arguments produce
byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 resource ceiling exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import expansion as ex
from . import generating as gen
from . import lace, onept, polyd
from .clusters import CountCache, ResourceCeilingError, count
from .lattice import unit_vectors
from .verify import SUITES, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CEILING = 0, 1, 2, 3
CACHE_ENV = "LATTICE_EXPANSION_CACHE"


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: str | None
    d: int | None
    N: int | None
    suite: str | None
    workers: int
    cache_dir: str | None
    format: str


@dataclass
class Output:
    result: dict
    columns: list[str]
    rows: list[list]
    status: int = EXIT_OK


def _q(x) -> str:
    """Exact rational as text; integers without a denominator."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _series_rows(N: int, named: dict) -> tuple[list[str], list[list]]:
    cols = ["n", *named]
    rows = [[n, *(_q(s[n]) if n <= s.order else "" for s in named.values())] for n in range(N + 1)]
    return cols, rows


def _series_json(named: dict) -> dict:
    return {k: [_q(c) for c in s] for k, s in named.items()}


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_count(cfg: RunConfig) -> Output:
    cache = CountCache(cfg.cache_dir) if cfg.cache_dir else None
    table = count(cfg.model, cfg.d, cfg.N, workers=cfg.workers, cache=cache)
    rows = [[n, c] for n, c in enumerate(table.counts)]
    return Output({"counts": [str(c) for c in table.counts]}, ["n", "count"], rows)


def cmd_series(cfg: RunConfig) -> Output:
    b = gen.bundle(cfg.model, cfg.d, cfg.N)
    named = {"g": b.g, "g_circ": b.g_circ, "r": b.r, "chi": b.chi}
    cols, rows = _series_rows(cfg.N, named)
    result = _series_json(named)
    result["G"] = {",".join(map(str, x)): [_q(c) for c in s] for x, s in b.G.items()}
    return Output(result, cols, rows)


def cmd_q(cfg: RunConfig) -> Output:
    s = unit_vectors(cfg.d)[0]
    named = {"Q(s)": gen.Q(cfg.model, cfg.d, cfg.N)[s]}
    for k, part in gen.Q_levels(cfg.model, cfg.d, cfg.N).items():
        if not part[s].is_zero():
            named[f"Q^{k}(s)"] = part[s]
    named["Q*(s)"] = gen.Q_star(cfg.model, cfg.d, cfg.N, s)
    cols, rows = _series_rows(cfg.N, named)
    return Output({"s": list(s), **_series_json(named)}, cols, rows)


def cmd_pi(cfg: RunConfig) -> Output:
    m, d, N = cfg.model, cfg.d, cfg.N
    sol = lace.pi_solve(m, d, N)
    named = {"Pi_hat": sol.Pi_hat}
    if m == "animal":
        named["Pi_hat(0)"] = lace.pi0(d, N).total()
    named["Pi_hat(1)"] = lace.pi1(m, d, N).total()
    named["Pi_hat(2)"] = lace.pi2(m, d, N).total()
    cols, rows = _series_rows(N, named)
    scan = lace.order_scan(m, d, 3, N)
    result = {
        **_series_json(named),
        "residual_zero": sol.residual_zero,
        "le_holds": sol.le_holds,
        "three_edge_laces_absent_through": scan.absent_through(),
    }
    return Output(result, cols, rows)


def cmd_gamma(cfg: RunConfig) -> Output:
    e = onept.expansion(cfg.model, cfg.d, cfg.N)
    named = {
        "g": e.g, "Gamma0": e.Gamma0, "Gamma1": e.Gamma1, "Gamma2": e.Gamma2, "Gamma3": e.Gamma3,
        "Gamma4_tilde": e.Gamma4_tilde, "g_circ": e.g_circ,
        "Z1": e.Z1, "Z2": e.Z2, "Z3": e.Z3, "Z'": e.Zp, "Z''": e.Zpp,
    }
    cols, rows = _series_rows(cfg.N, named)
    result = _series_json(named)
    result["identities"] = {k: lhs == rhs for k, (lhs, rhs) in e.identities().items()}
    return Output(result, cols, rows)


def cmd_polyd(cfg: RunConfig) -> Output:
    table = polyd.proper_counts(cfg.model, cfg.N)
    polys = [polyd.poly_from_proper(table, n) for n in range(cfg.N + 1)]
    rows = [[n, str(p)] for n, p in enumerate(polys)]
    result = {"proper": table.to_json()["P"], "polynomials": [p.to_json() for p in polys]}
    return Output(result, ["n", "count(d)"], rows)


def cmd_expansion_table(cfg: RunConfig, dims: list[int]) -> Output:
    rows_ = ex.expansion_table(cfg.model, cfg.N, dims)
    cols = ["quantity", "order", "status", "bracket", "coefficient", *(f"d={d}" for d in dims)]
    rows = [[r.quantity, r.order, r.status, str(r.bracket), str(r.coefficient),
             *(ex.render(r.partial_sums[d]) for d in dims)] for r in rows_]
    result = {"rows": [
        {"quantity": r.quantity, "order": r.order, "status": r.status,
         "bracket": r.bracket.to_json(), "coefficient": r.coefficient.to_json(),
         "partial_sums": {str(d): ex.render(r.partial_sums[d]) for d in dims}}
        for r in rows_
    ]}
    return Output(result, cols, rows)


def cmd_ratio(cfg: RunConfig) -> Output:
    cache = CountCache(cfg.cache_dir) if cfg.cache_dir else None
    rep = ex.ratio_report(cfg.model, cfg.d, cfg.N, workers=cfg.workers, cache=cache)
    rows = [[n + 1, _q(r), ex.render(float(r))] for n, r in enumerate(rep.ratios)]
    result = {
        "counts": [str(c) for c in rep.counts],
        "ratios": [_q(r) for r in rep.ratios],
        "lambda_pred": ex.render(rep.lambda_pred),
        "final_within_factor_2": rep.within_factor(2),
    }
    return Output(result, ["n+1", "ratio", "float"], rows)


def cmd_verify(cfg: RunConfig) -> Output:
    rep = verify(cfg.suite, cfg.model, cfg.d, cfg.N)
    rows = [[c.identity, "pass" if c.passed else "FAIL", c.detail] for c in rep.checks]
    return Output(rep.to_json(), ["identity", "status", "detail"], rows,
                  EXIT_OK if rep.passed else EXIT_FAIL)


def cmd_cache(cfg: RunConfig, action: str) -> Output:
    cache = CountCache(cfg.cache_dir) if cfg.cache_dir else CountCache()
    paths = cache.gc() if action == "gc" else cache.entries()
    names = [p.name for p in paths]
    return Output({"action": action, "entries": names}, ["entry"], [[n] for n in names])


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def render(cfg: RunConfig, out: Output) -> str:
    header = {"engine": f"lattice_expansion {__version__}", "config": asdict(cfg)}
    if cfg.format == "json":
        return json.dumps({**header, "result": out.result}, indent=2, sort_keys=True) + "\n"
    lines = [f"# engine: {header['engine']}", "# config: " + json.dumps(header["config"], sort_keys=True)]
    cells = [[str(c) for c in row] for row in out.rows]
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(out.columns)
        w.writerows(cells)
        return "\n".join(lines) + "\n" + buf.getvalue()
    widths = [max(len(str(h)), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(out.columns)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    body = [fmt.format(*out.columns).rstrip()] + [fmt.format(*r).rstrip() for r in cells]
    return "\n".join(lines + body) + "\n"


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

_DEFAULTS = {
    # command: (d, N)
    "count": (2, 6),
    "series": (2, 6),
    "q": (2, 6),
    "pi": (2, 6),
    "gamma": (2, 6),
    "polyd": (None, polyd.DEFAULT_PROPER_MAX),
    "expansion-table": (None, ex.MAX_ORDER),
    "ratio": (3, 7),
    "verify": (None, None),
    "cache": (None, None),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=("tree", "animal"), default=None,
                        help="cluster model (default: tree; verify runs both)")
    common.add_argument("--dim", "-d", type=int, default=None, help="lattice dimension")
    common.add_argument("--order", "-N", type=int, default=None, help="truncation order")
    common.add_argument("--workers", type=int, default=1, help="processes for enumeration")
    common.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV),
                        help=f"count cache directory (default: ${CACHE_ENV})")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = argparse.ArgumentParser(prog="lattice-expansion", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("count", parents=[common], help="cluster counts by bond number")
    sub.add_parser("series", parents=[common], help="g, g_circ, r, chi and G")
    sub.add_parser("q", parents=[common], help="Q(s), its path-length split and Q*(s)")
    sub.add_parser("pi", parents=[common], help="Pi-hat and its 0-, 1- and 2-lace parts")
    sub.add_parser("gamma", parents=[common], help="one-point expansion terms")
    sub.add_parser("polyd", parents=[common], help="counts as polynomials in d")
    et = sub.add_parser("expansion-table", parents=[common], help="z_c and g_c coefficients")
    et.add_argument("--dims", type=int, nargs="+", default=[8, 12, 16], help="d values for partial sums")
    sub.add_parser("ratio", parents=[common], help="ratio method against the three-term z_c")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    c = sub.add_parser("cache", parents=[common], help="manage the count cache")
    c.add_argument("action", choices=("ls", "gc"))
    return p


def _config(args) -> RunConfig:
    d0, n0 = _DEFAULTS[args.command]
    model = args.model
    if model is None and args.command not in ("verify", "cache"):
        model = "tree"
    return RunConfig(
        command=args.command,
        model=model,
        d=args.dim if args.dim is not None else d0,
        N=args.order if args.order is not None else n0,
        suite=getattr(args, "suite", None),
        workers=args.workers,
        cache_dir=args.cache_dir,
        format=args.format,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = _config(args)
    handlers = {
        "count": cmd_count,
        "series": cmd_series,
        "q": cmd_q,
        "pi": cmd_pi,
        "gamma": cmd_gamma,
        "polyd": cmd_polyd,
        "expansion-table": lambda c: cmd_expansion_table(c, args.dims),
        "ratio": cmd_ratio,
        "verify": cmd_verify,
        "cache": lambda c: cmd_cache(c, args.action),
    }
    try:
        out = handlers[cfg.command](cfg)
    except ResourceCeilingError as exc:
        print(f"lattice-expansion: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except (ValueError, KeyError) as exc:
        print(f"lattice-expansion: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(cfg, out))
    return out.status


if __name__ == "__main__":
    sys.exit(main())
