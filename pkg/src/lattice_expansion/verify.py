"""Named verification suites.

Each suite checks a family of exact identities or coefficientwise
inequalities and returns a `Report`.  A report stops at the first failing
check and records which identity failed and at which coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Callable

from . import generating as gen
from . import lace, onept, polyd
from .clusters import count
from .lattice import l1, unit_vectors
from .series import Series, SiteSeries


@dataclass
class Check:
    identity: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [{"identity": c.identity, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


class _Stop(Exception):
    pass


class _Recorder:
    def __init__(self, suite: str):
        self.report = Report(suite)

    def add(self, identity: str, passed: bool, detail: str = "") -> None:
        self.report.checks.append(Check(identity, passed, detail))
        if not passed:
            raise _Stop

    def series_eq(self, identity: str, lhs: Series, rhs: Series, upto: int | None = None) -> None:
        if upto is not None:
            lhs, rhs = lhs.truncate(upto), rhs.truncate(upto)
        n = lhs.first_difference(rhs)
        if n is None:
            self.add(identity, True, f"exact through z^{min(lhs.order, rhs.order)}")
        else:
            self.add(identity, False, f"[z^{n}]: lhs = {lhs[n]}, rhs = {rhs[n]}")

    def series_le(self, identity: str, lhs: Series, rhs: Series, where: str = "") -> None:
        for n, (a, b) in enumerate(zip(lhs, rhs)):
            if a > b:
                self.add(identity, False, f"{where}[z^{n}]: {a} > {b}")
        self.add(identity, True, where or "coefficientwise")

    def site_eq(self, identity: str, lhs: SiteSeries, rhs: SiteSeries) -> None:
        for x in sorted(set(lhs.support()) | set(rhs.support())):
            n = lhs[x].first_difference(rhs[x])
            if n is not None:
                self.add(identity, False, f"x = {x}, [z^{n}]: lhs = {lhs[x][n]}, rhs = {rhs[x][n]}")
        self.add(identity, True, f"exact at {len(lhs.support())} sites")


def _run(suite: str, body: Callable[[_Recorder], None]) -> Report:
    rec = _Recorder(suite)
    try:
        body(rec)
    except _Stop:
        pass
    return rec.report


def _models(model: str | None) -> tuple[str, ...]:
    return (model,) if model else ("tree", "animal")


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_onept(model=None, d=2, N=6) -> Report:
    def body(rec):
        for m in _models(model):
            e = onept.expansion(m, d, N)
            key = "g = Gamma0 - Gamma1 + Gamma2 - Gamma3 + tilde-Gamma4 + g_circ"
            rec.series_eq(f"{m}: one-point expansion {key}", *e.identities()[key])
            rec.series_eq(f"{m}: Gamma0 = exp(2d r)", *e.identities()["Gamma0 = exp(2d r)"])
    return _run("onept", body)


def suite_gams(model=None, d=2, N=6) -> Report:
    skip = {"Gamma0 = exp(2d r)", "g = Gamma0 - Gamma1 + Gamma2 - Gamma3 + tilde-Gamma4 + g_circ"}

    def body(rec):
        for m in _models(model):
            for name, (lhs, rhs) in onept.expansion(m, d, N).identities().items():
                if name not in skip:
                    rec.series_eq(f"{m}: {name}", lhs, rhs)
    return _run("gams", body)


def suite_rgG(model=None, d=2, N=6) -> Report:
    def body(rec):
        for m in _models(model):
            g = gen.one_point(m, d, N)
            G = gen.two_point(m, d, N)
            for s in unit_vectors(d):
                r = gen.planted(m, d, N, s)
                rec.series_eq(f"{m}: r = z g - z G(s), s = {s}", r, g.shift(1) - G[s].shift(1))
    return _run("rgG", body)


def suite_chi(model=None, d=2, N=6) -> Report:
    def body(rec):
        for m in _models(model):
            chi = gen.susceptibility(m, d, N)
            dzg = gen.one_point(m, d, N).times_z().derivative()
            if m == "tree":
                rec.series_eq("tree: chi = (z g)'", chi, dzg)
            else:
                rec.series_le("animal: chi <= (z g)'", chi, dzg)
    return _run("chi", body)


def suite_lace(model=None, d=2, N=6) -> Report:
    def body(rec):
        for m in _models(model):
            sol = lace.pi_solve(m, d, N)
            rec.site_eq(f"{m}: G = delta g + Pi + g (2dzD * G) + Pi * 2dzD * G",
                        SiteSeries(d, N), sol.residual)
            rec.series_eq(f"{m}: chi (1 - 2dz (g + Pi-hat)) = g + Pi-hat", sol.le_lhs, sol.le_rhs)
            rec.site_eq(f"{m}: avoiding backbone sum = G", lace.avoiding_sum(m, d, min(N, 4)),
                        gen.two_point(m, d, min(N, 4)))
            scan = lace.order_scan(m, d, 3, N)
            upto = min(N, scan.absent_through())
            rec.add(f"{m}: no 3-edge lace below z^{upto + 1}", upto >= 3,
                    f"first order with a 3-edge lace: {scan.first_order}")
            rec.series_eq(f"{m}: Pi-hat = Pi-hat(0) - Pi-hat(1) + Pi-hat(2)",
                          sol.Pi_hat, lace.alternating_pi_hat(m, d, N), upto=upto)
    return _run("lace", body)


def suite_qdecomp(model=None, d=2, N=6) -> Report:
    def body(rec):
        for m in _models(model):
            q = gen.Q(m, d, N)
            levels = gen.Q_levels(m, d, N)
            total = SiteSeries(d, N)
            for part in levels.values():
                total = total + part
            rec.site_eq(f"{m}: Q = sum_n Q^n", q, total)
            s = unit_vectors(d)[0]
            rec.add(f"{m}: [z^1] Q(s) = 2", q[s][1] == 2, f"[z^1] Q(s) = {q[s][1]}")
    return _run("qdecomp", body)


def suite_smn(model=None, d=2, N=6) -> Report:
    def body(rec):
        for m in _models(model):
            q = gen.Q(m, d, N)
            bounds: dict[int, SiteSeries] = {}
            for x in q.support():
                k = l1(x)
                if k not in bounds:
                    bounds[k] = gen.S_mn(m, d, N, k, 2)
                for n, (a, b) in enumerate(zip(q[x], bounds[k][x])):
                    if a > b:
                        rec.add(f"{m}: Q(x) <= S^(|x|,2)(x)", False, f"x = {x}, [z^{n}]: {a} > {b}")
            rec.add(f"{m}: Q(x) <= S^(|x|,2)(x)", True, f"{len(q.support())} sites")
            if m == "tree":
                for i in range(1, 4):
                    chk = gen.gk_bound(m, d, N, i)
                    detail = "" if chk.holds else "x = {}, [z^{}]: {} > {}".format(*chk.violations[0])
                    rec.add(f"tree: G^({i}) <= (2dz g)^{i} (D^*{i} * G)", chk.holds, detail)
    return _run("smn", body)


def suite_polyd(model=None, d=None, N=5) -> Report:
    def body(rec):
        polys = {}
        for m in _models(model):
            polys[m] = polyd.count_polynomials(m, N)
            for dim in range(1, 5):
                direct = count(m, dim, N).counts
                for n, p in enumerate(polys[m]):
                    v = p(dim)
                    if v != direct[n]:
                        rec.add(f"{m}: count polynomial at d = {dim}", False, f"n = {n}: {v} != {direct[n]}")
                rec.add(f"{m}: count polynomial at d = {dim}", True, f"n <= {N}")
            if m == "tree":
                for n, p in enumerate(polys[m]):
                    rec.add(f"tree: deg t_{n} = {n}", p.degree == n and p.leading > 0,
                            f"degree {p.degree}, leading {p.leading}")
        if "tree" in polys and "animal" in polys:
            for n in range(N + 1):
                diff = polys["animal"][n] - polys["tree"][n]
                ok = diff.degree <= n - 2 or (n < 2 and diff.degree < 0)
                rec.add(f"deg(a_{n} - t_{n}) <= {n - 2}", ok, f"degree {diff.degree}")
    return _run("polyd", body)


def double_factorial(k: int) -> int:
    return prod(range(k, 0, -2)) if k > 0 else 1


def suite_dkernel(model=None, d=6, N=3) -> Report:
    d_max = d or 6

    def body(rec):
        rec.add("D^{*4}(0) = 9/64 at d = 2", gen.kernel_power(2, 4)[(0, 0)][0] == Fraction(9, 64),
                f"{gen.kernel_power(2, 4)[(0, 0)][0]}")
        for dim in range(1, d_max + 1):
            for m in range(1, min(N, 3) + 1):
                v = gen.closed_walk_return(dim, m)
                bound = double_factorial(2 * m - 1)
                rec.add(f"(2d)^{m} D^*{2 * m}(0) <= {bound}, d = {dim}", v <= bound, f"{v}")
    return _run("dkernel", body)


SUITES: dict[str, Callable[..., Report]] = {
    "onept": suite_onept,
    "gams": suite_gams,
    "rgG": suite_rgG,
    "lace": suite_lace,
    "qdecomp": suite_qdecomp,
    "smn": suite_smn,
    "polyd": suite_polyd,
    "chi": suite_chi,
    "dkernel": suite_dkernel,
}


class UnknownSuiteError(KeyError):
    pass


def verify(suite: str, model: str | None = None, d: int | None = None, N: int | None = None) -> Report:
    try:
        fn = SUITES[suite]
    except KeyError:
        raise UnknownSuiteError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}") from None
    kwargs = {"model": model}
    if d is not None:
        kwargs["d"] = d
    if N is not None:
        kwargs["N"] = N
    return fn(**kwargs)
