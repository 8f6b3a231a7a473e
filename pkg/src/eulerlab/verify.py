"""Named verification suites and machine-readable reports.

Every case is a pure function returning (lhs, rhs, tolerance); the runner
computes |lhs - rhs|, compares against the tolerance, and serializes all four
quantities as 30-digit decimal strings so reports are bit-identical across
platforms.  Cases may run on a worker pool; results are always emitted in id
order, so the report never depends on scheduling.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .hpreal import ExtReal, parse_decimal, to_decimal
from .zeta_core import zeta, zeta_bar
from . import euler_sums as es
from . import genfun
from . import hypergeom as hg
from . import zagier as zg

__all__ = [
    "CaseResult",
    "VerifyReport",
    "SUITES",
    "run_suite",
    "FAST_N_MAX",
    "SLOW_N_MAX",
]

FAST_N_MAX = 100_000
SLOW_N_MAX = 1_000_000

# a case function returns (lhs, rhs); residual = |lhs - rhs|
CaseFn = Callable[[], Tuple[ExtReal, ExtReal]]


@dataclass(frozen=True)
class CaseResult:
    id: str
    lhs: str
    rhs: str
    residual: str
    tolerance: str
    passed: bool

    def as_dict(self) -> Dict[str, object]:
        return {
            "id": self.id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class VerifyReport:
    suite: str
    cases: List[CaseResult] = field(default_factory=list)
    wall_time_ms: int = 0

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def as_dict(self) -> Dict[str, object]:
        return {
            "suite": self.suite,
            "cases": [c.as_dict() for c in self.cases],
            "wall_time_ms": self.wall_time_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def table(self) -> str:
        lines = [f"suite: {self.suite}"]
        width = max((len(c.id) for c in self.cases), default=10)
        for c in self.cases:
            mark = "pass" if c.passed else "FAIL"
            lines.append(f"  {c.id:<{width}}  residual={c.residual:<36} tol={c.tolerance:<12} {mark}")
        n_fail = sum(1 for c in self.cases if not c.passed)
        lines.append(
            f"  {len(self.cases)} cases, {len(self.cases) - n_fail} passed, "
            f"{n_fail} failed, {self.wall_time_ms} ms"
        )
        return "\n".join(lines)


def _run_case(fn: CaseFn):
    lhs, rhs = fn()
    return ExtReal.from_real(lhs), ExtReal.from_real(rhs)


def _ext(x) -> ExtReal:
    return x if isinstance(x, ExtReal) else ExtReal.from_real(x)


Case = Tuple[str, float, CaseFn]


def _residual_case(cid: str, tol: float, fn: Callable[[], object]) -> Case:
    """Case whose check is |value| <= tol (rhs fixed at 0)."""
    return (cid, tol, lambda: (_ext(fn()), ExtReal(0.0)))


# ---------------------------------------------------------------------------
# Suite builders
# ---------------------------------------------------------------------------

def _suite_stuffle(n_max: int) -> List[Case]:
    cases: List[Case] = []
    for k in (3, 4, 5):
        for r in range(1, k):
            s = k - r
            if s >= 2:
                cases.append(_residual_case(
                    f"stuffle-mixed[r={r},s={s}]", 1e-8,
                    lambda r=r, s=s: es.stuffle_check(r, s, "mixed", n_max).finite))
            cases.append(_residual_case(
                f"stuffle-alt[r={r},s={s}]", 1e-8,
                lambda r=r, s=s: es.stuffle_check(r, s, "alternating", n_max).finite))
    return cases


def _suite_shuffle(n_max: int) -> List[Case]:
    cases: List[Case] = []
    for k in range(3, 9):
        for r in range(1, k):
            s = k - r
            if s >= 2:
                cases.append(_residual_case(
                    f"shuffle-mixed[r={r},s={s}]", 1e-6,
                    lambda r=r, s=s: es.shuffle_check(r, s, "mixed", n_max)))
            cases.append(_residual_case(
                f"shuffle-alt[r={r},s={s}]", 1e-6,
                lambda r=r, s=s: es.shuffle_check(r, s, "alternating", n_max)))
    return cases


def _suite_sumformulas(n_max: int) -> List[Case]:
    return [
        _residual_case(f"sumformula-{which}[k={k}]", 1e-6,
                       lambda k=k, which=which: es.sum_formula_check(k, which, n_max))
        for k in range(3, 9)
        for which in es.SUM_FORMULAS
    ]


_FORM_NAMES = {
    (False, False): ("plain", es.closed_plain),
    (True, False): ("inner-bar", es.closed_bar_r),
    (False, True): ("outer-bar", es.closed_bar_s),
    (True, True): ("both-bars", es.closed_bar_both),
}


def _suite_closedforms(n_max: int, k_cap: int) -> List[Case]:
    cases: List[Case] = []
    for k in range(3, k_cap + 1, 2):
        for r in range(1, k):
            s = k - r
            for (rb, sb), (name, fn) in _FORM_NAMES.items():
                idx = es.DoubleIndex(r, s, rb, sb)
                if idx.convergent:
                    def closed_vs_direct(fn=fn, r=r, s=s, idx=idx):
                        return fn(r, s).finite, es.double_direct(idx, n_max).value
                    cases.append((f"closed-{name}-vs-direct[r={r},s={s}]", 1e-6, closed_vs_direct))
                    cases.append(_residual_case(
                        f"closed-{name}-tcoef[r={r},s={s}]", 1e-24,
                        lambda fn=fn, r=r, s=s: fn(r, s).tcoef))
        for r in range(1, k):
            s = k - r
            def stuffle_mixed(r=r, s=s):
                res = es.stuffle_closed_residual(r, s, "mixed")
                return abs(res.finite) + abs(res.tcoef)
            cases.append(_residual_case(f"stuffle-closed-mixed[r={r},s={s}]", 1e-24, stuffle_mixed))
            def stuffle_alt(r=r, s=s):
                res = es.stuffle_closed_residual(r, s, "alternating")
                return abs(res.finite) + abs(res.tcoef)
            cases.append(_residual_case(f"stuffle-closed-alt[r={r},s={s}]", 1e-24, stuffle_alt))
    return cases


def _suite_genfun(n_max: int) -> List[Case]:
    cases: List[Case] = []
    for k in range(3, 10):
        for rel, fn in (("stuffle", genfun.verify_stuffle_relations),
                        ("shuffle", genfun.verify_shuffle_relations)):
            def finite_part(fn=fn, k=k):
                return fn(k, n_max).finite
            def t_part(fn=fn, k=k):
                return fn(k, n_max).tpart
            cases.append(_residual_case(f"genfun-{rel}-finite[k={k}]", 1e-6, finite_part))
            cases.append(_residual_case(f"genfun-{rel}-tpart[k={k}]", 1e-24, t_part))
        if k % 2 == 1:
            cases.append(_residual_case(
                f"genfun-reduction-finite[k={k}]", 1e-6,
                lambda k=k: genfun.verify_reduction_relations(k, n_max).finite))
            cases.append(_residual_case(
                f"genfun-reduction-tpart[k={k}]", 1e-24,
                lambda k=k: genfun.verify_reduction_relations(k, n_max).tpart))
    return cases


def _rational_grid(seed: int, count: int):
    """Deterministic pseudo-random small rationals avoiding degeneracies."""
    import random

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        def pick():
            num = rng.randint(-8, 12)
            den = rng.randint(1, 6)
            return Fraction(num, den)
        a, b, c = pick(), pick(), pick()
        n = rng.randint(0, 6)
        ok = True
        for l in (c, 1 + a + b - c - n, c - a - b, 1 + a - b, 1 + a - c):
            for i in range(n):
                if l + i == 0:
                    ok = False
        if ok:
            out.append((a, b, c, n))
    return out


def _suite_hyp(n_max: int) -> List[Case]:
    cases: List[Case] = []
    for i, (a, b, c, n) in enumerate(_rational_grid(20250101, 200)):
        cases.append(_residual_case(
            f"saalschutz[{i:03d}]", 0.0,
            lambda a=a, b=b, c=c, n=n: ExtReal.from_fraction(abs(hg.check_saalschutz(a, b, c, n)))))
    for i, (a, b, c, n) in enumerate(_rational_grid(20250202, 200)):
        cases.append(_residual_case(
            f"poch-ratio[{i:03d}]", 0.0,
            lambda a=a, b=b, c=c, n=n: ExtReal.from_fraction(abs(hg.check_poch_ratio(a, b, c, n)))))

    gauss_grid = [
        (Fraction(1), Fraction(1), Fraction(3)),
        (Fraction(1, 2), Fraction(1, 2), Fraction(2)),
        (Fraction(1, 3), Fraction(1, 4), Fraction(5, 3)),
        (Fraction(3, 4), Fraction(1, 5), Fraction(2)),
        (Fraction(1, 2), Fraction(1, 3), Fraction(7, 4)),
        (Fraction(5, 4), Fraction(1, 2), Fraction(11, 4)),
        (Fraction(2, 3), Fraction(2, 3), Fraction(7, 3)),
        (Fraction(1), Fraction(1, 2), Fraction(5, 2)),
        (Fraction(3, 2), Fraction(1, 4), Fraction(11, 4)),
        (Fraction(1, 5), Fraction(1, 5), Fraction(6, 5)),
        (Fraction(7, 4), Fraction(1, 2), Fraction(13, 4)),
        (Fraction(1, 2), Fraction(1, 2), Fraction(3, 2)),
        (Fraction(2), Fraction(1, 3), Fraction(10, 3)),
        (Fraction(1, 6), Fraction(1, 3), Fraction(3, 2)),
        (Fraction(4, 3), Fraction(3, 4), Fraction(3)),
        (Fraction(1, 8), Fraction(1, 8), Fraction(9, 8)),
        (Fraction(5, 6), Fraction(5, 6), Fraction(8, 3)),
        (Fraction(1), Fraction(2), Fraction(4)),
        (Fraction(3, 2), Fraction(3, 2), Fraction(4)),
        (Fraction(1, 4), Fraction(3, 4), Fraction(2)),
    ]
    for i, (a, b, c) in enumerate(gauss_grid):
        cases.append(_residual_case(
            f"gauss[{i:02d}]", 1e-18, lambda a=a, b=b, c=c: hg.check_gauss(a, b, c)))

    kummer_grid = [
        (Fraction(1), Fraction(1, 2)),
        (Fraction(2), Fraction(1, 2)),
        (Fraction(1, 2), Fraction(1, 4)),
        (Fraction(3, 2), Fraction(1, 3)),
        (Fraction(3), Fraction(3, 4)),
        (Fraction(5, 2), Fraction(-1, 2)),
        (Fraction(1, 3), Fraction(1, 6)),
        (Fraction(4), Fraction(1, 5)),
        (Fraction(7, 4), Fraction(-1, 4)),
        (Fraction(5, 4), Fraction(2, 3)),
        (Fraction(2, 3), Fraction(-1, 3)),
        (Fraction(3, 2), Fraction(3, 5)),
        (Fraction(9, 4), Fraction(1, 2)),
        (Fraction(1, 5), Fraction(1, 10)),
        (Fraction(3), Fraction(-1)),
        (Fraction(7, 2), Fraction(2, 5)),
        (Fraction(5), Fraction(1, 2)),
        (Fraction(8, 3), Fraction(5, 6)),
        (Fraction(11, 4), Fraction(-3, 4)),
        (Fraction(6, 5), Fraction(3, 10)),
    ]
    for i, (a, b) in enumerate(kummer_grid):
        cases.append(_residual_case(
            f"kummer[{i:02d}]", 1e-18, lambda a=a, b=b: hg.check_kummer_type(a, b)))

    thm3_grid = [
        (Fraction(1), Fraction(1, 2), Fraction(1, 2)),
        (Fraction(2), Fraction(1, 2), Fraction(1, 2)),
        (Fraction(1), Fraction(1, 3), Fraction(1, 4)),
        (Fraction(1, 2), Fraction(1, 5), Fraction(1, 5)),
        (Fraction(3, 2), Fraction(1, 2), Fraction(1, 3)),
        (Fraction(3), Fraction(1), Fraction(1, 2)),
        (Fraction(5, 2), Fraction(3, 4), Fraction(1, 2)),
        (Fraction(2), Fraction(2, 3), Fraction(1, 3)),
        (Fraction(1, 3), Fraction(1, 8), Fraction(1, 8)),
        (Fraction(4), Fraction(5, 4), Fraction(3, 4)),
        (Fraction(1), Fraction(-1, 2), Fraction(1, 2)),
        (Fraction(3, 4), Fraction(1, 4), Fraction(1, 4)),
        (Fraction(2), Fraction(1, 4), Fraction(3, 4)),
        (Fraction(5), Fraction(2), Fraction(1, 2)),
        (Fraction(7, 2), Fraction(1), Fraction(1)),
        (Fraction(1, 4), Fraction(1, 10), Fraction(1, 10)),
        (Fraction(6), Fraction(5, 2), Fraction(1, 2)),
        (Fraction(3), Fraction(1, 2), Fraction(3, 2)),
        (Fraction(9, 4), Fraction(1, 2), Fraction(7, 8)),
        (Fraction(5, 3), Fraction(1, 3), Fraction(2, 3)),
    ]
    for i, (a, b, c) in enumerate(thm3_grid):
        cases.append(_residual_case(
            f"dougall-limit[{i:02d}]", 1e-18, lambda a=a, b=b, c=c: hg.check_dougall_limit(a, b, c)))

    thm7_s1 = [
        (Fraction(1), (Fraction(1, 3), Fraction(1, 3)), (Fraction(1, 4), Fraction(1, 4))),
        (Fraction(1), (Fraction(1, 4), Fraction(1, 5)), (Fraction(1, 4), Fraction(1, 5))),
        (Fraction(2), (Fraction(1, 2), Fraction(1, 3)), (Fraction(1, 2), Fraction(1, 4))),
        (Fraction(3, 2), (Fraction(1, 3), Fraction(1, 4)), (Fraction(1, 5), Fraction(1, 6))),
        (Fraction(1, 2), (Fraction(1, 8), Fraction(1, 8)), (Fraction(1, 8), Fraction(1, 8))),
    ]
    for i, (a, bs, cs) in enumerate(thm7_s1):
        cases.append(_residual_case(
            f"andrews-limit-s1[{i}]", 1e-10,
            lambda a=a, bs=bs, cs=cs: hg.check_andrews_limit(1, a, bs, cs)))
    thm7_s2 = [
        (Fraction(1), (Fraction(1, 5),) * 3, (Fraction(1, 5),) * 3),
        (Fraction(1), (Fraction(1, 6), Fraction(1, 5), Fraction(1, 4)),
         (Fraction(1, 6), Fraction(1, 5), Fraction(1, 4))),
        (Fraction(2), (Fraction(1, 4),) * 3, (Fraction(1, 4),) * 3),
        (Fraction(3, 2), (Fraction(1, 5), Fraction(1, 6), Fraction(1, 7)),
         (Fraction(1, 5), Fraction(1, 6), Fraction(1, 7))),
        (Fraction(1, 2), (Fraction(1, 10),) * 3, (Fraction(1, 10),) * 3),
    ]
    for i, (a, bs, cs) in enumerate(thm7_s2):
        cases.append(_residual_case(
            f"andrews-limit-s2[{i}]", 1e-8,
            lambda a=a, bs=bs, cs=cs: hg.check_andrews_limit(2, a, bs, cs)))

    for i, x in enumerate((Fraction(1, 4), Fraction(1, 3), Fraction(2, 5))):
        cases.append(_residual_case(
            f"odd-zeta-series[x={x}]", 1e-18, lambda x=x: hg.check_odd_zeta_series(x)))
    return cases


def _suite_zagier(n_max: int, ab_cap: int) -> List[Case]:
    cases: List[Case] = []
    z3 = zeta(3)
    cases.append(("h-closed[0,0]=zeta3", 1e-24, lambda: (zg.h_closed(0, 0), z3)))
    cases.append(("hstar-closed[0,0]=zeta3", 1e-24, lambda: (zg.hstar_closed(0, 0), z3)))
    for total in range(ab_cap + 1):
        for a in range(total + 1):
            b = total - a
            cases.append((f"h-closed-vs-direct[{a},{b}]", 1e-6,
                          lambda a=a, b=b: (zg.h_closed(a, b),
                                            zg.h_direct(zg.HIndex(a, b, False), n_max).value)))
            cases.append((f"hstar-closed-vs-direct[{a},{b}]", 1e-6,
                          lambda a=a, b=b: (zg.hstar_closed(a, b),
                                            zg.h_direct(zg.HIndex(a, b, True), n_max).value)))
            cases.append((f"hstar-closed-vs-pilehrood[{a},{b}]", 1e-6,
                          lambda a=a, b=b: (zg.hstar_closed(a, b),
                                            zg.hstar_pilehrood(a, b, n_max))))
            cases.append((f"hstar-closed-vs-closeddouble[{a},{b}]", 1e-24,
                          lambda a=a, b=b: (zg.hstar_closed(a, b),
                                            zg.hstar_closed_via_double(a, b))))
    for k in range(1, 7):
        cases.append(_residual_case(f"sumident-H[K={k}]", 1e-24,
                                    lambda k=k: zg.sum_identities(k)[0]))
        cases.append(_residual_case(f"sumident-Hstar[K={k}]", 1e-24,
                                    lambda k=k: zg.sum_identities(k)[1]))
        cases.append((f"zetabar-from-hstar[K={k}]", 1e-24,
                      lambda k=k: (zg.zeta_bar_odd_from_hstar(k), zeta_bar(2 * k + 1))))
    cases.append(("zeta-from-hstar[0,1]", 1e-24,
                  lambda: (zg.zeta_from_hstar(0, 1), z3 / 8)))
    for (r, s) in ((1, 1), (0, 2), (1, 2)):
        cases.append((f"zeta-from-hstar-vs-direct[{r},{s}]", 1e-6,
                      lambda r=r, s=s: (
                          zg.zeta_from_hstar(r, s),
                          es.double_direct(es.DoubleIndex(2 * r + 1, 2 * s, False, True), n_max).value)))
    reflection_points = [
        (Fraction(1, 4), Fraction(1, 3)),
        (Fraction(1, 3), Fraction(1, 4)),
        (Fraction(1, 2), Fraction(1, 5)),
        (Fraction(1, 5), Fraction(2, 5)),
        (Fraction(3, 8), Fraction(3, 8)),
    ]
    from .hpreal import sinc_pi, ExtReal as _E
    for (x, y) in reflection_points:
        def reflection(x=x, y=y):
            lhs = zg.eval_F(x, y)
            rhs = -sinc_pi(_E.from_fraction(y)) * sinc_pi(_E.from_fraction(x)) * zg.eval_Fstar(y, x)
            return lhs, rhs
        cases.append((f"reflection[x={x},y={y}]", 1e-18, reflection))
    def diagonal_route(x=Fraction(1, 4)):
        lhs = zg.eval_F(x, x)
        acc = ExtReal(0.0)
        xv = ExtReal.from_fraction(x)
        for r in range(1, 18):
            acc = acc + zeta(2 * r + 1) * xv ** (2 * r)
        rhs = -sinc_pi(xv) * acc
        return lhs, rhs
    cases.append(("diagonal-route[x=1/4]", 1e-18, diagonal_route))
    return cases


def _build_suite(name: str, fast: bool) -> List[Case]:
    n_max = FAST_N_MAX if fast else SLOW_N_MAX
    if name == "stuffle":
        return _suite_stuffle(n_max)
    if name == "shuffle":
        return _suite_shuffle(n_max)
    if name == "sumformulas":
        return _suite_sumformulas(n_max)
    if name == "closedforms":
        return _suite_closedforms(n_max, k_cap=11 if fast else 15)
    if name == "genfun":
        return _suite_genfun(n_max)
    if name == "hyp":
        return _suite_hyp(n_max)
    if name == "zagier":
        return _suite_zagier(n_max, ab_cap=4 if fast else 5)
    if name == "all":
        cases: List[Case] = []
        for sub in ("stuffle", "shuffle", "sumformulas", "closedforms",
                    "genfun", "hyp", "zagier"):
            cases.extend((f"{sub}:{cid}", tol, fn)
                         for cid, tol, fn in _build_suite(sub, fast))
        return cases
    raise KeyError(name)


SUITES = ("stuffle", "shuffle", "sumformulas", "closedforms", "genfun", "hyp", "zagier", "all")


def run_suite(name: str, fast: bool = True, jobs: Optional[int] = None) -> VerifyReport:
    """Run a named suite on a worker pool and return its report (cases sorted by id)."""
    cases = _build_suite(name, fast)
    start = time.monotonic()
    jobs = jobs or os.cpu_count() or 1
    results: List[CaseResult] = []
    def run_one(case: Case) -> CaseResult:
        cid, tol, fn = case
        lhs, rhs = _run_case(fn)
        residual = abs(lhs - rhs)
        # tolerances are decimal literals; compare and print them exactly
        tol_exact = parse_decimal(repr(tol))
        passed = residual.to_fraction() <= tol_exact
        return CaseResult(
            id=cid,
            lhs=to_decimal(lhs),
            rhs=to_decimal(rhs),
            residual=to_decimal(residual),
            tolerance=to_decimal(tol_exact),
            passed=passed,
        )
    if jobs <= 1:
        results = [run_one(c) for c in cases]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, cases))
    results.sort(key=lambda c: c.id)
    elapsed = int((time.monotonic() - start) * 1000)
    return VerifyReport(suite=name, cases=results, wall_time_ms=elapsed)
