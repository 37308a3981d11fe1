"""One-shot verification suites.

Each suite runs a batch of exact identities or numeric recoveries and returns
individual check results; the CLI aggregates them into a pass/fail table.
The acceptance tests drive the same functions, so the command-line gate and
the test suite cannot drift apart.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from . import asympt, lens, polylog, ribbon
from .bernoulli import bernoulli
from .numeric import DEFAULT_PRECISION, const_eval
from .scalars import ConstElem, SQRT3, SQRT6, sqrt_pi
from .series import TruncSeries


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _check(results, suite, name, passed, detail=""):
    results.append(CheckResult(suite, name, bool(passed), detail))


def suite_golden(precision=DEFAULT_PRECISION):
    """Printed-constant golden tests, all exact."""
    out = []
    f = polylog.f_series(8)
    expected_f = TruncSeries.from_terms(
        {2: Fraction(1, 24), 4: Fraction(-1, 2880), 6: Fraction(1, 181440)}, 8)
    _check(out, "golden", "f = x^2/24 - x^4/2880 + x^6/181440", f == expected_f)

    w = ribbon.weight_gln(ribbon.theta_graph())
    _check(out, "golden", "theta weight = 2(N^3 - N), coupling exponent 1",
           w.coeffs == (0, -2, 0, 2) and w.hbar_exp == 1, w.poly_str())

    consts = asympt.map_constants(2)
    _check(out, "golden", "t_0 = 2/sqrt(pi)", consts.t[0] == sqrt_pi(-1) * 2)
    _check(out, "golden", "t_1 = 1/24", consts.t[1] == ConstElem.rational(Fraction(1, 24)))
    _check(out, "golden", "t_2 = 7/(4320 sqrt(pi))",
           consts.t[2] == sqrt_pi(-1) * Fraction(7, 4320))

    mus = asympt.mu_seq(3)
    _check(out, "golden", "mu_1 = -5/(64 sqrt3)",
           mus[1] == ConstElem.symbol(SQRT3, -1, Fraction(-5, 64)))
    _check(out, "golden", "mu_2 = 75/8192",
           mus[2] == ConstElem.rational(Fraction(75, 8192)))
    _check(out, "golden", "mu_3 = -341329/(23592960 sqrt3)",
           mus[3] == ConstElem.symbol(SQRT3, -1, Fraction(-341329, 23592960)))
    return out


def suite_lens_cross(precision=DEFAULT_PRECISION):
    """Series route vs polylogarithm closed-form route, exactly."""
    out = []
    for d, b in ((2, 1), (3, 1), (3, 2), (5, 2)):
        space = lens.LensSpace(d, b)
        ok = True
        for g in range(2, 7):
            via_series = lens.free_energy_genus(space, g, 24)
            via_closed = lens.free_energy_genus(space, g, 24, route="closed")
            if via_series != via_closed:
                ok = False
        _check(out, "lens-cross", f"routes agree for {space}, g in [2,6], order 24", ok)
    return out


def suite_sln(precision=DEFAULT_PRECISION):
    """Fixed-rank specialization residuals vanish to coupling order 10."""
    out = []
    for d, b in ((2, 1), (3, 1)):
        space = lens.LensSpace(d, b)
        for rank in (1, 2, 3):
            res = lens.sln_specialization_residual(space, rank, 10)
            _check(out, "sln", f"residual {space} N={rank} is zero", res.is_zero(),
                   repr(res) if not res.is_zero() else "")
    return out


def suite_painleve(precision=DEFAULT_PRECISION):
    """Formal solution and first trans-series correction, exact residuals."""
    out = []
    res = asympt.painleve_residual(20)
    _check(out, "painleve", "solution residual vanishes in horizon (g_max=20)",
           res.is_zero())
    tres = asympt.transseries_residual(12, 8)
    _check(out, "painleve", "trans-series residual vanishes in horizon (12, 8)",
           tres.is_zero())
    lead, solved, a_exact = asympt.transseries_leading_balance()
    _check(out, "painleve", "leading balance fixes A^2 = 192/25 (A = 8 sqrt3/5)",
           solved == Fraction(192, 25)
           and a_exact == ConstElem.symbol(SQRT3, 1, Fraction(8, 5)))
    solved_mu = asympt.solve_transseries(2)
    _check(out, "painleve", "order-1 balance regenerates mu_1",
           solved_mu[1] == asympt.mu_seq(1)[1])
    solved_a = asympt.solve_painleve(6)
    _check(out, "painleve", "ab-initio solve regenerates a_g (g<=6)",
           solved_a == asympt.a_seq(6))
    return out


def suite_triangle(precision=DEFAULT_PRECISION):
    """f_g three independent ways: recursion, a_g rescaling, t_g conversion."""
    out = []
    g_top = 30
    rec = asympt.f_seq_recursive(g_top)
    consts = asympt.map_constants(g_top)
    sixth = ConstElem.symbol(SQRT6, 1)
    ok_rescale = rec == consts.f
    back = []
    for g in range(g_top + 1):
        # invert the conversion: f_g = 24^(-3/2) 6^(g/2) Gamma((5g-1)/2) t_g,
        # with 24^(-3/2) = (1/8) * 6^(-3/2)
        factor = ConstElem.symbol(SQRT6, -3, Fraction(1, 8)) \
            * ConstElem.symbol(SQRT6, g) * asympt.gamma_half_integer(5 * g - 1)
        back.append(factor * consts.t[g])
    ok_t = back == consts.f
    _check(out, "triangle", "recursion route equals a_g route (g<=30)", ok_rescale)
    _check(out, "triangle", "t_g conversion route equals a_g route (g<=30)", ok_t)
    _check(out, "triangle", "f_2 = 49 sqrt6 / 221184",
           consts.f[2] == sixth * Fraction(49, 221184))
    return out


def suite_kconst(precision=DEFAULT_PRECISION):
    """Richardson recovery of the map-count limit to >= 12 digits."""
    est = asympt.k_estimate(120, 8, precision)
    out = []
    _check(out, "kconst", "accelerated u_g matches closed form to >= 12 digits",
           est.matched_digits >= 12, f"{est.matched_digits:.1f} digits")
    return out


def suite_stokes(precision=DEFAULT_PRECISION):
    """Large-order recovery of the Stokes parameter."""
    out = []
    raw = asympt.estimate_stokes(60, 0, depth=0, precision=precision)
    _check(out, "stokes", "raw ratio at g=60 agrees to >= 2 digits",
           raw.matched_digits >= 2, f"{raw.matched_digits:.1f} digits")
    acc = asympt.estimate_stokes(60, 4, depth=6, precision=precision)
    _check(out, "stokes", "accelerated estimate agrees to >= 8 digits",
           acc.matched_digits >= 8, f"{acc.matched_digits:.1f} digits")
    neg = all(s < 0 for s in asympt.stokes_sequence(30, 0, 2, precision))
    _check(out, "stokes", "estimates are negative for g >= 2", neg)
    return out


def suite_tg(precision=DEFAULT_PRECISION):
    """Growth-constant ratios approach 1 at the expected rates."""
    out = []
    ratios = asympt.tg_asymptotic_check(60, precision)
    with mp.workprec(precision):
        window = [abs(r - 1) for r in ratios[19:60]]
        monotone = all(b < a for a, b in zip(window, window[1:]))
        at60 = abs(ratios[59] - 1)
        acc, _ = asympt.richardson(ratios[19:60], 2, start_index=20,
                                   precision=precision)
        acc_err = abs(acc - 1)
    _check(out, "tg", "|ratio - 1| decreases on g in [20, 60]", monotone)
    _check(out, "tg", "ratio at g=60 within 5% of 1", at60 < mpmath.mpf("0.05"),
           mpmath.nstr(at60, 3))
    _check(out, "tg", "accelerated ratio within 0.5% of 1",
           acc_err < mpmath.mpf("0.005"), mpmath.nstr(acc_err, 3))
    return out


def suite_ribbon(precision=DEFAULT_PRECISION):
    """Exhaustive thickening identities and weight bounds through degree 4."""
    out = []
    report = ribbon.weight_bounds_report(4)
    graphs = ribbon.enumerate_trivalent(4)
    identity_ok = True
    parity_witness = ""
    for graph in graphs:
        n = graph.degree
        nv = graph.num_vertices
        for mask in range(1 << nv):
            marking = [(mask >> v) & 1 for v in range(nv)]
            surf = ribbon.classify_marking(graph, marking)
            if 2 * surf.genus - 2 + surf.boundary != n:
                identity_ok = False
                parity_witness = f"degree {n}, marking {mask:b}"
                break
        if not identity_ok:
            break
    _check(out, "ribbon", "2g - 2 + b = n for all graphs of degree <= 4, all markings",
           identity_ok, parity_witness)
    _check(out, "ribbon", "degree bound deg p <= n + 2 has zero violations",
           not report.degree_violations, str(report.degree_violations))
    _check(out, "ribbon", "marking-count norm bound l1 <= 2^(2n) holds",
           all(r.l1_marking_ok for r in report.rows))
    return out


def suite_maps(precision=DEFAULT_PRECISION):
    """Rooted-map brute force against the planar closed form."""
    out = []

    def tutte(n):
        from math import factorial
        return 2 * 3 ** n * factorial(2 * n) // (factorial(n) * factorial(n + 2))

    _check(out, "maps", "T_0(1) = 2",
           ribbon.count_rooted_maps(0, 1) == 2 == tutte(1))
    _check(out, "maps", "T_0(2) = 9",
           ribbon.count_rooted_maps(0, 2) == 9 == tutte(2))
    _check(out, "maps", "T_0(n) matches the planar closed form for n <= 4",
           all(ribbon.count_rooted_maps(0, n) == tutte(n) for n in range(5)))
    _check(out, "maps", "T_0(0) = 1 and T_g(0) = 0 for g >= 1",
           ribbon.count_rooted_maps(0, 0) == 1
           and all(ribbon.count_rooted_maps(g, 0) == 0 for g in (1, 2, 3)))
    return out


def suite_gevrey(precision=DEFAULT_PRECISION):
    """Growth-constant boundedness trend on the coefficient tables."""
    out = []
    for d, b in ((2, 1), (3, 1)):
        space = lens.LensSpace(d, b)
        report = lens.gevrey_estimate(space, 10, 10, precision=precision)
        _check(out, "gevrey", f"{space}: finite C_min, non-increasing beyond g=3",
               report.c_min > 0 and report.non_increasing_beyond_3,
               f"C_min = {mpmath.nstr(report.c_min, 8)} at {report.attained_at}")
    return out


SUITES = {
    "golden": suite_golden,
    "lens-cross": suite_lens_cross,
    "sln": suite_sln,
    "painleve": suite_painleve,
    "triangle": suite_triangle,
    "kconst": suite_kconst,
    "stokes": suite_stokes,
    "tg": suite_tg,
    "ribbon": suite_ribbon,
    "maps": suite_maps,
    "gevrey": suite_gevrey,
}


def run_suites(names, precision=DEFAULT_PRECISION):
    results = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; have {sorted(SUITES)}")
        results.extend(SUITES[name](precision))
    return results
