"""Deterministic invariant battery behind the `check` subcommand.

Every check is self-contained with fixed inputs (seeded RNG where random data
is wanted), so two runs produce identical reports.  A check fails by raising;
the runner converts that into ok = False with the exception text.
"""

from __future__ import annotations

import math

import numpy as np

from . import period_two, periodic
from .bijection import make_pair, pair_to_verblunsky, verblunsky_to_pair
from .chain import minimal_parameters
from .errors import InternalInvariant
from .measure import moments, quadrature, step_eval
from .polynomials import r_coeffs, self_inversive_defect
from .transforms import conjugate_pair, unfold_alternating
from .zeros import support_gap_check, zero_ladder

__all__ = ["run_checks"]


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise InternalInvariant(message)


def _random_pair(rng, n):
    c = rng.uniform(-2.0, 2.0, n)
    m = np.concatenate([[0.0], rng.uniform(0.1, 0.9, n)])
    return make_pair(c, m=m)


def check_chain_constant_quarter() -> str:
    """Minimal parameters of d = 1/4 are n/(2(n+1)) exactly."""
    n = 40
    m = minimal_parameters([0.25] * n)
    worst = max(abs(m[k] - k / (2.0 * (k + 1.0))) for k in range(n + 1))
    _require(worst < 1e-14, f"closed-form defect {worst!r}")
    return f"defect {worst:.3e}"


def check_bijection_round_trip() -> str:
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(5):
        pair = _random_pair(rng, 30)
        back = verblunsky_to_pair(pair_to_verblunsky(pair).alpha)
        worst = max(
            worst,
            max(abs(a - b) for a, b in zip(pair.c, back.c)),
            max(abs(a - b) for a, b in zip(pair.m, back.m)),
        )
    _require(worst < 1e-10, f"round-trip defect {worst!r}")
    return f"defect {worst:.3e}"


def check_self_inversive() -> str:
    rng = np.random.default_rng(12)
    pair = _random_pair(rng, 24)
    defect = max(
        self_inversive_defect(r_coeffs(pair, k).coeffs) for k in range(1, 25)
    )
    _require(defect < 1e-10, f"self-inversive defect {defect!r}")
    return f"defect {defect:.3e}"


def check_zero_interlacing() -> str:
    rng = np.random.default_rng(13)
    pair = _random_pair(rng, 20)
    ladder = zero_ladder(pair, 20)
    worst = math.inf
    for a, b in zip(ladder[:-1], ladder[1:]):
        lo = np.concatenate([[-1.0], np.sort(a.x), [1.0]])
        hi = np.sort(b.x)
        worst = min(worst, float(np.min(np.diff(np.sort(np.concatenate([lo, hi]))))))
        _require(
            all(lo[i] < hi[i] < lo[i + 1] for i in range(len(hi))),
            f"interlacing broken between levels {a.n} and {b.n}",
        )
    return f"minimum spacing {worst:.3e}"


def check_quadrature() -> str:
    rng = np.random.default_rng(14)
    pair = _random_pair(rng, 18)
    meas = quadrature(pair, 18)
    s = float(np.sum(meas.weights))
    _require(abs(s - 1.0) < 1e-10, f"weight sum {s!r}")
    _require(float(np.min(meas.weights)) > 0.0, "non-positive weight")
    psi0 = step_eval(meas, 0.0)
    psi1 = step_eval(meas, 2.0 * math.pi)
    _require(psi0 == 0.0 and psi1 == 1.0, f"boundary values {psi0!r}, {psi1!r}")
    return f"sum defect {abs(s - 1.0):.3e}"


def check_lebesgue_moments() -> str:
    pair = make_pair([0.0] * 24, m=[0.0] + [0.5] * 24)
    meas = quadrature(pair, 24)
    mom = moments(meas, 3)
    worst = float(np.max(np.abs(mom[1:])))
    _require(worst < 1e-12, f"moment defect {worst!r}")
    return f"max |mu_k| {worst:.3e}"


def check_support_gap() -> str:
    n = 15
    c = [((-1.0) ** k) * 1.0 for k in range(1, n + 1)]
    pair = make_pair(c, m=[0.0] + [0.5] * n)
    report = support_gap_check(pair, n)
    _require(report.margin >= 0.0, f"gap margin {report.margin!r}")
    return f"margin {report.margin:.3e}"


def check_period_two_discriminant() -> str:
    params = period_two.PeriodTwoParams(c=1.0, b1=0.3, b2=0.5)
    alpha = period_two.family_alpha(params)
    t = np.linspace(0.0, 2.0 * math.pi, 241)
    defect = float(
        np.max(np.abs(periodic.discriminant(alpha, t) - period_two.family_discriminant(params, t)))
    )
    _require(defect < 1e-12, f"discriminant defect {defect!r}")
    return f"defect {defect:.3e}"


def check_period_two_masses() -> str:
    params = period_two.PeriodTwoParams(c=1.0, b1=0.3, b2=0.5)
    alpha = period_two.family_alpha(params)
    worst = 0.0
    for mp in period_two.family_masses(params):
        mass = periodic.pure_point_mass(alpha, mp.w)
        _require(mass is not None, f"missing mass at {mp.w!r}")
        series = periodic.mass_series(alpha, mp.w, 4000)
        worst = max(worst, abs(mass - mp.mass), abs(series - mp.mass))
    _require(worst < 1e-8, f"mass defect {worst!r}")
    return f"defect {worst:.3e}"


def check_period_two_normalization() -> str:
    params = period_two.PeriodTwoParams(c=1.0, b1=0.3, b2=0.5)
    alpha = period_two.family_alpha(params)
    rep = periodic.normalization_report(alpha)
    defect = abs(rep["total"] - 1.0)
    _require(defect < 1e-3, f"normalization defect {defect!r}")
    return f"total {rep['total']:.12f}"


def check_unfolding() -> str:
    rng = np.random.default_rng(15)
    n = 12
    half = rng.uniform(0.2, 1.5, n)
    c = np.empty(2 * n)
    c[0::2] = -half
    c[1::2] = half
    pair = make_pair(c, m=np.concatenate([[0.0], rng.uniform(0.2, 0.8, 2 * n)]))
    data = unfold_alternating(pair)
    direct = pair_to_verblunsky(data.pair_tilde).alpha
    defect = max(abs(a - b) for a, b in zip(direct, data.alpha_tilde))
    _require(defect < 1e-11, f"unfolding defect {defect!r}")
    return f"defect {defect:.3e}"


def check_conjugate_symmetry() -> str:
    rng = np.random.default_rng(16)
    pair = _random_pair(rng, 10)
    za = zero_ladder(pair, 10)[-1]
    zb = zero_ladder(conjugate_pair(pair), 10)[-1]
    defect = float(np.max(np.abs(np.sort(za.x) - np.sort(-np.asarray(zb.x)))))
    _require(defect < 1e-10, f"conjugate zero defect {defect!r}")
    return f"defect {defect:.3e}"


def check_periodicity_report() -> str:
    params = period_two.PeriodTwoParams(c=1.0, b1=0.3, b2=0.5)
    pair = period_two.family_pair(params, 12)
    rep = periodic.is_periodic_pair(pair, 2)
    _require(rep.ok, f"period-2 pair not recognized: {rep!r}")
    bad = make_pair(
        list(pair.c[:-1]) + [pair.c[-1] + 0.3], m=pair.m
    )
    rep2 = periodic.is_periodic_pair(bad, 2)
    _require(not rep2.ok, "perturbed pair passed the periodicity test")
    return f"residuals {rep.arg_residual:.3e}, {rep.modulus_residual:.3e}"


_CHECKS = [
    ("chain_constant_quarter", check_chain_constant_quarter),
    ("bijection_round_trip", check_bijection_round_trip),
    ("self_inversive_coefficients", check_self_inversive),
    ("zero_interlacing", check_zero_interlacing),
    ("quadrature_weights", check_quadrature),
    ("lebesgue_moments", check_lebesgue_moments),
    ("support_gap", check_support_gap),
    ("period_two_discriminant", check_period_two_discriminant),
    ("period_two_masses", check_period_two_masses),
    ("period_two_normalization", check_period_two_normalization),
    ("unfolding_consistency", check_unfolding),
    ("conjugate_zero_symmetry", check_conjugate_symmetry),
    ("periodicity_report", check_periodicity_report),
]


def run_checks() -> list[dict]:
    """Run the battery; one {name, ok, detail} record per check."""
    report = []
    for name, fn in _CHECKS:
        try:
            detail = fn()
            report.append({"name": name, "ok": True, "detail": detail})
        except Exception as exc:  # noqa: BLE001 - report, do not crash
            report.append(
                {"name": name, "ok": False, "detail": f"{type(exc).__name__}: {exc}"}
            )
    return report
