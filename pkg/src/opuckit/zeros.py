"""Certified zero ladders for the trigonometric family W_n.

W_n has exactly n simple zeros in (-1, 1), and consecutive levels interlace
strictly with +-1 as outer bounds.  The ladder exploits this: level k + 1 is
bracketed by the level-k zeros plus the endpoints, every bracket is checked for
a sign change (BracketFailure otherwise), bisected to width tol, and polished
by one safeguarded secant step.  No polynomial root library is involved, so
every zero comes with its certificate interval.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .bijection import SequencePair
from .errors import (
    BracketFailure,
    ClusterWarning,
    GapViolated,
    HypothesisViolated,
    InternalInvariant,
    InvalidParameters,
)
from .polynomials import w_eval

__all__ = ["ZeroSet", "SupportGapReport", "zero_ladder", "w_zeros", "support_gap_check"]

DEFAULT_TOL = 1e-13

# |x| beyond which bisection switches to the theta parametrization
_THETA_REFINE_BAND = 1.0 - 1e-6
_MAX_BISECT = 80


@dataclass(frozen=True)
class ZeroSet:
    """Zeros of W_n: x descending (x[0] largest), theta = 2 arccos(x) ascending."""

    n: int
    x: np.ndarray
    theta: np.ndarray


def _bisect_batch(pair: SequencePair, level: int, lo, hi, flo, fhi, tol: float):
    """Vector bisection on certified brackets; returns refined (lo, hi)."""
    lo = lo.copy()
    hi = hi.copy()
    flo = flo.copy()
    fhi = fhi.copy()
    for _ in range(_MAX_BISECT):
        if float(np.max(hi - lo)) <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = w_eval(pair, level, mid)
        sl, sm = np.sign(flo), np.sign(fm)
        go_left = (sl * sm < 0.0) | (sm == 0.0)
        hi = np.where(go_left, mid, hi)
        fhi = np.where(go_left, fm, fhi)
        lo = np.where(go_left, lo, mid)
        flo = np.where(go_left, flo, fm)
    return lo, hi, flo, fhi


def _secant_polish(lo, hi, flo, fhi):
    """One secant step, kept inside the certificate bracket."""
    mid = 0.5 * (lo + hi)
    denom = fhi - flo
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        cand = hi - fhi * (hi - lo) / denom
    bad = ~np.isfinite(cand) | (cand < lo) | (cand > hi)
    return np.where(bad, mid, cand)


def _refine_theta(pair: SequencePair, level: int, lo, hi, idx, x_out, tol: float):
    """Re-bisect near-unit zeros in theta, where x loses resolution."""
    # arccos is decreasing: the x bracket [lo, hi] maps to theta [2acos(hi), 2acos(lo)]
    tlo = 2.0 * np.arccos(hi[idx])
    thi = 2.0 * np.arccos(lo[idx])
    ftl = w_eval(pair, level, np.cos(0.5 * tlo))
    fth = w_eval(pair, level, np.cos(0.5 * thi))
    for _ in range(_MAX_BISECT):
        if float(np.max(thi - tlo)) <= tol:
            break
        tm = 0.5 * (tlo + thi)
        fm = w_eval(pair, level, np.cos(0.5 * tm))
        sl, sm = np.sign(ftl), np.sign(fm)
        go_left = (sl * sm < 0.0) | (sm == 0.0)
        thi = np.where(go_left, tm, thi)
        fth = np.where(go_left, fm, fth)
        tlo = np.where(go_left, tlo, tm)
        ftl = np.where(go_left, ftl, fm)
    x_out[idx] = np.cos(0.5 * _secant_polish(tlo, thi, ftl, fth))


def zero_ladder(pair: SequencePair, n: int, tol: float = DEFAULT_TOL) -> list[ZeroSet]:
    """ZeroSets for every level 1..n, built incrementally from the interlacing."""
    if not 1 <= n <= len(pair):
        raise InvalidParameters(f"need 1 <= n <= {len(pair)}, got {n}")
    ladder: list[ZeroSet] = []
    c1 = pair.c[0]
    asc = np.array([c1 / math.sqrt(1.0 + c1 * c1)])
    ladder.append(_make_zero_set(1, asc, tol))
    for level in range(2, n + 1):
        lo = np.concatenate([[-1.0], asc])
        hi = np.concatenate([asc, [1.0]])
        f = w_eval(pair, level, np.concatenate([lo, hi]))
        flo, fhi = f[: level], f[level:]
        bad = np.sign(flo) * np.sign(fhi) >= 0.0
        if np.any(bad):
            j = int(np.argmax(bad))
            raise BracketFailure(
                level, j,
                f"W_{level} has values ({flo[j]!r}, {fhi[j]!r}) at "
                f"[{lo[j]!r}, {hi[j]!r}]",
            )
        lo, hi, flo, fhi = _bisect_batch(pair, level, lo, hi, flo, fhi, tol)
        asc = _secant_polish(lo, hi, flo, fhi)
        near_unit = np.flatnonzero(np.abs(asc) > _THETA_REFINE_BAND)
        if near_unit.size:
            _refine_theta(pair, level, lo, hi, near_unit, asc, tol)
        if np.any(np.diff(asc) <= 0.0):
            raise InternalInvariant(f"level {level} zeros are not strictly increasing")
        ladder.append(_make_zero_set(level, asc, tol))
    return ladder


def _make_zero_set(level: int, asc: np.ndarray, tol: float) -> ZeroSet:
    if asc.size > 1 and float(np.min(np.diff(asc))) < 10.0 * tol:
        warnings.warn(
            f"level {level} has zeros closer than {10.0 * tol:g}", ClusterWarning
        )
    x = asc[::-1].copy()
    return ZeroSet(n=level, x=x, theta=2.0 * np.arccos(x))


def w_zeros(pair: SequencePair, n: int, tol: float = DEFAULT_TOL) -> ZeroSet:
    return zero_ladder(pair, n, tol)[-1]


@dataclass(frozen=True)
class SupportGapReport:
    """Outcome of the excluded-interval check for alternating-sign c."""

    n: int
    c_floor: float
    x_excluded: tuple[float, float]
    theta_c: float
    margin: float
    observed_arcs: tuple[tuple[float, float], ...]  # heuristic theta hulls
    tol: float


def support_gap_check(
    pair: SequencePair, n: int, tol: float = 1e-12
) -> SupportGapReport:
    """Verify no zero enters the interval forced by c_k = (-1)^k c~_k, c~_k >= c > 0.

    The zeros then keep |x| >= c/sqrt(1 + c^2), equivalently the node angles
    stay within the two closed arcs ending at theta_c = arccos((c^2-1)/(c^2+1)).
    The uniform-sign magnitude floor c is inferred from the stored prefix; an
    all-zero c passes vacuously, a broken sign pattern raises
    HypothesisViolated, a zero strictly inside the interval raises GapViolated.
    """
    tilde = [(-1.0) ** k * ck for k, ck in enumerate(pair.c[:n], start=1)]
    if all(t == 0.0 for t in tilde):
        c_floor = 0.0
    elif all(t > 0.0 for t in tilde):
        c_floor = min(tilde)
    elif all(t < 0.0 for t in tilde):
        c_floor = min(-t for t in tilde)
    else:
        raise HypothesisViolated(
            "c is not alternating with a uniform sign: "
            f"(-1)^k c_k = {tuple(round(t, 6) for t in tilde)}"
        )
    g = c_floor / math.sqrt(1.0 + c_floor * c_floor)
    theta_c = math.acos((c_floor**2 - 1.0) / (c_floor**2 + 1.0))
    ladder = zero_ladder(pair, n)
    margin = math.inf
    for zs in ladder:
        dist = np.abs(zs.x) - (g - tol)
        j = int(np.argmin(dist))
        if dist[j] < 0.0:
            raise GapViolated(zs.n, float(zs.x[j]), g)
        margin = min(margin, float(dist[j]))
    all_theta = np.sort(np.concatenate([zs.theta for zs in ladder]))
    arcs = []
    for cluster in (all_theta[all_theta <= math.pi], all_theta[all_theta > math.pi]):
        if cluster.size:
            arcs.append((float(cluster[0]), float(cluster[-1])))
    return SupportGapReport(
        n=n,
        c_floor=c_floor,
        x_excluded=(-g, g),
        theta_c=theta_c,
        margin=margin,
        observed_arcs=tuple(arcs),
        tol=tol,
    )
