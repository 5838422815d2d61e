"""Triangular weight arrays a_{k,n}, normalizers rho_n, the derived limits
kappa and ell, iterated alpha-weighted means, and numeric checkers for the
weight conditions of the exact weak law and the distributional limit theorem.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError

WEIGHT_KINDS = ("cesaro", "power_alpha", "iterated", "custom_table")
RHO_TAGS = ("constant", "loglog")


def make_rho(tag) -> Callable[[int], float]:
    """rho_n from a tag: "constant" (default 1, or "constant:c"), "loglog"
    (log log n for n >= 3, 1 below), or a number."""
    if callable(tag):
        return tag
    if isinstance(tag, (int, float)):
        v = float(tag)
        return lambda n: v
    name, _, arg = str(tag).partition(":")
    if name == "constant":
        v = float(arg) if arg else 1.0
        return lambda n: v
    if name == "loglog":
        return lambda n: math.log(math.log(n)) if n >= 3 else 1.0
    raise DomainError(f"unknown rho tag {tag!r}")


@dataclass(frozen=True)
class WeightScheme:
    """A triangular array of positive weights with its normalizer rho_n."""

    kind: str
    a_row: Callable[[int], np.ndarray]  # n -> (a_{1,n}, ..., a_{n,n})
    rho: Callable[[int], float]
    params: dict = field(default_factory=dict)


def cesaro_scheme(rho="constant") -> WeightScheme:
    return WeightScheme("cesaro", lambda n: np.full(n, 1.0 / n),
                        make_rho(rho), {})


@lru_cache(maxsize=64)
def _power_weights(alpha: float, n: int) -> tuple:
    w = np.arange(1, n + 1, dtype=float) ** (-alpha)
    return tuple(w / w.sum())


def power_alpha_scheme(alpha: float, rho="constant") -> WeightScheme:
    """a_{k,n} = k^(-alpha) / sum_{j<=n} j^(-alpha), alpha < 1."""
    if alpha >= 1.0:
        raise DomainError("power_alpha requires alpha < 1")
    return WeightScheme(
        "power_alpha",
        lambda n: np.array(_power_weights(alpha, n)),
        make_rho(rho), {"alpha": alpha},
    )


@lru_cache(maxsize=8)
def _iterated_rows(alpha: float, r: int, n_max: int) -> tuple:
    """All weight rows up to n_max for the r-iterated mean operator.

    Row identity: the n-th entry of the r-iterated mean equals
    sum_k a^{(r)}_{k,n} x_k; rows are built by averaging the previous order's
    rows with the k^(-alpha) weights.
    """
    w = np.arange(1, n_max + 1, dtype=float) ** (-alpha)
    cw = np.cumsum(w)
    rows = [np.concatenate([np.zeros(n), [1.0], np.zeros(n_max - n - 1)])
            for n in range(n_max)]  # order 0: identity
    for _ in range(r):
        acc = np.zeros(n_max)
        new_rows = []
        for n in range(n_max):
            acc = acc + w[n] * rows[n]
            new_rows.append(acc / cw[n])
        rows = new_rows
    return tuple(tuple(row[:n + 1]) for n, row in enumerate(rows))


def iterated_scheme(alpha: float, r: int, rho="constant",
                    n_cap: int = 20000) -> WeightScheme:
    """Effective weights of the r-iterated alpha-weighted mean."""
    if alpha >= 1.0:
        raise DomainError("iterated scheme requires alpha < 1")
    if r < 0:
        raise DomainError("r must be >= 0")

    def a_row(n):
        if n > n_cap:
            raise DomainError(f"iterated rows capped at n = {n_cap}")
        return np.array(_iterated_rows(alpha, r, n)[n - 1])

    return WeightScheme("iterated", a_row, make_rho(rho),
                        {"alpha": alpha, "r": r})


def custom_table_scheme(rows: dict, rho="constant") -> WeightScheme:
    """Weights from an explicit {n: row} mapping."""
    table = {int(n): np.asarray(row, dtype=float) for n, row in rows.items()}
    for n, row in table.items():
        if row.size != n or np.any(row <= 0):
            raise DomainError(f"row for n = {n} must hold n positive weights")

    def a_row(n):
        if n not in table:
            raise DomainError(f"no custom row for n = {n}")
        return table[n]

    return WeightScheme("custom_table", a_row, make_rho(rho), {})


def custom_table_from_csv(path, rho="constant") -> WeightScheme:
    """Load a custom table from CSV with columns k, n, a."""
    cells: dict = {}
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            cells.setdefault(int(rec["n"]), {})[int(rec["k"])] = float(rec["a"])
    rows = {}
    for n, by_k in cells.items():
        if sorted(by_k) != list(range(1, n + 1)):
            raise DomainError(f"CSV row set for n = {n} is not k = 1..n")
        rows[n] = [by_k[k] for k in range(1, n + 1)]
    return custom_table_scheme(rows, rho)


def weights_row(scheme: WeightScheme, n: int) -> np.ndarray:
    if n < 1:
        raise DomainError("n must be >= 1")
    row = np.asarray(scheme.a_row(n), dtype=float)
    if row.size != n:
        raise DomainError("weight row has wrong length")
    return row


def kappa(scheme: WeightScheme, n: int) -> float:
    """kappa_n = sum_k a_{k,n} (whose limit is the kappa of the theorems)."""
    return float(weights_row(scheme, n).sum())


def max_weight(scheme: WeightScheme, n: int) -> float:
    """m_n = max_k a_{k,n}."""
    return float(weights_row(scheme, n).max())


# ---------------------------------------------------------------------------
# Profiles, extrapolation, and condition checkers
# ---------------------------------------------------------------------------

def richardson_log_limit(n_values: Sequence[int],
                         values: Sequence[float]) -> float:
    """Extrapolated limit of a profile converging like ell + poly(1/log n),
    using the last three grid points (fewer points fall back gracefully)."""
    ns = list(n_values)[-3:]
    vs = list(values)[-3:]
    x = np.array([1.0 / math.log(n) for n in ns])
    v = np.array(vs, dtype=float)
    if len(ns) == 1:
        return float(v[0])
    coef = np.polyfit(x, v, len(ns) - 1)
    return float(coef[-1])


@dataclass(frozen=True)
class EllProfile:
    rows: tuple  # ((n, value), ...)
    ell: float


def ell_profile(scheme: WeightScheme, alphas: Callable[[int], float],
                n_grid: Sequence[int]) -> EllProfile:
    """Profile of -sum_k alpha_k a_{k,n} log(alpha_k a_{k,n}) / (rho_n log n)
    and its extrapolated limit ell."""
    rows = []
    for n in n_grid:
        if n < 2:
            raise DomainError("n_grid entries must be >= 2")
        a = weights_row(scheme, n)
        al = np.array([alphas(k) for k in range(1, n + 1)])
        if np.any(al <= 0):
            raise DomainError("alphas must be positive")
        x = al * a
        value = -float(np.sum(x * np.log(x))) / (scheme.rho(n) * math.log(n))
        rows.append((int(n), value))
    ell = richardson_log_limit([r[0] for r in rows], [r[1] for r in rows])
    return EllProfile(tuple(rows), ell)


def iterated_mean(values: Sequence[float], alpha: float,
                  r: int) -> np.ndarray:
    """r-iterated alpha-weighted means: order r+1 averages order r with
    weights w_k = k^(-alpha)."""
    if alpha >= 1.0:
        raise DomainError("iterated_mean requires alpha < 1")
    if r < 0:
        raise DomainError("r must be >= 0")
    out = np.asarray(values, dtype=float)
    if out.size == 0:
        raise DomainError("values must be nonempty")
    w = np.arange(1, out.size + 1, dtype=float) ** (-alpha)
    cw = np.cumsum(w)
    for _ in range(r):
        out = np.cumsum(w * out) / cw
    return out


@dataclass(frozen=True)
class ConditionReport:
    """Per-condition verdicts for a weight scheme.

    Each entry maps a condition name to (profile rows, verdict) where the
    verdict is "pass", "fail", or "inconclusive"; ``passed`` is True only if
    every condition passed.
    """

    conditions: dict
    passed: bool
    ell: Optional[float] = None
    kappa: Optional[float] = None

    def verdict(self, name: str) -> str:
        return self.conditions[name][1]


def _trend_verdict(values, target: str, tol: float = 1e-9) -> str:
    """"pass" if the profile converges per the target ("bounded", "zero",
    "limit"), "fail" if it clearly diverges, else "inconclusive"."""
    v = np.asarray(values, dtype=float)
    if target == "zero":
        if abs(v[-1]) < max(10 * tol, abs(v[0]) * 0.5) and \
                abs(v[-1]) <= abs(v[0]) + tol:
            return "pass"
        # no progress toward zero across a geometric grid is decisive
        return "fail" if abs(v[-1]) >= abs(v[0]) - tol else "inconclusive"
    diffs = np.abs(np.diff(v))
    shrinking = diffs.size < 2 or diffs[-1] <= diffs[0] + tol
    if target == "bounded":
        if v[-1] <= v[0] * 2 + 1.0 and shrinking:
            return "pass"
        growth = np.polyfit(np.log([n for n in range(1, v.size + 1)]), v, 1)[0]
        return "fail" if growth > 0.1 else "inconclusive"
    if target == "limit":
        if shrinking:
            return "pass"
        return "inconclusive"
    raise DomainError(f"unknown trend target {target!r}")


def check_theorem_3_2_conditions(scheme: WeightScheme,
                                 alphas: Callable[[int], float],
                                 n_max: int) -> ConditionReport:
    """Checks the exact-weak-law weight conditions on a geometric n-grid:
    the normalized entropy-like sum has a limit -ell, its absolute version is
    bounded, sum_k alpha_k a_{k,n} is bounded, rho_n log n -> infinity, and
    sup_n max_k a_{k,n} < infinity (the extra corollary condition)."""
    if n_max < 10:
        raise DomainError("n_max must be >= 10")
    grid = _geometric_grid(n_max)
    conds = {}

    ell_rows, abs_rows, sum_rows, rholog_rows, mw_rows = [], [], [], [], []
    for n in grid:
        a = weights_row(scheme, n)
        al = np.array([alphas(k) for k in range(1, n + 1)])
        x = al * a
        denom = scheme.rho(n) * math.log(n)
        ell_rows.append((n, -float(np.sum(x * np.log(x))) / denom))
        abs_rows.append((n, float(np.sum(x * np.abs(np.log(x)))) / denom))
        sum_rows.append((n, float(x.sum())))
        rholog_rows.append((n, denom))
        mw_rows.append((n, float(a.max())))

    conds["limit_ell"] = (tuple(ell_rows),
                          _trend_verdict([r[1] for r in ell_rows], "limit"))
    conds["absolute_bounded"] = (
        tuple(abs_rows), _trend_verdict([r[1] for r in abs_rows], "bounded"))
    conds["alpha_sum_bounded"] = (
        tuple(sum_rows), _trend_verdict([r[1] for r in sum_rows], "bounded"))
    rl = [r[1] for r in rholog_rows]
    conds["rho_log_diverges"] = (
        tuple(rholog_rows),
        "pass" if rl[-1] > rl[0] and rl[-1] > 2.0 else "fail")
    mw = [r[1] for r in mw_rows]
    conds["max_weight_bounded"] = (
        tuple(mw_rows),
        "pass" if mw[-1] <= mw[0] + 1e-12 else
        ("fail" if mw[-1] > 2 * mw[0] else "inconclusive"))

    passed = all(v == "pass" for _, v in conds.values())
    ell = richardson_log_limit([r[0] for r in ell_rows],
                               [r[1] for r in ell_rows]) if passed else None
    return ConditionReport(conds, passed, ell=ell)


def check_theorem_4_1_conditions(scheme: WeightScheme,
                                 c1: Callable[[int], float],
                                 n_max: int) -> ConditionReport:
    """Checks the distributional-limit weight conditions: sum_k a_{k,n} has a
    limit kappa, m_n -> 0, and sum_k a_{k,n} c_{1,k} has a limit ell."""
    if n_max < 10:
        raise DomainError("n_max must be >= 10")
    grid = _geometric_grid(n_max)
    conds = {}

    k_rows, m_rows, l_rows = [], [], []
    for n in grid:
        a = weights_row(scheme, n)
        c1v = np.array([c1(k) for k in range(1, n + 1)])
        k_rows.append((n, float(a.sum())))
        m_rows.append((n, float(a.max())))
        l_rows.append((n, float(np.sum(a * c1v))))

    conds["kappa_limit"] = (tuple(k_rows),
                            _trend_verdict([r[1] for r in k_rows], "limit"))
    conds["max_weight_to_zero"] = (
        tuple(m_rows), _trend_verdict([r[1] for r in m_rows], "zero"))
    conds["ell_limit"] = (tuple(l_rows),
                          _trend_verdict([r[1] for r in l_rows], "limit"))

    passed = all(v == "pass" for _, v in conds.values())
    return ConditionReport(
        conds, passed,
        ell=l_rows[-1][1] if passed else None,
        kappa=k_rows[-1][1] if passed else None)


def _geometric_grid(n_max: int, points: int = 6) -> list:
    lo, hi = math.log(10), math.log(n_max)
    ns = sorted({int(round(math.exp(lo + (hi - lo) * i / (points - 1))))
                 for i in range(points)})
    return [max(n, 10) for n in ns]
