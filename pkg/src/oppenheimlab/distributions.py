"""Indexed families {F_n} of distribution functions on [0,1].

Provides the built-in families used throughout the package (uniform, the two
Moebius-type families, and the discrete inverse-ceiling family), numeric
checkers for the small-t linearity and uniform-integrability conditions, the
constants b and c = 1 - alpha*gamma + b attached to each member, and the
characteristic-function components A(t), B(t) of the reciprocal variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate, special

from .errors import AccuracyError, ConditionCheckError, DomainError
from .specfun import (
    DEFAULT_SPEC,
    EULER_GAMMA,
    QuadratureSpec,
    _gl_integrate,
    chunked_oscillatory_integral,
    gauss_2f1_unit,
)

CONTINUOUS_KINDS = {"uniform", "mobius_clamped", "mobius_remark2", "custom"}
DISCRETE_KINDS = {"discrete_beta"}


def make_sequence(spec) -> Callable[[int], float]:
    """Turn a sequence tag into an index function (1-based).

    Accepted forms: a number, "constant:c", "linear:n" (optionally scaled as
    "linear:0.5"), or an explicit list (extended by its last value).
    """
    if callable(spec):
        return spec
    if isinstance(spec, (int, float)):
        v = float(spec)
        return lambda n: v
    if isinstance(spec, str):
        tag, _, arg = spec.partition(":")
        if tag == "constant":
            v = float(arg) if arg else 1.0
            return lambda n: v
        if tag == "linear":
            scale = float(arg) if arg and arg != "n" else 1.0
            return lambda n: scale * n
        raise DomainError(f"unknown sequence tag {spec!r}")
    values = [float(v) for v in spec]
    if not values:
        raise DomainError("empty sequence")
    return lambda n: values[min(n, len(values)) - 1]


@dataclass(frozen=True)
class DistributionFamily:
    """An indexed family of distribution functions on [0, 1] with F_n(0) = 0.

    ``cdf``, ``alpha``, ``sampler`` are indexed by n >= 1; samplers draw
    vectors from a caller-owned numpy Generator.  Continuous kinds carry a
    density and the supremum of their support; the discrete kind carries its
    atom layout instead.
    """

    kind: str
    cdf: Callable[[int, float], float]
    alpha: Callable[[int], float]
    sampler: Callable[[int, np.random.Generator, int], np.ndarray]
    density: Optional[Callable[[int, float], float]] = None
    support_max: Callable[[int], float] = lambda n: 1.0
    beta: Optional[Callable[[int], float]] = None  # discrete_beta only
    params: dict = field(default_factory=dict)

    def is_discrete(self) -> bool:
        return self.kind in DISCRETE_KINDS

    def atoms(self, n: int, count: int) -> tuple[np.ndarray, np.ndarray]:
        """First ``count`` atoms (points, masses) of a discrete member."""
        if not self.is_discrete():
            raise DomainError(f"{self.kind} family has no atoms")
        b = self.beta(n)
        k = np.arange(2, count + 2)
        masses = (1.0 - b) / (k - 1.0 - b) - (1.0 - b) / (k - b)
        return 1.0 / k, masses


@dataclass(frozen=True)
class FamilyConstants:
    """The constants attached to one family member."""

    n: int
    b: float
    c: float
    quadrature_error: float


def uniform_family() -> DistributionFamily:
    return DistributionFamily(
        kind="uniform",
        cdf=lambda n, t: min(max(t, 0.0), 1.0),
        alpha=lambda n: 1.0,
        sampler=lambda n, rng, size: 1.0 - rng.random(size),
        density=lambda n, u: 1.0 if 0.0 <= u <= 1.0 else 0.0,
        support_max=lambda n: 1.0,
    )


def mobius_clamped_family(c_n="constant:1") -> DistributionFamily:
    """F_n(t) = c t / (1 - c t) below 1/(2c), clamped to 1 afterwards."""
    cseq = make_sequence(c_n)

    def cdf(n, t):
        c = cseq(n)
        if t <= 0.0:
            return 0.0
        if t >= 1.0 / (2.0 * c):
            return 1.0
        return c * t / (1.0 - c * t)

    def density(n, u):
        c = cseq(n)
        if 0.0 <= u < 1.0 / (2.0 * c):
            return c / (1.0 - c * u) ** 2
        return 0.0

    def sampler(n, rng, size):
        c = cseq(n)
        p = 1.0 - rng.random(size)  # p in (0, 1]
        return p / (c * (1.0 + p))

    return DistributionFamily(
        kind="mobius_clamped", cdf=cdf, alpha=cseq, sampler=sampler,
        density=density, support_max=lambda n: 1.0 / (2.0 * cseq(n)),
        params={"c_n": c_n},
    )


def mobius_remark2_family(c_n="constant:1") -> DistributionFamily:
    """F_n(t) = c t / (1 - t) below 1/(1+c), clamped to 1 afterwards."""
    cseq = make_sequence(c_n)

    def cdf(n, t):
        c = cseq(n)
        if t <= 0.0:
            return 0.0
        if t >= 1.0 / (1.0 + c):
            return 1.0
        return c * t / (1.0 - t)

    def density(n, u):
        c = cseq(n)
        if 0.0 <= u < 1.0 / (1.0 + c):
            return c / (1.0 - u) ** 2
        return 0.0

    def sampler(n, rng, size):
        c = cseq(n)
        p = 1.0 - rng.random(size)
        return p / (c + p)

    return DistributionFamily(
        kind="mobius_remark2", cdf=cdf, alpha=cseq, sampler=sampler,
        density=density, support_max=lambda n: 1.0 / (1.0 + cseq(n)),
        params={"c_n": c_n},
    )


def discrete_beta_family(beta_n="constant:0") -> DistributionFamily:
    """Atoms at 1/k (k >= 2) with masses p_{k-1} - p_k, p_k = (1-b)/(k-b).

    The reciprocal of a draw is the digit variable Z with
    P(Z = k) = p_{k-1} - p_k; beta = 0 recovers the classical digit law
    P(Z = k) = 1/(k(k-1)).
    """
    bseq = make_sequence(beta_n)

    def cdf(n, t):
        b = bseq(n)
        if t <= 0.0:
            return 0.0
        if t >= 1.0:
            return 1.0
        k = math.ceil(1.0 / t)
        if k < 2:
            return 1.0
        return (1.0 - b) / (k - 1.0 - b)

    def sampler(n, rng, size):
        b = bseq(n)
        v = 1.0 - rng.random(size)
        z = np.maximum(np.ceil(b + (1.0 - b) / v), 2.0)
        return 1.0 / z

    def alpha(n):
        return 1.0 - bseq(n)

    return DistributionFamily(
        kind="discrete_beta", cdf=cdf, alpha=alpha, sampler=sampler,
        beta=bseq, support_max=lambda n: 0.5, params={"beta_n": beta_n},
    )


_FACTORIES = {
    "uniform": lambda cfg: uniform_family(),
    "mobius_clamped": lambda cfg: mobius_clamped_family(cfg.get("c_n", "constant:1")),
    "mobius_remark2": lambda cfg: mobius_remark2_family(cfg.get("c_n", "constant:1")),
    "discrete_beta": lambda cfg: discrete_beta_family(cfg.get("beta_n", "constant:0")),
}


def family_from_config(cfg: dict) -> DistributionFamily:
    """Build a built-in family from a config mapping ({"kind": ..., ...})."""
    kind = cfg.get("kind")
    if kind not in _FACTORIES:
        raise DomainError(f"unknown family kind {kind!r}")
    return _FACTORIES[kind](cfg)


def discrete_beta_pmf(beta: float, k: int) -> float:
    """P(Z = k) = p_{beta,k-1} - p_{beta,k} with p_{beta,k} = (1-beta)/(k-beta)."""
    if not 0.0 <= beta < 1.0:
        raise DomainError("beta must lie in [0, 1)")
    if k < 2:
        raise DomainError("k must be >= 2")
    return (1.0 - beta) / (k - 1.0 - beta) - (1.0 - beta) / (k - beta)


# ---------------------------------------------------------------------------
# Condition checkers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionProfile:
    """Supremum profile of a condition over indices n <= n_max."""

    rows: tuple  # ((t, sup-value), ...) in the grid's order
    alpha_min: float
    alpha_max: float
    alpha_divergent: bool

    def passes(self, tol: float) -> bool:
        """Below tol at the smallest t and nonincreasing in trend."""
        values = np.array([v for _, v in self.rows])
        ts = np.array([t for t, _ in self.rows])
        order = np.argsort(-ts)
        values = values[order]
        if self.alpha_divergent:
            return False
        if values[-1] >= tol:
            return False
        slope = np.polyfit(np.arange(len(values)), values, 1)[0]
        return bool(slope <= 1e-12)


def _validate_grid(t_grid) -> np.ndarray:
    ts = np.asarray(list(t_grid), dtype=float)
    if ts.size == 0:
        raise ValueError("t_grid must be nonempty")
    if np.any(ts <= 0.0) or np.any(ts > 1.0):
        raise DomainError("t_grid must lie in (0, 1]")
    return ts


def _alpha_stats(family: DistributionFamily, n_max: int):
    alphas = np.array([family.alpha(n) for n in range(1, n_max + 1)])
    divergent = False
    if n_max >= 8:
        # monotone, large spread => the alpha sequence is not bounded
        ratio = alphas.max() / max(alphas.min(), 1e-300)
        increasing = np.all(np.diff(alphas) >= 0) and alphas[-1] > alphas[0]
        decreasing = np.all(np.diff(alphas) <= 0) and alphas[-1] < alphas[0]
        divergent = ratio > 100.0 and (increasing or decreasing)
    return float(alphas.min()), float(alphas.max()), divergent


def condition_i_profile(family: DistributionFamily, n_max: int,
                        t_grid) -> ConditionProfile:
    """Table of (t, sup_{n<=n_max} |F_n(t)/t - alpha_n|)."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    ts = _validate_grid(t_grid)
    rows = []
    for t in ts:
        sup = max(abs(family.cdf(n, t) / t - family.alpha(n))
                  for n in range(1, n_max + 1))
        rows.append((float(t), float(sup)))
    return ConditionProfile(tuple(rows), *_alpha_stats(family, n_max))


def _cond_ii_integral(family: DistributionFamily, n: int, t: float,
                      spec: QuadratureSpec) -> float:
    """int_0^t (1/u) |F_n(u)/u - alpha_n| du for one member."""
    a = family.alpha(n)
    if family.kind == "uniform":
        return 0.0
    if family.is_discrete():
        b = family.beta(n)
        k0 = math.ceil(1.0 / t)
        if k0 < 2:
            k0 = 2
            t = 0.5
        # on [1/k, 1/(k-1)) the cdf is constant p_{k-1} and F/u - alpha >= 0;
        # full-interval pieces telescope through the digamma function
        p = (1.0 - b) / (k0 - 1.0 - b)
        partial = p * (k0 - 1.0 / t) - a * math.log(t * k0)
        full = (1.0 - b) * (math.log(k0) - special.psi(k0 - b))
        return partial + full
    # continuous: substitute u = exp(-s)
    s0 = -math.log(t)
    val, err = integrate.quad(
        lambda s: abs(family.cdf(n, math.exp(-s)) / math.exp(-s) - a),
        s0, s0 + 60.0, epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=500,
    )
    if err > 1e3 * spec.abs_tol:
        raise AccuracyError("condition (ii) quadrature missed tolerance", err)
    return val


def condition_ii_profile(family: DistributionFamily, n_max: int, t_grid,
                         spec: QuadratureSpec = DEFAULT_SPEC) -> ConditionProfile:
    """Table of (t, sup_{n<=n_max} int_0^t (1/u)|F_n(u)/u - alpha_n| du)."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    ts = _validate_grid(t_grid)
    rows = []
    for t in ts:
        sup = max(_cond_ii_integral(family, n, float(t), spec)
                  for n in range(1, n_max + 1))
        rows.append((float(t), float(sup)))
    return ConditionProfile(tuple(rows), *_alpha_stats(family, n_max))


def check_conditions(family: DistributionFamily, n_max: int = 16,
                     tol: float = 0.05) -> bool:
    """Cheap numeric pass/fail of conditions (i) and (ii) for built-ins."""
    grid = (0.1, 0.03, 0.01, 0.003, 0.001)
    return (condition_i_profile(family, n_max, grid).passes(tol)
            and condition_ii_profile(family, n_max, grid).passes(tol))


# ---------------------------------------------------------------------------
# Constants and characteristic components
# ---------------------------------------------------------------------------

def family_constants(family: DistributionFamily, n: int,
                     spec: QuadratureSpec = DEFAULT_SPEC) -> FamilyConstants:
    """b = int_0^1 (1/u)(F_n(u)/u - alpha_n) du and c = 1 - alpha*gamma + b."""
    a = family.alpha(n)
    t_probe = 1e-6
    if abs(family.cdf(n, t_probe) / t_probe - a) > 0.2 * max(a, 1.0):
        raise ConditionCheckError(
            f"member {n} fails the small-t linearity probe")
    if family.kind == "uniform":
        b, err = 0.0, 0.0
    elif family.is_discrete():
        b = -(1.0 - family.beta(n)) * special.psi(1.0 - family.beta(n))
        err = 1e-15
    else:
        b, err = integrate.quad(
            lambda s: family.cdf(n, math.exp(-s)) / math.exp(-s) - a,
            0.0, 60.0, epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=500,
        )
        if err > 1e3 * spec.abs_tol:
            raise AccuracyError("b-quadrature missed tolerance", err)
    c = 1.0 - a * EULER_GAMMA + b
    return FamilyConstants(n=n, b=float(b), c=float(c),
                           quadrature_error=float(err))


def _discrete_char(family: DistributionFamily, n: int, t: float,
                   spec: QuadratureSpec) -> complex:
    """E[exp(i t Z)] with Z the digit variable, via the generating function
    h(z) = z (1-beta) 2F1-integral, so no quadrature against the step CDF."""
    b = family.beta(n)
    z = complex(math.cos(t), math.sin(t))
    h = z * gauss_2f1_unit(b, z, spec)
    return z + (z - 1.0) * h


def char_components(family: DistributionFamily, n: int, t: float,
                    spec: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """A(t) = int (cos(t/u) - 1) dF_n(u), B(t) = int sin(t/u) dF_n(u)."""
    if t == 0.0:
        return 0.0, 0.0
    sign = 1.0 if t > 0 else -1.0
    t = abs(t)
    if family.is_discrete():
        psi_t = _discrete_char(family, n, t, spec)
        return float(psi_t.real - 1.0), float(sign * psi_t.imag)

    umax = family.support_max(n)
    v0 = t / umax
    dens = family.density

    def f_over_v2(v):
        v = np.asarray(v, dtype=float)
        return np.array([dens(n, t / vi) / vi**2 for vi in np.atleast_1d(v)])

    # A = -1 + t * int cos(v) f(t/v)/v^2 dv   (the -1/v^2 part integrates to
    # the total mass exactly)
    k = math.ceil((v0 - math.pi / 2) / math.pi)
    zc = math.pi / 2 + k * math.pi
    head_c = integrate.quad(
        lambda v: math.cos(v) * dens(n, t / v) / v**2, v0, zc,
        epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=500)[0]
    tail_c, err_c = chunked_oscillatory_integral(
        lambda v: np.cos(v) * f_over_v2(v), zc, math.pi, spec)
    a_val = -1.0 + t * (head_c + tail_c)

    ks = max(1, math.ceil(v0 / math.pi))
    zs = ks * math.pi
    head_s = integrate.quad(
        lambda v: math.sin(v) * dens(n, t / v) / v**2, v0, zs,
        epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=500)[0]
    tail_s, err_s = chunked_oscillatory_integral(
        lambda v: np.sin(v) * f_over_v2(v), zs, math.pi, spec)
    b_val = t * (head_s + tail_s)
    if max(err_c, err_s) > 1e3 * spec.abs_tol:
        raise AccuracyError("char_components tail did not converge",
                            max(err_c, err_s))
    return float(a_val), float(sign * b_val)


@dataclass(frozen=True)
class PropositionProfile:
    rows: tuple  # ((t, value), ...)
    fitted_limit: float


def proposition_2_4_profile(family: DistributionFamily, n: int, t_grid,
                            spec: QuadratureSpec = DEFAULT_SPEC
                            ) -> PropositionProfile:
    """Profile of B_n(t)/t + alpha_n log t on a descending grid in (0, 1),
    with its fitted small-t limit (which approaches c_{F_n})."""
    ts = _validate_grid(t_grid)
    if np.any(ts >= 1.0):
        raise DomainError("grid must lie in (0, 1)")
    a = family.alpha(n)
    rows = []
    for t in ts:
        _, b_val = char_components(family, n, float(t), spec)
        rows.append((float(t), float(b_val / t + a * math.log(t))))
    # logarithmic-rate fit: value(t) ~ limit + p*t + q*t*log(t) + r*t^2
    tv = np.array([r[0] for r in rows])
    vv = np.array([r[1] for r in rows])
    basis = np.column_stack([np.ones_like(tv), tv, tv * np.log(tv), tv**2])
    ncols = min(basis.shape[1], len(tv))
    coef, *_ = np.linalg.lstsq(basis[:, :ncols], vv, rcond=None)
    return PropositionProfile(tuple(rows), float(coef[0]))
