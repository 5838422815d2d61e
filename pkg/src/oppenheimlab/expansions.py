"""Series-expansion digit codecs and random digit-sequence samplers.

Deterministic extraction works on exact rationals (Fraction) so that the
partial series plus the exact tail reproduces the input bit-for-bit.  Random
sampling follows the general digit scheme driven by a distribution family,
with fast vectorized digit chains for the classical kinds used in the Monte
Carlo experiments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .distributions import DistributionFamily, uniform_family
from .errors import DomainError, SchemeError

KINDS = ("luroth", "engel", "sylvester", "continued_fraction",
         "oppenheim_general")


@dataclass(frozen=True)
class DigitSequence:
    """Digits of one expansion realization.

    ``remainder`` is the exact state after the last emitted digit (None for
    sampled sequences); ``terminated`` marks expansions that ended because the
    remainder hit zero, rather than being truncated at ``count``.
    """

    kind: str
    digits: tuple
    origin: str  # "deterministic" or "sampled"
    x: Optional[Fraction] = None
    remainder: Optional[Fraction] = None
    terminated: bool = False
    seed_info: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown expansion kind {self.kind!r}")
        if self.kind == "luroth" and any(d < 2 for d in self.digits):
            raise DomainError("luroth digits must be >= 2")
        if self.kind == "engel" and any(
                b < a for a, b in zip(self.digits, self.digits[1:])):
            raise DomainError("engel digits must be nondecreasing")
        if self.kind == "sylvester" and any(
                b < a * a - a + 1
                for a, b in zip(self.digits, self.digits[1:])):
            raise DomainError("sylvester digit growth invariant violated")

    def resum(self) -> Fraction:
        """Exact value of the partial series plus the remainder tail."""
        if self.origin != "deterministic":
            raise DomainError("resum requires a deterministic extraction")
        r = self.remainder if self.remainder is not None else Fraction(0)
        if self.kind == "luroth":
            total, prod = Fraction(0), Fraction(1)
            for d in self.digits:
                total += Fraction(1, d) / prod
                prod *= d * (d - 1)
            return total + r / prod
        if self.kind == "engel":
            total, prod = Fraction(0), Fraction(1)
            for q in self.digits:
                prod *= q
                total += Fraction(1, 1) / prod
            return total + r / prod
        if self.kind == "sylvester":
            return sum((Fraction(1, q) for q in self.digits), Fraction(0)) + r
        if self.kind == "continued_fraction":
            value = r
            for a in reversed(self.digits):
                value = Fraction(1, 1) / (a + value)
            return value
        raise DomainError(f"resum not defined for kind {self.kind!r}")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise DomainError(f"cannot interpret {x!r} as an exact rational")


def luroth_digits(x, count: int) -> DigitSequence:
    """Digits d_1..d_count with d = k iff the remainder lies in (1/k, 1/(k-1)].

    Remainder update x' = d(d-1)x - (d-1); the left-open convention keeps the
    remainder in (0, 1], so the recurrence is total.
    """
    r = _as_fraction(x)
    if not 0 < r <= 1:
        raise DomainError("luroth_digits requires x in (0, 1]")
    if count < 1:
        raise DomainError("count must be >= 1")
    digits = []
    terminated = False
    for _ in range(count):
        if r == 0:
            terminated = True
            break
        d = (1 / r).__floor__() + 1
        digits.append(d)
        r = d * (d - 1) * r - (d - 1)
    return DigitSequence("luroth", tuple(digits), "deterministic",
                         x=_as_fraction(x), remainder=r,
                         terminated=terminated)


def engel_digits(x, count: int) -> DigitSequence:
    """Digits q_n = floor(1/x_n) + 1 with remainder x_{n+1} = q_n x_n - 1."""
    r = _as_fraction(x)
    if not 0 < r <= 1:
        raise DomainError("engel_digits requires x in (0, 1]")
    if count < 1:
        raise DomainError("count must be >= 1")
    digits = []
    terminated = False
    for _ in range(count):
        if r == 0:
            terminated = True
            break
        q = (1 / r).__floor__() + 1
        digits.append(q)
        r = q * r - 1
    return DigitSequence("engel", tuple(digits), "deterministic",
                         x=_as_fraction(x), remainder=r,
                         terminated=terminated)


def sylvester_digits(x, count: int) -> DigitSequence:
    """Digits q_n = floor(1/x_n) + 1 with remainder x_{n+1} = x_n - 1/q_n."""
    r = _as_fraction(x)
    if not 0 < r <= 1:
        raise DomainError("sylvester_digits requires x in (0, 1]")
    if count < 1:
        raise DomainError("count must be >= 1")
    digits = []
    terminated = False
    for _ in range(count):
        if r == 0:
            terminated = True
            break
        q = (1 / r).__floor__() + 1
        digits.append(q)
        r = r - Fraction(1, q)
    return DigitSequence("sylvester", tuple(digits), "deterministic",
                         x=_as_fraction(x), remainder=r,
                         terminated=terminated)


def continued_fraction_digits(x, count: int) -> DigitSequence:
    """Gauss-map digits a_n = floor(1/x_n), x_{n+1} = 1/x_n - a_n."""
    r = _as_fraction(x)
    if not 0 < r < 1:
        raise DomainError("continued_fraction_digits requires x in (0, 1)")
    if count < 1:
        raise DomainError("count must be >= 1")
    digits = []
    terminated = False
    for _ in range(count):
        if r == 0:
            terminated = True
            break
        inv = 1 / r
        a = inv.__floor__()
        digits.append(a)
        r = inv - a
    return DigitSequence("continued_fraction", tuple(digits), "deterministic",
                         x=_as_fraction(x), remainder=r,
                         terminated=terminated)


_EXTRACTORS = {
    "luroth": luroth_digits,
    "engel": engel_digits,
    "sylvester": sylvester_digits,
    "continued_fraction": continued_fraction_digits,
}


def extract_digits(kind: str, x, count: int) -> DigitSequence:
    if kind not in _EXTRACTORS:
        raise DomainError(f"no deterministic extractor for kind {kind!r}")
    return _EXTRACTORS[kind](x, count)


# ---------------------------------------------------------------------------
# General digit scheme
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OppenheimScheme:
    """General digit scheme with level maps phi_j and history functional q_n.

    delta_j(h, k, q) = phi_j(h)(1+q) / (k + phi_j(h) q) is the conditional
    survival function driving the digit draw; it is strictly decreasing in k
    whenever phi_j(h) > 0.
    """

    phi: Callable[[int, int], float]
    q: Callable[[int, tuple], float]
    digit_family: DistributionFamily = field(default_factory=uniform_family)
    name: str = "custom"


def engel_scheme(family: Optional[DistributionFamily] = None) -> OppenheimScheme:
    return OppenheimScheme(phi=lambda j, h: float(h),
                           q=lambda n, hist: 0.0,
                           digit_family=family or uniform_family(),
                           name="engel")


def sylvester_scheme(family: Optional[DistributionFamily] = None) -> OppenheimScheme:
    return OppenheimScheme(phi=lambda j, h: float(h * (h - 1)),
                           q=lambda n, hist: 0.0,
                           digit_family=family or uniform_family(),
                           name="sylvester")


def delta(phi_h: float, k: int, q: float) -> float:
    """delta(h, k, q) with phi_h = phi_j(h)."""
    if phi_h <= 0.0:
        raise SchemeError(
            "phi = 0 makes delta degenerate; sample digits directly from "
            "their marginal law instead")
    return phi_h * (1.0 + q) / (k + phi_h * q)


def sample_oppenheim(scheme: OppenheimScheme, n: int,
                     rng: np.random.Generator,
                     theta1: int = 1) -> tuple[DigitSequence, list]:
    """Sample digits Theta_1..Theta_{n+1} and the ratios R_1..R_n.

    Level j: given Theta_j = h and Q_j = q, draw U from the family's member j
    and set Theta_{j+1} to the unique k with delta(h,k+1,q) < U <= delta(h,k,q)
    (closed form k = floor(phi(h)(1+q)/U - phi(h) q), with a boundary
    adjustment); R_j = 1/delta(Theta_j, Theta_{j+1}, Q_j).
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    digits = [int(theta1)]
    ratios_out = []
    for j in range(1, n + 1):
        h = digits[-1]
        phi_h = scheme.phi(j, h)
        if phi_h <= 0.0:
            raise SchemeError(
                "phi = 0 at a reachable digit; use the direct digit sampler")
        qv = scheme.q(j, tuple(digits))
        u = float(scheme.digit_family.sampler(j, rng, 1)[0])
        k_min = max(1, math.ceil(phi_h))
        k = max(k_min, math.floor(phi_h * (1.0 + qv) / u - phi_h * qv))
        if k < 2**53:
            # boundary adjustment: enforce delta(k+1) < u <= delta(k);
            # beyond float resolution neighbouring k are indistinguishable
            while k > k_min and delta(phi_h, k, qv) < u:
                k -= 1
            while delta(phi_h, k + 1, qv) >= u:
                k += 1
        digits.append(int(k))
        ratios_out.append(1.0 / delta(phi_h, k, qv))
    seq = DigitSequence("oppenheim_general", tuple(digits), "sampled",
                        seed_info=scheme.name)
    return seq, ratios_out


def ratios(kind: str, digits: Sequence[int]) -> list:
    """Ratio variables attached to a digit sequence, as exact rationals.

    luroth: R_k = D_{k+1} - 1; engel: (D_{k+1} - 1)/(D_k - 1);
    sylvester: (D_{k+1} - 1)/(D_k (D_k - 1)).
    """
    ds = list(digits)
    if len(ds) < 2:
        return []
    if kind == "luroth":
        return [Fraction(d - 1) for d in ds[1:]]
    if kind == "engel":
        if any(d == 1 for d in ds[:-1]):
            raise SchemeError("engel ratio degenerate at digit 1")
        return [Fraction(b - 1, a - 1) for a, b in zip(ds, ds[1:])]
    if kind == "sylvester":
        return [Fraction(b - 1, a * (a - 1)) for a, b in zip(ds, ds[1:])]
    raise DomainError(f"no ratio law for kind {kind!r}")


# ---------------------------------------------------------------------------
# Vectorized digit chains for Monte Carlo experiments
# ---------------------------------------------------------------------------

# beyond this state size the floor correction in the digit chain is below
# float resolution and the ratio draw is exactly 1/U
_EXACT_STATE_LIMIT = 1e12


def luroth_ratio_matrix(rng: np.random.Generator, n: int,
                        size: int) -> np.ndarray:
    """(size, n) matrix of i.i.d. ratios R = D - 1 = floor(1/U), U uniform."""
    u = 1.0 - rng.random((size, n))
    return np.floor(1.0 / u)


def first_digit_samples(rng: np.random.Generator, size: int) -> np.ndarray:
    """First digits D_1 = floor(1/x) + 1 of uniform x (law 1/(k(k-1)))."""
    u = 1.0 - rng.random(size)
    return np.floor(1.0 / u) + 1.0


def engel_ratio_matrix(rng: np.random.Generator, n: int,
                       size: int) -> np.ndarray:
    """(size, n) ratios (D_{k+1}-1)/(D_k-1) along Engel digit chains.

    Chain step D_{k+1} = floor((D_k - 1)/U) + 1; once the state exceeds the
    exact-arithmetic window the floor is irrelevant and R = 1/U.
    """
    d = first_digit_samples(rng, size)
    out = np.empty((size, n))
    for k in range(n):
        u = 1.0 - rng.random(size)
        small = d - 1.0 < _EXACT_STATE_LIMIT
        r = 1.0 / u
        r_small = np.floor((d - 1.0) / u) / (d - 1.0)
        r = np.where(small, r_small, r)
        out[:, k] = r
        d = np.where(small, r * (d - 1.0) + 1.0, d)
    return out


def sylvester_ratio_matrix(rng: np.random.Generator, n: int,
                           size: int) -> np.ndarray:
    """(size, n) ratios (D_{k+1}-1)/(D_k(D_k-1)) along Sylvester chains.

    Chain step D_{k+1} = floor(D_k(D_k - 1)/U) + 1; the state grows
    doubly exponentially, so the exact window closes after a few steps.
    """
    d = first_digit_samples(rng, size)
    out = np.empty((size, n))
    for k in range(n):
        u = 1.0 - rng.random(size)
        s = d * (d - 1.0)
        small = s < _EXACT_STATE_LIMIT
        r = 1.0 / u
        r_small = np.floor(s / u) / s
        r = np.where(small, r_small, r)
        out[:, k] = r
        d = np.where(small, r * s + 1.0, d * r * d)  # growth tracking only
        d = np.minimum(d, 1e300)
    return out


def ratio_path(kind: str, rng: np.random.Generator, n: int) -> np.ndarray:
    """One replication's ratio vector R_1..R_n from a single RNG stream.

    The digit chain is walked with exact floors while the state is small; the
    state leaves the exact window after a few dozen steps, beyond which the
    ratio draw is exactly 1/U at float resolution, so the remainder of the
    path is vectorized.
    """
    u = 1.0 - rng.random(n + 1)
    if kind == "luroth":
        return np.floor(1.0 / u[:n])
    if kind not in ("engel", "sylvester"):
        raise DomainError(f"no ratio chain for kind {kind!r}")
    d = math.floor(1.0 / u[0]) + 1.0
    out = np.empty(n)
    k = 0
    while k < n:
        s = d - 1.0 if kind == "engel" else d * (d - 1.0)
        if s >= _EXACT_STATE_LIMIT:
            break
        nxt = math.floor(s / u[k + 1]) + 1.0
        out[k] = (nxt - 1.0) / s
        d = nxt
        k += 1
    if k < n:
        out[k:] = 1.0 / u[k + 1:n + 1]
    return out


RATIO_MATRICES = {
    "luroth": luroth_ratio_matrix,
    "engel": engel_ratio_matrix,
    "sylvester": sylvester_ratio_matrix,
}
