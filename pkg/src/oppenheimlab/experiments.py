"""Monte Carlo harness for the convergence experiments.

Reproducibility contract: every replication j of the grid point with index i
draws from its own stream seeded as SeedSequence(master_seed,
spawn_key=(i, j)); statistics are reduced in replication order, so a record
is bit-identical across reruns and worker counts.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__ as _pkg_version
from .distributions import (
    DistributionFamily,
    discrete_beta_family,
    family_constants,
    family_from_config,
    char_components,
    make_sequence,
    uniform_family,
)
from .errors import ConditionCheckError, DomainError
from .expansions import RATIO_MATRICES, ratio_path
from .limitlaw import StableLimitLaw, char_fn, ks_distance
from .specfun import EULER_GAMMA, c2_discrete
from .weights import (
    WeightScheme,
    cesaro_scheme,
    check_theorem_3_2_conditions,
    check_theorem_4_1_conditions,
    power_alpha_scheme,
    weights_row,
)

WEAK_LAW_SCHEMES = ("direct", "luroth", "engel", "sylvester")
DISTRIBUTIONAL_MODES = ("classical_1_2", "general_4_1", "cor_4_2", "cor_4_3")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to rerun one experiment deterministically."""

    master_seed: int
    n_grid: tuple
    replications: int
    scheme: str = "direct"  # weak-law source: direct Y = 1/U, or a digit kind
    mode: str = "classical_1_2"  # distributional mode
    family: dict = field(default_factory=lambda: {"kind": "uniform"})
    weights: dict = field(default_factory=lambda: {"kind": "cesaro"})
    beta: object = "constant:0"  # discrete-family beta tag (cor_4_3)
    epsilon: float = 0.3
    t_grid: tuple = (0.5, 1.0, 2.0)
    workers: int = 1

    def __post_init__(self):
        ng = tuple(int(n) for n in self.n_grid)
        if any(b <= a for a, b in zip(ng, ng[1:])):
            raise DomainError("n_grid must be increasing")
        object.__setattr__(self, "n_grid", ng)
        object.__setattr__(self, "t_grid", tuple(float(t) for t in self.t_grid))
        if self.replications < 1:
            raise DomainError("replications must be >= 1")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["n_grid"] = list(self.n_grid)
        d["t_grid"] = list(self.t_grid)
        return d

    def digest(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True,
                             separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True, eq=False)
class RunRecord:
    """Persisted outcome of one experiment.

    Equality compares the reproducible payload (digest, kind, per-n results,
    version, worker count) and ignores the wall time.
    """

    config_digest: str
    kind: str
    per_n: tuple  # one mapping per grid point
    wall_time: float
    version: str = _pkg_version
    worker_count: int = 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, RunRecord):
            return NotImplemented
        return (self.config_digest == other.config_digest
                and self.kind == other.kind
                and self.per_n == other.per_n
                and self.version == other.version
                and self.worker_count == other.worker_count)

    def to_json(self) -> str:
        d = {"config_digest": self.config_digest, "kind": self.kind,
             "per_n": list(self.per_n), "wall_time": self.wall_time,
             "version": self.version, "worker_count": self.worker_count}
        return json.dumps(d, sort_keys=True, indent=2)

    @staticmethod
    def from_json(text: str) -> "RunRecord":
        d = json.loads(text)
        return RunRecord(d["config_digest"], d["kind"],
                         tuple(d["per_n"]), d["wall_time"],
                         d.get("version", "?"), d.get("worker_count", 1))


def save_record(record: RunRecord, directory) -> Path:
    path = Path(directory) / f"{record.config_digest}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(record.to_json())
    return path


def load_record(digest: str, directory) -> Optional[RunRecord]:
    path = Path(directory) / f"{digest}.json"
    if not path.exists():
        return None
    return RunRecord.from_json(path.read_text())


def replication_rng(master_seed: int, n_index: int,
                    rep: int) -> np.random.Generator:
    """Independent stream for replication ``rep`` of grid point ``n_index``."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(n_index, rep))
    return np.random.Generator(np.random.PCG64(ss))


def _weight_scheme(cfg: dict) -> WeightScheme:
    kind = cfg.get("kind", "cesaro")
    if kind == "cesaro":
        return cesaro_scheme(cfg.get("rho", "constant"))
    if kind == "power_alpha":
        return power_alpha_scheme(float(cfg["alpha"]),
                                  cfg.get("rho", "constant"))
    raise DomainError(f"unsupported weight kind {kind!r} in configs")


def _family(cfg) -> DistributionFamily:
    if isinstance(cfg, DistributionFamily):
        return cfg
    return family_from_config(cfg)


def _is_constant_family(family: DistributionFamily) -> bool:
    tags = [v for v in family.params.values() if isinstance(v, str)]
    return family.kind == "uniform" or all(
        t.startswith("constant") for t in tags)


def _sample_y(family: DistributionFamily, rng: np.random.Generator,
              n: int) -> np.ndarray:
    """Y_k = 1/U_k for k = 1..n from one stream."""
    if _is_constant_family(family):
        return 1.0 / family.sampler(1, rng, n)
    return np.array([1.0 / family.sampler(k, rng, 1)[0]
                     for k in range(1, n + 1)])


# ---------------------------------------------------------------------------
# Exact weak laws
# ---------------------------------------------------------------------------

def exact_weak_law_run(config: ExperimentConfig) -> RunRecord:
    """Exceedance frequencies of |T_n - ell| > epsilon where
    T_n = (1/(rho_n log n)) sum_k a_{k,n} X_k, with X the direct reciprocals
    Y_k = 1/U_k or the ratio variables of a digit chain."""
    t_start = time.perf_counter()
    if config.scheme not in WEAK_LAW_SCHEMES:
        raise DomainError(f"unknown weak-law scheme {config.scheme!r}")
    family = _family(config.family)
    scheme = _weight_scheme(config.weights)

    report = check_theorem_3_2_conditions(scheme, family.alpha,
                                          max(config.n_grid))
    if not report.passed:
        failing = [k for k, (_, v) in report.conditions.items() if v != "pass"]
        raise ConditionCheckError(
            "weight scheme fails weak-law conditions: " + ", ".join(failing))
    ell = report.ell

    per_n = []
    for i, n in enumerate(config.n_grid):
        a = weights_row(scheme, n)
        denom = scheme.rho(n) * math.log(n)
        stats = np.empty(config.replications)
        for rep in range(config.replications):
            rng = replication_rng(config.master_seed, i, rep)
            if config.scheme == "direct":
                x = _sample_y(family, rng, n)
            else:
                x = ratio_path(config.scheme, rng, n)
            stats[rep] = float(np.dot(a, x)) / denom
        exceed = float(np.mean(np.abs(stats - ell) > config.epsilon))
        per_n.append({"n": int(n), "exceedance": exceed,
                      "t_median": float(np.median(stats)),
                      "t_mean": float(np.mean(stats)), "ell": float(ell)})
    return RunRecord(config.digest(), "weak_law", tuple(per_n),
                     time.perf_counter() - t_start,
                     worker_count=config.workers)


# ---------------------------------------------------------------------------
# Distributional limits
# ---------------------------------------------------------------------------

def centering_constants(mode: str, family_or_beta, scheme: WeightScheme,
                        n: int) -> tuple[float, float]:
    """(subtractor, log_term) of the centered statistic V_n.

    subtractor = kappa_n + sum_k a_{k,n} c_{2,k};
    log_term = sum_k a_{k,n} c_{1,k} log a_{k,n};
    with (c1, c2) = (alpha_k, c_{F_k} - 1) for the reciprocal mode and
    ((1 - beta_k), c2_discrete(beta_k)) for the discrete-digit mode.
    """
    a = weights_row(scheme, n)
    log_a = np.log(a)
    if mode == "classical_1_2":
        # digit law Z = ceil(1/U): c1 = 1, c2 = 0
        return float(a.sum()), float(np.sum(a * log_a))
    if mode in ("cor_4_2", "general_4_1"):
        family = _family(family_or_beta)
        c1 = np.array([family.alpha(k) for k in range(1, n + 1)])
        if family.is_discrete():
            c2 = np.array([c2_discrete(family.beta(k))
                           for k in range(1, n + 1)])
        else:
            c2 = np.array([family_constants(family, k).c - 1.0
                           for k in range(1, n + 1)])
        return float(a.sum() + np.sum(a * c2)), float(np.sum(a * c1 * log_a))
    if mode == "cor_4_3":
        bseq = make_sequence(family_or_beta)
        betas = np.array([bseq(k) for k in range(1, n + 1)])
        c1 = 1.0 - betas
        c2 = np.array([c2_discrete(b) for b in betas])
        return float(a.sum() + np.sum(a * c2)), float(np.sum(a * c1 * log_a))
    raise DomainError(f"unknown mode {mode!r}")


def _mode_c1(config: ExperimentConfig) -> Callable[[int], float]:
    if config.mode == "classical_1_2":
        return lambda k: 1.0
    if config.mode in ("cor_4_2", "general_4_1"):
        family = _family(config.family)
        return family.alpha
    if config.mode == "cor_4_3":
        bseq = make_sequence(config.beta)
        return lambda k: 1.0 - bseq(k)
    raise DomainError(f"unknown mode {config.mode!r}")


def _sample_z(config: ExperimentConfig, rng: np.random.Generator,
              n: int) -> np.ndarray:
    """The summand variables Z_1..Z_n of the configured mode."""
    if config.mode == "classical_1_2":
        u = 1.0 - rng.random(n)
        return np.floor(1.0 / u) + 1.0
    if config.mode in ("cor_4_2", "general_4_1"):
        # Z_k = 1/U_k; for discrete families the reciprocal is the digit
        return _sample_y(_family(config.family), rng, n)
    if config.mode == "cor_4_3":
        bseq = make_sequence(config.beta)
        family = discrete_beta_family(config.beta)
        if isinstance(config.beta, str) and \
                config.beta.startswith("constant"):
            b = bseq(1)
            v = 1.0 - rng.random(n)
            return np.maximum(np.ceil(b + (1.0 - b) / v), 2.0)
        return np.array([1.0 / family.sampler(k, rng, 1)[0]
                         for k in range(1, n + 1)])
    raise DomainError(f"unknown mode {config.mode!r}")


def v_samples(config: ExperimentConfig, n: int,
              n_index: int) -> np.ndarray:
    """All replications of the centered statistic V_n at one grid point."""
    scheme = _weight_scheme(config.weights)
    a = weights_row(scheme, n)
    subtractor, log_term = centering_constants(
        config.mode, config.beta if config.mode == "cor_4_3" else config.family,
        scheme, n)
    out = np.empty(config.replications)
    for rep in range(config.replications):
        rng = replication_rng(config.master_seed, n_index, rep)
        z = _sample_z(config, rng, n)
        out[rep] = float(np.dot(a, z)) - subtractor + log_term
    return out


def limit_law_for(config: ExperimentConfig) -> StableLimitLaw:
    """Limit law of the configured mode: scale ell = lim sum_k a_{k,n} c_{1,k},
    no drift."""
    scheme = _weight_scheme(config.weights)
    report = check_theorem_4_1_conditions(scheme, _mode_c1(config),
                                          max(config.n_grid))
    if not report.passed:
        failing = [k for k, (_, v) in report.conditions.items() if v != "pass"]
        raise ConditionCheckError(
            "weight scheme fails distributional conditions: "
            + ", ".join(failing))
    return StableLimitLaw(c=report.ell, delta=0.0)


def distributional_run(config: ExperimentConfig) -> RunRecord:
    """KS distance and ECF error of V_n against the stable limit law."""
    t_start = time.perf_counter()
    if config.mode not in DISTRIBUTIONAL_MODES:
        raise DomainError(f"unknown mode {config.mode!r}")
    if config.replications < 100:
        raise DomainError("distributional runs need at least 100 replications")
    law = limit_law_for(config)

    per_n = []
    for i, n in enumerate(config.n_grid):
        v = v_samples(config, n, i)
        ks = ks_distance(v, law) if law.c > 0 else float(
            np.mean(np.abs(v) > config.epsilon))
        ecf = np.array([np.mean(np.exp(1j * t * v)) for t in config.t_grid])
        xi = np.array([char_fn(law, t) for t in config.t_grid])
        per_n.append({
            "n": int(n), "ks": float(ks),
            "ecf_error": float(np.max(np.abs(ecf - xi))),
            "ell": float(law.c),
        })
    return RunRecord(config.digest(), "distributional", tuple(per_n),
                     time.perf_counter() - t_start,
                     worker_count=config.workers)


# ---------------------------------------------------------------------------
# Characteristic-function distance and the gamma constant
# ---------------------------------------------------------------------------

def char_distance_check(n: int, t_vector: Sequence[float], m: int,
                        scheme_kind: str = "engel",
                        master_seed: int = 20260823) -> dict:
    """Estimates |phi_{R_1..R_n}(t) - prod_k psi_k(t_k)| by Monte Carlo and
    compares with the coupling bound sum_k |t_k| plus 3 standard errors.

    psi_k is the model characteristic function 1 + A(t) + iB(t) of the
    reciprocal 1/U_k under the driving family (uniform for the built-in digit
    chains)."""
    if n > 4:
        raise DomainError("joint ECF check is limited to n <= 4")
    t = np.asarray(list(t_vector), dtype=float)
    if t.size != n:
        raise DomainError("t_vector must have length n")
    if m < 10**5:
        raise DomainError("need at least 1e5 replications")
    if scheme_kind not in RATIO_MATRICES:
        raise DomainError(f"unknown scheme kind {scheme_kind!r}")
    rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(master_seed)))
    r = RATIO_MATRICES[scheme_kind](rng, n, m)
    ecf = complex(np.mean(np.exp(1j * (r @ t))))

    family = uniform_family()
    psi_prod = 1.0 + 0.0j
    for k in range(1, n + 1):
        tk = float(t[k - 1])
        if tk == 0.0:
            continue
        a_val, b_val = char_components(family, k, tk)
        psi_prod *= complex(1.0 + a_val, b_val)

    estimate = abs(ecf - psi_prod)
    se = 1.0 / math.sqrt(m)
    bound = float(np.sum(np.abs(t)))
    return {"estimate": float(estimate), "bound": bound, "se": se,
            "passed": bool(estimate <= bound + 3.0 * se)}


def gamma_from_harmonic(n: int) -> float:
    """log n - H_n, which converges (upward) to -gamma."""
    if n < 1:
        raise DomainError("n must be >= 1")
    h = float(np.sum(1.0 / np.arange(1, n + 1, dtype=float)))
    return math.log(n) - h
