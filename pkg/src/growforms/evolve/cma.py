"""CMA-ES core: (mu/mu_w, lambda) with rank-one + rank-mu covariance update
and cumulative step-size adaptation, standard hyperparameters for the
problem dimension. The state machine is ask/tell-style: cma_sample draws a
population, cma_update digests the ranked winners.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["CmaState", "cma_init", "cma_sample", "cma_update", "log_weights"]

EIGEN_FLOOR = 1e-14
MAX_RESAMPLES = 100


def log_weights(mu: int) -> np.ndarray:
    """Log-rank recombination weights, w_i ~ ln(mu+1) - ln(i), normalized."""
    w = np.log(mu + 1.0) - np.log(np.arange(1, mu + 1))
    return w / w.sum()


@dataclass
class CmaState:
    mean: np.ndarray
    sigma: float
    C: np.ndarray
    p_sigma: np.ndarray
    p_c: np.ndarray
    weights: np.ndarray
    generation: int
    rng: np.random.Generator
    # derived strategy constants, fixed at init
    mueff: float = 0.0
    cc: float = 0.0
    cs: float = 0.0
    c1: float = 0.0
    cmu: float = 0.0
    damps: float = 0.0
    chi_n: float = 0.0
    # eigendecomposition cache of C
    _B: np.ndarray | None = field(default=None, repr=False)
    _D: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.mean)


def _decompose(state: CmaState) -> None:
    C = (state.C + state.C.T) / 2.0
    vals, vecs = np.linalg.eigh(C)
    if (vals < EIGEN_FLOOR).any():
        vals = np.maximum(vals, EIGEN_FLOOR)  # covariance repair
        C = (vecs * vals) @ vecs.T
    state.C = C
    state._B = vecs
    state._D = np.sqrt(vals)


def cma_init(mu: int, seed: int, dim: int = 5, sigma0: float = 0.3,
             mean: np.ndarray | None = None) -> CmaState:
    if mu < 1:
        raise ValueError("mu must be >= 1")
    n = dim
    weights = log_weights(mu)
    mueff = 1.0 / float((weights ** 2).sum())
    state = CmaState(
        mean=np.full(n, 0.5) if mean is None else np.asarray(mean, dtype=float).copy(),
        sigma=sigma0,
        C=np.eye(n),
        p_sigma=np.zeros(n),
        p_c=np.zeros(n),
        weights=weights,
        generation=0,
        rng=np.random.Generator(np.random.PCG64(seed)),
        mueff=mueff,
        cc=(4.0 + mueff / n) / (n + 4.0 + 2.0 * mueff / n),
        cs=(mueff + 2.0) / (n + mueff + 5.0),
        c1=2.0 / ((n + 1.3) ** 2 + mueff),
        damps=1.0 + 2.0 * max(0.0, math.sqrt((mueff - 1.0) / (n + 1.0)) - 1.0)
              + (mueff + 2.0) / (n + mueff + 5.0),
        chi_n=math.sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n)),
    )
    state.cmu = min(1.0 - state.c1,
                    2.0 * (mueff - 2.0 + 1.0 / mueff) / ((n + 2.0) ** 2 + mueff))
    _decompose(state)
    return state


def cma_sample(state: CmaState, lam: int, bounded: bool = True) -> np.ndarray:
    """Draw lam candidates; with bounds, resample a draw up to MAX_RESAMPLES
    times if it leaves [0,1]^n, then clamp componentwise."""
    if state._B is None or state._D is None:
        _decompose(state)
    out = np.empty((lam, state.dim))
    for i in range(lam):
        for _ in range(MAX_RESAMPLES):
            z = state.rng.standard_normal(state.dim)
            x = state.mean + state.sigma * (state._B @ (state._D * z))
            if not bounded or ((x >= 0.0).all() and (x <= 1.0).all()):
                break
        if bounded:
            x = np.clip(x, 0.0, 1.0)
        out[i] = x
    return out


def cma_update(state: CmaState, ranked: np.ndarray) -> CmaState:
    """Digest the top-mu candidates (best first) and adapt mean, paths,
    covariance, and step size."""
    ranked = np.asarray(ranked, dtype=float)
    if len(ranked) != len(state.weights):
        raise ValueError(f"expected {len(state.weights)} ranked candidates")
    n = state.dim
    w = state.weights
    old_mean = state.mean
    ys = (ranked - old_mean) / state.sigma
    y_w = w @ ys
    state.mean = old_mean + state.sigma * y_w

    if state._B is None or state._D is None:
        _decompose(state)
    inv_sqrt_y = state._B @ ((state._B.T @ y_w) / state._D)  # C^(-1/2) (m'-m)/sigma
    state.p_sigma = ((1.0 - state.cs) * state.p_sigma
                     + math.sqrt(state.cs * (2.0 - state.cs) * state.mueff) * inv_sqrt_y)
    gen = state.generation + 1
    ps_norm = float(np.linalg.norm(state.p_sigma))
    hsig = (ps_norm / math.sqrt(1.0 - (1.0 - state.cs) ** (2 * gen))
            < (1.4 + 2.0 / (n + 1.0)) * state.chi_n)
    state.p_c = ((1.0 - state.cc) * state.p_c
                 + (math.sqrt(state.cc * (2.0 - state.cc) * state.mueff) * y_w
                    if hsig else 0.0))

    rank_mu = (ys.T * w) @ ys
    delta_hsig = (1.0 - int(hsig)) * state.cc * (2.0 - state.cc)
    state.C = ((1.0 - state.c1 - state.cmu) * state.C
               + state.c1 * (np.outer(state.p_c, state.p_c) + delta_hsig * state.C)
               + state.cmu * rank_mu)
    state.sigma = state.sigma * math.exp(
        (state.cs / state.damps) * (ps_norm / state.chi_n - 1.0)
    )
    state.generation = gen
    _decompose(state)
    return state
