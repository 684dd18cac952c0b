"""Entropies and mutual informations, all in bits (log base 2)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DimensionMismatch, NotADistribution, SinglePartyState
from .states import DensityMatrix, reduced

CLAMP = 1e-12
INFINITE = math.inf  # distinguished relative-entropy result, not a failure


@dataclass(frozen=True)
class ProbabilityTable:
    """Joint outcome distribution over a product outcome space.

    `probs` is indexed row-major by the per-party outcome counts in `dims`.
    """
    dims: tuple[int, ...]
    probs: np.ndarray

    def marginal(self, k: int) -> np.ndarray:
        t = self.probs.reshape(self.dims)
        axes = tuple(i for i in range(len(self.dims)) if i != k)
        return t.sum(axis=axes)


def probability_table(probs, dims: Sequence[int]) -> ProbabilityTable:
    dims = tuple(int(d) for d in dims)
    p = np.asarray(probs, dtype=float).ravel()
    if p.size != int(np.prod(dims)):
        raise NotADistribution(f"{p.size} entries for outcome dims {dims}")
    if p.min() < -CLAMP:
        raise NotADistribution(f"negative probability {p.min():.3e}")
    if abs(p.sum() - 1.0) > 1e-9:
        raise NotADistribution(f"probabilities sum to {p.sum()!r}")
    return ProbabilityTable(dims, np.maximum(p, 0.0))


def shannon_entropy(p) -> float:
    """H = -sum p log2 p with the 0 log 0 = 0 convention."""
    if isinstance(p, ProbabilityTable):
        p = p.probs
    p = np.asarray(p, dtype=float).ravel()
    if p.min() < -CLAMP or abs(p.sum() - 1.0) > 1e-9:
        raise NotADistribution(f"invalid distribution (sum {p.sum()!r}, min {p.min()!r})")
    p = p[p > CLAMP]
    return float(-(p * np.log2(p)).sum())


def entropy_of_spectrum(w: np.ndarray) -> float:
    """Shannon entropy of an eigenvalue spectrum, clamping negative dust."""
    w = np.asarray(w, dtype=float)
    w = w[w > CLAMP]
    return float(-(w * np.log2(w)).sum())


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -Tr(rho log2 rho), in bits."""
    return entropy_of_spectrum(rho.eigenvalues())


def mutual_information(rho: DensityMatrix) -> float:
    """Total correlations: sum of marginal entropies minus joint entropy."""
    if rho.n_subsystems < 2:
        raise SinglePartyState("mutual information needs at least 2 subsystems")
    marginals = sum(von_neumann_entropy(reduced(rho, {k}))
                    for k in range(rho.n_subsystems))
    return marginals - von_neumann_entropy(rho)


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """S(rho||sigma) = -S(rho) - Tr(rho log2 sigma), in bits.

    Returns math.inf when the support of rho is not contained in the
    support of sigma.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimension {rho.dim} vs {sigma.dim}")
    w, u = linalg.eigh(sigma.matrix)
    # rho-weight carried by the near-null eigenspace of sigma
    null = w < CLAMP
    if null.any():
        un = u[:, null]
        weight = float(np.einsum('ik,ij,jk->', un.conj(), rho.matrix, un).real)
        if weight > 1e-9:
            return INFINITE
    log_sigma = (u * np.log2(np.maximum(w, CLAMP))) @ linalg.dag(u)
    cross = float(np.trace(rho.matrix @ log_sigma).real)
    return -von_neumann_entropy(rho) - cross


def classical_mutual_information(p: ProbabilityTable) -> float:
    """Sum of marginal entropies minus the joint entropy of the table."""
    if len(p.dims) < 2:
        raise NotADistribution("classical mutual information needs >= 2 parties")
    h_marg = sum(shannon_entropy(p.marginal(k)) for k in range(len(p.dims)))
    return h_marg - shannon_entropy(p.probs)
