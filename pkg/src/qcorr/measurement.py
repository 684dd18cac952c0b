"""Complete rank-1 projective measurements on one subsystem.

Provides the non-selective channel M(rho) = sum_i (I x Pi_i x I) rho (...),
conditional post-measurement ensembles, and the measurement-induced mutual
information J.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg, states
from .errors import AngleOutOfRange, DimensionMismatch, NotUnitary
from .infotheory import entropy_of_spectrum, von_neumann_entropy
from .states import DensityMatrix, from_dense, reduced

PROJ_TOL = 1e-9
ZERO_PROB = 1e-12


@dataclass(frozen=True)
class ProjectiveMeasurement:
    """A complete set of d orthogonal rank-1 projectors on a d-dim subsystem."""
    subsystem_dim: int
    projectors: tuple[np.ndarray, ...]

    def __post_init__(self):
        d = self.subsystem_dim
        if len(self.projectors) != d:
            raise DimensionMismatch(f"{len(self.projectors)} projectors for dim {d}")
        total = np.zeros((d, d), dtype=np.complex128)
        for i, p in enumerate(self.projectors):
            if p.shape != (d, d):
                raise DimensionMismatch(f"projector {i} has shape {p.shape}")
            if linalg.hermitian_defect(p) > PROJ_TOL:
                raise DimensionMismatch(f"projector {i} is not Hermitian")
            if np.abs(p @ p - p).max() > PROJ_TOL:
                raise DimensionMismatch(f"projector {i} is not idempotent")
            if abs(np.trace(p).real - 1.0) > PROJ_TOL:
                raise DimensionMismatch(f"projector {i} is not rank 1")
            for q in self.projectors[i + 1:]:
                if np.abs(p @ q).max() > PROJ_TOL:
                    raise DimensionMismatch("projectors are not pairwise orthogonal")
            total += p
        if np.abs(total - np.eye(d)).max() > PROJ_TOL:
            raise DimensionMismatch("projectors do not sum to the identity")


@dataclass(frozen=True)
class ConditionalEnsemble:
    """Outcome probabilities and conditional states on the unmeasured part.

    Outcomes with probability below 1e-12 carry None instead of a state and
    contribute 0 to conditional-entropy sums.
    """
    probabilities: np.ndarray
    states: tuple[DensityMatrix | None, ...]


def basis_vectors(theta: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal qubit basis at Bloch angles (theta, phi)."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    e = complex(math.cos(phi), math.sin(phi))
    v0 = np.array([c, e * s], dtype=np.complex128)
    v1 = np.array([-s, e * c], dtype=np.complex128)
    return v0, v1


def qubit_measurement(theta: float, phi: float) -> ProjectiveMeasurement:
    """Projectors onto cos(t/2)|0> + e^{i phi} sin(t/2)|1> and its complement."""
    if not 0.0 <= theta <= math.pi:
        raise AngleOutOfRange(f"theta={theta} outside [0, pi]")
    if not 0.0 <= phi < 2 * math.pi:
        raise AngleOutOfRange(f"phi={phi} outside [0, 2 pi)")
    v0, v1 = basis_vectors(theta, phi)
    return ProjectiveMeasurement(
        2, (np.outer(v0, v0.conj()), np.outer(v1, v1.conj())))


def measurement_from_unitary(u: np.ndarray) -> ProjectiveMeasurement:
    """Measurement whose projectors are onto the columns of a unitary."""
    u = linalg.as_matrix(u)
    d = u.shape[0]
    if u.shape[1] != d or np.abs(linalg.dag(u) @ u - np.eye(d)).max() > 1e-8:
        raise NotUnitary("input is not unitary within 1e-8")
    projs = tuple(np.outer(u[:, i], u[:, i].conj()) for i in range(d))
    return ProjectiveMeasurement(d, projs)


def _check_dims(rho: DensityMatrix, k: int, m: ProjectiveMeasurement):
    if not 0 <= k < rho.n_subsystems:
        raise DimensionMismatch(f"subsystem index {k} out of range")
    if m.subsystem_dim != rho.dims[k]:
        raise DimensionMismatch(
            f"measurement dim {m.subsystem_dim} vs subsystem dim {rho.dims[k]}")


def embed(op: np.ndarray, dims, k: int) -> np.ndarray:
    """I x ... x op x ... x I with op at tensor slot k."""
    left = int(np.prod(dims[:k])) if k > 0 else 1
    right = int(np.prod(dims[k + 1:])) if k + 1 < len(dims) else 1
    return np.kron(np.kron(np.eye(left), op), np.eye(right))


def _measured_view(rho: DensityMatrix, k: int) -> np.ndarray:
    """rho reshaped to (d_k, d_rest, d_k, d_rest) with subsystem k first."""
    n = rho.n_subsystems
    dims = list(rho.dims)
    perm = [k] + [i for i in range(n) if i != k]
    t = rho.matrix.reshape(dims + dims).transpose(perm + [p + n for p in perm])
    dk = dims[k]
    return t.reshape(dk, rho.dim // dk, dk, rho.dim // dk)


def raw_conditionals(rho: DensityMatrix, k: int, vectors: np.ndarray):
    """Unnormalized conditional blocks <v_i| rho |v_i>_k for basis `vectors`.

    `vectors` has shape (d_k, d_k), one outcome vector per row. Returns
    (probabilities, blocks) where blocks[i] is d_rest x d_rest and has
    trace p_i.
    """
    t = _measured_view(rho, k)
    blocks = np.einsum('ia,abcd,ic->ibd', vectors.conj(), t, vectors)
    probs = np.einsum('ibb->i', blocks).real
    return probs, blocks


def _outcome_vectors(m: ProjectiveMeasurement) -> np.ndarray:
    """One unit vector per projector (the rank-1 range), as rows."""
    vecs = []
    for p in m.projectors:
        w, u = np.linalg.eigh((p + linalg.dag(p)) / 2)
        vecs.append(u[:, -1])
    return np.array(vecs)


def apply_nonselective(rho: DensityMatrix, k: int, m: ProjectiveMeasurement) -> DensityMatrix:
    """Non-selective channel: sum_i P_i rho P_i with P_i embedded at slot k."""
    _check_dims(rho, k, m)
    out = np.zeros_like(rho.matrix)
    for p in m.projectors:
        full = embed(p, rho.dims, k)
        out += full @ rho.matrix @ full
    return from_dense(out, rho.dims)


def conditionals(rho: DensityMatrix, k: int, m: ProjectiveMeasurement) -> ConditionalEnsemble:
    """Outcome probabilities and renormalized conditional states on the rest."""
    _check_dims(rho, k, m)
    rest_dims = [d for i, d in enumerate(rho.dims) if i != k]
    probs, blocks = raw_conditionals(rho, k, _outcome_vectors(m))
    out_states = []
    for p, b in zip(probs, blocks):
        if p < ZERO_PROB:
            out_states.append(None)
        else:
            out_states.append(from_dense(b / p, rest_dims))
    return ConditionalEnsemble(np.maximum(probs, 0.0), tuple(out_states))


def induced_J(rho: DensityMatrix, k: int, m: ProjectiveMeasurement) -> float:
    """Measurement-induced mutual information, in bits.

    J = sum_{j != k} S(rho_j) - sum_i p_i S(rho_rest|i). Equals the mutual
    information of the non-selective channel output.
    """
    _check_dims(rho, k, m)
    rest_entropy = sum(von_neumann_entropy(reduced(rho, {j}))
                       for j in range(rho.n_subsystems) if j != k)
    probs, blocks = raw_conditionals(rho, k, _outcome_vectors(m))
    cond = 0.0
    for p, b in zip(probs, blocks):
        if p >= ZERO_PROB:
            cond += p * entropy_of_spectrum(np.linalg.eigvalsh(b / p))
    return rest_entropy - cond
