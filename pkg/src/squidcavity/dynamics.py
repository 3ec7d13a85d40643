"""Time evolution of the dark state under the full Hamiltonian.

Probabilities are labelled after the symmetric-sector components the
state decomposes into: P1 (photon in the cavity), P2 (|D> component),
P3 (|C> component, the target), P4 (auxiliary excited).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .linalg import DimensionError, hermitian_eig, propagator
from .model import (
    CouplingParams,
    ExchangeSymmetryError,
    SQRT2,
    build_h_full,
    dark_state_full,
    symmetry_transform,
)

DEFAULT_T_MAX = 200.0
DEFAULT_N_STEPS = 4001

# phi-coordinates of the symmetric-sector chi vectors, rows (chi1+, chi2+, chi3+, chi4+)
_CHI_PLUS = symmetry_transform().transform[2:]
_CHI_MINUS = symmetry_transform().transform[:2]


@dataclass(frozen=True)
class Amplitudes:
    """Projections of a phi-basis state onto chi1+, chi2+, chi4+, chi3+."""

    f1: complex
    f2: complex
    f3: complex
    f4: complex


@dataclass(frozen=True)
class EvolutionTrace:
    """Uniform-grid time series of (P1, P2, P3, P4)."""

    params: CouplingParams
    times: np.ndarray
    probs: np.ndarray
    leakage: np.ndarray

    @property
    def rows(self):
        return self.probs

    @property
    def p3(self):
        return self.probs[:, 2]


@lru_cache(maxsize=64)
def _cached_eig(p):
    return hermitian_eig(build_h_full(p))


def _require_symmetric(p):
    if not p.is_symmetric:
        raise ExchangeSymmetryError(
            "the protocol assumes identical SQUIDs (g1 = g2, omega1 = omega2)"
        )


def evolve(p, t):
    """Dark state (aux in ground) evolved for time t, phi basis."""
    _require_symmetric(p)
    if t < 0:
        raise ValueError("t must be >= 0")
    eig = _cached_eig(p)
    return propagator(eig, t) @ dark_state_full(p)


def amplitudes(psi):
    """Symmetric-sector amplitudes of a 6-dim phi-basis state."""
    psi = np.asarray(psi)
    if psi.shape != (6,):
        raise DimensionError(f"expected a 6-dim phi-basis state, got {psi.shape}")
    proj = _CHI_PLUS @ psi
    return Amplitudes(f1=proj[0], f2=proj[1], f3=proj[3], f4=proj[2])


def probabilities(a):
    """(P1, P2, P3, P4) from symmetric-sector amplitudes."""
    return (
        abs(a.f1) ** 2,
        abs(a.f2) ** 2,
        abs(a.f3) ** 2,
        abs(a.f4) ** 2,
    )


def antisymmetric_leakage(psi):
    """Total population on the antisymmetric chi vectors."""
    proj = _CHI_MINUS @ np.asarray(psi)
    return float(np.sum(np.abs(proj) ** 2))


def sector_modes(p):
    """Mode weights for the symmetric-sector dynamics of the dark state.

    Returns ``(w, lam)`` with ``w[row, k]`` complex weights (rows ordered
    F1, F2, F4, F3 to match the scan kernel) and ``lam`` the 6 eigenvalues:
    row amplitude at time t is sum_k w[row, k] exp(-i lam_k t).
    """
    _require_symmetric(p)
    eig = _cached_eig(p)
    coeff = eig.eigenvectors.conj().T @ dark_state_full(p)
    rows = _CHI_PLUS[[0, 1, 2, 3]] @ eig.eigenvectors
    w = rows * coeff
    return w, eig.eigenvalues


def trace(p, t_max=DEFAULT_T_MAX, n_steps=DEFAULT_N_STEPS):
    """Evolution trace on a uniform grid over [0, t_max] with n_steps points."""
    _require_symmetric(p)
    if not (t_max > 0):
        raise ValueError("t_max must be > 0")
    if n_steps < 2:
        raise ValueError("n_steps must be >= 2")
    eig = _cached_eig(p)
    d0 = dark_state_full(p)
    times = np.linspace(0.0, t_max, n_steps)
    coeff = eig.eigenvectors.conj().T @ d0
    phases = np.exp(-1j * np.outer(eig.eigenvalues, times))
    states = eig.eigenvectors @ (coeff[:, None] * phases)
    plus = np.abs(_CHI_PLUS @ states) ** 2
    minus = np.abs(_CHI_MINUS @ states) ** 2
    probs = np.stack([plus[0], plus[1], plus[3], plus[2]], axis=1)
    return EvolutionTrace(
        params=p, times=times, probs=probs, leakage=minus.sum(axis=0)
    )
