"""Projective post-selection on the auxiliary SQUID."""

from dataclasses import dataclass

import numpy as np

from .linalg import DimensionError
from .model import PHI_BASIS, PSI_BASIS, BasisLabel

# phi-basis indices with the auxiliary in |g> / |e>
AUX_G_INDICES = (0, 1, 2, 4, 5)
AUX_E_INDICES = (3,)

UNREACHABLE_CUTOFF = 1e-14


class OutcomeUnreachableError(ValueError):
    """Requested outcome has (numerically) zero Born probability."""


@dataclass(frozen=True)
class MeasurementOutcome:
    """One branch of the auxiliary measurement: Born probability and the
    renormalized collapsed state with its basis labels."""

    aux_result: str
    probability: float
    collapsed: np.ndarray
    basis: tuple


def postselect(psi, outcome):
    """Project a phi-basis state onto an auxiliary-SQUID outcome.

    Outcome "g" collapses onto the 5-dim psi basis (two SQUIDs + cavity);
    outcome "e" collapses onto the single label |00, 0ph>.
    """
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (6,):
        raise DimensionError(f"expected a 6-dim phi-basis state, got {psi.shape}")
    if outcome not in ("g", "e"):
        raise ValueError(f"outcome must be 'g' or 'e', got {outcome!r}")
    if outcome == "g":
        indices = AUX_G_INDICES
        basis = PSI_BASIS
    else:
        indices = AUX_E_INDICES
        basis = (BasisLabel("0", "0", 0),)
    branch = psi[list(indices)]
    prob = float(np.sum(np.abs(branch) ** 2))
    if prob < UNREACHABLE_CUTOFF:
        raise OutcomeUnreachableError(
            f"outcome {outcome!r} unreachable (probability {prob:.3e})"
        )
    return MeasurementOutcome(
        aux_result=outcome,
        probability=prob,
        collapsed=branch / np.sqrt(prob),
        basis=basis,
    )


def fidelity(psi, target):
    """|<target|psi>|^2 for state vectors over the same basis."""
    psi = np.asarray(psi)
    target = np.asarray(target)
    if psi.shape != target.shape:
        raise DimensionError(
            f"state shapes differ: {psi.shape} vs {target.shape}"
        )
    return float(np.abs(np.vdot(target, psi)) ** 2)


def embed_aux_ground(psi5):
    """Tensor a psi-basis state with the auxiliary ground state (phi basis)."""
    psi5 = np.asarray(psi5, dtype=np.complex128)
    if psi5.shape != (5,):
        raise DimensionError(f"expected a 5-dim psi-basis state, got {psi5.shape}")
    out = np.zeros(6, dtype=np.complex128)
    out[list(AUX_G_INDICES)] = psi5
    return out


def target_c_with_vacuum():
    """|C> tensor |0>_c in the psi basis (support on |10,0ph> and |01,0ph>)."""
    vec = np.zeros(5, dtype=np.complex128)
    vec[3] = vec[4] = 1.0 / np.sqrt(2.0)
    return vec
