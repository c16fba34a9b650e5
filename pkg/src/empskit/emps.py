"""Marginal passive-state energies and the polygon/indicator criteria built on them.

Every qubit carries the local Hamiltonian H_i = E|1><1| with E = 1, so all
energies returned here are dimensionless multiples of E. The marginal
passive energy of qubit i is the smallest eigenvalue of its reduced density
matrix; for an n-qubit pure state these values obey the polygon
inequalities, each one at most the sum of the others.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import qcore
from .errors import ArgumentError, ValidationError
from .qcore import DensityMatrix, PureState, State

# Slack tolerance for inequality verdicts: an order above eigensolver error,
# well below any physically meaningful violation.
SLACK_TOL = 1e-9

DEFAULT_SEED = 42


@dataclass(frozen=True)
class EmpsVector:
    """Per-qubit marginal passive energies (E_1, ..., E_n), each in [0, 1/2]."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if self.n != arr.size:
            raise ValidationError(f"declared n={self.n} but got {arr.size} values")
        in_range = arr.size == 0 or (arr.min() >= -1e-10 and arr.max() <= 0.5 + 1e-10)
        if not in_range:
            raise ValidationError(
                f"marginal passive energies must lie in [0, 1/2], got {arr.tolist()}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def total(self) -> float:
        return float(self.values.sum())


@dataclass(frozen=True)
class PolygonReport:
    """Outcome of the polygon inequalities E_i <= sum_{j != i} E_j."""

    satisfied: bool
    worst_slack: float
    violating_index: Optional[int] = None  # 1-based, set when violated


def passive_energy(rho: Union[DensityMatrix, np.ndarray], hamiltonian: np.ndarray) -> float:
    """Energy of the passive state reachable from rho by unitaries.

    Equals sum_k lam_k(down) * eps_k(up): state eigenvalues sorted descending
    paired against Hamiltonian eigenvalues sorted ascending. This is the
    minimum of Tr(U rho U^dag H) over all unitaries U.
    """
    lam = qcore.eig_hermitian(rho).eigenvalues
    eps = qcore.eig_hermitian(hamiltonian).eigenvalues
    if lam.size != eps.size:
        raise ArgumentError(
            f"state dimension {lam.size} does not match Hamiltonian dimension {eps.size}"
        )
    return float(np.dot(lam[::-1], eps))


def _marginal_min_eigenvalue(state: State, qubit: int) -> float:
    n = state.n
    if not 1 <= qubit <= n:
        raise ArgumentError(f"qubit index {qubit} out of range 1..{n}")
    if isinstance(state, PureState):
        red = qcore._pure_marginal(state.amps, n, [qubit - 1])
    else:
        red = qcore.partial_trace(state, (qubit,)).entries
    lam_min = float(qcore._jacobi(red, want_vectors=False)[0][0])
    if not lam_min >= -1e-10:
        raise ValidationError(f"marginal of qubit {qubit} has eigenvalue {lam_min:.3e} < 0")
    # rounding can leave lam_min a hair outside [0, 1/2]
    return min(max(lam_min, 0.0), 0.5)


def emps(state: State, qubit: int) -> float:
    """Marginal passive energy of one qubit, in units of E.

    With the local Hamiltonian E|1><1| this is the smallest eigenvalue of the
    qubit's reduced density matrix, which for pure states is half the
    geometric entanglement measure across the qubit-vs-rest cut.
    """
    return _marginal_min_eigenvalue(state, qubit)


def emps_vector(state: State) -> EmpsVector:
    """Marginal passive energies of every qubit, as the characteristic vector."""
    vals = [_marginal_min_eigenvalue(state, q) for q in range(1, state.n + 1)]
    return EmpsVector(n=state.n, values=np.array(vals))


def geometric_entanglement(state: State, qubit: int) -> float:
    """Bipartite geometric entanglement across the qubit-vs-rest cut.

    Defined operationally as twice the minimal marginal eigenvalue (so the
    marginal passive energy is half of it); not computed by any independent
    overlap optimization.
    """
    return 2.0 * _marginal_min_eigenvalue(state, qubit)


def polygon_check(v: EmpsVector) -> PolygonReport:
    """Check E_i <= sum_{j != i} E_j for every qubit i.

    worst_slack is min_i (sum_{j != i} E_j - E_i); the inequalities hold when
    it is >= -SLACK_TOL. Pure multi-qubit states always satisfy them.
    """
    slacks = v.total() - 2.0 * v.values
    worst = int(np.argmin(slacks))
    worst_slack = float(slacks[worst])
    satisfied = worst_slack >= -SLACK_TOL
    return PolygonReport(
        satisfied=satisfied,
        worst_slack=worst_slack,
        violating_index=None if satisfied else worst + 1,
    )


def total_emps(v: EmpsVector) -> float:
    """Total marginal passive energy, sum_j E_j.

    The companion bound total >= 2*E_j for every j is the polygon inequality
    restated; polygon_check(v).worst_slack >= 0 verifies it.
    """
    return v.total()


def eta_indicator(state_or_vector: Union[State, EmpsVector]) -> float:
    """Energy indicator min_j (sum_{k != j} E_k - E_j) for n >= 3 qubits.

    A nonzero value certifies genuine multipartite entanglement of pure
    states; it equals polygon_check's worst_slack by construction.
    """
    if isinstance(state_or_vector, EmpsVector):
        v = state_or_vector
    else:
        v = emps_vector(state_or_vector)
    if v.n < 3:
        raise ArgumentError(f"energy indicator needs at least 3 qubits, got n={v.n}")
    return polygon_check(v).worst_slack
