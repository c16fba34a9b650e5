"""Dense complex linear algebra for small multi-qubit systems.

States live on up to 12 qubits (dimension 4096). Qubit labels are 1-based
and qubit 1 is the most significant bit of the computational-basis index,
so |s_1 s_2 ... s_n> sits at index s_1*2^(n-1) + ... + s_n. All operations
are pure functions over immutable inputs and safe to run in parallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import ArgumentError, CapacityError, NumericError, ValidationError

MAX_QUBITS = 12

# Validation tolerances, chosen for double precision at dim <= 4096: tight
# enough to catch real defects, loose enough for accumulated Kronecker rounding.
HERMITICITY_ATOL = 1e-12
NORMALIZATION_ATOL = 1e-10
TRACE_ATOL = 1e-10
EIGENVALUE_FLOOR = -1e-10

JACOBI_OFFDIAG_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def _as_complex_vector(amps) -> np.ndarray:
    arr = np.asarray(amps, dtype=np.complex128).reshape(-1)
    return arr


def _qubit_count_for_dim(dim: int, what: str) -> int:
    n = int(round(math.log2(dim))) if dim > 0 else 0
    if dim <= 0 or 2 ** n != dim:
        raise ValidationError(f"{what} dimension {dim} is not a power of two")
    if n > MAX_QUBITS:
        raise CapacityError(f"{what} needs {n} qubits, limit is {MAX_QUBITS}")
    return n


class PureState:
    """Normalized amplitude vector over n qubits (qubit 1 = most significant bit)."""

    __slots__ = ("n", "amps")

    def __init__(self, amps, n: Optional[int] = None):
        arr = _as_complex_vector(amps)
        inferred = _qubit_count_for_dim(arr.size, "state vector")
        if inferred < 1:
            raise ValidationError("state vector needs at least one qubit")
        if n is not None and n != inferred:
            raise ValidationError(f"declared n={n} but amplitude vector has 2^{inferred} entries")
        norm_sq = float(np.sum(np.abs(arr) ** 2))
        if not abs(norm_sq - 1.0) <= NORMALIZATION_ATOL:
            raise ValidationError(
                f"state is not normalized: sum |amps|^2 = {norm_sq!r} (tolerance {NORMALIZATION_ATOL})"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "n", inferred)
        object.__setattr__(self, "amps", arr)

    def __setattr__(self, *_):
        raise AttributeError("PureState is immutable")

    @property
    def dim(self) -> int:
        return self.amps.size

    def density(self) -> "DensityMatrix":
        """Projector |psi><psi| as a DensityMatrix."""
        return DensityMatrix._trusted(np.outer(self.amps, self.amps.conj()))

    def __repr__(self):
        return f"PureState(n={self.n})"


class DensityMatrix:
    """Hermitian, positive-semidefinite, unit-trace matrix on a power-of-two dimension."""

    __slots__ = ("dim", "n", "entries")

    def __init__(self, entries, dim: Optional[int] = None):
        arr = np.asarray(entries, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationError(f"density matrix must be square, got shape {arr.shape}")
        d = arr.shape[0]
        if dim is not None and dim != d:
            raise ValidationError(f"declared dim={dim} but entries are {d}x{d}")
        n = _qubit_count_for_dim(d, "density matrix")
        herm_defect = float(np.max(np.abs(arr - arr.conj().T)))
        if not herm_defect <= HERMITICITY_ATOL:
            raise ValidationError(
                f"density matrix is not Hermitian: max |M - M^dag| = {herm_defect:.3e}"
            )
        tr = complex(np.trace(arr))
        if not abs(tr - 1.0) <= TRACE_ATOL:
            raise ValidationError(f"density matrix trace is {tr!r}, expected 1")
        arr = 0.5 * (arr + arr.conj().T)
        lam = _jacobi(arr, want_vectors=False)[0]
        if not lam[0] >= EIGENVALUE_FLOOR:
            raise ValidationError(
                f"density matrix has negative eigenvalue {lam[0]:.3e} below {EIGENVALUE_FLOOR}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, *_):
        raise AttributeError("DensityMatrix is immutable")

    @classmethod
    def _trusted(cls, entries: np.ndarray) -> "DensityMatrix":
        # Internal constructor for matrices that are PSD by construction
        # (projectors, partial traces, convex mixtures of valid states); skips
        # the eigenvalue scan but keeps the cheap hermiticity/trace checks.
        arr = np.asarray(entries, dtype=np.complex128)
        d = arr.shape[0]
        n = _qubit_count_for_dim(d, "density matrix")
        herm_defect = float(np.max(np.abs(arr - arr.conj().T)))
        if not herm_defect <= HERMITICITY_ATOL:
            raise ValidationError(
                f"density matrix is not Hermitian: max |M - M^dag| = {herm_defect:.3e}"
            )
        tr = complex(np.trace(arr))
        if not abs(tr - 1.0) <= TRACE_ATOL:
            raise ValidationError(f"density matrix trace is {tr!r}, expected 1")
        arr = 0.5 * (arr + arr.conj().T)
        arr.flags.writeable = False
        obj = object.__new__(cls)
        object.__setattr__(obj, "dim", d)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "entries", arr)
        return obj

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted ascending; eigenvectors (unitary columns) when requested."""

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None


State = Union[PureState, DensityMatrix]


def basis_state(bits: str) -> PureState:
    """Computational basis state from a bit string, e.g. "010" -> |010>."""
    if not bits or any(c not in "01" for c in bits):
        raise ValidationError(f"basis label must be a nonempty string of 0/1, got {bits!r}")
    n = len(bits)
    if n > MAX_QUBITS:
        raise CapacityError(f"basis state on {n} qubits exceeds the {MAX_QUBITS}-qubit limit")
    amps = np.zeros(2 ** n, dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return PureState(amps)


def random_pure_state(n: int, rng: Optional[np.random.Generator] = None) -> PureState:
    """Haar-random pure state: normalized vector of independent standard complex Gaussians."""
    if not 1 <= n <= MAX_QUBITS:
        raise ArgumentError(f"qubit count must be in 1..{MAX_QUBITS}, got {n}")
    rng = np.random.default_rng() if rng is None else rng
    z = rng.standard_normal(2 ** n) + 1j * rng.standard_normal(2 ** n)
    return PureState(z / np.linalg.norm(z))


def tensor_product(a: State, b: State) -> State:
    """Kronecker product of two states of the same kind; a's qubits become the leading ones."""
    if isinstance(a, PureState) and isinstance(b, PureState):
        if a.n + b.n > MAX_QUBITS:
            raise CapacityError(
                f"tensor product on {a.n + b.n} qubits exceeds the {MAX_QUBITS}-qubit limit"
            )
        return PureState(np.kron(a.amps, b.amps))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        if a.n + b.n > MAX_QUBITS:
            raise CapacityError(
                f"tensor product on {a.n + b.n} qubits exceeds the {MAX_QUBITS}-qubit limit"
            )
        return DensityMatrix._trusted(np.kron(a.entries, b.entries))
    raise ArgumentError("tensor_product operands must both be PureState or both DensityMatrix")


def permute_qubits(psi: PureState, order: Sequence[int]) -> PureState:
    """Rearrange qubits so position k of the result holds original qubit order[k-1] (1-based)."""
    n = psi.n
    if sorted(order) != list(range(1, n + 1)):
        raise ArgumentError(f"order must be a permutation of 1..{n}, got {tuple(order)}")
    arr = psi.amps.reshape([2] * n).transpose([q - 1 for q in order]).reshape(-1)
    return PureState(arr.copy())


def _check_keep(keep: Iterable[int], n: int) -> list:
    kept = list(keep)
    if not kept:
        raise ArgumentError("keep must name at least one qubit")
    if len(set(kept)) != len(kept):
        raise ArgumentError(f"keep has duplicate qubit indices: {kept}")
    for q in kept:
        if not 1 <= q <= n:
            raise ArgumentError(f"qubit index {q} out of range 1..{n}")
    return kept


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the kept qubits, in the order given.

    Qubit indices are 1-based. The traced-out qubits are summed over; the
    result keeps trace 1 and positivity automatically.
    """
    n = rho.n
    kept = _check_keep(keep, n)
    kept0 = [q - 1 for q in kept]
    arr = rho.entries.reshape([2] * (2 * n))
    row_labels = list(range(n))
    col_labels = [n + i if i in kept0 else i for i in range(n)]
    out_labels = kept0 + [n + i for i in kept0]
    red = np.einsum(arr, row_labels + col_labels, out_labels)
    k = len(kept0)
    return DensityMatrix._trusted(red.reshape(2 ** k, 2 ** k))


def reduced_density_matrix(state: State, keep: Iterable[int]) -> DensityMatrix:
    """Marginal of a pure or mixed state on the kept qubits (1-based, order preserved).

    Pure inputs avoid building the full projector: the amplitude tensor is
    reshaped to (kept, rest) and the marginal is A A^dag.
    """
    if isinstance(state, DensityMatrix):
        return partial_trace(state, keep)
    kept = _check_keep(keep, state.n)
    return DensityMatrix._trusted(_pure_marginal(state.amps, state.n, [q - 1 for q in kept]))


def _pure_marginal(amps: np.ndarray, n: int, kept0: Sequence[int]) -> np.ndarray:
    t = amps.reshape([2] * n)
    t = np.moveaxis(t, kept0, range(len(kept0)))
    a = t.reshape(2 ** len(kept0), -1)
    return a @ a.conj().T


def _rotation(app: float, aqq: float, apq: complex):
    """Unitary 2x2 column pair (up, uq, c, s) annihilating the off-diagonal entry apq.

    Returns the parameters of U = [[c*phase, s*phase], [-s, c]] with
    phase = apq/|apq|, so that U^dag diag-block U is diagonal.
    """
    r = abs(apq)
    phase = apq / r
    tau = (aqq - app) / (2.0 * r)
    if tau >= 0.0:
        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    return c * phase, s * phase, c, s


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _jacobi(matrix: np.ndarray, want_vectors: bool):
    """Cyclic Jacobi eigendecomposition of a Hermitian matrix.

    Sweeps row-cyclically, rotating away each off-diagonal pair, until the
    off-diagonal Frobenius norm drops to JACOBI_OFFDIAG_TOL or
    JACOBI_MAX_SWEEPS sweeps have run. Eigenvalues come back ascending;
    eigenvectors (if requested) are the matching unitary columns.
    """
    a = np.array(matrix, dtype=np.complex128)
    a = 0.5 * (a + a.conj().T)
    d = a.shape[0]
    v = np.eye(d, dtype=np.complex128) if want_vectors else None
    if d == 1:
        return np.array([a[0, 0].real]), v
    if d == 2:
        return _jacobi_2x2(a, want_vectors)

    skip = JACOBI_OFFDIAG_TOL / (4.0 * d * d)
    for _ in range(JACOBI_MAX_SWEEPS):
        if _offdiag_norm(a) <= JACOBI_OFFDIAG_TOL:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                up, uq, c, s = _rotation(a[p, p].real, a[q, q].real, apq)
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = up * colp - s * colq
                a[:, q] = uq * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = np.conj(up) * rowp - s * rowq
                a[q, :] = np.conj(uq) * rowp + c * rowq
                # pin what the rotation guarantees, against rounding drift
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                a[p, q] = 0.0
                a[q, p] = 0.0
                if v is not None:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = up * vp - s * vq
                    v[:, q] = uq * vp + c * vq
    else:
        residual = _offdiag_norm(a)
        if residual > JACOBI_OFFDIAG_TOL:
            raise NumericError(
                f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps; "
                f"off-diagonal residual {residual:.3e}"
            )
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    if v is not None:
        v = np.ascontiguousarray(v[:, order])
    return w, v


def _jacobi_2x2(a: np.ndarray, want_vectors: bool):
    # One rotation diagonalizes a 2x2 block exactly, so the sweep scaffolding
    # is skipped; this path dominates per-qubit marginal work.
    app = a[0, 0].real
    aqq = a[1, 1].real
    apq = a[0, 1]
    if abs(apq) == 0.0:
        w = np.array([app, aqq])
        v = np.eye(2, dtype=np.complex128) if want_vectors else None
    else:
        up, uq, c, s = _rotation(app, aqq, apq)
        r = abs(apq)
        w = np.array(
            [c * c * app - 2.0 * c * s * r + s * s * aqq,
             s * s * app + 2.0 * c * s * r + c * c * aqq]
        )
        v = np.array([[up, uq], [-s, c]], dtype=np.complex128) if want_vectors else None
    if w[0] > w[1]:
        w = w[::-1].copy()
        if v is not None:
            v = v[:, ::-1].copy()
    return w, v


def eig_hermitian(matrix: Union[DensityMatrix, np.ndarray], vectors: bool = False) -> Spectrum:
    """Full real spectrum (ascending) of a Hermitian matrix, by cyclic Jacobi sweeps.

    Accepts a DensityMatrix or a raw Hermitian ndarray. Non-Hermitian input
    raises ValidationError; failure to converge raises NumericError with the
    remaining off-diagonal residual.
    """
    if isinstance(matrix, DensityMatrix):
        arr = matrix.entries
    else:
        arr = np.asarray(matrix, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationError(f"expected a square matrix, got shape {arr.shape}")
        scale = max(1.0, float(np.max(np.abs(arr)))) if arr.size else 1.0
        defect = float(np.max(np.abs(arr - arr.conj().T)))
        if not defect <= HERMITICITY_ATOL * scale:
            raise ValidationError(f"matrix is not Hermitian: max |M - M^dag| = {defect:.3e}")
    w, v = _jacobi(arr, want_vectors=vectors)
    return Spectrum(eigenvalues=w, eigenvectors=v)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy -sum(lam * log2 lam) in bits, with 0*log 0 = 0.

    Eigenvalues in [-1e-10, 0) are treated as rounding noise and clamped to
    zero, as are positive values below 1e-14 (so exact-rank states report
    exact entropies); anything below the negative floor is rejected.
    """
    lam = _jacobi(rho.entries, want_vectors=False)[0]
    if not lam[0] >= EIGENVALUE_FLOOR:
        raise ValidationError(
            f"eigenvalue {lam[0]:.3e} below {EIGENVALUE_FLOOR}; not a density matrix"
        )
    pos = lam[lam > 1e-14]
    return float(-np.sum(pos * np.log2(pos)))


def state_to_dict(state: State) -> dict:
    """JSON-ready description of a state (see state_from_dict for the schema)."""
    if isinstance(state, PureState):
        return {
            "n": state.n,
            "amps": [[float(a.real), float(a.imag)] for a in state.amps],
        }
    return {
        "dim": state.dim,
        "entries": [[float(x.real), float(x.imag)] for x in state.entries.reshape(-1)],
    }


def state_from_dict(payload: dict) -> State:
    """Parse {"n", "amps": [[re, im], ...]} or {"dim", "entries": row-major [[re, im], ...]}.

    Builder-style payloads ({"builder": ..., "params": ...}) are handled one
    level up, by the classify module's state factory.
    """
    if not isinstance(payload, dict):
        raise ValidationError("state description must be a JSON object")
    if "amps" in payload:
        amps = _pairs_to_complex(payload["amps"], "amps")
        state = PureState(amps)
        declared = payload.get("n")
        if declared is not None and declared != state.n:
            raise ValidationError(f"declared n={declared} but amps describe {state.n} qubits")
        return state
    if "entries" in payload:
        entries = _pairs_to_complex(payload["entries"], "entries")
        dim = payload.get("dim")
        if dim is None:
            dim = int(round(math.sqrt(entries.size)))
        if dim * dim != entries.size:
            raise ValidationError(
                f"entries has {entries.size} values, which is not dim^2 for dim={dim}"
            )
        return DensityMatrix(entries.reshape(dim, dim), dim=dim)
    raise ValidationError('state description needs "amps", "entries", or "builder"')


def _pairs_to_complex(values, what: str) -> np.ndarray:
    try:
        arr = np.asarray(values, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{what} must be a list of [re, im] pairs") from exc
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValidationError(f"{what} must be a list of [re, im] pairs, got shape {arr.shape}")
    return arr[:, 0] + 1j * arr[:, 1]
