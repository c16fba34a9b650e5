"""SLOCC entanglement classification through marginal passive energies.

State builders for the standard multi-qubit families (W, GHZ, Dicke,
biseparable, and their white-noise mixtures), the three-qubit polytope
facet tests, an energy-indicator classifier, and random sampling of SLOCC
orbits for empirical polytope-containment checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from . import qcore
from .emps import DEFAULT_SEED, SLACK_TOL, EmpsVector, emps_vector, eta_indicator
from .errors import ArgumentError, ValidationError
from .qcore import DensityMatrix, PureState, State

DET_FLOOR = 1e-6  # resample a local operator when |det| falls below this


class ClassVerdict(str, Enum):
    FULLY_SEPARABLE = "fully_separable"
    BISEPARABLE = "biseparable"
    W_CLASS = "w_class"
    GHZ_CLASS = "ghz_class"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class FacetEvidence:
    """One inequality behind a verdict: positive slack means satisfied."""

    name: str
    value: float
    threshold: float
    slack: float


@dataclass(frozen=True)
class ClassLabel:
    verdict: ClassVerdict
    description: str
    cut: Optional[int] = None  # factored qubit for biseparable verdicts
    genuinely_entangled: Optional[bool] = None
    evidence: List[FacetEvidence] = field(default_factory=list)


@dataclass(frozen=True)
class StateBuilderSpec:
    """Named state family plus its parameters; see build_state for the catalogue."""

    family: str
    params: dict


@dataclass(frozen=True)
class PolytopeReport:
    member: bool
    facet_slacks: Dict[str, float]


@dataclass(frozen=True)
class NoisyReport:
    """Total-energy discrimination record for a white-noise W or GHZ mixture."""

    family: str
    emps: np.ndarray
    total: float
    noise_estimate: Optional[float]
    evidence: FacetEvidence


def _require(cond: bool, constraint: str):
    if not cond:
        raise ValidationError(f"builder parameters violate: {constraint}")


def _indices_with_excitations(n: int, l: int) -> List[int]:
    out = [i for i in range(2 ** n) if bin(i).count("1") == l]
    return out


def build_ghz(n: int, theta: float) -> PureState:
    """cos(theta)|0...0> + sin(theta)|1...1> with theta in (0, pi/4]."""
    _require(isinstance(n, int) and 2 <= n <= qcore.MAX_QUBITS, f"2 <= n <= {qcore.MAX_QUBITS}")
    # slack admits pi/4 rounded to fewer digits than a double carries
    _require(0.0 < theta <= math.pi / 4 + 1e-9, "theta in (0, pi/4]")
    amps = np.zeros(2 ** n, dtype=np.complex128)
    amps[0] = math.cos(theta)
    amps[-1] = math.sin(theta)
    return PureState(amps)


def build_w(coeffs: Sequence[float]) -> PureState:
    """sum_i sqrt(a_i) |0..1_i..0> with a_i >= 0 summing to 1."""
    a = np.asarray(coeffs, dtype=np.float64)
    n = a.size
    _require(2 <= n <= qcore.MAX_QUBITS, f"2 <= n <= {qcore.MAX_QUBITS}")
    _require(bool(np.all(a >= 0.0)), "all coefficients a_i >= 0")
    _require(abs(float(a.sum()) - 1.0) <= 1e-10, "sum of coefficients equals 1")
    amps = np.zeros(2 ** n, dtype=np.complex128)
    for i in range(n):
        amps[1 << (n - 1 - i)] = math.sqrt(a[i])  # qubit i+1 excited
    return PureState(amps)


def build_dicke(n: int, l: int) -> PureState:
    """Symmetric state of n qubits with exactly l excitations, uniform over permutations."""
    _require(isinstance(n, int) and 2 <= n <= qcore.MAX_QUBITS, f"2 <= n <= {qcore.MAX_QUBITS}")
    _require(isinstance(l, int) and 1 <= l <= n - 1, "1 <= l <= n-1")
    idx = _indices_with_excitations(n, l)
    amps = np.zeros(2 ** n, dtype=np.complex128)
    amps[idx] = 1.0 / math.sqrt(len(idx))
    return PureState(amps)


def build_generalized_dicke(n: int, l: int, coeffs: Sequence[complex]) -> PureState:
    """Arbitrary unit-norm coefficients over the l-excitation basis states.

    Coefficient order follows ascending basis index of the bit strings with
    exactly l ones.
    """
    _require(isinstance(n, int) and 2 <= n <= qcore.MAX_QUBITS, f"2 <= n <= {qcore.MAX_QUBITS}")
    _require(isinstance(l, int) and 1 <= l <= n - 1, "1 <= l <= n-1")
    idx = _indices_with_excitations(n, l)
    c = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
    _require(c.size == len(idx), f"coefficient count equals C({n},{l}) = {len(idx)}")
    _require(abs(float(np.sum(np.abs(c) ** 2)) - 1.0) <= 1e-10, "coefficients have unit norm")
    amps = np.zeros(2 ** n, dtype=np.complex128)
    amps[idx] = c
    return PureState(amps)


def build_biseparable(alpha: complex, beta: complex, position: int) -> PureState:
    """Three-qubit state |0> at `position` times alpha|00> + beta|11> on the other two."""
    _require(position in (1, 2, 3), "position in {1, 2, 3}")
    _require(abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) <= 1e-10, "|alpha|^2 + |beta|^2 = 1")
    pair = [q for q in (1, 2, 3) if q != position]
    amps = np.zeros(8, dtype=np.complex128)
    amps[0] = alpha
    amps[(1 << (3 - pair[0])) | (1 << (3 - pair[1]))] = beta
    return PureState(amps)


def build_noisy_w(v1: float) -> DensityMatrix:
    """(1 - v1) |W><W| + v1/8 * identity on three qubits, v1 in [0, 1]."""
    _require(0.0 <= v1 <= 1.0, "v1 in [0, 1]")
    w = build_dicke(3, 1).density().entries
    mixed = (1.0 - v1) * w + (v1 / 8.0) * np.eye(8)
    return DensityMatrix._trusted(mixed)


def build_noisy_ghz(v2: float) -> DensityMatrix:
    """(1 - v2) |GHZ><GHZ| + v2/8 * identity on three qubits, v2 in [0, 1]."""
    _require(0.0 <= v2 <= 1.0, "v2 in [0, 1]")
    g = build_ghz(3, math.pi / 4).density().entries
    mixed = (1.0 - v2) * g + (v2 / 8.0) * np.eye(8)
    return DensityMatrix._trusted(mixed)


_BUILDERS = {
    "ghz": (build_ghz, ("n", "theta")),
    "w": (build_w, ("coeffs",)),
    "dicke": (build_dicke, ("n", "l")),
    "generalized_dicke": (build_generalized_dicke, ("n", "l", "coeffs")),
    "biseparable": (build_biseparable, ("alpha", "beta", "position")),
    "noisy_w": (build_noisy_w, ("v1",)),
    "noisy_ghz": (build_noisy_ghz, ("v2",)),
}


def build_state(spec: StateBuilderSpec) -> State:
    """Construct a state from a named family.

    Families and parameters:
      ghz(n, theta)                        generalized GHZ, theta in (0, pi/4]
      w(coeffs)                            generalized W, coeffs sum to 1
      dicke(n, l)                          uniform Dicke state, 1 <= l <= n-1
      generalized_dicke(n, l, coeffs)      unit-norm coefficients over C(n,l) terms
      biseparable(alpha, beta, position)   |0> at position, alpha|00>+beta|11| elsewhere
      noisy_w(v1), noisy_ghz(v2)           white-noise mixtures, v in [0, 1]
    """
    if spec.family not in _BUILDERS:
        raise ValidationError(
            f"unknown state family {spec.family!r}; known: {sorted(_BUILDERS)}"
        )
    fn, names = _BUILDERS[spec.family]
    params = dict(spec.params)
    missing = [k for k in names if k not in params]
    if missing:
        raise ValidationError(f"family {spec.family!r} missing parameters {missing}")
    extra = [k for k in params if k not in names]
    if extra:
        raise ValidationError(f"family {spec.family!r} got unknown parameters {extra}")
    return fn(**params)


GHZ_FACET_NAMES = tuple(
    [f"nonneg_e{i}" for i in (1, 2, 3)]
    + [f"cap_e{i}" for i in (1, 2, 3)]
    + [f"polygon_e{i}" for i in (1, 2, 3)]
)
W_TOTAL_FACET = "w_total"


def polytope_membership_3q(v: EmpsVector, polytope: Union[str, ClassVerdict]) -> PolytopeReport:
    """Facet test of a 3-qubit energy vector against the W or GHZ polytope.

    The GHZ polytope is 0 <= E_i <= 1/2 together with the polygon
    inequalities; the W polytope additionally caps the total at 1. Membership
    means every facet slack is >= -SLACK_TOL.
    """
    if v.n != 3:
        raise ArgumentError(f"polytope facets are defined for n=3, got n={v.n}")
    which = polytope.value if isinstance(polytope, ClassVerdict) else str(polytope).lower()
    if which in ("w", "w_class"):
        want_w = True
    elif which in ("ghz", "ghz_class"):
        want_w = False
    else:
        raise ArgumentError(f"polytope must be 'w' or 'ghz', got {polytope!r}")
    e = v.values
    total = v.total()
    slacks: Dict[str, float] = {}
    for i in range(3):
        slacks[f"nonneg_e{i + 1}"] = float(e[i])
        slacks[f"cap_e{i + 1}"] = float(0.5 - e[i])
        slacks[f"polygon_e{i + 1}"] = float(total - 2.0 * e[i])
    if want_w:
        slacks[W_TOTAL_FACET] = float(1.0 - total)
    member = all(s >= -SLACK_TOL for s in slacks.values())
    return PolytopeReport(member=member, facet_slacks=slacks)


def classify_three_qubit(psi: PureState) -> ClassLabel:
    """Classify a 3-qubit pure state from its marginal passive energies.

    A total above 1 certifies GHZ-class entanglement. A positive energy
    indicator with total <= 1 certifies genuine tripartite entanglement but
    cannot separate the W class from GHZ states inside the overlap region,
    so that case is reported as undetermined with the region named. A zero
    indicator falls through to the biseparable/separable patterns.
    """
    if not isinstance(psi, PureState) or psi.n != 3:
        raise ArgumentError("classification needs a 3-qubit pure state")
    v = emps_vector(psi)
    e = v.values
    total = v.total()
    eta = eta_indicator(v)
    evidence = [
        FacetEvidence("w_facet_total", total, 1.0, 1.0 - total),
        FacetEvidence("eta_indicator", eta, 0.0, eta),
    ]
    if total > 1.0 + SLACK_TOL:
        return ClassLabel(
            verdict=ClassVerdict.GHZ_CLASS,
            description="GHZ class (total energy exceeds the W facet)",
            genuinely_entangled=True,
            evidence=evidence,
        )
    if eta > SLACK_TOL:
        return ClassLabel(
            verdict=ClassVerdict.UNDETERMINED,
            description="W-or-GHZ region, genuinely entangled",
            genuinely_entangled=True,
            evidence=evidence,
        )
    if float(e.max()) <= SLACK_TOL:
        evidence.append(FacetEvidence("max_emps", float(e.max()), 0.0, SLACK_TOL - float(e.max())))
        return ClassLabel(
            verdict=ClassVerdict.FULLY_SEPARABLE,
            description="fully separable",
            genuinely_entangled=False,
            evidence=evidence,
        )
    zeros = [i for i in range(3) if e[i] <= SLACK_TOL]
    if len(zeros) == 1:
        cut = zeros[0]
        j, k = [i for i in range(3) if i != cut]
        gap = abs(float(e[j] - e[k]))
        if gap <= SLACK_TOL:
            evidence.append(FacetEvidence(f"zero_marginal_q{cut + 1}", float(e[cut]), 0.0, SLACK_TOL - float(e[cut])))
            evidence.append(FacetEvidence("offcut_pair_gap", gap, 0.0, SLACK_TOL - gap))
            return ClassLabel(
                verdict=ClassVerdict.BISEPARABLE,
                description=f"biseparable (qubit {cut + 1} factored)",
                cut=cut + 1,
                genuinely_entangled=False,
                evidence=evidence,
            )
    return ClassLabel(
        verdict=ClassVerdict.UNDETERMINED,
        description="undetermined (zero indicator, no separable pattern)",
        genuinely_entangled=None,
        evidence=evidence,
    )


def _random_local_operator(rng: np.random.Generator) -> np.ndarray:
    while True:
        g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        if abs(np.linalg.det(g)) >= DET_FLOOR:
            return g


def slocc_orbit_sample(psi: PureState, count: int, seed: int = DEFAULT_SEED) -> List[EmpsVector]:
    """Energy vectors of `count` random states in the SLOCC orbit of psi.

    Each sample applies an invertible G = g_1 x ... x g_n with independent
    complex-Gaussian 2x2 factors (resampled when |det g_i| < 1e-6) and
    renormalizes. Sample k draws from its own generator seeded at seed + k,
    so results do not depend on batching.
    """
    if count < 1:
        raise ArgumentError(f"sample count must be >= 1, got {count}")
    n = psi.n
    out: List[EmpsVector] = []
    for k in range(count):
        rng = np.random.default_rng(seed + k)
        g = np.array([[1.0 + 0j]])
        for _ in range(n):
            g = np.kron(g, _random_local_operator(rng))
        phi = g @ psi.amps
        phi = phi / np.linalg.norm(phi)
        out.append(emps_vector(PureState(phi)))
    return out


# W-family mixtures stay genuinely multipartite entangled below this noise
# level, with total energy strictly under 43/34; GHZ mixtures sit at 3/2.
W_NOISE_GME_MAX = 9.0 / 17.0
W_TOTAL_BOUND = 43.0 / 34.0
GHZ_TOTAL = 1.5


def discriminate_noisy(rho: DensityMatrix, which: str) -> NoisyReport:
    """Total-energy report separating white-noise W mixtures from GHZ mixtures.

    For the W family the total equals (2 + v1)/2, which stays below 43/34 on
    the genuinely entangled range v1 < 9/17 and lets us read the noise level
    back off the total. GHZ mixtures have maximally mixed marginals at any
    noise level, so their total is pinned at 3/2.
    """
    if rho.n != 3:
        raise ArgumentError(f"noisy discrimination is defined for 3 qubits, got n={rho.n}")
    which = which.lower()
    if which not in ("w", "ghz"):
        raise ArgumentError(f"which must be 'w' or 'ghz', got {which!r}")
    v = emps_vector(rho)
    total = v.total()
    if which == "w":
        noise = 2.0 * total - 2.0
        evidence = FacetEvidence("w_total_below_43_34", total, W_TOTAL_BOUND, W_TOTAL_BOUND - total)
        return NoisyReport(family="w", emps=v.values, total=total, noise_estimate=noise, evidence=evidence)
    evidence = FacetEvidence("ghz_total_equals_3_2", total, GHZ_TOTAL, GHZ_TOTAL - total)
    return NoisyReport(family="ghz", emps=v.values, total=total, noise_estimate=None, evidence=evidence)


def random_biseparable_three_qubit(
    rng: np.random.Generator, cut: Optional[int] = None
) -> PureState:
    """Random pure state that factors as (1 qubit) x (2 qubits) at the given cut."""
    if cut is None:
        cut = int(rng.integers(1, 4))
    if cut not in (1, 2, 3):
        raise ArgumentError(f"cut must be 1, 2, or 3, got {cut}")
    single = qcore.random_pure_state(1, rng)
    pair = qcore.random_pure_state(2, rng)
    product = qcore.tensor_product(single, pair)  # single qubit leads
    order = {1: (1, 2, 3), 2: (2, 1, 3), 3: (2, 3, 1)}[cut]
    return qcore.permute_qubits(product, order)
