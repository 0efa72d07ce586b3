"""Entanglement measures and SLOCC classification of three-qubit pure states."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .qcore import DensityMatrix, StateVector, hermitian_eigh, reduced

CLASSIFY_TOL = 1e-9
CLAMP_TOL = 1e-10
RANK_TOL = 1e-14

_SIGMA_YY = -np.kron([[0.0, -1.0], [1.0, 0.0]], [[0.0, -1.0], [1.0, 0.0]])


class SloccClass(str, enum.Enum):
    PRODUCT = "Product"
    BISEPARABLE = "Biseparable"
    W = "WClass"
    GHZ = "GHZClass"


def _clamp01(x: float) -> float:
    if x < 0:
        if x < -CLAMP_TOL:
            raise ValueError(f"measure came out negative: {x!r}")
        return 0.0
    return x if x <= 1.0 else 1.0


def _as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def von_neumann_entropy(rho) -> float:
    """Entropy in bits, ``-sum(l * log2(l))`` over eigenvalues above 1e-12."""
    rho = _as_density(rho)
    vals = hermitian_eigh(rho.entries)[0]
    vals = vals[vals > 1e-12]
    s = float(-np.sum(vals * np.log2(vals)))
    return min(max(s, 0.0), float(rho.num_qubits))


def _require_three(s: StateVector):
    if s.num_qubits != 3:
        raise ValueError("expected a three-qubit state")


def concurrence_pure_cut(s: StateVector, a: int) -> float:
    """Concurrence between qubit ``a`` and the rest of a pure state: ``2 sqrt(det rho_a)``."""
    rho = reduced(s, [a]).entries
    det = float((rho[0, 0] * rho[1, 1] - rho[0, 1] * rho[1, 0]).real)
    det = 0.0 if det < 0 else det
    return _clamp01(2.0 * math.sqrt(det))


def _concurrence_from_w(w: np.ndarray) -> float:
    """Concurrence of ``rho = W W^H`` from the singular values of ``tau = W^T (sy (x) sy) W``.

    Any ``W`` with ``W W^H = rho`` gives the same singular values, so a
    decomposition into subnormalized pure states works as well as the
    eigenvectors of ``rho``.
    """
    r = w.shape[1]
    if r == 0:
        return 0.0
    tau = w.T @ _SIGMA_YY @ w
    if r == 1:
        return _clamp01(abs(tau[0, 0]))
    if r == 2:
        # rephased so det is real and >= 0: (l1 - l2)^2 = |a - conj(d)|^2 + |b + conj(c)|^2
        det = tau[0, 0] * tau[1, 1] - tau[0, 1] * tau[1, 0]
        a, b, c, d = (tau * (np.exp(-0.5j * np.angle(det)) if det != 0 else 1.0)).ravel()
        return _clamp01(math.hypot(abs(a - d.conjugate()), abs(b + c.conjugate())))
    block = np.zeros((2 * r, 2 * r), dtype=complex)
    block[:r, r:] = tau
    block[r:, :r] = tau.conj().T
    lam = np.clip(hermitian_eigh(block)[0][:r], 0.0, None)
    return _clamp01(max(0.0, float(lam[0] - lam[1:4].sum())))


def wootters_concurrence(rho) -> float:
    """Two-qubit concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_i`` are the singular values of ``tau = W^T (sy (x) sy) W`` where
    the columns of ``W`` are the subnormalized eigenvectors ``sqrt(p_k) v_k``
    of ``rho``; their squares are the eigenvalues of ``rho rho~``. Eigenvalues
    below ``RANK_TOL`` count as zero. Ranks up to two use a closed form, higher
    ranks the Hermitian embedding ``[[0, tau], [tau^H, 0]]``, so no square
    root of a roundoff-sized number enters the result.
    """
    rho = _as_density(rho)
    if rho.num_qubits != 2:
        raise ValueError("Wootters concurrence needs a two-qubit state")
    p, v = hermitian_eigh(rho.entries)
    keep = p > RANK_TOL
    return _concurrence_from_w(v[:, keep] * np.sqrt(p[keep]))


def pair_concurrences(s: StateVector) -> dict:
    """Wootters concurrence of each qubit pair of a pure three-qubit state.

    The reduced pair state is ``M M^H`` with ``M`` the amplitudes reshaped
    to (pair, remaining qubit), so ``M`` serves directly as ``W``.
    """
    _require_three(s)
    t = s.amps.reshape(2, 2, 2)
    out = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        (k,) = {0, 1, 2} - {i, j}
        out[(i, j)] = _concurrence_from_w(np.transpose(t, (i, j, k)).reshape(4, 2))
    return out


def _residual(s: StateVector):
    c1 = concurrence_pure_cut(s, 0)
    pairs = pair_concurrences(s)
    slack = c1**2 - pairs[(0, 1)] ** 2 - pairs[(0, 2)] ** 2
    return c1, pairs, slack


def three_tangle(s: StateVector) -> float:
    """Residual tangle ``C_1(23)^2 - C_12^2 - C_13^2``, floored at zero."""
    _require_three(s)
    return _clamp_tangle(_residual(s)[2])


def _clamp_tangle(t: float) -> float:
    return 0.0 if t < CLAMP_TOL else min(t, 1.0)


def _det2(rho: DensityMatrix) -> float:
    m = rho.entries
    return float((m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real)


def single_qubit_dets(s: StateVector) -> list:
    _require_three(s)
    return [_det2(reduced(s, [q])) for q in range(3)]


def slocc_classify(s: StateVector, tol: float = CLASSIFY_TOL) -> SloccClass:
    """SLOCC class from the single-qubit reduced determinants and the 3-tangle."""
    return _classify(single_qubit_dets(s), lambda: three_tangle(s), tol)


def _classify(dets, tangle, tol) -> SloccClass:
    vanishing = sum(d <= tol for d in dets)
    if vanishing >= 2:
        return SloccClass.PRODUCT
    if vanishing == 1:
        return SloccClass.BISEPARABLE
    return SloccClass.GHZ if tangle() > tol else SloccClass.W


CUT_NAMES = ("0|12", "1|02", "2|01")


@dataclass(frozen=True)
class EntanglementReport:
    entropy_bits_per_cut: dict
    concurrence_pairs: dict
    concurrence_1_23: float
    tangle: float
    slocc_class: SloccClass
    monogamy_slack: float
    dets: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "entropy_bits_per_cut": dict(self.entropy_bits_per_cut),
            "concurrence_pairs": {f"{i}{j}": c for (i, j), c in self.concurrence_pairs.items()},
            "concurrence_1_23": self.concurrence_1_23,
            "tangle": self.tangle,
            "slocc_class": self.slocc_class.value,
            "monogamy_slack": self.monogamy_slack,
            "reduced_dets": list(self.dets),
        }


def analyze(s: StateVector, tol: float = CLASSIFY_TOL) -> EntanglementReport:
    """Every single-state measure above, gathered into one report.

    Pair keys are 0-based qubit positions, so ``(0, 1)`` is the pair formed
    by the first two qubits.
    """
    _require_three(s)
    c1, pairs, slack = _residual(s)
    entropies = {
        name: von_neumann_entropy(reduced(s, [q])) for q, name in enumerate(CUT_NAMES)
    }
    tangle = _clamp_tangle(slack)
    dets = single_qubit_dets(s)
    cls = _classify(dets, lambda: tangle, tol)
    return EntanglementReport(
        entropies, pairs, c1, tangle, cls, 0.0 if abs(slack) < CLAMP_TOL else slack, dets
    )
