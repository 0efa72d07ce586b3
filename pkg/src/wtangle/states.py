"""Named three-qubit states and the measurement bases paired with them."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qcore import MeasurementBasis, StateVector, check_gram

RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class WParams:
    """Parameters of the W_n family.

    ``n`` sets the amplitude ratios, ``gamma`` and ``delta`` are the relative
    phases on ``|010>`` and ``|001>``.
    """

    n: float = 1.0
    gamma: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        for name in ("n", "gamma", "delta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")

    def coefficients(self):
        """``(norm, sqrt(n) e^{i gamma}, sqrt(n+1) e^{i delta})``."""
        norm = 1.0 / math.sqrt(2.0 + 2.0 * self.n)
        b = math.sqrt(self.n) * np.exp(1j * self.gamma)
        c = math.sqrt(self.n + 1.0) * np.exp(1j * self.delta)
        return norm, b, c


def _ket(terms: dict, scale: float = 1.0, num_qubits: int = 3) -> StateVector:
    amps = np.zeros(1 << num_qubits, dtype=complex)
    for bits, coeff in terms.items():
        amps[int(bits, 2)] += coeff
    return StateVector(scale * amps)


def make_ghz() -> StateVector:
    return _ket({"000": 1, "111": 1}, 1 / math.sqrt(2))


def make_w_prototype() -> StateVector:
    return _ket({"100": 1, "010": 1, "001": 1}, 1 / math.sqrt(3))


def make_w_n(p: WParams = WParams()) -> StateVector:
    norm, b, c = p.coefficients()
    return _ket({"100": 1, "010": b, "001": c}, norm)


def make_w1() -> StateVector:
    return make_w_n(WParams(1.0))


def make_bell() -> StateVector:
    return _ket({"00": 1, "11": 1}, 1 / math.sqrt(2), num_qubits=2)


def complete_basis(partial: MeasurementBasis) -> MeasurementBasis:
    """Extend an orthonormal set to a full basis of its qubit subset.

    Computational kets are offered in index order to a modified
    Gram-Schmidt pass (with one re-orthogonalization); a candidate whose
    residual norm falls below ``RESIDUAL_TOL`` is dropped. Labeled vectors
    keep their positions and fillers are appended as ``aux_0, aux_1, ...``.
    """
    dev = check_gram(partial.vectors)
    if dev > 1e-10:
        raise ValueError(f"partial basis is not orthonormal (deviation {dev:.3g})")
    dim = 1 << len(partial.subset)
    accepted = [v.amps.copy() for v in partial.vectors]
    fillers = []
    for k in range(dim):
        if len(accepted) == dim:
            break
        r = np.zeros(dim, dtype=complex)
        r[k] = 1.0
        for _ in range(2):
            for u in accepted:
                r = r - np.vdot(u, r) * u
        norm = np.linalg.norm(r)
        if norm < RESIDUAL_TOL:
            continue
        r = r / norm
        accepted.append(r)
        fillers.append(StateVector(r))
    labels = list(partial.labels) + [f"aux_{i}" for i in range(len(fillers))]
    return MeasurementBasis(
        partial.subset, list(partial.vectors) + fillers, labels, partial.labeled_count
    )


@dataclass(frozen=True)
class OrthonormalityReport:
    max_deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol


def check_orthonormal(vectors, tol: float = 1e-10) -> OrthonormalityReport:
    """Report ``max |<b_i|b_j> - delta_ij|`` over all pairs."""
    vectors = list(vectors)
    if vectors:
        sizes = {len(np.ravel(getattr(v, "amps", v))) for v in vectors}
        if len(sizes) != 1:
            raise ValueError("vectors have different dimensions")
    return OrthonormalityReport(check_gram(vectors), tol)


def _labeled(subset, named: dict, complete: bool = True) -> MeasurementBasis:
    basis = MeasurementBasis(subset, list(named.values()), list(named), len(named))
    return complete_basis(basis) if complete else basis


GHZ_TELEPORT_LABELS = ("psi1+", "psi1-", "psi2+", "psi2-")
GHZ_DENSE8_LABELS = GHZ_TELEPORT_LABELS + ("psi3+", "psi3-", "psi4+", "psi4-")
W_TELEPORT_LABELS = ("eta+", "eta-", "xi+", "xi-")
BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")


def _ghz_pairs(pairs):
    r = 1 / math.sqrt(2)
    out = {}
    for idx, (a, b) in enumerate(pairs, start=1):
        out[f"psi{idx}+"] = _ket({a: 1, b: 1}, r)
        out[f"psi{idx}-"] = _ket({a: 1, b: -1}, r)
    return out


_GHZ_PAIRS = [("000", "111"), ("100", "011"), ("010", "101"), ("110", "001")]


@lru_cache(maxsize=64)
def _fixed_basis_cached(family: str, subset: tuple) -> MeasurementBasis:
    if family == "ghz":
        return _labeled(subset, _ghz_pairs(_GHZ_PAIRS[:2]))
    if family == "ghz8":
        return _labeled(subset, _ghz_pairs(_GHZ_PAIRS))
    r = 1 / math.sqrt(2)
    named = {
        "phi+": _ket({"00": 1, "11": 1}, r, 2),
        "phi-": _ket({"00": 1, "11": -1}, r, 2),
        "psi+": _ket({"01": 1, "10": 1}, r, 2),
        "psi-": _ket({"01": 1, "10": -1}, r, 2),
    }
    return _labeled(subset, named)


def ghz_teleport_basis(subset=(0, 1, 2)) -> MeasurementBasis:
    """``psi1+-`` and ``psi2+-`` completed to eight vectors."""
    return _fixed_basis_cached("ghz", tuple(subset))


def ghz_dense8_basis(subset=(0, 1, 2)) -> MeasurementBasis:
    """All eight GHZ-type vectors ``psi1+-`` through ``psi4+-``; no fillers."""
    return _fixed_basis_cached("ghz8", tuple(subset))


def w_teleport_vectors(p: WParams) -> dict:
    """The four labeled W_n-type vectors ``eta+-`` and ``xi+-``."""
    norm, b, c = p.coefficients()
    return {
        "eta+": _ket({"010": 1, "001": b, "100": c}, norm),
        "eta-": _ket({"010": 1, "001": b, "100": -c}, norm),
        "xi+": _ket({"110": 1, "101": b, "000": c}, norm),
        "xi-": _ket({"110": 1, "101": b, "000": -c}, norm),
    }


@lru_cache(maxsize=256)
def _w_basis_cached(p: WParams, subset: tuple) -> MeasurementBasis:
    return _labeled(subset, w_teleport_vectors(p))


def w_teleport_basis(p: WParams = WParams(), subset=(0, 1, 2)) -> MeasurementBasis:
    """``eta+-_n`` and ``xi+-_n`` completed to eight vectors."""
    return _w_basis_cached(p, tuple(subset))


def bell_basis(subset=(0, 1)) -> MeasurementBasis:
    return _fixed_basis_cached("bell", tuple(subset))


def parse_preset(name: str, p: WParams | None = None) -> StateVector:
    """Resolve ``ghz``, ``w``, ``w1`` or ``wn`` to a three-qubit state."""
    key = name.lower().replace("_", "-")
    if key == "ghz":
        return make_ghz()
    if key in ("w", "w-prototype"):
        return make_w_prototype()
    if key == "w1":
        return make_w1()
    if key == "wn":
        return make_w_n(p or WParams())
    raise ValueError(f"unknown state preset {name!r}")
