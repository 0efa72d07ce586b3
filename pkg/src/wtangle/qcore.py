"""Dense linear algebra for few-qubit pure states.

Qubits are addressed by 0-based position. Position 0 is the leftmost ket
label and the most significant bit of the amplitude index, so
``|q0 q1 q2>`` lives at index ``4*q0 + 2*q1 + q2``.

Random streams use numpy's PCG64 bit generator. Per-trial streams are
split from a master seed with ``numpy.random.SeedSequence.spawn``; see
:func:`derive_seeds`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
UNITARY_TOL = 1e-12
ORTHO_TOL = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


class _ArrayValue:
    """Exact, hashable equality for frozen wrappers around one array field."""

    _field = ""

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return np.array_equal(getattr(self, self._field), getattr(other, self._field))

    def __hash__(self):
        arr = getattr(self, self._field)
        return hash((type(self).__name__, arr.shape, arr.tobytes()))


def _num_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if n < 1 or 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two >= 2")
    return n


@dataclass(frozen=True, eq=False)
class StateVector(_ArrayValue):
    """Normalized pure state over ``num_qubits`` qubits."""

    amps: np.ndarray
    _field = "amps"

    def __post_init__(self):
        amps = _frozen(np.ravel(self.amps))
        _num_qubits(amps.size)
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm2!r})")
        object.__setattr__(self, "amps", amps)

    @property
    def num_qubits(self) -> int:
        return _num_qubits(self.amps.size)

    @classmethod
    def from_amplitudes(cls, amps, normalize: bool = False) -> "StateVector":
        amps = np.asarray(amps, dtype=complex).ravel()
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise ValueError("cannot normalize the zero vector")
            amps = amps / norm
        return cls(amps)

    @classmethod
    def basis_state(cls, bits: str) -> "StateVector":
        """Computational ket from a bit string, e.g. ``"010"``."""
        amps = np.zeros(1 << len(bits), dtype=complex)
        amps[int(bits, 2)] = 1.0
        return cls(amps)

    def __len__(self):
        return self.amps.size


@dataclass(frozen=True, eq=False)
class DensityMatrix(_ArrayValue):
    """Hermitian, positive semidefinite, unit-trace matrix."""

    entries: np.ndarray
    _field = "entries"

    def __post_init__(self):
        rho = _frozen(self.entries)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError("density matrix must be square")
        n = _num_qubits(rho.shape[0])
        if not np.all(np.isfinite(rho)):
            raise ValueError("entries must be finite")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(rho)
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        # PSD within PSD_TOL iff rho + PSD_TOL*I admits a Cholesky factor
        try:
            np.linalg.cholesky(rho + PSD_TOL * np.eye(1 << n))
        except np.linalg.LinAlgError:
            raise ValueError("density matrix has a negative eigenvalue") from None
        object.__setattr__(self, "entries", rho)

    @property
    def num_qubits(self) -> int:
        return _num_qubits(self.entries.shape[0])


@dataclass(frozen=True, eq=False)
class Operator(_ArrayValue):
    """Square matrix acting on ``log2(dim)`` qubits."""

    matrix: np.ndarray
    unitary_flag: bool = field(init=False)
    _field = "matrix"

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("operator must be square")
        _num_qubits(m.shape[0])
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        object.__setattr__(self, "matrix", m)
        dev = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
        object.__setattr__(self, "unitary_flag", bool(dev <= UNITARY_TOL))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_qubits(self) -> int:
        return _num_qubits(self.dim)

    def kron(self, other: "Operator") -> "Operator":
        return Operator(np.kron(self.matrix, other.matrix))


@dataclass(frozen=True)
class MeasurementBasis:
    """Ordered orthonormal vectors on the qubits ``subset`` of a larger system.

    The first ``labeled_count`` vectors carry protocol labels; any remaining
    ones are completion fillers named ``aux_k``.
    """

    subset: tuple
    vectors: tuple
    labels: tuple
    labeled_count: int

    def __post_init__(self):
        object.__setattr__(self, "subset", tuple(int(q) for q in self.subset))
        object.__setattr__(self, "vectors", tuple(self.vectors))
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.subset)) != len(self.subset) or not self.subset:
            raise ValueError("subset must be nonempty with distinct qubits")
        if len(self.vectors) != len(self.labels):
            raise ValueError("one label per vector required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        for v in self.vectors:
            if v.num_qubits != len(self.subset):
                raise ValueError("vector size does not match the qubit subset")
        if not 0 <= self.labeled_count <= len(self.vectors):
            raise ValueError("labeled_count out of range")

    @property
    def is_complete(self) -> bool:
        return len(self.vectors) == 1 << len(self.subset)

    @property
    def matrix(self) -> np.ndarray:
        """Basis vectors stacked as rows."""
        return np.array([v.amps for v in self.vectors])

    def index_of(self, label: str) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class MeasurementOutcome:
    index: int
    label: str
    probability: float
    collapsed: StateVector


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """``a (x) b`` with the qubits of ``a`` more significant."""
    return StateVector(np.kron(a.amps, b.amps))


def inner(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    if a.num_qubits != b.num_qubits:
        raise ValueError("inner product of states with different qubit counts")
    return complex(np.vdot(a.amps, b.amps))


def density(s: StateVector) -> DensityMatrix:
    return DensityMatrix(np.outer(s.amps, s.amps.conj()))


def phase_distance(a: StateVector, b: StateVector) -> float:
    """``1 - |<a|b>|``; zero iff the states agree up to a global phase."""
    return 1.0 - abs(inner(a, b))


def _check_targets(targets: Sequence[int], n: int) -> tuple:
    targets = tuple(int(t) for t in targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target qubits in {targets}")
    for t in targets:
        if not 0 <= t < n:
            raise ValueError(f"target qubit {t} out of range for {n} qubits")
    return targets


def apply_local(op: Operator, targets: Sequence[int], s: StateVector) -> StateVector:
    """Apply ``op`` to the ordered ``targets`` and the identity elsewhere."""
    n = s.num_qubits
    targets = _check_targets(targets, n)
    k = len(targets)
    if op.dim != 1 << k:
        raise ValueError(f"operator of dim {op.dim} cannot act on {k} qubit(s)")
    if not op.unitary_flag:
        raise ValueError("apply_local requires a unitary operator")
    psi = s.amps.reshape((2,) * n)
    gate = op.matrix.reshape((2,) * (2 * k))
    out = np.tensordot(gate, psi, axes=(list(range(k, 2 * k)), list(targets)))
    # tensordot leaves the target axes first, in target order
    out = np.moveaxis(out, list(range(k)), list(targets))
    return StateVector(out.reshape(-1))


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced density matrix on ``keep``, original qubit order preserved."""
    n = rho.num_qubits
    keep = sorted(set(int(q) for q in keep))
    if not keep or len(keep) == n:
        raise ValueError("keep must be a nonempty proper subset of the qubits")
    for q in keep:
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range for {n} qubits")
    t = rho.entries.reshape((2,) * (2 * n))
    live = n
    for q in reversed(range(n)):
        if q in keep:
            continue
        t = np.trace(t, axis1=q, axis2=q + live)
        live -= 1
    d = 1 << len(keep)
    return DensityMatrix(t.reshape(d, d))


def reduced(s: StateVector, keep) -> DensityMatrix:
    """Shorthand for ``partial_trace(density(s), keep)``."""
    return partial_trace(density(s), keep)


def _jacobi_rotate(m: np.ndarray, p: int, q: int) -> None:
    # m stacks the working matrix on top of the accumulated eigenvectors
    b = complex(m[p, q])
    r = abs(b)
    phase = b / r
    theta = 0.5 * math.atan2(2.0 * r, float(m[p, p].real) - float(m[q, q].real))
    c, s = math.cos(theta), math.sin(theta)
    sp, sq = s * phase.conjugate(), s * phase
    col_p = m[:, p].copy()
    m[:, p] = c * col_p + sp * m[:, q]
    m[:, q] = c * m[:, q] - sq * col_p
    row_p = m[p, :].copy()
    m[p, :] = c * row_p + sq * m[q, :]
    m[q, :] = c * m[q, :] - sp * row_p
    m[p, q] = m[q, p] = 0.0


def hermitian_eigh(h, tol: float = JACOBI_TOL):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(values, vectors)`` with eigenvalues in descending order and
    the matching eigenvectors as columns of ``vectors``.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||h||_F)``.
    """
    h = np.asarray(getattr(h, "entries", h), dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("matrix must be square")
    if np.max(np.abs(h - h.conj().T), initial=0.0) > 1e-10:
        raise ValueError("matrix is not Hermitian")
    a = 0.5 * (h + h.conj().T)
    dim = a.shape[0]
    m = np.vstack([a, np.eye(dim, dtype=complex)])
    a, v = m[:dim], m[dim:]
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < tol * scale:
            break
        # entries this small cannot move the off-diagonal norm across the threshold
        skip = 1e-3 * tol * scale / dim
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                if abs(a[p, q]) > skip:
                    _jacobi_rotate(m, p, q)
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    vals = np.diag(a).real
    order = np.argsort(-vals, kind="stable")
    return vals[order], v[:, order]


def hermitian_eigenvalues(h) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, descending."""
    return hermitian_eigh(h)[0]


def measurement_branches(s: StateVector, basis: MeasurementBasis):
    """Unnormalized post-measurement remainders for every basis vector.

    Returns ``(probabilities, branches)`` where ``branches[i]`` is
    ``(<b_i| (x) I)|s>`` over the unmeasured qubits in their original order.
    """
    n = s.num_qubits
    subset = _check_targets(basis.subset, n)
    k = len(subset)
    rest = [q for q in range(n) if q not in subset]
    psi = np.moveaxis(s.amps.reshape((2,) * n), subset, range(k))
    psi = psi.reshape(1 << k, 1 << (n - k))
    branches = basis.matrix.conj() @ psi
    probs = np.sum(np.abs(branches) ** 2, axis=1)
    return probs, branches, rest


def projective_measure(s: StateVector, basis: MeasurementBasis, rng) -> MeasurementOutcome:
    """Sample a von Neumann measurement of ``basis.subset``.

    The measured qubits are removed from the collapsed state. When every
    qubit is measured there is nothing left, so the collapsed state is the
    selected basis vector itself.
    """
    check = check_gram(basis.vectors)
    if check > ORTHO_TOL:
        raise ValueError(f"measurement basis is not orthonormal (deviation {check:.3g})")
    if not basis.is_complete:
        raise ValueError("measurement basis does not span the measured qubits")
    probs, branches, rest = measurement_branches(s, basis)
    total = float(probs.sum())
    if abs(total - 1.0) > ORTHO_TOL:
        raise ValueError(f"outcome probabilities sum to {total!r}")
    cum = np.cumsum(probs)
    u = rng.random() * cum[-1]
    idx = int(np.searchsorted(cum, u, side="right"))
    idx = min(idx, int(np.flatnonzero(probs > 0)[-1]))
    p = float(probs[idx])
    assert p > 0, "sampled a zero-probability branch"
    if rest:
        collapsed = StateVector(branches[idx] / math.sqrt(p))
    else:
        collapsed = basis.vectors[idx]
    return MeasurementOutcome(idx, basis.labels[idx], min(p, 1.0), collapsed)


def check_gram(vectors) -> float:
    """Largest entry of ``|G - I|`` for the Gram matrix of ``vectors``."""
    m = np.array([np.asarray(getattr(v, "amps", v), dtype=complex) for v in vectors])
    if m.size == 0:
        return 0.0
    gram = m.conj() @ m.T
    return float(np.max(np.abs(gram - np.eye(len(m)))))


def make_rng(seed) -> np.random.Generator:
    """PCG64 stream for one protocol run."""
    return np.random.Generator(np.random.PCG64(seed))


def derive_seeds(master: int, count: int) -> list:
    """Independent 64-bit seeds for ``count`` trials.

    Child ``i`` is ``SeedSequence(master).spawn(count)[i]``, reduced to one
    uint64 word with ``generate_state``.
    """
    children = np.random.SeedSequence(master).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]
