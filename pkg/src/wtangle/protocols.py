"""Teleportation and superdense coding over GHZ, Bell and W_n resources.

Joint teleportation systems are ordered ``(a, 1, 2, 3)``: the input qubit
sits at position 0, the three resource qubits follow, and Bob holds the last
one. Alice measures positions 0-2.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .entanglement import von_neumann_entropy
from .qcore import (
    MeasurementBasis,
    Operator,
    StateVector,
    apply_local,
    derive_seeds,
    inner,
    make_rng,
    measurement_branches,
    projective_measure,
    reduced,
    tensor,
)
from .states import (
    WParams,
    bell_basis,
    ghz_dense8_basis,
    ghz_teleport_basis,
    make_bell,
    make_ghz,
    make_w1,
    make_w_n,
    make_w_prototype,
    w_teleport_basis,
    w_teleport_vectors,
)


class ProtocolError(RuntimeError):
    """A run left the labeled outcome set or hit a missing correction."""


class Pauli(str, enum.Enum):
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"

    @property
    def operator(self) -> Operator:
        return _PAULI_OPS[self]


_PAULI_OPS = {
    Pauli.I: Operator(np.eye(2)),
    Pauli.X: Operator([[0, 1], [1, 0]]),
    Pauli.Y: Operator([[0, -1j], [1j, 0]]),
    Pauli.Z: Operator([[1, 0], [0, -1]]),
}
# i*sigma_y, the form Alice applies when encoding
_ISY = Operator([[0, 1], [-1, 0]])

W_CORRECTIONS = {"eta+": Pauli.I, "eta-": Pauli.Z, "xi+": Pauli.X, "xi-": Pauli.Y}
GHZ_CORRECTIONS = {"psi1+": Pauli.I, "psi1-": Pauli.Z, "psi2+": Pauli.X, "psi2-": Pauli.Y}


@dataclass(frozen=True)
class InputQubit:
    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if not all(map(math.isfinite, (a.real, a.imag, b.real, b.imag))):
            raise ValueError("amplitudes must be finite")
        norm2 = abs(a) ** 2 + abs(b) ** 2
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError(f"|alpha|^2 + |beta|^2 = {norm2!r}, expected 1")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def state(self) -> StateVector:
        return StateVector([self.alpha, self.beta])

    @classmethod
    def random(cls, rng) -> "InputQubit":
        """Haar-random qubit."""
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        return cls(v[0], v[1])


@dataclass(frozen=True)
class TeleportTrace:
    resource_name: str
    params: WParams | None
    outcome_label: str
    outcome_probability: float
    classical_bits: str | None
    correction: Pauli | None
    fidelity: float
    seed: int
    aux_probability: float = 0.0
    input: InputQubit | None = None

    @property
    def perfect(self) -> bool:
        return self.classical_bits is not None and self.fidelity >= 1 - 1e-10

    def to_dict(self) -> dict:
        d = asdict(self)
        d["params"] = None if self.params is None else asdict(self.params)
        d["correction"] = None if self.correction is None else self.correction.value
        if self.input is not None:
            d["input"] = {
                "alpha": [self.input.alpha.real, self.input.alpha.imag],
                "beta": [self.input.beta.real, self.input.beta.imag],
            }
        return d


def fidelity(a: StateVector, b: StateVector) -> float:
    """``|<a|b>|^2``, blind to global phase."""
    if a.num_qubits != b.num_qubits:
        raise ValueError("fidelity of states with different sizes")
    return min(1.0, abs(inner(a, b)) ** 2)


def teleport(
    resource: StateVector,
    basis: MeasurementBasis,
    table: dict,
    input: InputQubit,
    seed: int,
    resource_name: str = "custom",
    params: WParams | None = None,
    strict: bool = True,
) -> TeleportTrace:
    """Teleport ``input`` through a three-qubit ``resource``.

    Alice measures ``basis`` on positions (0, 1, 2) of ``input (x) resource``
    and announces the labeled outcome as two bits; Bob applies
    ``table[label]`` to his qubit.

    With ``strict=False`` a filler (``aux_k``) outcome is recorded instead of
    raising: Bob then has no correction to apply and keeps his qubit as is,
    and the trace carries ``classical_bits=None``.
    """
    if resource.num_qubits != 3:
        raise ValueError("teleportation resource must have three qubits")
    if tuple(basis.subset) != (0, 1, 2):
        raise ValueError("basis must act on joint positions (0, 1, 2)")
    labeled = basis.labels[: basis.labeled_count]
    if basis.labeled_count != 4:
        raise ValueError("teleportation basis needs exactly four labeled outcomes")
    missing = [lab for lab in labeled if lab not in table]
    if missing:
        raise ProtocolError(f"correction table has no entry for {missing}")

    joint = tensor(input.state, resource)
    probs, _, _ = measurement_branches(joint, basis)
    aux_p = float(probs[basis.labeled_count:].sum())
    out = projective_measure(joint, basis, make_rng(seed))
    if out.index < basis.labeled_count:
        correction = Pauli(table[out.label])
        bits = format(out.index, "02b")
        final = apply_local(correction.operator, [0], out.collapsed)
    else:
        if strict:
            raise ProtocolError(
                f"outcome {out.label} lies outside the labeled set (p={out.probability:.3g})"
            )
        correction, bits, final = None, None, out.collapsed
    return TeleportTrace(
        resource_name, params, out.label, out.probability, bits, correction,
        fidelity(input.state, final), seed, aux_p, input,
    )


def w_teleport(p: WParams, input: InputQubit, seed: int) -> TeleportTrace:
    return teleport(
        make_w_n(p), w_teleport_basis(p), W_CORRECTIONS, input, seed,
        resource_name="wn", params=p,
    )


def ghz_teleport(input: InputQubit, seed: int) -> TeleportTrace:
    return teleport(
        make_ghz(), ghz_teleport_basis(), GHZ_CORRECTIONS, input, seed, resource_name="ghz"
    )


def resource_accounting(resource: StateVector, alice_qubits) -> float:
    """Shared ebits across the Alice|Bob cut of a pure resource."""
    alice = sorted(set(int(q) for q in alice_qubits))
    n = resource.num_qubits
    if not alice or len(alice) >= n or any(not 0 <= q < n for q in alice):
        raise ValueError("alice_qubits must be a proper nonempty subset")
    return von_neumann_entropy(reduced(resource, alice))


# ---------------------------------------------------------------- dense coding


class Scheme(str, enum.Enum):
    BELL2 = "bell2"
    WN2 = "wn2"
    GHZ2 = "ghz2"
    GHZ3 = "ghz3"

    @property
    def bits(self) -> int:
        return 3 if self is Scheme.GHZ3 else 2

    @property
    def qubits_sent(self) -> int:
        return 2 if self is Scheme.GHZ3 else 1

    @property
    def alice_qubits(self) -> tuple:
        return (0, 1) if self is Scheme.GHZ3 else (0,)


_ENC2 = [Pauli.I.operator, Pauli.X.operator, _ISY, Pauli.Z.operator]
_ENC3 = _ENC2 + [
    Pauli.I.operator.kron(Pauli.X.operator),
    Pauli.I.operator.kron(_ISY),
    Pauli.X.operator.kron(Pauli.X.operator),
    Pauli.X.operator.kron(_ISY),
]
# label Bob expects after each message, in message order
_DECODE_LABELS = {
    Scheme.BELL2: ("phi+", "psi+", "psi-", "phi-"),
    Scheme.WN2: ("eta+", "xi+", "xi-", "eta-"),
    Scheme.GHZ2: ("psi1+", "psi2+", "psi2-", "psi1-"),
    Scheme.GHZ3: ("psi1+", "psi2+", "psi2-", "psi1-", "psi3+", "psi3-", "psi4+", "psi4-"),
}


def shared_state(scheme, params: WParams | None = None) -> StateVector:
    """The state Alice and Bob share before encoding.

    The W_n scheme shares ``eta+_n`` rather than ``W_n`` itself.
    """
    scheme = Scheme(scheme)
    if scheme is Scheme.BELL2:
        return make_bell()
    if scheme is Scheme.WN2:
        return w_teleport_vectors(params or WParams())["eta+"]
    return make_ghz()


def decode_basis(scheme, params: WParams | None = None) -> MeasurementBasis:
    scheme = Scheme(scheme)
    if scheme is Scheme.BELL2:
        return bell_basis()
    if scheme is Scheme.WN2:
        return w_teleport_basis(params or WParams())
    if scheme is Scheme.GHZ2:
        return ghz_teleport_basis()
    return ghz_dense8_basis()


def sdc_encode(scheme, message: int, shared: StateVector) -> StateVector:
    """Alice's local unitary for ``message`` applied to her qubit(s)."""
    scheme = Scheme(scheme)
    if not 0 <= message < 1 << scheme.bits:
        raise ValueError(f"message {message} out of range for {scheme.value}")
    if shared.num_qubits != (2 if scheme is Scheme.BELL2 else 3):
        raise ValueError(f"shared state has the wrong size for {scheme.value}")
    op = _ENC3[message] if scheme is Scheme.GHZ3 else _ENC2[message]
    return apply_local(op, range(op.num_qubits), shared)


def sdc_decode(scheme, s: StateVector, params: WParams | None = None, seed: int = 0) -> int:
    """Bob's joint measurement; returns the message index of the outcome."""
    scheme = Scheme(scheme)
    basis = decode_basis(scheme, params)
    if s.num_qubits != len(basis.subset):
        raise ValueError("state size does not match the decoding basis")
    out = projective_measure(s, basis, make_rng(seed))
    labels = _DECODE_LABELS[scheme]
    if out.label not in labels:
        raise ProtocolError(f"decoder landed on {out.label}: channel corrupted")
    return labels.index(out.label)


@dataclass(frozen=True)
class DenseCodeTrace:
    scheme: Scheme
    message: int
    encoded_label: str
    decoded: int
    qubits_sent: int
    ebits_used: float
    seed: int = 0
    params: WParams | None = None

    @property
    def success(self) -> bool:
        return self.decoded == self.message

    def to_dict(self) -> dict:
        d = asdict(self)
        d["scheme"] = self.scheme.value
        d["params"] = None if self.params is None else asdict(self.params)
        return d


def dense_code(scheme, message: int, params: WParams | None = None, seed: int = 0) -> DenseCodeTrace:
    """One superdense-coding roundtrip with full bookkeeping."""
    scheme = Scheme(scheme)
    if scheme is Scheme.WN2:
        params = params or WParams()
    else:
        params = None
    shared = shared_state(scheme, params)
    encoded = sdc_encode(scheme, message, shared)
    decoded = sdc_decode(scheme, encoded, params, seed)
    return DenseCodeTrace(
        scheme, message, _DECODE_LABELS[scheme][message], decoded, scheme.qubits_sent,
        resource_accounting(shared, scheme.alice_qubits), seed, params,
    )


# ------------------------------------------------------------ negative control


@dataclass(frozen=True)
class FailureReport:
    trials: int
    mean_fidelity: float
    min_fidelity: float
    max_fidelity: float
    mean_aux_probability: float
    aux_hits: int
    matched_mean_fidelity: float
    matched_max_aux_probability: float

    @property
    def demonstrates_failure(self) -> bool:
        return self.mean_fidelity < 1 - 1e-3


def prototype_w_failure_demo(trials: int = 1000, seed: int = 42) -> FailureReport:
    """Run the W_1 teleportation recipe on the wrong resource.

    The prototype W state is measured against the W_1 basis and corrected
    with the W_1 table, side by side with the matched W_1 resource over the
    same random inputs and seeds.
    """
    basis = w_teleport_basis(WParams(1.0))
    proto, matched = make_w_prototype(), make_w1()
    input_rng = make_rng(seed)
    bad, good = [], []
    for run_seed in derive_seeds(seed, trials):
        psi = InputQubit.random(input_rng)
        bad.append(teleport(proto, basis, W_CORRECTIONS, psi, run_seed, "w-prototype", strict=False))
        good.append(teleport(matched, basis, W_CORRECTIONS, psi, run_seed, "w1"))
    fid = np.array([t.fidelity for t in bad])
    return FailureReport(
        trials,
        float(fid.mean()),
        float(fid.min()),
        float(fid.max()),
        float(np.mean([t.aux_probability for t in bad])),
        sum(t.classical_bits is None for t in bad),
        float(np.mean([t.fidelity for t in good])),
        float(max(t.aux_probability for t in good)),
    )
