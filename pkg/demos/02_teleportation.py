"""
Teleporting one qubit through W_n and GHZ
=========================================

Alice holds the input and the first two resource qubits, measures them in a
three-qubit basis and sends two bits. Bob fixes his qubit with one Pauli.
"""
from collections import Counter

import numpy as np

from wtangle import InputQubit, WParams, derive_seeds, ghz_teleport, make_rng, w_teleport

psi = InputQubit(np.sqrt(0.3), np.sqrt(0.7) * np.exp(0.4j))

# one shot, traced in full
t = w_teleport(WParams(2.0, 0.3, 1.1), psi, seed=7)
print(f"outcome {t.outcome_label} (p={t.outcome_probability:.3f}), bits {t.classical_bits}, "
      f"correction {t.correction.value}, fidelity {t.fidelity:.15f}")

# many random inputs: every outcome has p = 1/4 and every run is perfect
rng = make_rng(42)
p = WParams(7.5, np.pi / 4, np.pi)
traces = [w_teleport(p, InputQubit.random(rng), s) for s in derive_seeds(42, 400)]
print("W_n   min fidelity:", min(x.fidelity for x in traces))
print("      outcomes:", dict(Counter(x.outcome_label for x in traces)))

traces = [ghz_teleport(InputQubit.random(rng), s) for s in derive_seeds(43, 400)]
print("GHZ   min fidelity:", min(x.fidelity for x in traces))
print("      outcomes:", dict(Counter(x.outcome_label for x in traces)))
