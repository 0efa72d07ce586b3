"""
Superdense coding
=================

wn2 / ghz2: Alice encodes two bits on one qubit with I, X, iY, Z.
ghz3: Alice owns two GHZ qubits and sends both, carrying three bits.
"""
import numpy as np

from wtangle import Scheme, WParams, dense_code, sdc_encode
from wtangle.protocols import shared_state

for scheme, params in ((Scheme.WN2, WParams(2.5)), (Scheme.GHZ2, None), (Scheme.GHZ3, None)):
    traces = [dense_code(scheme, m, params, seed=m) for m in range(1 << scheme.bits)]
    ok = all(t.success for t in traces)
    print(f"{scheme.value}: {[t.encoded_label for t in traces]} recovered={ok} "
          f"qubits sent={traces[0].qubits_sent} ebits={traces[0].ebits_used:.3f}")

# the encoded states are mutually orthogonal, which is why decoding never errs
shared = shared_state(Scheme.GHZ3)
enc = np.array([sdc_encode(Scheme.GHZ3, m, shared).amps for m in range(8)])
print("max |<e_i|e_j> - delta_ij| =", np.max(np.abs(np.abs(enc.conj() @ enc.T) - np.eye(8))))
