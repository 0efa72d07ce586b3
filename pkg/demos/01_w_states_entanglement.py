"""
Entanglement inside the W_n family
==================================

W_n = (|100> + sqrt(n) e^{i gamma}|010> + sqrt(n+1) e^{i delta}|001>) / sqrt(2n+2)

Walk through the entropies, pair concurrences and the residual tangle,
then compare with GHZ and the symmetric prototype W.
"""
import numpy as np

from wtangle import WParams, analyze, make_ghz, make_w1, make_w_n, make_w_prototype, reduced

s = make_w1()
print("W_1 amplitudes:", np.round(s.amps, 4))

# the last qubit is always maximally mixed, whatever n, gamma, delta are
print("rho_2 of W_1:\n", np.round(reduced(s, [2]).entries, 12))

rep = analyze(s)
print("entropies (bits):", {k: round(v, 6) for k, v in rep.entropy_bits_per_cut.items()})
print("pair concurrences:", {k: round(v, 8) for k, v in rep.concurrence_pairs.items()})
print("C_0|12 =", round(rep.concurrence_1_23, 8))
# CKW: C_0|12^2 = C_01^2 + C_02^2 exactly for W-class, so the tangle vanishes
print("tangle =", rep.tangle, " class =", rep.slocc_class.value)

# sweep n: the pair (0, 2) takes over as n grows
for n in (0, 0.25, 1, 2, 7.5):
    c = analyze(make_w_n(WParams(n))).concurrence_pairs
    print(f"n={n:<5} C01={c[(0, 1)]:.4f} C02={c[(0, 2)]:.4f} C12={c[(1, 2)]:.4f}")

for name, state in (("GHZ", make_ghz()), ("prototype W", make_w_prototype())):
    r = analyze(state)
    print(f"{name}: tangle={r.tangle:.6f} class={r.slocc_class.value}")
