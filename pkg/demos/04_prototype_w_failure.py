"""
Why the prototype W does not teleport
=====================================

(|100> + |010> + |001>)/sqrt3 measured in the W_1 basis with the W_1
correction table. Every outcome still lands in the labeled subspace, but
Bob's qubit comes out distorted, e.g. (alpha/sqrt3)|0> + (beta/sqrt6)|1>.
"""
from wtangle import prototype_w_failure_demo

rep = prototype_w_failure_demo(trials=1000, seed=42)
print(f"prototype W: mean fidelity {rep.mean_fidelity:.4f}, "
      f"range [{rep.min_fidelity:.4f}, {rep.max_fidelity:.4f}]")
print(f"             mean aux-outcome probability {rep.mean_aux_probability:.1e}")
print(f"matched W_1: mean fidelity {rep.matched_mean_fidelity:.15f}")
print("failure shown:", rep.demonstrates_failure)
