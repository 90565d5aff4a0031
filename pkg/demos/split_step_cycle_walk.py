#!/usr/bin/env python3
"""Split-step walk on a cycle.

The split-step shift mixes neighbouring sites with weights p and q
(p^2 + |q|^2 = 1) and is itself a unitary involution, so pairing it with
any family of per-site involution coins gives a chiral walk. Its grading
signature is balanced (trace zero), forcing index zero for every
parameter choice; the spectrum still moves with p and the coin angles.
"""

import numpy as np

from chiralwalk import SplitStepParams, split_step_cycle, verify_spectral_mapping

rng = np.random.default_rng(11)
sites = 6

for p in (1.0, 0.8, 0.28, 0.0):
    q = np.sqrt(1.0 - p * p) * np.exp(0.5j)
    params = SplitStepParams(
        sites=sites, p=p, q=q, coin_angles=tuple(rng.uniform(0, 2 * np.pi, sites)))
    pair = split_step_cycle(params)
    report = verify_spectral_mapping(pair)
    assert abs(np.trace(pair.gamma)) < 1e-12
    routes = (report.index_alpha, report.index_witten,
              report.index_formula, report.gamma_signature)
    gaps = sorted(round(float(np.angle(v)) / np.pi, 4) for v, _ in report.spectrum_u)
    print(f"p={p:+.2f} |q|={abs(q):.2f}: routes {routes}, "
          f"{len(report.spectrum_u)} eigenvalue clusters")
    print(f"  arguments/pi: {gaps}")

print()
print("The balanced signature, not the parameters, forces index zero:")
print("the shift assigns +p and -p blocks of equal size at every site.")
