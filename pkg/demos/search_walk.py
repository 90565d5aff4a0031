#!/usr/bin/env python3
"""The search operator as a chiral walk.

The product of the diffusion reflection and the marked-state oracle is a
chiral pair whose index is 4 - 2N on N positions. Its discriminant is the
single number 2/N - 1, so the whole non-real spectrum is the conjugate
pair at angle arccos(1 - 2/N), and the success probability oscillates
with exactly that frequency.
"""

import numpy as np

from chiralwalk import (
    coisometry,
    grover_search,
    search_probability_table,
    verify_spectral_mapping,
)

print("index and discriminant by register size")
for qubits in range(1, 7):
    n_positions = 2**qubits
    pair = grover_search(qubits, target=n_positions - 1)
    dec = coisometry(pair)
    report = verify_spectral_mapping(pair)
    t_value = dec.discriminant[0, 0].real
    print(f"  n={qubits} (N={n_positions:>2}): index {report.index_alpha:>4}"
          f"   discriminant {t_value:+.6f} (expect {2 / n_positions - 1:+.6f})"
          f"   flipped={dec.flipped}")

print()
print("spectrum for n=2: the two non-real eigenvalues sit at angle")
print("+-arccos(1/2) = +-pi/3, the rest of the walk is pinned at +-1")
report = verify_spectral_mapping(grover_search(2, 3))
for value, mult in report.spectrum_u:
    print(f"  {value:+.6f}  (argument {np.angle(value) / np.pi:+.4f} pi,"
          f" multiplicity {mult})")

print()
print("success probability at the marked position, n=3")
rows = search_probability_table(3, target=5, steps=8)
for step, prob, total in rows:
    bar = "#" * int(round(40 * prob))
    print(f"  t={step:>2}  p={prob:.4f}  {bar}")
assert all(abs(total - 1.0) < 1e-12 for _, _, total in rows)
