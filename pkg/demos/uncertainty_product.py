#!/usr/bin/env python3
# Escort-moment uncertainty products for wave functions on a grid.
# At q = 1, beta = 2 the bound 1/(2 pi k q) reduces to the Weyl-Heisenberg
# constant 1/(4 pi), attained by the Gaussian. For general q the bound is
# attained when |psi|^k is a generalized Gaussian of order q.
#
# Usage: python3 demos/uncertainty_product.py

import numpy as np

from qfisher import (
    GridSpec,
    UncertaintyParams,
    WaveFunction,
    saturating_wavefunction,
    uncertainty_check,
    zoo,
)

GRID = GridSpec.line(-12.0, 12.0, 2049)
(X,) = GRID.axes()

psi = WaveFunction.from_values(GRID, np.exp(-(X**2) / 4.0))
rep = uncertainty_check(psi, UncertaintyParams(q=1.0, beta=2.0))
print(f"unit Gaussian, q=1, beta=2: product {rep.lhs:.10f}, 1/(4 pi) = {1/(4*np.pi):.10f}\n")

print("saturating profiles (|psi|^k a generalized Gaussian of matching order)")
print(f"{'q':>5} {'product':>14} {'bound':>14} {'margin':>12}")
for q in (0.9, 1.0, 1.1, 1.2, 1.5):
    p = UncertaintyParams(q=q, beta=2.0)
    rep = uncertainty_check(saturating_wavefunction(GRID, p), p)
    print(f"{q:5.2f} {rep.lhs:14.10f} {rep.rhs:14.10f} {rep.margin:+12.2e}")

print("\nrandom wave functions stay above the bound")
print(f"{'seed':>5} {'q':>5} {'product':>14} {'margin':>12}")
for seed in range(4):
    psi = WaveFunction.from_values(GRID, zoo.random_wavefunction(GRID, seed))
    for q in (0.9, 1.0, 1.1):
        rep = uncertainty_check(psi, UncertaintyParams(q=q, beta=2.0))
        print(f"{seed:5d} {q:5.2f} {rep.lhs:14.8f} {rep.margin:+12.4e}")
