"""
A signal no Stepanov period can catch
=====================================

The step function that alternates sign on [n|n|, (n+1)|n+1|) has blocks
that grow without bound.  For any candidate period p some multiple m p moves
a unit window from one block into a block of the opposite sign, so the lift
distance is at least 2.
"""
import math

import numpy as np

from semibloch.catalog import levitan_step
from semibloch.signals import PiecewiseConstantSignal, cosine
from semibloch.stepanov import separation_witness, stepanov_norm, stepanov_semi_test

F = levitan_step()
print("breakpoints:", F.breakpoints[25:36])

# %%
for p in (1.0, 2.5, math.pi):
    cert = separation_witness(F, 1, p)
    print(f"p = {p:.4f}: window at x = {cert.x}, m = {cert.m}, lift distance {cert.lower_bound}")
print("Stepanov semi-periodic at 0.5:", stepanov_semi_test(F, "periodic", 1, 0.5))

# %%
# Contrast: a square wave of period 1 has exact Stepanov periods.
square = PiecewiseConstantSignal(np.arange(0, 41) * 0.5, [(-1.0) ** n for n in range(40)])
w = stepanov_semi_test(square, "periodic", 1, 1e-3)
print(f"\nsquare wave: period {w.p}, bound {w.bound}")

# %%
# Stepanov norms grow with q; for cos x the q = 2 norm has a closed form.
for q in (1, 2, 4):
    print(f"S^{q} norm of cos x: {stepanov_norm(cosine(1), q):.9f}")
print(f"sqrt(1/2 + sin(1)/2) = {math.sqrt(0.5 + math.sin(1) / 2):.9f}")
