"""
Classifying the built-in signals
================================

Walks through the catalog: exact spectral verdicts, explicit witnesses, and
the numeric scans that cross-check them.
"""
from fractions import Fraction

from semibloch import catalog
from semibloch.classify import classify
from semibloch.frequency import Frequency
from semibloch.periods import almost_anti_periodic_test, semi_anti_witness, semi_bloch_witness
from semibloch.spectrum import commensurability_theta, spectral_classify, spectrum

# %%
# A constant is periodic with every period but never changes sign, so it has
# no antiperiods at all.
rep = classify(catalog.get("demos").signal())
for cls in ("semi_periodic", "semi_anti", "anp_member"):
    print(f"constant  {cls:15s} {rep['verdicts'][cls]['verdict']}")

# %%
# cos x is Bloch periodic for every rational wave vector.  For k = 1/2 the
# witness is 4 pi; an irrational k leaves no common period.
cos = catalog.get("kosinus").signal()
w = semi_bloch_witness(cos, Fraction(1, 2), 1e-3)
print(f"\ncos x, k = 1/2: p = {w.p_exact} = {w.p:.6f}, bound {w.bound}")
print("cos x, k = sqrt2:", classify(cos, k="sqrt2")["verdicts"]["semi_bloch"]["verdict"])

# %%
# Frequencies 1/3 and 5/7 are odd multiples of 1/21, so pi / (1/21) = 21 pi
# flips the sign of both terms at once.
olomuc = catalog.get("olomuc").signal()
theta = commensurability_theta(spectrum(olomuc))
w = semi_anti_witness(olomuc, 1e-3)
print(f"\nolomuc: theta = {theta}, antiperiod {w.p_exact} = {w.p:.6f}")

# %%
# sin x + sin(pi sqrt2 x) has incommensurable frequencies: no single p works
# for all multiples, yet near-antiperiods keep coming back.
strina = catalog.get("strina").signal()
print("\nstrina spectral verdict:", spectral_classify(strina).semi_anti)
res = almost_anti_periodic_test(strina, 0.2, (0, 1e4), 0.01)
print(f"0.2-antiperiods on [0, 1e4]: {res.scan.hits.size}, largest gap {res.scan.max_gap:.2f}")
print("first few:", ", ".join(f"{t:.2f}" for t in res.scan.hits[:5]))

# %%
# A truncated series carries its tail bound, so witnesses certify down to
# twice the tail and no further.
s = catalog.get("strina1").signal()
print(f"\nstrina1 tail bound {s.tail_sup_bound:.6f}")
print("witness at 0.3:", semi_anti_witness(s, 0.3))
w = semi_anti_witness(s, 0.5)
print(f"witness at 0.5: p = {w.p_exact}, bound {w.bound:.6f}")
# the product of the odd denominators, 3*5*7*9 = 945, is an odd multiple of 315
print("945 pi / p =", Fraction(945) * w.theta.ratio(Frequency(1)))
