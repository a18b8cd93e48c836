"""
A randomized census of the length bounds
========================================

The suite draws seeded random rings and modules and checks each property
with two independent computations.  This script reruns the length-bound
census and the Ext/Tor duality checks on a few dozen instances.
"""

import collections

from matlis.suite import run_checks, run_suite

SEED, CASES = 2026, 40

rep = run_checks(["hom-length-bound"], SEED, CASES)
w = [r["witness"] for r in rep.records]
print("len Hom(A,N) <= beta_0(A) * len(0 :_N m^s)")
print("  tight with nonzero length:", sum(1 for x in w if x["tight"] and x["len_hom"]))
print("  tight at zero:            ", sum(1 for x in w if x["tight"] and not x["len_hom"]))
print("  strict:                   ", sum(1 for x in w if not x["tight"]))

rep = run_checks(["ext-duality", "theta-isomorphism"], SEED, 10)
for r in rep.records[:4]:
    print(r["check"], r["witness"])

# The whole suite, with three-valued verdicts.
full = run_suite(SEED, 5)
print(collections.Counter(r["verdict"] for r in full.records))
print(full.table().splitlines()[-1])
