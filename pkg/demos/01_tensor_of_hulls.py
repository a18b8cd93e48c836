"""
Tensoring the injective hull with itself
========================================

Over a polynomial ring the injective hull E is divisible by every variable,
so E (x) E collapses to zero.  Over R = k[x,y]/(xy, y^2) it does not: one
copy of the residue field survives.  Run with ``python demos/01_tensor_of_hulls.py``.
"""

from matlis import GradedModule, QuotientRing, QQ, GF
from matlis.duality import (injective_hull, iso_up_to_shift, stabilization_exponent,
                            tensor_with_artinian, top_quotient)

# E is stored through its witness: D(E) = R, the free module of rank one.
R = QuotientRing(QQ, ["x", "y"], ["x*y", "y^2"])
E = injective_hull(R)
print("witness of E:", E.dual_of.hilbert_table())

# E/mE is one dimensional, and mE = m^2 E, so the powers m^t E stop at t = 1.
print("dim E/mE            =", top_quotient(E, 1).dim)
print("stabilization index =", stabilization_exponent(E))

# The tensor product is computed on the dual side as a finite-length module.
T = tensor_with_artinian(E, E)
k = GradedModule.residue_field(R).to_flm()
print("E (x) E: length", T.dim, "in degrees", T.hilbert_table())
print("isomorphic to k:", iso_up_to_shift(T, k))

# Compare the polynomial ring, where the answer is zero.
P = QuotientRing(QQ, ["x"], [])
print("over k[x]: length", tensor_with_artinian(injective_hull(P), injective_hull(P)).dim)

# The family S = k[x,y]/(x^a y^b, y^c) gives S/(x^a, y^(c-b)), of length a(c-b).
for a, b, c in [(1, 1, 2), (2, 1, 3), (3, 2, 5)]:
    S = QuotientRing(GF(32003), ["x", "y"], [f"x^{a}*y^{b}", f"y^{c}"])
    ES = injective_hull(S)
    T = tensor_with_artinian(ES, ES)
    Q = GradedModule.cyclic(S, f"x^{a}", f"y^{c - b}").to_flm()
    print(f"(a,b,c) = ({a},{b},{c}): length {T.dim} = {a * (c - b)},",
          "matches S/(x^a, y^(c-b)):", iso_up_to_shift(T, Q))
