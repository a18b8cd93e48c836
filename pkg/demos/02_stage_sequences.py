"""
Watching an infinite answer converge
====================================

Tor_1(E, E) over k[x] is E itself, which is not finite dimensional.  The
library returns it as a direct system of finite stages, here R/x^s, joined by
injective maps.  Ext^1(E, R) is the inverse-system counterpart.
"""

from matlis import GradedModule, QuotientRing, QQ
from matlis.duality import artinian_dual, hard_direction_stages, injective_hull

R = QuotientRing(QQ, ["x"], [])
E = injective_hull(R)

tor1 = hard_direction_stages(1, E, E, "tor_artinian_pair", 5)
print("Tor_1(E, E) stage lengths:", tor1.lengths)
print("transitions injective:    ", tor1.injective())
# The image of stage 1 in stage 5 is still one dimensional: nothing dies.
print("rank of stage 1 -> stage 5:", tor1.composite_rank(1, 5))

tor0 = hard_direction_stages(0, E, E, "tor_artinian_pair", 5)
print("Tor_0(E, E) stage lengths:", tor0.lengths)

ext1 = hard_direction_stages(1, E, GradedModule.free(R, [0]), "ext_artinian_to_fg", 5)
print("Ext^1(E, R) stage lengths:", ext1.lengths, "(inverse system, surjective maps)")

# When the stages stabilize the limit is detected and returned as a module.
Ax = artinian_dual(GradedModule.cyclic(R, "x"))
seq = hard_direction_stages(1, Ax, Ax, "tor_artinian_pair", 4)
lim = seq.detected_limit
print("Tor_1(D(R/x), D(R/x)) limit length:", None if lim is None else lim.dim)
