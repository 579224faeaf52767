"""
The Bessenrodt-Ono criterion on three families
==============================================

Given an envelope and maps g, h, three analytic conditions imply
F(a)F(b) > F(a+b) beyond the largest of their thresholds.  Each condition
is scanned from index 1 so the least clean threshold is discovered rather
than assumed.
"""

# %%
from partineq.criteria import run_bo_criterion
from partineq.presets import preset


def show(name, run_to, **kw):
    inst = preset(name, **kw)
    v = run_bo_criterion(inst.inputs, inst.sequence, run_to)
    print(v.summary())
    for c in v.checks:
        print("   ", c.summary())
    return v


# %%
# p(n) with g(b) = pi/12 sqrt(24b - 1) - 1/24 and h = 2.  Condition 3 was
# proposed with threshold 15 but the enclosures show it fails up to 21.
v = show("bo-euler-example21", 400)
print("condition 3 fails at", [w["n"] for w in v.check("bo-condition-3").witnesses])

# %%
# Plane partitions with the calibrated Wright envelope.
show("bo-planepartition", 400)

# %%
# m-ary partitions with constants fitted on a window; the verdict only covers
# the window the constants were fitted on.
show("bo-mary", 1000, m=2, horizon=1000)
