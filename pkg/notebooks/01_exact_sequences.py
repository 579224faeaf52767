"""
Exact sequences
===============

Every sequence is an immutable selector evaluated through an append-only
prefix cache.  Values are Python integers throughout.
"""

# %%
from partineq.seq_core import SequenceSpec, plane_p_divisor_recurrence, plane_p_product_dp, values

for sel in ["euler", "restricted:1,2,5", "plane", "mary:2", "fib-even", "shift:26:euler"]:
    spec = SequenceSpec.parse(sel)
    print(f"{sel:18s}", values(spec, 10))

# %%
# p(n) grows quickly; the cache makes repeated queries free.
p = values(SequenceSpec.euler(), 1000)
print("p(26) =", p[26])
print("p(1000) =", p[1000], f"({len(str(p[1000]))} digits)")

# %%
# Plane partitions come from two unrelated algorithms: a product DP over the
# generating function and the divisor-sum recurrence.  They have to agree.
a = plane_p_product_dp(500)
b = plane_p_divisor_recurrence(500)
print("algorithms agree up to 500:", a == b)
print("pp(0..7) =", a[:8])

# %%
# b_m(n) is constant on pairs: b_m(mk) = b_m(mk + 1) = ... = b_m(mk + m - 1).
b3 = values(SequenceSpec.mary(3), 14)
print("b_3(0..14) =", b3)
