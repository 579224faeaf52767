"""
Where BO fails: even Fibonacci numbers and m-ary partitions
===========================================================
"""

# %%
from partineq.analysis import (
    bo_gap_audit_q,
    cassini_audit,
    find_min_bo_threshold,
    golden_bounds_audit,
    scan_bo,
    scan_logconcavity,
)
from partineq.seq_core import SequenceSpec

q = SequenceSpec.fib_even()
print(cassini_audit(10_000).summary())
print(golden_bounds_audit(300).summary())
print(bo_gap_audit_q(40).summary())

# %%
# q is log-concave with margin exactly 1, yet BO fails for every pair.
lc = scan_logconcavity(q, 2, 200)
print("lc violations:", len(lc.violations), "margins:", lc.details["margin_min"], lc.details["margin_max"])
bo = scan_bo(q, 1, 40)
print("BO violations with a + b <= 40:", len(bo.violations), "threshold:", bo.min_clean_threshold)

# %%
# b_m is never log-concave (it is flat on blocks of m), but BO still holds
# from a small threshold on.
for m in (2, 3, 5):
    bad = [v.indices[0] for v in scan_logconcavity(SequenceSpec.mary(m), 2, 60).violations]
    print(f"m={m}: lc fails at", bad[:12], "...")
print("b_2 BO threshold up to a + b <= 2000:", find_min_bo_threshold(SequenceSpec.mary(2), 2000))
