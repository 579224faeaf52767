"""
Log-concavity, exact and via the criterion
==========================================
"""

# %%
from partineq.analysis import scan_logconcavity
from partineq.criteria import check_prop42, check_thm43, limsup_probe, run_lc_criterion
from partineq.presets import preset
from partineq.seq_core import SequenceSpec

euler = SequenceSpec.euler()
rep = scan_logconcavity(euler, 2, 500)
print("violations at", [v.indices[0] for v in rep.violations])
print("log-concave from", rep.min_clean_threshold)

# %%
# The criterion with the Chen-Jia-Wang envelope.  The closing estimate of the
# hand argument is checked as a side inequality and holds from 94 on.
inst = preset("lc-chen")
v = run_lc_criterion(inst.inputs, inst.sequence, 500)
for c in v.walk():
    print(c.summary())

# %%
# Log-concavity plus f(0) >= 1 gives BO everywhere; the shifted sequence
# n -> p(n + 26) satisfies both, q(n) = F_2n fails the f(0) condition.
print(check_thm43(SequenceSpec.shifted(euler, 26), 300).summary())
print(check_thm43(SequenceSpec.fib_even(), 300).summary())
print(check_prop42(euler, 26, 300).summary())

# %%
# limsup p(n + 26)/p(n) < p(26) cannot be decided by finite computation; the
# probe reports what a trailing window looks like and labels it as such.
print(limsup_probe(euler, 26, 800).to_dict())
