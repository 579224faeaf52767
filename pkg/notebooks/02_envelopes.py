"""
Envelopes and interval certification
====================================

An envelope is a pair c1(n) e^{f(n)} < F(n) < c2(n) e^{f(n)}.  Bounds are
enclosed with mpmath interval arithmetic and compared with the exact value
as rationals, so a pass is a proof for that index.
"""

# %%
from partineq.envelopes import (
    CHEN,
    LEHMER,
    calibrate_wright,
    certify_envelope,
    mahler_log_ratio,
    wright_envelope_def,
)
from partineq.seq_core import SequenceSpec

euler = SequenceSpec.euler()
lo, hi = LEHMER.bounds(100)
print("Lehmer-type bracket at n = 100:", lo, hi)

# %%
# The sharper Chen-Jia-Wang form fails for small n and holds from 37 on.
rep = certify_envelope(CHEN, euler, 2, 400)
print(rep.summary())
print("failing indices:", rep.failing_indices[0], "...", rep.failing_indices[-1])
print(certify_envelope(CHEN, euler, 37, 400).summary())

# %%
# Plane partitions: alpha and gamma are the closed-form leading constants,
# beta is the smallest 0.01-grid value making the envelope hold on [1, N_cal].
params, diag = calibrate_wright(N_cal=600)
print(params)
print(diag)
print(certify_envelope(wright_envelope_def(params), SequenceSpec.plane(), 1, 600).summary())

# %%
# For m-ary partitions, b_m(n) / e^{(log n)^2 / (2 log m)} drifts to 0, so no
# constant pair c1, c2 can work for all n.  The log ratio creeps toward 1 only
# from below.
for n in (100, 1000, 5000):
    print(n, mahler_log_ratio(2, n))
