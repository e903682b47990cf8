"""
Elementary divisors of the skew-lines matrix
============================================

Compute the Smith normal form of A two ways and compare the multiplicities
of 1, p, p^2, p^3, p^4 with the closed-form table.

Pass a prime on the command line to change p (5 takes a few minutes).
"""

import sys
import time

from skewlines import closed_forms, filtration_dims, p_local_elementary_divisors, skew_matrix, smith_normal_form

p = int(sys.argv[1]) if len(sys.argv) > 1 else 3
A = skew_matrix(p)
cf = closed_forms(p)

t = time.perf_counter()
local = p_local_elementary_divisors(A, p)
print(f"p-local engine: {local.counts(5)}  ({time.perf_counter() - t:.2f} s)")

if p <= 3:
    t = time.perf_counter()
    snf = smith_normal_form(A)
    print(f"bigint SNF:     {snf.profile(p).counts(5)}  ({time.perf_counter() - t:.2f} s)")
    print("largest invariant factor:", snf.diagonal[-1])

print("closed forms:  ", cf.e)

# dims of M_i = {x : A x ≡ 0 mod p^i} read mod p; successive drops give the counts
dims = filtration_dims(A, p, 6)
print("dim M_i mod p:", dims)
print("f_i from the filtration:", [dims[i] - dims[i + 1] for i in range(5)])

# the determinant is ± p^(sum of i e_i)
print("det = %+d * %d^%d" % (cf.det_sign, p, cf.det_valuation))
