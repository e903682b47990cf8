"""
Ranks modulo p
==============

The point-line incidence phi and the line-plane non-incidence psi both
factor through A in characteristic p. Compare their p-ranks with the
dimensions of the graded pieces S_1, S_2, S_3.
"""

from skewlines import build_phi, build_psi, closed_forms, rank_mod_p, skew_matrix, verify_rank_structure

p = 3
A = skew_matrix(p)
phi = build_phi(p)
psi = build_psi(p)
s1, s2, s3 = closed_forms(p).dims
print("dim S_1, S_2, S_3 =", (s1, s2, s3))

print("rank_p(A)   =", rank_mod_p(A, p), " vs dim S_2 =", s2)
print("rank_p(phi) =", rank_mod_p(phi, p), " vs", s1 + s2)
print("rank_p(psi) =", rank_mod_p(psi, p), " vs", s2 + s3)

# columns of phi and psi add up to 0 mod p
print("phi column sums mod p:", set((phi.sum(axis=0) % p).tolist()))
print("psi column sums mod p:", set((psi.sum(axis=0) % p).tolist()))

# the full set of checks in one go
report = verify_rank_structure(p)
for check in report.checks:
    print("PASS" if check.passed else "FAIL", check.name)
