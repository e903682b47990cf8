"""
Lines of PG(3, p) and the skew-lines matrix
===========================================

Enumerate the 2-dimensional subspaces of F_p^4, build the 0/1 matrix that
records which pairs of lines are skew, and look at a few of its properties.
"""

import numpy as np

from skewlines import enumerate_subspaces, gaussian_binomial, skew_matrix
from skewlines.geometry import intersection_dims
from skewlines.incidence import verify_matrix_identity

p = 3

# every line is stored by its reduced row echelon basis
lines = enumerate_subspaces(p, 4, 2)
print(len(lines), "lines, Gaussian binomial:", gaussian_binomial(4, 2, p))
print("first line:", lines[0].basis)
print("last line: ", lines[-1].basis)

# dim(x ∩ y) for every pair; skew means the intersection is zero
dims = intersection_dims(lines, lines)
print("intersection dims that occur:", np.unique(dims))

A = skew_matrix(p)
print("A is", A.shape, "symmetric:", (A == A.T).all())

# each line meets p^4 others in nothing at all
print("row sums:", set(A.sum(axis=1).tolist()), "p^4 =", p**4)

# A satisfies a quadratic relation up to a multiple of J
print("A^2 + (p^2-p)A - p^3 I = (p^4-p^3) J:", verify_matrix_identity(A, p))

# so the eigenvalues are p^4 (on the ones vector), p and -p^2
w = np.linalg.eigvalsh(A.astype(float))
vals, mult = np.unique(np.round(w).astype(int), return_counts=True)
print(dict(zip(vals.tolist(), mult.tolist())))
