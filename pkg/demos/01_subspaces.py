"""Subspaces of F_q^n: canonical forms, lattice operations and counting."""

# %% A subspace is stored by its reduced row echelon basis, so equal spaces compare equal.
from qcross.gf import field_new
from qcross.grassmann import enumerate_grassmannian, from_text, join, meet, to_text
from qcross.qbinom import gauss_binom

F2 = field_new(2)
A = from_text(F2, "110000;011000", 6)
B = from_text(F2, "101000;000100", 6)
print("A =", to_text(A), " B =", to_text(B))
print("A ∩ B =", to_text(meet(A, B)), " dim(A + B) =", join(A, B).dim)

# %% Enumeration agrees with the Gaussian binomial.
for n, k in [(3, 1), (4, 2), (6, 2)]:
    count = sum(1 for _ in enumerate_grassmannian(F2, n, k))
    print(f"[{n} {k}]_2 = {gauss_binom(n, k, 2)}, enumerated {count}")

# %% Over F_3 the counts grow quickly.
F3 = field_new(3)
print("[5 2]_3 =", gauss_binom(5, 2, 3), "enumerated", sum(1 for _ in enumerate_grassmannian(F3, 5, 2)))
