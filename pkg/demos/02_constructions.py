"""The standard large t-intersecting families and their covering numbers."""

# %% Three families of 3-subspaces of F_2^7 with t = 1.
from qcross.families import construct_h1, construct_h2, covering_number, cross_intersecting, trivial_family
from qcross.gf import field_new
from qcross.grassmann import coordinate_space
from qcross.qbinom import h1_size, h2_size

F2 = field_new(2)
n, k, t = 7, 3, 1
T = coordinate_space(F2, n, [0])
M = coordinate_space(F2, n, [0, 1, 2, 3])
Z = coordinate_space(F2, n, [0, 1, 2])

star = trivial_family(T, k)
h1 = construct_h1(M, M, T, k, t)
h2 = construct_h2(Z, k, t + 1)
for name, fam in [("star", star), ("H1", h1), ("H2", h2)]:
    print(f"{name}: {len(fam)} members")

# %% The closed-form sizes match the enumerated families.
print("h1 formula:", h1_size(n, k, t, 2), " h2 formula:", h2_size(n, k, t, 2))

# %% Each family is 1-intersecting; only the star has a 1-dimensional cover.
for name, fam in [("star", star), ("H1", h1), ("H2", h2)]:
    ok, _ = cross_intersecting([fam, fam], t)
    rep = covering_number(fam, t)
    print(f"{name}: intersecting={ok}, tau={rep.tau}, {rep.certificate}")

# %% Two H1 families sharing T on different (k+1)-spaces are still cross-intersecting.
L = coordinate_space(F2, n, [0, 1, 2, 4])
ok, witness = cross_intersecting([construct_h1(L, M, T, k, t), construct_h1(M, L, T, k, t)], t)
print("H1(L,M,T) vs H1(M,L,T):", ok)
