"""Searching for large cross-intersecting pairs with the closure operator.

Sending a family to everything that t-intersects all its members is
antitone, and applying it twice gives the maximal pairs.  The exhaustive
search closes every small generator set; the stochastic search climbs.
"""

# %% Exhaustive search for 2-subspaces of F_2^6: the best pair is a pair of stars.
from qcross.families import common_intersection
from qcross.qbinom import h1_size, h2_size
from qcross.search import SearchConfig, compare_to_theorem, exhaustive_closed_pairs, stochastic_improve

rec = exhaustive_closed_pairs(SearchConfig(2, 6, 2, 1, seed_size=3))
print("best product", rec.best_product, "from", len(rec.optimal_pairs), "optimal pairs")
print("all optimal pairs trivial:",
      all(common_intersection(f).dim >= 1 for pair in rec.optimal_pairs for f in pair))
print(compare_to_theorem(rec, "EKR").to_dict()["status"])

# %% Generator sets of size 2 are not enough to reach the stars.
print("seed_size 2:", exhaustive_closed_pairs(SearchConfig(2, 6, 2, 1, seed_size=2)).best_product)

# %% Forbid trivial families and climb from a few seeds.
bound = max(h1_size(7, 3, 1, 2), h2_size(7, 3, 1, 2)) ** 2
for seed in range(3):
    r = stochastic_improve(SearchConfig(2, 7, 3, 1, mode="nontrivial-each", rng_seed=seed, iteration_budget=500))
    print(f"seed {seed}: product {r.best_product} (bound {bound})")

# %% Records carry certificates and are re-checked when loaded.
from qcross.search import SearchRecord

again = SearchRecord.from_json(r.to_json())
print("reloaded record verifies:", again.best_product == r.best_product)
