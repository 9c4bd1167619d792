"""Estimating the return probability of the pair-product walk by sampling.

Random M x N matrices over Z_q are walks whose steps are the pair-product
vectors of their columns; a matrix is partial Butson iff the walk returns
to the origin. The samples use seeded PCG64 streams, one per worker.
"""

from butson.walks import exact_origin_return, mc_return_estimate

for q, M, N in [(2, 2, 2), (3, 2, 3), (6, 2, 5), (2, 3, 4), (4, 3, 4)]:
    exact = exact_origin_return(q, M, N)
    est = mc_return_estimate(q, M, N, 400_000, seed=42, workers=2)
    z = (est.estimate - float(exact)) / max(est.stderr, 1e-12)
    print(f"(q={q}, M={M}, N={N})  exact {float(exact):.5f}  MC {est.estimate:.5f} +- {est.stderr:.5f}  z {z:+.2f}")

a = mc_return_estimate(6, 2, 5, 100_000, seed=7, workers=3)
b = mc_return_estimate(6, 2, 5, 100_000, seed=7, workers=3)
print("\nsame seed and workers, same hits:", a.hits == b.hits)
