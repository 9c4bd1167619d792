"""Two-row matrices at q = 2p as lattice walks.

A dephased second row over Z_2p is vanishing exactly when the walk on Z^p
it induces ends on the diagonal. The exact walk DP and the census agree as
rationals.
"""

from butson import count_two_prime_m2, exact_diagonal_return, walk_distribution
from butson.walks import diagonal_point_count

for p, q, top in ((3, 6, 10), (5, 10, 7)):
    print(f"p={p} (q={q})")
    for N in range(1, top + 1):
        dp = exact_diagonal_return(p, N)
        census = count_two_prime_m2(q, N).probability
        print(f"  N={N:2d}  walk {str(dp):>14}  census {str(census):>14}  equal {dp == census}")

dist = walk_distribution(3, 6)
print("\nend points (t,t,t) after 6 steps on Z^3:")
for t in range(-3, 4):
    print(f"  t={t:+d}  DP {dist.at((t, t, t)):6d}  1-D route {diagonal_point_count(3, 6, t):6d}")
