"""Counting dephased partial Butson matrices two ways.

Every closed form is checked against brute-force enumeration on a small
grid, then pushed to sizes where brute force is hopeless.
"""

import time

from butson import brute_force_census, closed_form_census, count_q2, count_two_prime_m2
from butson.census import closed_form_method

print(f"{'q':>3} {'M':>2} {'N':>2} {'brute':>10} {'closed':>10}  method")
for q, M in [(2, 2), (3, 2), (4, 2), (6, 2), (9, 2), (2, 3), (3, 3), (5, 3), (2, 4)]:
    for N in range(1, 9):
        if q ** ((M - 1) * N) > 5 * 10**6:
            break
        brute = brute_force_census(q, M, N)
        closed = closed_form_census(q, M, N)
        if brute.dephased:
            print(f"{q:3d} {M:2d} {N:2d} {brute.dephased:10d} {closed.dephased:10d}  {closed.method}")

print("\npartial Hadamard totals: M=2 N=4 ->", count_q2(2, 4).total, " M=3 N=4 ->", count_q2(3, 4).total)
print("dephased 4 x 8 partial Hadamard:", count_q2(4, 8).dephased)

rec = count_two_prime_m2(6, 5)
print("\nq=6, two rows, N=5:", rec.to_json())

t0 = time.perf_counter()
big = closed_form_census(5, 2, 400)
print(f"\nq=5, M=2, N=400: {len(str(big.dephased))}-digit count, P = {big.probability_float:.4e}"
      f" ({time.perf_counter() - t0:.2f}s)")
print("no closed form for q=30, M=2:", closed_form_method(30, 2))
