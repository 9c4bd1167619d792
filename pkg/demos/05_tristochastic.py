"""Tristochastic matrices index the three-row counts over Z_p."""

from butson import count_tristochastic, enumerate_tristochastic
from butson.census import count_m3_prime

print("3 x 3, line sum 2 (all circulant):")
for A in enumerate_tristochastic(3, 2):
    print("  ", A)

print("\ncounts by line sum")
print("   s " + "".join(f"{'p=' + str(p):>10}" for p in (2, 3, 4, 5, 7)))
for s in range(0, 5):
    row = [count_tristochastic(p, s) if p < 7 or s < 3 else None for p in (2, 3, 4, 5, 7)]
    print(f"  {s:2d} " + "".join(f"{'-' if c is None else c:>10}" for c in row))

print("\nthree-row counts at N = p (positive for every prime):")
for p in (3, 5, 7):
    rec = count_m3_prime(p, p)
    print(f"  p={p}  dephased {rec.dephased}  P = {rec.probability_str}")
