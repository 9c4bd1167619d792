"""When do N roots of unity add up to zero?

Walks through the exact vanishing test, cycle decompositions and the
admissible lengths, then shows the q = 30 sum that vanishes without being
a union of prime cycles.
"""

from butson import MultiplicityVector, admissible_length, cycle_decomposition, cyclotomic_polynomial, is_vanishing_sum
from butson.cyclotomic import vanishing_vectors

print("Phi_6 =", cyclotomic_polynomial(6))
print("Phi_12 =", cyclotomic_polynomial(12))

# 1 + w^2 + w^4 at q = 6 is a rotated 3-cycle
v = MultiplicityVector.from_exponents(6, [0, 2, 4])
print("\nexponents 0,2,4 over q=6 vanish:", is_vanishing_sum(v))
print("  decomposition (p, offset, copies):", cycle_decomposition(v).terms)
print("  float check |sum| =", abs(v.complex_sum()))

print("\nvanishing multisets of 4 sixth roots:")
for w in vanishing_vectors(6, 4):
    print("  counts", w.counts, "->", cycle_decomposition(w).terms)

print("\nadmissible lengths N <= 12:")
for q in (4, 6, 10, 15, 30):
    print(f"  q={q:2d}:", [N for N in range(1, 13) if admissible_length(q, N)])

t = MultiplicityVector.from_exponents(30, [5, 6, 12, 18, 24, 25])
print("\nq=30, exponents 5,6,12,18,24,25")
print("  vanishing:", is_vanishing_sum(t), " |sum| =", f"{abs(t.complex_sum()):.2e}")
print("  cycle decomposition:", cycle_decomposition(t))
print("  (a 5-cycle plus a 3-cycle minus the 2-cycle {0, 15}, so no nonnegative one exists)")
