"""How fast do exact probabilities approach their leading-order estimates?"""

from butson import asymptotics as asy

cases = [
    ("two rows, q=2", lambda N: asy.p2_asymptotic(2, N), [50, 200, 800, 2000]),
    ("two rows, q=3", lambda N: asy.p2_asymptotic(3, N), [51, 201, 801, 1998]),
    ("two rows, q=4", lambda N: asy.p2_asymptotic(4, N), [52, 200, 800, 2000]),
    ("three rows, p=2", lambda N: asy.p3_asymptotic(2, N), [52, 200, 800, 2000]),
    ("three rows, p=3", lambda N: asy.p3_asymptotic(3, N), [51, 201, 501, 999]),
    ("four rows, q=2", lambda N: asy.pm_asymptotic_dll(4, N), [52, 200, 800]),
    ("origin part, q=6", lambda N: asy.diagonal_return_asymptotics(3, N, "P2_origin"), [50, 200, 800]),
]

for name, make, Ns in cases:
    print(name)
    for N in Ns:
        est = make(N)
        exact = asy.exact_counterpart(est)
        print(f"  N={N:5d}  estimate {est.value:.6e}  exact/estimate {est.ratio(exact):.6f}")

print("\nsum of multinomial(n; a)^p over compositions of n into s parts")
for s, p, n in [(2, 2, 50), (2, 2, 5000), (3, 3, 20), (3, 3, 400), (4, 2, 300)]:
    est = asy.multinomial_power_sum_estimate(s, p, n)
    print(f"  s={s} p={p} n={n:5d}  log10 estimate {est.log_value / 2.302585092994046:10.3f}"
          f"  exact/estimate {est.ratio(asy.exact_counterpart(est)):.6f}")
