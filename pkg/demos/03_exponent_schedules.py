#!/usr/bin/env python3
"""Admissible exponents and the iteration bookkeeping.

Walks the parameter recipes per class, sweeps the acceptance regions
exactly in rational arithmetic, and builds full schedules: the sequence
lambda_k, the pair (nu, mu), and the estimate exponents theta_0..theta_4.
"""

from fractions import Fraction as F

from pqlab import (
    MU_UNBOUNDED,
    anisotropic_params,
    default_params,
    double_phase_params,
    exponential_params,
    is_rejected,
    lambda_sequence,
    moser_exponents,
    px_delta,
    select_mu_nu,
)

print("=" * 72)
print("THE GENERIC RECIPE beta = alpha/2 + delta, gamma = 1 + delta")
print("=" * 72)
for n, alpha, delta in ((3, 2, 0), (4, F(22, 10), F(1, 10)), (2, 2, 0)):
    p = default_params(n, alpha, delta)
    print(
        f"  n={n}: alpha={p.alpha} beta={p.beta} gamma={p.gamma} "
        f"(2* = {p.two_star}, bounds ok: {p.bounds_ok()})"
    )

print("\n" + "=" * 72)
print("ACCEPTANCE REGIONS (exact rational sweeps)")
print("=" * 72)
for n in (2, 3, 4, 5):
    first_aniso = next(
        (F(k, 100) for k in range(100, 201) if is_rejected(anisotropic_params(100, k, n))),
        None,
    )
    first_dp = next(
        (F(k, 100) for k in range(100, 201) if is_rejected(double_phase_params(100, k, n))),
        None,
    )
    print(
        f"  n={n}: anisotropic rejects first at q/p = {first_aniso}"
        f" (bound 1 + 2/n = {1 + F(2, n)});"
        f"  double phase at {first_dp}"
        + (f" (bound n/(n-2) = {F(n, n - 2)})" if n > 2 else " (no bound at n = 2)")
    )

print("\n" + "=" * 72)
print("CLASS-SPECIFIC RECIPES")
print("=" * 72)
a = anisotropic_params(2, F(5, 2), 3)
print(f"  anisotropic p=2, q=5/2, n=3: alpha={a.alpha} beta={a.beta} gamma={a.gamma}")
d = double_phase_params(2, 3, 4)
print(f"  double phase p=2, q=3, n=4: alpha={d.alpha} beta={d.beta} gamma={d.gamma}")
print(f"  variable exponent delta(p=2, theta=1.01, omega=0.01) = {px_delta(2, F(101,100), F(1,100))}")
e = exponential_params(F(24, 10), F(105, 100), F(2, 100), n=3)
print(f"  exponential alpha=2.4, theta=1.05, delta=0.02: beta={e.beta} gamma={e.gamma}")
r = exponential_params(F(24, 10), F(12, 10), F(2, 100), n=3)
print(f"  exponential with theta = alpha/2 exactly: {r.describe()}")

print("\n" + "=" * 72)
print("ITERATION EXPONENTS")
print("=" * 72)
p3 = default_params(3, 2, 0)
print(f"  lambda_k at n=3, alpha=2, gamma=1 (ratio 2*/2 = 3): {lambda_sequence(p3, 5)}")
p4 = default_params(4, 2, 0)
print(f"  lambda_k at n=4 (ratio 2): {lambda_sequence(p4, 5)}")

nu, mu = select_mu_nu(p3)
s = moser_exponents(p3, nu, mu)
print(f"\n  beta = 1 schedule at n=3: nu={nu}, mu unbounded -> "
      f"theta0={s.theta0} theta1={s.theta1} theta2={s.theta2} theta3={s.theta3} theta4={s.theta4}")

from pqlab.exponents import ExponentParams, sobolev_context

pb = ExponentParams(2, F(3, 2), 1, 0, sobolev_context(3))
nu, mu = select_mu_nu(pb)
s = moser_exponents(pb, nu, mu)
print(f"  beta = 3/2 at n=3: nu={nu}, mu={mu} "
      f"((mu-1)/(mu-nu) = {(mu - 1) / (mu - nu)} reproduces beta)")
print(f"    theta1={s.theta1} ({float(s.theta1):.5g}) theta3={s.theta3} ({float(s.theta3):.5g}); "
      f"theta4 - theta0 = {s.theta4 - s.theta0} (always exactly 2)")

pr = ExponentParams(3, F(5, 2), 1, 0, sobolev_context(3))
out = select_mu_nu(pr)
print(f"\n  unattainable beta: {out.describe()}")
