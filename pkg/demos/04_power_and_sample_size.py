"""Approximate power of the goodness-of-fit test and the sample size
needed to reach a target power.

The alternative here is the mixture with weight 0.75 on the Poisson
component, tested against the pure Poisson family.  The population distance
and its variance come from the population fit; power then follows from the
normal approximation, and the sample-size solver inverts it exactly.
"""

import numpy as np

from phdsel import (default_partition, fit_phd_to_probs, mixture_cell_probs,
                    omega_sq, poisson_model, power_approx,
                    required_sample_size)

part = default_partition()
model = poisson_model(part)
h, alpha, df = 0.5, 0.05, part.m - 1 - 1

truth = mixture_cell_probs(0.75, part)
pop_fit = fit_phd_to_probs(model, truth, h)
D = pop_fit.objective
variance = omega_sq(truth, model, pop_fit.theta_hat, h)
print(f"population distance D = {D:.5f}, variance = {variance:.5f}")

print("\napproximate power against this alternative:")
for n in (100, 300, 600, 1000, 2000):
    beta = power_approx(D, variance, n, alpha, df)
    print(f"  n = {n:5d}: power = {beta:.4f}")

print("\nsample size needed for target power:")
for target in (0.5, 0.8, 0.9, 0.99):
    n0 = required_sample_size(D, variance, alpha, target, df)
    achieved = power_approx(D, variance, n0, alpha, df)
    print(f"  target {target:.2f}: n0 = {n0:5d} (achieved {achieved:.4f})")
