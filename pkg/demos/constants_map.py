"""The constant zoo and the coupling <-> exponent bijection.

Walks through the Gamma-ratio constants for a few (N, s) choices, shows the
strict monotonicity of the coupling-strength map, and round-trips its
inverse.
"""

import numpy as np

from fracgreen import (ProblemParams, frac_laplacian_normalizer,
                       gamma_of_theta, riesz_normalization,
                       sharp_hardy_constant, theta_of_gamma)

for N, s in ((1, 0.25), (2, 0.4), (3, 0.5), (4, 0.75)):
    lam = sharp_hardy_constant(N, s)
    print(f"\nN={N}, s={s}:")
    print(f"  sharp Hardy constant  Lambda = {lam:.12f}")
    print(f"  singular-integral normalizer = "
          f"{frac_laplacian_normalizer(N, s):.12f}")
    print(f"  free-space kernel constant   = "
          f"{riesz_normalization(N, s):.12f}")

    half = (N - 2 * s) / 2
    grid = np.linspace(half / 8, half * 7 / 8, 7)
    thetas = [theta_of_gamma(float(g), N, s) for g in grid]
    print("  gamma ->", np.array2string(grid, precision=4))
    print("  theta ->", np.array2string(np.array(thetas), precision=4))
    assert all(b > a for a, b in zip(thetas, thetas[1:]))

    # the map tops out exactly at the sharp constant
    print(f"  theta((N-2s)/2) - Lambda = "
          f"{theta_of_gamma(half, N, s) - lam:+.2e}")

    # inverse round trip
    worst = max(abs(gamma_of_theta(t, N, s) - g)
                for g, t in zip(grid, thetas))
    print(f"  inverse round-trip error     = {worst:.2e}")

print("\nA full parameter pack for N=3, s=1/2, theta=0.5*Lambda:")
p = ProblemParams.from_theta(3, 0.5, 0.5 * sharp_hardy_constant(3, 0.5))
print(f"  gamma = {p.exponent_gamma:.12f}")
print(f"  homogeneous profile exponent N-2s-gamma = "
      f"{p.homogeneous_exponent():.12f}")
print(f"  critical Sobolev exponent = {p.sobolev_exponent:.6f}")
