"""Exact dense evolution versus the Gaussian (Bogoliubov) engine.

Evolves N spins under noiseless two-axis counter-twisting with the dense
Lindblad oracle and compares the minimal transverse spin variance (scaled
to quadrature units) against the linearized prediction (1/2) e^{-2 kappa t}
with kappa = J N P.  At short times and large N the two agree; the table
shows how the exact dynamics squeezes faster than the pinned linearized
rate as J N t grows.
"""

from tactsqueeze import exact, linearized


def main():
    n, p, j = 8, 1.0, 1.0
    ops = exact.spin_operators(n)
    rho0 = exact.build_initial_state(n, p)
    gen = [exact.squeeze_generator(n, j)]
    kappa = j * n * p

    print(f"N = {n}, P = {p}, J = {j}, kappa = J N P = {kappa}")
    print(f"{'J N t':>8} {'exact minvar':>13} {'gaussian':>10} {'ratio':>7}")
    for jnt in (0.01, 0.02, 0.05, 0.1, 0.2):
        t = jnt / (j * n)
        rho = exact.evolve(rho0, gen, t)
        min_var, _, _ = exact.transverse_variance_extrema(rho, ops)
        scaled = min_var / (2 * n * p)
        state = linearized.bogoliubov_propagate(
            linearized.vacuum_state(kappa, n * p), t)
        gauss = linearized.min_variance_direction(state).variance
        print(f"{jnt:8.3f} {scaled:13.6f} {gauss:10.6f} {scaled / gauss:7.3f}")
    print("\nThe ratio drifts below 1 because the exact counter-twisting")
    print("contracts the minimal variance faster than the linearized rate")
    print("kappa = J N P used by the Gaussian engine.")


if __name__ == "__main__":
    main()
