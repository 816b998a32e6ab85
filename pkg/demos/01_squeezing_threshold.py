"""Squeezing threshold at alpha = 1.

The closed-form minimal squeezing parameter only drops below the
unsqueezed value 1/P when the dimensionless drive alpha = J N P / (4 Gamma)
exceeds 1.  This script sweeps alpha across the threshold and reports the
optimal squeeze window Theta* and the gain at the optimum.
"""

import numpy as np

from tactsqueeze import analytic, optimize


def main():
    p = 0.9
    print(f"{'alpha':>8} {'theta*':>10} {'xi2(theta*)':>12} "
          f"{'xi2*P':>8}  regime")
    for alpha in np.geomspace(0.25, 64.0, 10):
        out = optimize.optimal_theta(float(alpha), p)
        res = analytic.xi2_min_dimensionless(float(alpha), out.argmax, p)
        marker = "boundary" if out.at_boundary else "interior"
        print(f"{alpha:8.3f} {out.argmax:10.5f} {res.xi2:12.6f} "
              f"{res.xi2 * p:8.4f}  {res.regime} ({marker})")
    print("\nBelow alpha = 1 the optimum sits at Theta* = 0: squeezing")
    print("never beats the depolarization it costs.  Above threshold the")
    print("optimum moves toward Theta* = 1 and xi^2 * P drops below 1.")


if __name__ == "__main__":
    main()
