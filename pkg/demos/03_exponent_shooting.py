# %% the scaling exponent of the singular homogeneous solution
import numpy as np

from pucci_halfspace import Ellipticity, compute_alpha, critical_exponents
from pucci_halfspace.exponent import shoot_residual

# %% Laplacian case: alpha = n - 1 and phi = sin(theta)
r = compute_alpha(Ellipticity(1, 1, 3))
th = np.linspace(0, np.pi / 2, 6)
print(r.alpha, np.abs(r.profile(th) - np.sin(th)).max())

# %% residual phi(0) across the bracket changes sign once
ell = Ellipticity.from_ratio(2.0, 3)
for a in np.linspace(4.0, 5.0, 6):
    print(f"alpha={a:.2f}  residual={shoot_residual(a, ell):+.4e}")

# %% the converged exponent and the critical exponents it fixes
for om in (1.5, 2.0, 5.0):
    for n in (2, 3, 5):
        e = Ellipticity.from_ratio(om, n)
        res = compute_alpha(e)
        c = critical_exponents(res.alpha, e)
        print(f"omega={om} n={n} alpha={res.alpha:.6f} p*={c.p_star:.6f} "
              f"in [{c.nonexistence_threshold:.4f}, {c.existence_threshold:.4f}]")
