# %% infimum curves over gauge balls and the three-surfaces inequalities
import numpy as np

from pucci_halfspace import (Ellipticity, HomogeneousSolution, MuCurve, PowerFunction,
                             check_three_surfaces, compute_alpha, mu_curve, whole_space_three_spheres)
from pucci_halfspace.solutions import radial_family

ell = Ellipticity.from_ratio(2.0, 3)
radii = np.geomspace(0.1, 10, 50)

# %% three supersolutions: x_n, the radial-type one and the singular solution
for u in (PowerFunction(1, 0), PowerFunction(1, 5), HomogeneousSolution(compute_alpha(ell))):
    rep = check_three_surfaces(mu_curve(u, ell, radii))
    print(rep["source"], rep["concavity"]["worst_margin"], rep["monotonicity"]["worst_margin"])

# %% a curve decaying too fast is rejected
fake = MuCurve(radii, radii ** -6.1, np.ones_like(radii), ell)
print("synthetic passes:", check_three_surfaces(fake)["pass"])

# %% whole space: the radial solution sits exactly on the chord
print(whole_space_three_spheres(radial_family(ell), ell, (0.5, 1.3, 4.0)))
