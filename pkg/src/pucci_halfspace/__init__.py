"""Pucci extremal operators and explicit solutions in the halfspace.

Closed-form spectra, grid certification of sub/supersolution inequalities,
the scaling exponent of the singular homogeneous solution, three-surfaces
checks and Liouville ranges with explicit counterexamples.
"""
from .errors import (ConsistencyError, DomainError, InputError, InvalidTrajectoryError,
                     NumericalError, PreconditionError, PucciError)
from .exponent import (AngularState, ExponentResult, HomogeneousSolution, compute_alpha,
                       critical_exponents, homogeneous_hessian, shoot_residual,
                       solve_angular_second)
from .grids import Grid, t_grid
from .hadamard import (MuCurve, check_three_surfaces, halfball_curve, mplus_monotone, mu_curve,
                       whole_space_three_spheres)
from .liouville import (LiouvilleVerdict, build_counterexample, classify, scaling_transport,
                        thresholds)
from .matrix import (Ellipticity, RankTwoForm, dense_eigen_oracle, pucci, pucci_minus,
                     pucci_plus, rank_two_eigenvalues)
from .solutions import (GammaBarrier, GaugeD, Jet2, PowerFunction, boundary_point,
                        counterexample_large_p, counterexample_negative_p, dist_feasible,
                        gamma_build, gamma_constants, gamma_jet, gauge_value, in_sublevel,
                        pucci_on_power, power_jet, radial_solution)
from .verify import (InequalityCertificate, certify_gamma, certify_sign, certify_zero_order,
                     feasible_region_scan, find_gamma_d0)

__version__ = "0.1.0"
