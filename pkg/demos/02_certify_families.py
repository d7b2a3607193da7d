# %% grid certificates for the explicit sub- and supersolutions
from pucci_halfspace import Ellipticity, PowerFunction, certify_sign, gamma_build, certify_gamma
from pucci_halfspace.verify import feasible_region_scan

om, n = 2.0, 3
ell = Ellipticity.from_ratio(om, n)      # Lam/lam = omega

# %% Phi = x_n / |x|^(omega(n+1)-1) is a subsolution of M^-
phi = PowerFunction(om, om * (n + 1) - 1)
c = certify_sign(phi, ell, "ge")
print(c.id, c.verdict, f"worst {c.worst_violation:.2e}")

# %% the radial-type supersolution x_n / |x|^(omega(n-1)+1)
hat = PowerFunction(1, om * (n - 1) + 1)
print(certify_sign(hat, ell, "le").verdict)
# the reversed inequality fails, with a witness point
bad = certify_sign(hat, ell, "ge")
print(bad.verdict, bad.witness)

# %% which x_n^a / |x|^b are subsolutions, and the strip a <= 1 being empty
scan = feasible_region_scan(ell, resolution=24)
print(scan.named_points)
print("alpha <= 1 infeasible:", scan.alpha_le_one_infeasible)

# %% the logarithmic barrier from d0 on
gb = gamma_build(ell)
cert = certify_gamma(gb, d_max=1e3)
print(f"d0 = {gb.d0:.4f}", cert.verdict, "tail", cert.params["tail"]["worst_by_decade"][:3])
