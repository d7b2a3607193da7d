# %% closed-form spectra of rank-two forms and the Pucci operators
import numpy as np

from pucci_halfspace import Ellipticity, PowerFunction, RankTwoForm, pucci_minus, rank_two_eigenvalues
from pucci_halfspace.matrix import dense_eigen_oracle

rng = np.random.default_rng(0)

# %% a generic form d I + a v v' + b w w' + c (v w' + w v') in R^5
n = 5
v = rng.standard_normal(n); v /= np.linalg.norm(v)
w = rng.standard_normal(n); w /= np.linalg.norm(w)
form = RankTwoForm(2.0, -1.0, 0.5, 0.3, v, w)
print("closed form :", rank_two_eigenvalues(form))
print("jacobi      :", dense_eigen_oracle(form.matrix()))

# %% Hessian of x_n / |x|^n at e_n: harmonic, so the trace vanishes
jet = PowerFunction(1, 3).jet(np.array([0.0, 0.0, 1.0]))
mu = rank_two_eigenvalues(jet.hessian)
print("spectrum", mu, "trace", mu.sum())

# %% the Pucci minimum is the infimum of tr(AM) over lam <= A <= Lam
ell = Ellipticity(1.0, 3.0, 3)
X = rng.standard_normal((3, 3)); M = X + X.T
lam_, V = np.linalg.eigh(M)
pm = pucci_minus(lam_[::-1], ell)
Q = np.linalg.qr(rng.standard_normal((2000, 3, 3)))[0]
A = np.einsum("kij,kj,klj->kil", Q, rng.uniform(1, 3, (2000, 3)), Q)
tr = np.einsum("kij,ji->k", A, M)
print(f"M^-(M) = {pm:.6f}, smallest sampled tr(AM) = {tr.min():.6f}")
