# %% Liouville ranges and explicit positive supersolutions
from pucci_halfspace import Ellipticity, build_counterexample, classify
from pucci_halfspace.liouville import transport_counterexample

ell = Ellipticity.from_ratio(2.0, 3)
for p in (-3.0, -1.0, 1.5, 1.9, 3.0):
    print(p, classify(ell, p).regime)

# %% p < -1: a power of x_n on a shifted halfspace
rep = build_counterexample(ell, -3.0)
print(rep.counterexample.as_dict(), rep.certificate.verdict)

# %% large p: x_n / |x|^beta outside a ball, for both extremal operators
for op in ("minus", "plus"):
    rep = build_counterexample(ell, 6.0, op)
    print(op, rep.counterexample.threshold, rep.certificate.verdict)

# %% u -> C u^m carries a supersolution from p to q
rep = build_counterexample(ell, 4.0)
print(transport_counterexample(rep, 6.0, ell).verdict)
