"""
Simulating the AR(1)-GARCH(1,1) design
======================================

One path from the data-generating process, with a look at how volatility
clusters and how the sample moments compare with their population values.
"""

import numpy as np

from lpgarch import DgpParams, simulate_series

params = DgpParams(beta0=0.0, beta1=0.95, gamma=1.0, alpha1=0.5, alpha2=0.4, T=2000)
sample = simulate_series(params, seed=1)

# the variance recursion starts at its unconditional level
print("sigma_1^2 =", sample.variances[0], "=", params.unconditional_variance)

# innovations are y_t minus its conditional mean
eps = sample.innovations
print("sample var of eps:", eps.var().round(3))
print("mean conditional variance:", sample.variances.mean().round(3))

# volatility clustering: squared innovations are autocorrelated, raw ones are not
def acf1(x):
    x = x - x.mean()
    return (x[1:] @ x[:-1]) / (x @ x)

print("lag-1 autocorrelation, eps:  ", round(acf1(eps), 3))
print("lag-1 autocorrelation, eps^2:", round(acf1(eps**2), 3))

# same seed, same path
again = simulate_series(params, seed=1)
print("reproducible:", np.array_equal(sample.values, again.values))
