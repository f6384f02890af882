"""Laguerre 2D and Hermite polynomial identities with independent oracles.

Submodules
----------
poly_core
    Hermite, generalized Laguerre, Laguerre 2D / Hermite 2D polynomials,
    Laguerre 2D functions and Jacobi-at-zero coefficients, each reachable
    by more than one evaluation route.
exact_id
    Exact rational verification of the finite combinatorial identities.
genfun
    Truncated series against closed forms for the generating functions.
su11_ops
    SU(1,1) disentanglement and Gaussian-convolution operator identities,
    checked against a quadrature oracle.
harness
    Command-line runner producing per-identity reports.
"""

from laguerre2d._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
