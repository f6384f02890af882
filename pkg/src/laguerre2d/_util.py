"""Small numeric helpers shared across modules."""

import cmath
import math

import numpy as np


def rel_err(a, b, floor=0.0):
    """|a - b| / max(|b|, floor); 0 when both vanish."""
    diff = abs(complex(a) - complex(b))
    denom = max(abs(complex(b)), floor)
    if denom == 0.0:
        return 0.0 if diff == 0.0 else math.inf
    return diff / denom


def polar_draw(rng, radius, size=None):
    """Complex numbers with modulus uniform on [0, radius] and uniform angle."""
    mod = rng.uniform(0.0, radius, size)
    ang = rng.uniform(-math.pi, math.pi, size)
    if size is None:
        return complex(cmath.rect(mod, ang))
    return mod * np.exp(1j * ang)


def is_finite_complex(x):
    x = complex(x)
    return math.isfinite(x.real) and math.isfinite(x.imag)
