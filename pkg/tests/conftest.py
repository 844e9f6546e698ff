import numpy as np
import pytest

from opuckit import make_pair


def random_pair(rng, n, c_scale=0.5, m_lo=0.2, m_hi=0.8):
    """A pair with uniform c and minimal parameters away from 0 and 1.

    The default ranges keep consecutive zero levels separated well above the
    certification tolerance even at depth 60; larger |c| produces measures
    with spectral gaps whose interior zeros cluster exponentially and can
    defeat bracketing long before that depth.
    """
    c = rng.uniform(-c_scale, c_scale, n)
    m = np.concatenate([[0.0], rng.uniform(m_lo, m_hi, n)])
    return make_pair(c, m=m)


def random_alpha(rng, n, radius=0.85):
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    phi = rng.uniform(0.0, 2.0 * np.pi, n)
    return tuple(r * np.exp(1j * phi))


@pytest.fixture
def rng():
    return np.random.default_rng(20240824)
