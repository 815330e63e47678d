import numpy as np
import pytest

from fermifid.model import Boundary, ModelParams, full_range


def assert_complex_multiset_close(a, b, tol=1e-10):
    """Match two unordered complex spectra pairwise within tol."""
    a, b = list(np.asarray(a)), list(np.asarray(b))
    assert len(a) == len(b)
    for za in a:
        dists = [abs(za - zb) for zb in b]
        k = int(np.argmin(dists))
        assert dists[k] <= tol, f"no partner for {za} (closest {dists[k]:.2e})"
        b.pop(k)


def random_params(rng, L=None, boundary=None, r=None, sign=None,
                  mu_range=(-2.0, 3.0), gamma_range=(-2.0, 2.0)):
    from fermifid.model import Sign
    if L is None:
        L = int(rng.integers(2, 9))
    if boundary is None:
        boundary = Boundary.CYCLIC if rng.integers(2) else Boundary.FREE_ENDS
    if r is None:
        r = int(rng.integers(1, full_range(L, boundary) + 1))
    elif r == "full":
        r = full_range(L, boundary)
    if sign is None:
        sign = Sign.S4 if rng.integers(2) else Sign.S3
    return ModelParams(L=L, r=r, mu=float(rng.uniform(*mu_range)),
                       gamma=float(rng.uniform(*gamma_range)),
                       boundary=boundary, sign=sign)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
