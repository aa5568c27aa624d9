import numpy as np
import pytest

from adibt.adi import validate_shifts
from adibt.model import eval_transfer, random_stable_system

import refdata


@pytest.fixture(scope="session")
def refsys():
    return refdata.golden_system()


@pytest.fixture(scope="session")
def refshifts():
    return validate_shifts(
        refdata.ALPHAS, refdata.BETAS, m=refdata.M_INPUTS, p=refdata.P_OUTPUTS
    )


@pytest.fixture(scope="session")
def golden_ds():
    return refdata.golden_dataset()


def random_shift_set(rng, m, p, max_multiplier=2):
    """Random real left-half-plane shift set with k*m == l*p."""
    u = int(rng.integers(1, max_multiplier + 1))
    k, l = p * u, m * u
    alphas = -np.exp(rng.uniform(np.log(0.05), np.log(5.0), size=k))
    betas = -np.exp(rng.uniform(np.log(0.05), np.log(5.0), size=l))
    # nudge apart anything that landed too close to count as distinct
    alphas = np.sort(alphas) + np.arange(k) * 1e-6
    betas = np.sort(betas) + np.arange(l) * 1e-6
    return validate_shifts(alphas, betas, m=m, p=p)


def make_corpus(count, seed=1234, max_n=10):
    """Deterministic list of (system, shift set) pairs for property tests."""
    rng = np.random.default_rng(seed)
    corpus = []
    for i in range(count):
        m = int(rng.integers(1, 4))
        p = int(rng.integers(1, 4))
        n = int(rng.integers(max(4, m + p), max_n + 1))
        sys = random_stable_system(n, m, p, seed=int(rng.integers(0, 2**31)))
        corpus.append((sys, random_shift_set(rng, m, p)))
    return corpus


def transfer_maxdev(a, b, points):
    """Max relative Frobenius deviation of two models over given points."""
    worst = 0.0
    for s in points:
        Ga = eval_transfer(a, s)
        Gb = eval_transfer(b, s)
        ref = max(np.linalg.norm(Ga), np.linalg.norm(Gb))
        if ref > 0:
            worst = max(worst, np.linalg.norm(Ga - Gb) / ref)
    return worst


def random_eval_points(rng, count=20):
    """Evaluation points off the real axis, away from typical pole locations."""
    return rng.uniform(0.1, 3.0, count) + 1j * rng.uniform(-3.0, 3.0, count)
