"""Shared fixtures: small codes built once per session."""

import numpy as np
import pytest

import swldpc as sw


@pytest.fixture(scope="session")
def toy_code():
    """k=32 code, small enough for exhaustive checks."""
    spec = sw.CodeSpec(id="T32", k=32, n=48, dv_target=3.0, design_p=0.05)
    return sw.build_code(spec, seed=7)


@pytest.fixture(scope="session")
def small_code():
    """k=512 code for mid-sized statistical checks."""
    spec = sw.CodeSpec(id="T512", k=512, n=768, dv_target=3.0, design_p=0.05)
    return sw.build_code(spec, seed=1)


@pytest.fixture(scope="session")
def desk_code():
    """The registry's k=1024, rate-1/2 code."""
    return sw.build_code(sw.get_code_spec("D1"), seed=0)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
