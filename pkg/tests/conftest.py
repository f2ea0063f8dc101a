# -*- coding: utf-8 -*-
"""Shared fixtures: the period two sawtooth system and the golden flow"""
import pytest
from ..ergolab_base import GOLDEN, Rotation
from ..ergolab_flow import Roof, SpecialFlow
from ..ergolab_observables import sign_halves
from ..ergolab_utils import read_presets_config
from ..ergolab_zeros import canonical_system


@pytest.fixture
def sawtooth_flow():
    """Rotation by 1/2 under the unit roof"""
    return SpecialFlow(Rotation(0.5), Roof.constant(1.0))


@pytest.fixture
def sawtooth_f(sawtooth_flow):
    """+1 / -1 on the halves"""
    return sign_halves(sawtooth_flow)


@pytest.fixture
def quarter_flow():
    """Rotation by 1/4 under the unit roof"""
    return SpecialFlow(Rotation(0.25), Roof.constant(1.0))


@pytest.fixture
def golden_flow():
    """Golden rotation under the unit roof"""
    return SpecialFlow(Rotation(GOLDEN), Roof.constant(1.0))


@pytest.fixture
def canonical():
    """Golden rotation, roof {1, 1 + golden}, centered indicator"""
    return canonical_system()


@pytest.fixture(scope='session')
def presets():
    """Presets shipped with the package"""
    return read_presets_config()
