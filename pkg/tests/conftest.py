# This Python file uses the following encoding: utf-8
import os
import tempfile

# The configuration files live in a throw away folder, set before the
# package creates them on import
os.environ['XDG_CONFIG_HOME'] = tempfile.mkdtemp(prefix='staeckels3-')
os.environ.pop('STAECKEL_S3_THREADS', None)

import numpy as np
import pytest

from staeckels3.sources.functions import getRng, sampleLeaf
from staeckels3.sources.systemSpec import SystemSpec



@pytest.fixture(scope='module')
def ellipsoidal():
    return SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.)


@pytest.fixture(scope='module')
def prolate():
    return SystemSpec.prolate(2.4, 1.)


@pytest.fixture(scope='module')
def oblate():
    return SystemSpec.oblate(2.4, 1.)


@pytest.fixture(scope='module')
def lame():
    return SystemSpec.lame((0.4, 1.3, 3.2), 1.)


@pytest.fixture(scope='module')
def spherical():
    return SystemSpec.spherical23(1.)


@pytest.fixture(scope='module')
def cylindrical():
    return SystemSpec.cylindrical(1.)


@pytest.fixture(scope='module')
def leaf():
    return sampleLeaf(200, getRng(0), 1.)
