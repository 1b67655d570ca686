# This Python file uses the following encoding: utf-8
import os
import pytest

from staeckels3.sources.config import loadConfigCurrent
from staeckels3.sources.errors import ConfigError
from staeckels3.sources.workers.sweepGrid import resolveThreads, sweepGrid

config = loadConfigCurrent()



def test_serial_sweep_keeps_order():
    offset = 3
    assert sweepGrid(lambda x: x + offset, range(10), threads=1)==list(range(3, 13))



@pytest.mark.slow
def test_pool_sweep_keeps_order():
    offset = 3
    assert sweepGrid(lambda x: x*x + offset, range(50), threads=2)==[x*x + 3 for x in range(50)]



def test_empty_sweep():
    assert sweepGrid(lambda x: x, [], threads=4)==[]



def test_threads_precedence(monkeypatch):
    monkeypatch.setenv(config['threadsEnv'], '3')
    assert resolveThreads(2)==2
    assert resolveThreads()==3
    monkeypatch.delenv(config['threadsEnv'])
    assert resolveThreads()>=1



@pytest.mark.parametrize('threads', [0, -2, 'many'])
def test_threads_rejected(threads):
    with pytest.raises(ConfigError):
        resolveThreads(threads)



def test_bad_environment(monkeypatch):
    monkeypatch.setenv(config['threadsEnv'], 'x')
    with pytest.raises(ConfigError, match='environment'):
        resolveThreads()
