# This Python file uses the following encoding: utf-8
import json
import os
import pytest

from staeckels3.sources.config import (configPackage, deep_update, getConfigCurrentPath, getConfigUserPath,
                                       loadConfigCurrent, saveConfigCurrent, updateUserConfig)



@pytest.fixture
def userConfig():
    yield
    with open(getConfigUserPath(), 'w', encoding='utf-8') as f:
        json.dump({'user' : True}, f)
    saveConfigCurrent()



def test_files_are_created():
    assert os.path.isfile(getConfigUserPath())
    assert os.path.isfile(getConfigCurrentPath())
    assert loadConfigCurrent()['seed']==configPackage['seed']



def test_deep_update():
    d = deep_update({'a' : {'b' : 1, 'c' : 2}, 'd' : 3}, {'a' : {'b' : 5}})
    assert d=={'a' : {'b' : 5, 'c' : 2}, 'd' : 3}



def test_update_user_key(userConfig):
    updateUserConfig('seed', 42)
    assert loadConfigCurrent()['seed']==42



def test_update_nested_user_key(userConfig):
    updateUserConfig(['curveColors', 'parabola'], '#123456')
    colors = loadConfigCurrent()['curveColors']
    assert colors['parabola']=='#123456'
    assert colors['grey']==configPackage['curveColors']['grey']
