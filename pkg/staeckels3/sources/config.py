# This Python file uses the following encoding: utf-8
import copy
import json
import logging
import os
from pathlib import Path
from platformdirs import user_config_dir
from typing import List, Union, Any
from collections.abc import Mapping

logger = logging.getLogger(__name__)

APPNAME = 'staeckels3'

# This file create a python dict containing all default parameters
configPackage = {

# Casimir level 2h of the reduced phase space
'casimirLevel' : 1.,

## Tolerances
# Constraint tolerance of a cotangent point at construction
'tolConstraint' : 1e-12,
# Discriminant of the turning-point quadratic clamped to zero below that value
'tolDiscriminant' : 1e-12,
# Relative threshold under which an eigenvalue counts as zero
'tolZeroEigenvalue' : 1e-8,
# Absolute distance to the bifurcation set accepted by criticalPoints
'tolBifurcationDistance' : 1e-9,
# Integration intervals shorter than that give a vanishing action
'tolZeroInterval' : 1e-12,
# Acceptance of a cotangent point on S3 in fromCartesian
'tolSphere' : 1e-10,

## Quadrature
'quadratureTolerance' : 1e-10,
'quadratureOrder' : 20, # int, Gauss-Legendre nodes per panel
'quadratureMaxDepth' : 30, # int, adaptive bisection depth
# Panel tolerances never go below this fraction of the whole integral
'quadratureRelativeFloor' : 1e-15,

## Monodromy
# Step of the central differences of the action gradient
'monodromyStep' : 1e-5,
# Number of points on a loop, must be a multiple of 4
'monodromyPoints' : 64, # int
# Minimal distance to the bifurcation set along a loop
'monodromyMargin' : 1e-3,

## ODE
'odeRtol' : 1e-11,
'odeAtol' : 1e-12,
'odeMethod' : 'DOP853',

# Ladder of degeneration parameters for limit tests
'epsilonLadder' : [1e-2, 1e-3, 1e-4],
# Geometric ladder of distances to the hyperbolic-hyperbolic value
'hyperbolicLadder' : [1e-3, 1e-4, 1e-5],

# Seed of every random sampling
'seed' : 0, # int
# Size of the worker pool, None means available parallelism
'threads' : None,
# Environment variable used when no thread number is given
'threadsEnv' : 'STAECKEL_S3_THREADS',

# CSV output
'csvFloatFormat' : '%.12g',

## SVG plots
'svgViewBox' : 800, # int
'svgMargin' : 60, # int
'svgStrokeWidth' : 2.5,
'svgPointRadius' : 4,
'svgBackgroundColor' : '#ffffff',
'svgAxisColor' : '#444444',
'svgTextColor' : '#000000',
# Curve colors, following the usual figures of the bifurcation diagrams
'curveColors' : {'parabola'    : '#00bcd4', # cyan
                 'L1'          : '#1f77b4',
                 'L2'          : '#ffbf00',
                 'L3'          : '#8e44ad',
                 'L4'          : '#2ca02c',
                 'hyperbolic'  : '#e31a1c',
                 'degenerate'  : '#000000',
                 'prolate'     : '#d62728',
                 'oblate'      : '#1f3fbf',
                 'lame'        : '#c51b8a',
                 'spherical'   : '#ff7f00',
                 'cylindrical' : '#33a02c',
                 'grey'        : '#8c8c8c'},
# Colors of the rank one type of a sub-arc
'typeColors' : {'Elliptic'   : '#1f77b4',
                'Hyperbolic' : '#e31a1c',
                'Degenerate' : '#000000'},
}



###########################################################################
#
#
#                           Current config file
#
#
###########################################################################



def getConfigCurrentPath() -> str:
    """
    Return the path of the current configuration file
    """

    return os.path.join(user_config_dir(APPNAME), 'current_config.json')



def deep_update(source: dict,
                overrides: Any) -> dict:
    """
    Update a nested dictionary or similar mapping.
    Modify ``source`` in place.
    """

    for key, value in overrides.items():
        if isinstance(value, Mapping) and value:
            returned = deep_update(source.get(key, {}), value)
            source[key] = returned
        else:
            source[key] = overrides[key]
    return source



def saveConfigCurrent() -> None:
    """
    Save the current config file, the package default overwritten by the
    user file.
    """

    configCurrent = copy.deepcopy(configPackage)
    with open(getConfigUserPath(), 'r', encoding='utf-8') as f:
        configUser = json.load(f)

    configCurrent = deep_update(configCurrent, configUser)

    with open(getConfigCurrentPath(), 'w', encoding='utf-8') as f:
        json.dump(configCurrent, f, ensure_ascii=False, indent=4)

    logger.debug('Current configuration written in {}'.format(getConfigCurrentPath()))



def loadConfigCurrent() -> dict:
    """
    Return the current configuration as a dictionnary.
    The configuration files are created on first use.
    """

    if not os.path.isfile(getConfigCurrentPath()):
        initConfig()

    with open(getConfigCurrentPath(), 'r', encoding='utf-8') as f:
        config = json.load(f)

    return config



###########################################################################
#
#
#                           User config file
#
#
###########################################################################



def getConfigUserPath() -> str:
    """
    Return the path of the user configuration file
    """

    return os.path.join(user_config_dir(APPNAME), 'user_config.json')



def nested_update(obj, keys, value):
    if len(keys)>1:
        nested_update(obj[keys[0]], keys[1:], value)
    else:
        obj[keys[0]]=value



def updateUserConfig(key: Union[str, List[str]],
                     val: Any) -> None:
    """
    Update the user config file located in user_config_dir('staeckels3').

    Args:
        key: key(s) to be updated, a list reaches a nested key
        val: val to be updated
    """

    with open(getConfigUserPath(), 'r', encoding='utf-8') as f:
        d = json.load(f)

    if isinstance(key, str):
        d[key] = val
    elif isinstance(key, list):
        temp = copy.deepcopy(d.get(key[0], configPackage[key[0]]))
        nested_update(temp, key[1:], val)
        d[key[0]] = temp

    with open(getConfigUserPath(), 'w', encoding='utf-8') as f:
        json.dump(d, f, ensure_ascii=False, indent=4)

    saveConfigCurrent()



###########################################################################
#
#
#                           Initialization
#
#
###########################################################################



def initConfig() -> None:
    """
    Initialize the configuration file:
        1. load the default package config file.
        2. Load the user config file.
        3. Create the current config file by overwrite the package file by the
           user one.
    """

    # If there is no folder for the package, we create one
    if not os.path.isdir(user_config_dir(APPNAME)):
        Path(user_config_dir(APPNAME)).mkdir(parents=True)
        logger.info('Configuration folder created in {}'.format(user_config_dir(APPNAME)))

    # If there is no file for the user config, we create one
    if not os.path.isfile(getConfigUserPath()):
        with open(getConfigUserPath(), 'w', encoding='utf-8') as f:
            json.dump({'user' : True}, f, ensure_ascii=False, indent=4)

    # Overwrite the package file by the user one
    saveConfigCurrent()
