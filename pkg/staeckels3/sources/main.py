# This Python file uses the following encoding: utf-8
from typing import Any, Dict, List, NamedTuple, Optional, Sequence
import argparse
import json
import logging
import os
import sys
import numpy as np
import pandas as pd

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .actions import actionGrid, boundaryArcs, semitoricPolygon
from .criticalStructure import OUTSIDE, bifurcationSet, chamber, classify, criticalPoints, fibreDescription, momentumMapRank
from .dynamics import integrateGeodesic, integrateReduced
from .errors import ConfigError, DomainError
from .functions import getRng, sampleCotangent
from .monodromy import monodromy
from .paramSpace import blowup, faceOfBlowup, involution, normalize, parameterActionMap, representativeChart
from .so4Core import CotangentPoint, buildIntegrals, momentumMap
from .svgPlot import svgBifurcation, svgPolygon, svgTernary, writeSvg
from .systemSpec import Family, SystemSpec
from .verifySuite import verify

logger = logging.getLogger(__name__)

# Parameters used when the command line gives none
DEFAULTPARAMETERS = {Family.ELLIPSOIDAL : {'e' : [1., 2., 5., 8.]},
                     Family.PROLATE     : {'b' : 2.4},
                     Family.OBLATE      : {'a' : 2.4},
                     Family.LAME        : {'f' : [0.4, 1.3, 3.2]},
                     Family.SPHERICAL23 : {},
                     Family.CYLINDRICAL : {}}

# Values of the run options absent from the command line and the --config file
DEFAULTRUN = {'system'   : 'ellipsoidal',
              'grid'     : 20,
              'seed'     : None,
              'threads'  : None,
              'out'      : '.',
              'tol'      : 1e-10,
              'duration' : 1000.,
              'samples'  : 201,
              'flow'     : 'geodesic',
              'svg'      : True,
              'radius'   : 0.3,
              'points'   : None}



class RunConfig(NamedTuple):
    """
    Options of one run once the command line, the --config file and the
    defaults are merged.
    """

    subcommand: str
    spec: SystemSpec
    grid: int
    seed: int
    threads: Optional[int]
    out: str
    tol: float
    duration: float
    samples: int
    flow: str
    svg: bool
    radius: float
    points: Optional[int]
    value: Optional[List[float]]
    bivector: Optional[List[float]]

    def metadata(self) -> Dict[str, Any]:
        return {'subcommand' : self.subcommand,
                'system'     : self.spec.describe(),
                'grid'       : self.grid,
                'seed'       : self.seed,
                'tol'        : self.tol,
                'duration'   : self.duration,
                'samples'    : self.samples,
                'flow'       : self.flow}



###########################################################################
#
#
#                           Arguments
#
#
###########################################################################



def _floats(text: str) -> List[float]:
    """
    Parse a comma separated list of floats.
    """

    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('Comma separated numbers expected, got "{}"'.format(text))



def buildParser() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(prog='staeckel-s3',
                                     description='Integrable systems separating the geodesic flow of S3, reduced to S2xS2.')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--system', help='ellipsoidal, prolate, oblate, lame, spherical23 or cylindrical (default ellipsoidal)')
    common.add_argument('--e', type=_floats, help='ellipsoidal parameters e1<e2<e3<e4, default 1,2,5,8')
    common.add_argument('--b', type=float, help='prolate parameter b>1, default 2.4')
    common.add_argument('--a', type=float, help='oblate parameter a>1, default 2.4')
    common.add_argument('--f', type=_floats, help='Lamé parameters f1<f2<f3, default 0.4,1.3,3.2')
    common.add_argument('--h2', type=float, dest='twoH', help='Casimir level 2h, default from the configuration')
    common.add_argument('--grid', type=int, help='resolution of the value grids, >= 2 (default 20)')
    common.add_argument('--seed', type=int, help='seed of the random samplings (default from the configuration)')
    common.add_argument('--threads', type=int, help='size of the worker pool')
    common.add_argument('--config', help='JSON file of options, overridden by the command line')
    common.add_argument('--out', help='output folder (default current folder)')
    common.add_argument('--no-svg', action='store_false', dest='svg', default=None, help='do not write SVG files')
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='log debug messages')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='log warnings and errors only')

    subparsers = parser.add_subparsers(dest='subcommand', required=True)
    subparsers.add_parser('bifurcate', parents=[common], help='bifurcation diagram as CSV and SVG')
    subparsers.add_parser('actions', parents=[common], help='actions of a value grid as CSV and ternary SVG')

    p = subparsers.add_parser('monodromy', parents=[common], help='monodromy matrix of the prolate system as JSON')
    p.add_argument('--radius', type=float, help='radius of the loop around (0, 2h) (default 0.3)')
    p.add_argument('--points', type=int, help='number of points of the loop')

    subparsers.add_parser('polytope', parents=[common], help='parameter space report as JSON')

    p = subparsers.add_parser('simulate', parents=[common], help='trajectory CSV and drift report JSON')
    p.add_argument('--flow', choices=('geodesic', 'reduced'), help='geodesic flow on T*S3 or reduced flow of the first integral')
    p.add_argument('--duration', type=float, help='integration time (default 1000)')
    p.add_argument('--tol', type=float, help='integrator tolerance in (0, 1e-2] (default 1e-10)')
    p.add_argument('--samples', type=int, help='number of samples of the trajectory (default 201)')

    p = subparsers.add_parser('classify', parents=[common], help='report on a value or a bivector as JSON')
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument('--value', type=_floats, help='values x,y of the two integrals')
    target.add_argument('--bivector', type=_floats, help='angular momenta l12,l13,l14,l23,l24,l34')

    p = subparsers.add_parser('verify', parents=[common], help='run the checks of a family, JSON report')
    p.add_argument('--duration', type=float, help='integration time of the conservation checks (default 1000)')

    return parser



def _readConfigFile(path: Optional[str]) -> Dict[str, Any]:

    if path is None:
        return {}
    try:
        with open(path, 'r', encoding='utf-8') as f:
            d = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError('Cannot read the configuration file {}: {}'.format(path, e))
    if not isinstance(d, dict):
        raise ConfigError('The configuration file {} must hold a JSON object'.format(path))
    return d



def buildSpec(options: Dict[str, Any]) -> SystemSpec:
    """
    Return the system named by options['system'] with its parameters, the
    defaults filling the missing ones.
    """

    family = Family.fromString(str(options.get('system') or DEFAULTRUN['system']))
    params = dict(DEFAULTPARAMETERS[family])
    params.update({k : options[k] for k in params if options.get(k) is not None})
    twoH = options.get('twoH')

    if family==Family.ELLIPSOIDAL:
        return SystemSpec.ellipsoidal(params['e'], twoH)
    elif family==Family.PROLATE:
        return SystemSpec.prolate(params['b'], twoH)
    elif family==Family.OBLATE:
        return SystemSpec.oblate(params['a'], twoH)
    elif family==Family.LAME:
        return SystemSpec.lame(params['f'], twoH)
    elif family==Family.SPHERICAL23:
        return SystemSpec.spherical23(twoH)
    return SystemSpec.cylindrical(twoH)



def loadRunConfig(args: argparse.Namespace) -> RunConfig:
    """
    Merge the command line, the --config file and the defaults.

    Raises
    ------
    ConfigError
        Invalid option, including an invalid system.
    """

    fromFile = _readConfigFile(args.config)
    options = dict(DEFAULTRUN)
    options.update({k : v for k, v in fromFile.items()})
    options.update({k : v for k, v in vars(args).items() if v is not None})

    try:
        spec = buildSpec(options)
    except DomainError as e:
        raise ConfigError(str(e))

    grid = int(options['grid'])
    if grid<2:
        raise ConfigError('Grid resolution must be >= 2, got {}'.format(grid))
    tol = float(options['tol'])
    if not 0.<tol<=1e-2:
        raise ConfigError('Tolerance must lie in (0, 1e-2], got {}'.format(tol))
    samples = int(options['samples'])
    if samples<2:
        raise ConfigError('Number of samples must be >= 2, got {}'.format(samples))
    if not float(options['duration'])>0.:
        raise ConfigError('Duration must be > 0, got {}'.format(options['duration']))

    return RunConfig(subcommand=args.subcommand,
                     spec=spec,
                     grid=grid,
                     seed=int(config['seed']) if options['seed'] is None else int(options['seed']),
                     threads=options['threads'],
                     out=str(options['out']),
                     tol=tol,
                     duration=float(options['duration']),
                     samples=samples,
                     flow=str(options['flow']),
                     svg=bool(options['svg']),
                     radius=float(options['radius']),
                     points=options['points'],
                     value=options.get('value'),
                     bivector=options.get('bivector'))



def setupLogging(verbose: bool=False,
                 quiet: bool=False) -> None:
    """
    Attach a single stream handler to the package logger.
    """

    root = logging.getLogger(__name__.split('.')[0])
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s %(name)s: %(message)s'))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO)



###########################################################################
#
#
#                           Writers
#
#
###########################################################################



def _path(run: RunConfig,
          suffix: str) -> str:

    os.makedirs(run.out, exist_ok=True)
    return os.path.join(run.out, '{}_{}.{}'.format(run.subcommand, run.spec.family.value, suffix))



def writeCsv(df: pd.DataFrame,
             run: RunConfig,
             path: Optional[str]=None) -> str:
    """
    Write a DataFrame after #-prefixed lines holding the run options and
    the configuration.
    """

    path = _path(run, 'csv') if path is None else path
    with open(path, 'w', encoding='utf-8', newline='') as f:
        for key, value in run.metadata().items():
            f.write('# {}: {}\n'.format(key, value))
        f.write('# config: {}\n'.format(json.dumps(config, sort_keys=True)))
        df.to_csv(f, index=False, float_format=config['csvFloatFormat'])

    logger.info('CSV written in {}'.format(path))
    return path



def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    return value



def writeJson(d: Dict[str, Any],
              run: RunConfig) -> str:

    path = _path(run, 'json')
    report = dict(run.metadata())
    report.update({k : _jsonable(v) for k, v in d.items()})
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(report, f, ensure_ascii=False, indent=4)

    logger.info('JSON written in {}'.format(path))
    return path



###########################################################################
#
#
#                           Subcommands
#
#
###########################################################################



def runBifurcate(run: RunConfig) -> int:

    diagram = bifurcationSet(run.spec)
    curves = diagram.toDataFrame(max(run.grid, 200)).rename(columns={'curve' : 'name'})
    curves.insert(0, 'kind', 'curve')
    vertices = diagram.verticesDataFrame()[['name', 'x', 'y', 'exact_x', 'exact_y', 'fibre']]
    vertices.insert(0, 'kind', 'vertex')

    writeCsv(pd.concat((curves, vertices), ignore_index=True), run)
    if run.svg:
        writeSvg(svgBifurcation(diagram), _path(run, 'svg'))
    return 0



def runActions(run: RunConfig) -> int:

    grid = actionGrid(run.spec, run.grid, run.threads)
    writeCsv(grid, run)
    if run.svg:
        arcs = boundaryArcs(run.spec, threads=run.threads)
        writeSvg(svgTernary(arcs, run.spec.describe()), _path(run, 'svg'))
    return 0



def runMonodromy(run: RunConfig) -> int:

    result = monodromy(run.spec, radius=run.radius, n=run.points, threads=run.threads)
    writeJson({'center'   : [0., run.spec.twoH],
               'radius'   : run.radius,
               'points'   : len(result.loop),
               'matrix'   : result.matrix,
               'raw'      : result.raw,
               'residual' : result.residual}, run)
    return 0



def runPolytope(run: RunConfig) -> int:
    """
    Report the place of the system in the parameter space: normalised
    parameters, involution, blow-up chart and its face.
    """

    spec = run.spec
    report: Dict[str, Any] = {}

    if spec.family==Family.ELLIPSOIDAL:
        normalized, record = normalize(spec.e, spec.twoH)
        _, _, a, b = normalized.e
        report.update({'normalized' : list(normalized.e),
                       'alpha'      : record.alpha,
                       'beta'       : record.beta,
                       'involution' : list(involution(a, b)),
                       'hhActions'  : list(parameterActionMap(a, b))})
        chart, flipped = representativeChart(a, b)
        report['flipped'] = flipped
    elif spec.family==Family.PROLATE:
        chart, flipped = representativeChart(1., spec.b)
        report['flipped'] = flipped
    elif spec.family==Family.OBLATE:
        chart = blowup(spec.a, spec.a)
    elif spec.family==Family.LAME:
        f1, f2, f3 = spec.f
        chart = blowup(1., 1., (f2 - f1)/(f3 - f1))
    elif spec.family==Family.SPHERICAL23:
        chart = blowup(1., 1., 0.)
    else:
        chart = None

    if chart is not None:
        report.update({'q' : chart.q, 'r' : chart.r, 'face' : faceOfBlowup(chart)})
    else:
        report['face'] = 'cylindrical'

    if spec.family==Family.PROLATE:
        polygon = semitoricPolygon(spec)
        report.update({'polygon'          : polygon.vertices,
                       'fakeCorner'       : polygon.fakeCorner,
                       'focus'            : polygon.focus,
                       'height'           : polygon.height,
                       'heightQuadrature' : polygon.heightQuadrature})
        if run.svg:
            writeSvg(svgPolygon(polygon.vertices, polygon.fakeCorner, polygon.focus, spec.describe()), _path(run, 'svg'))

    writeJson(report, run)
    return 0



def runSimulate(run: RunConfig) -> int:

    spec = run.spec
    x, y = sampleCotangent(1, getRng(run.seed), spec.twoH)
    p0 = CotangentPoint(x[0], y[0], tol=1e-10)

    if run.flow=='geodesic':
        trajectory = integrateGeodesic(p0, run.duration, run.tol, run.samples, spec)
    else:
        trajectory = integrateReduced(p0.angularMomenta(), buildIntegrals(spec)[0], run.duration, run.tol, run.samples, spec)

    writeCsv(trajectory.toDataFrame(), run)
    drift = trajectory.maxDrift()
    writeJson({'drift.{}'.format(k) : float(v) for k, v in drift.items()}, run)
    return 0



def runClassify(run: RunConfig) -> int:

    spec = run.spec
    report: Dict[str, Any] = {}

    if run.bivector is not None:
        if len(run.bivector)!=6:
            raise ConfigError('Six angular momenta expected, got {}'.format(len(run.bivector)))
        L = np.array(run.bivector, dtype=float)
        value = momentumMap(L, spec)
        report.update({'bivector' : L,
                       'rank'     : momentumMapRank(L, spec),
                       'type'     : classify(L, spec).value})
    else:
        if len(run.value)!=2:
            raise ConfigError('Two values expected, got {}'.format(len(run.value)))
        value = tuple(run.value)

    c = chamber(value, spec)
    report.update({'value'        : list(value.asTuple()) if hasattr(value, 'asTuple') else list(value),
                   'chamber'      : 'Outside' if c==OUTSIDE else str(c.code),
                   'multiplicity' : c.multiplicity,
                   'fibre'        : fibreDescription(value, spec)})

    diagram = bifurcationSet(spec, segments=False)
    d, curve, t = diagram.distance(value)
    report['distance'] = d
    if curve is not None:
        report['closestCurve'] = curve.name
    if run.bivector is None and curve is not None and d<=config['tolBifurcationDistance']*max(1., float(np.max(np.abs(value)))):
        points = criticalPoints(spec, value).lowestRank()
        report.update({'criticalPoint' : points[0],
                       'type'          : classify(points[0], spec).value})

    writeJson(report, run)
    return 0



def runVerify(run: RunConfig) -> int:

    report = verify(run.spec, run.grid, run.duration, run.seed, run.threads)
    writeJson(report.toDict(), run)
    if not report.passed:
        logger.error('Verification failed: {}'.format(', '.join(report.failures())))
        return 1
    return 0



RUNNERS = {'bifurcate' : runBifurcate,
           'actions'   : runActions,
           'monodromy' : runMonodromy,
           'polytope'  : runPolytope,
           'simulate'  : runSimulate,
           'classify'  : runClassify,
           'verify'    : runVerify}



def run(argv: Optional[Sequence[str]]=None) -> int:
    """
    Run one subcommand and return the exit code: 0 on success, 1 when a
    verification fails and 2 on an invalid configuration.
    """

    args = buildParser().parse_args(argv)
    setupLogging(args.verbose, args.quiet)

    try:
        runConfig = loadRunConfig(args)
        return RUNNERS[runConfig.subcommand](runConfig)
    except (ConfigError, DomainError) as e:
        logger.error(str(e))
        return 2



def main() -> None:
    sys.exit(run())
