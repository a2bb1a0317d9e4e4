#!/usr/bin/python3
"""Experiment orchestration and acceptance reports.

An experiment is described by an ExperimentConfig (usually read from a JSON
file), run deterministically, and summarised as tables plus a list of checks
with their thresholds. Reports are written as CSV tables and a JSON summary
that embeds the config and the library version.

Classes:
  ExperimentConfig: Validated description of one experiment run.
  Check: One measured quantity against its acceptance threshold.
  ExperimentResult: Tables, checks and summary of a run.

Error Classes:
  Error: Exception base class.
  ConfigurationError: A config field violates its constraint.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import copy
import glob
import itertools
import json
import logging
import math
import operator
import os
from concurrent import futures

# Third-party modules
import numpy as np

# Package modules
from . import __version__ as VERSION
from . import corpus as corpuslib
from . import discretization
from . import funcnorms
from . import grid as gridlib
from . import group
from . import kernels
from . import splinewavelets
from . import transform
from .libs import table

EXPERIMENTS = ('norms', 'equivalence', 'decay', 'group-scaling', 'coorbit',
               'frames', 'wavelets-verify', 'propwiener')
FORMATS = ('csv', 'json')
KERNEL_PAIRS = ('local-means', 'radial')
DEFAULT_CHECKS = {
    'norms': ('zero', 'variants', 'cross-kernel', 'covariance'),
    'equivalence': ('p-sharp', 'rescaling', 'level-shift'),
    'decay': ('decay-slope', 'spatial-order'),
    'group-scaling': ('exact-scaling', 'bound'),
    'coorbit': ('coorbit',),
    'frames': ('parseval', 'round-trip'),
    'wavelets-verify': ('orthonormality', 'haar', 'moments', 'ranges',
                        'refusal'),
    'propwiener': ('wiener',)}
OPTIONAL_CHECKS = {
    'norms': ('chain', 'fefferman-stein', 'peetre-exterior'),
    'equivalence': ('l-sharp', 'frame-drift'),
    'decay': ('tight-frame',),
    'frames': ('frame-bounds',)}
DEFAULT_CORPUS = {
    'norms': 'mixed-family',
    'equivalence': 'band-family',
    'decay': 'gaussian-family',
    'coorbit': 'dilation-family',
    'frames': 'gaussian-family'}
DEFAULTS = {
    'experiment': None,
    'name': None,
    'dimension': 1,
    'grid': {'extent': 32.0, 'count': 4096},
    'ladder': {'base': 2.0, 'jmin': -2, 'jmax': 5, 'oversampling': 8},
    'lattice': {'alpha': 1.0, 'beta': 2.0, 'jmin': 0, 'jmax': 4},
    'params': [{'s': 0.5, 'p': 2.0, 'q': 2.0, 'a': 2.0, 'scale': 'F',
                'homogeneous': False}],
    'variants': None,
    'kernels': ['local-means', 'radial'],
    'corpus': None,
    'order': 4,
    'checks': None,
    'guard': transform.WRAP_GUARD,
    'seed': 0,
    'workers': 1,
    'output': 'reports',
    'format': 'csv'}

# Acceptance thresholds.
VARIANT_SPREAD = 0.10
COVARIANCE_TOLERANCE = 0.03
COVARIANCE_DILATIONS = (2.0, 4.0)
SEQUENCE_SPREAD = 0.10
EXACT_TOLERANCE = 1e-12
SLOPE_TOLERANCE = 0.1
SPATIAL_ORDER = 6.0
TIGHT_FRAME_TOLERANCE = 0.02
SCALING_TOLERANCE = 0.02
COORBIT_SPREAD = 0.15
FRAME_DRIFT = 0.15
FRAME_TOLERANCE = 1e-4
ORTHONORMALITY_TOLERANCE = 1e-6
HAAR_TOLERANCE = 1e-8
MOMENT_TOLERANCE = 1e-7
FEFFERMAN_STEIN_BOUND = 4.0
PEETRE_EXTERIOR_TOLERANCE = 1e-6

# Experiment constants.
RANDOM_FIELDS = 5
FIELD_VALUES = (0.8, 1.2)
RESCALING = 2.0
CHAIN_DECAY = 0.5
CHAIN_SEQUENCES = 100
CHAIN_LENGTH = 24
CHAIN_SAMPLES = 64
CHAIN_DENSITY = 0.3
CHAIN_EXPONENTS = ((2.0, 2.0), (0.5, 1.0), (3.0, 0.75))
FEFFERMAN_STEIN_EXPONENTS = ((2.0, 2.0), (3.0, 2.0))
PEETRE_EXTERIOR_LADDER = gridlib.ScaleLadder(2.0, -2, 0, 1)
DECAY_CASES = ((1, 1), (2, 1), (1, 2))
DECAY_PHI0_WIDTH = 4.0
DECAY_GRID_2D = (32.0, 1024)
DECAY_OVERSAMPLING_2D = 2
EXACT_SCALINGS = ((group.L_SPACE, group.LEFT, 0.25),
                  (group.L_SPACE, group.RIGHT, 0.5),
                  (group.P_SPACE, group.LEFT, 0.25))
SCALING_DILATIONS = (0.5, 2.0)
BOUNDED_SCALINGS = ((group.P_SPACE, group.RIGHT, 1.0, 2.0),
                    (group.P_SPACE, group.RIGHT, 0.0, 0.5),
                    (group.T_SPACE, group.RIGHT, 0.0, 2.0))
COORBIT_CASES = ((funcnorms.B_SCALE, group.L_SPACE, 1),
                 (funcnorms.F_SCALE, group.T_SPACE, 3),
                 (funcnorms.F_SCALE, group.P_SPACE, 2))
INNER_SHIFTS = 5
RANGE_CASES = ((3, 1, 2.0, 2.0, 'B', (-1.5, 1.5)),
               (3, 1, 2.0, 2.0, 'F', (-1.0, 1.5)),
               (1, 1, 1.0, 2.0, 'B', None),
               (3, 2, 2.0, 2.0, 'B', (-1.0, 1.0)),
               (3, 2, 2.0, 2.0, 'F', (0.0, 1.0)))
REFUSED_PARAMS = (1, 0.9)
WIENER_BOXES = (2, 3, 4, 5, 6)
WIENER_OFFSETS = (-2.0, 0.0, 2.0)
UNGUARDED_PAIRS = ('radial',)
LOGGER = logging.getLogger('ucoorbit_harness')


class Error(gridlib.Error):
  """Superclass used for inheritance and external exception handling."""


class ConfigurationError(Error, funcnorms.ConfigurationError):
  """A config field violates its constraint.

  Members:
    @ field: str
    @ constraint: str
  """

  def __init__(self, field, constraint):
    super().__init__('config field %r: %s' % (field, constraint))
    self.field = field
    self.constraint = constraint


# ##############################################################################
# Configuration
#
def _Float(value, field):
  try:
    return float(value)
  except (TypeError, ValueError):
    raise ConfigurationError(field, 'expected a number, got %r' % (value,))


def _Integer(value, field):
  if isinstance(value, bool) or not isinstance(value, (int, float)) or (
      int(value) != value):
    raise ConfigurationError(field, 'expected an integer, got %r' % (value,))
  return int(value)


def _Mapping(value, field, keys):
  if not isinstance(value, dict):
    raise ConfigurationError(field, 'expected an object with keys %s' % (
        ', '.join(keys)))
  unknown = sorted(set(value) - set(keys))
  if unknown:
    raise ConfigurationError(field, 'unknown keys %s' % ', '.join(unknown))
  return value


class ExperimentConfig(object):
  """One experiment: what to run, on which grid, with which parameters.

  Members:
    @ experiment: str
      One of EXPERIMENTS.
    @ name: str
      Report file prefix, the experiment by default.
    @ dimension: int
    @ grid: GridSpec
    @ ladder: ScaleLadder
      Must lie in the resolvable window of the grid.
    @ lattice: LatticeSpec
    @ params: list of NormParams
      The parameter sweep; variants are set per experiment.
    @ variants: list of int or None
    @ kernels: list of str
      Kernel pairs of the norm experiments, from KERNEL_PAIRS.
    @ corpus: str
      Corpus selector, DEFAULT_CORPUS of the experiment when absent.
    @ order: int
      Spline order m, or the largest order verified.
    @ checks: tuple of str
    @ guard: float or None
      Wrap-around guard of the transforms.
    @ seed: int
    @ workers: int
    @ output: str
    @ format: str
  """

  def __init__(self, data):
    self._data = data
    field = 'experiment'
    self.experiment = data['experiment']
    if self.experiment not in EXPERIMENTS:
      raise ConfigurationError(field, 'must be one of %s, got %r' % (
          ', '.join(EXPERIMENTS), self.experiment))
    self.name = data['name'] or self.experiment
    if not isinstance(self.name, str) or os.sep in self.name:
      raise ConfigurationError('name', 'expected a file name, got %r' % (
          self.name,))
    self.dimension = _Integer(data['dimension'], 'dimension')
    if self.dimension not in (1, 2):
      raise ConfigurationError('dimension', 'must be 1 or 2, got %d' % (
          self.dimension,))
    grid = _Mapping(data['grid'], 'grid', ('extent', 'count'))
    try:
      self.grid = gridlib.GridSpec(
          self.dimension, _Float(grid.get('extent', 32.0), 'grid.extent'),
          _Integer(grid.get('count', 4096), 'grid.count'))
    except gridlib.InvalidInputError as error:
      raise ConfigurationError('grid', str(error))
    ladder = _Mapping(data['ladder'], 'ladder',
                      ('base', 'jmin', 'jmax', 'oversampling'))
    try:
      self.ladder = gridlib.ScaleLadder(
          _Float(ladder.get('base', 2.0), 'ladder.base'),
          _Integer(ladder.get('jmin', -2), 'ladder.jmin'),
          _Integer(ladder.get('jmax', 5), 'ladder.jmax'),
          _Integer(ladder.get('oversampling', 8), 'ladder.oversampling'))
      transform.CheckScales(self.grid, self.ladder.Scales())
    except (gridlib.InvalidInputError, transform.OutOfRangeError) as error:
      raise ConfigurationError('ladder', str(error))
    lattice = _Mapping(data['lattice'], 'lattice',
                       ('alpha', 'beta', 'jmin', 'jmax'))
    try:
      self.lattice = discretization.LatticeSpec(
          _Float(lattice.get('alpha', 1.0), 'lattice.alpha'),
          _Float(lattice.get('beta', 2.0), 'lattice.beta'),
          _Integer(lattice.get('jmin', 0), 'lattice.jmin'),
          _Integer(lattice.get('jmax', 4), 'lattice.jmax'),
          dimension=self.dimension)
    except (funcnorms.ConfigurationError,
            gridlib.InvalidInputError) as error:
      raise ConfigurationError('lattice', str(error))
    self.params = self._Params(data['params'])
    self.variants = data['variants']
    if self.variants is not None:
      if not isinstance(self.variants, list) or not self.variants:
        raise ConfigurationError('variants', 'expected a non-empty list')
      self.variants = [_Integer(variant, 'variants')
                       for variant in self.variants]
      for params in self.params:
        for variant in self.variants:
          if variant not in funcnorms.VARIANTS[params.scale]:
            raise ConfigurationError('variants', 'variant %d does not exist '
                                     'for the %s-scale' % (variant,
                                                           params.scale))
    self.kernels = data['kernels']
    if (not isinstance(self.kernels, list) or not 1 <= len(self.kernels) <= 2
        or set(self.kernels) - set(KERNEL_PAIRS)):
      raise ConfigurationError('kernels', 'expected one or two of %s' % (
          ', '.join(KERNEL_PAIRS)))
    self.corpus = data['corpus'] or DEFAULT_CORPUS.get(self.experiment)
    if self.corpus is not None and self.corpus not in corpuslib.SELECTORS:
      raise ConfigurationError('corpus', 'must be one of %s, got %r' % (
          ', '.join(corpuslib.SELECTORS), self.corpus))
    self.order = _Integer(data['order'], 'order')
    if not 1 <= self.order <= splinewavelets.MAX_ORDER:
      raise ConfigurationError('order', 'must lie in [1, %d], got %d' % (
          splinewavelets.MAX_ORDER, self.order))
    known = (DEFAULT_CHECKS[self.experiment] +
             OPTIONAL_CHECKS.get(self.experiment, ()))
    checks = data['checks']
    if checks is None:
      self.checks = DEFAULT_CHECKS[self.experiment]
    elif (not isinstance(checks, list) or not checks or
          set(checks) - set(known)):
      raise ConfigurationError('checks', 'expected a non-empty list from %s' % (
          ', '.join(known)))
    else:
      self.checks = tuple(checks)
    self.guard = data['guard']
    if self.guard is not None:
      self.guard = _Float(self.guard, 'guard')
      if not self.guard > 0:
        raise ConfigurationError('guard', 'must be positive or null')
    self.seed = _Integer(data['seed'], 'seed')
    self.workers = _Integer(data['workers'], 'workers')
    if self.workers < 1:
      raise ConfigurationError('workers', 'must be at least 1')
    self.output = str(data['output'])
    self.format = data['format']
    if self.format not in FORMATS:
      raise ConfigurationError('format', 'must be one of %s, got %r' % (
          ', '.join(FORMATS), self.format))

  def _Params(self, sweep):
    if not isinstance(sweep, list) or not sweep:
      raise ConfigurationError('params', 'expected a non-empty list')
    params = []
    keys = ('s', 'p', 'q', 'a', 'scale', 'homogeneous')
    for index, point in enumerate(sweep):
      field = 'params[%d]' % index
      point = _Mapping(point, field, keys)
      try:
        params.append(funcnorms.NormParams(
            _Float(point.get('s', 0.0), field + '.s'),
            _Float(point.get('p', 2.0), field + '.p'),
            _Float(point.get('q', 2.0), field + '.q'),
            _Float(point.get('a', 0.0), field + '.a'),
            point.get('scale', funcnorms.F_SCALE),
            bool(point.get('homogeneous', False))))
      except funcnorms.ConfigurationError as error:
        if isinstance(error, ConfigurationError):
          raise
        raise ConfigurationError(field, str(error))
    return params

  def __repr__(self):
    return 'ExperimentConfig(%s, seed=%d)' % (self.experiment, self.seed)

  @classmethod
  def FromDict(cls, data, defaults=None):
    """Fills the defaults and validates.

    Arguments:
      @ data: dict
        The config fields.
      % defaults: dict ~~ None
        Run-wide values that sit between DEFAULTS and `data`.

    Raises:
      ConfigurationError: unknown fields or a violated constraint.
    """
    if not isinstance(data, dict):
      raise ConfigurationError('config', 'expected a JSON object')
    unknown = sorted(set(data) - set(DEFAULTS))
    if unknown:
      raise ConfigurationError(unknown[0], 'unknown field, expected one of %s'
                               % ', '.join(sorted(DEFAULTS)))
    if 'experiment' not in data:
      raise ConfigurationError('experiment', 'is required')
    filled = copy.deepcopy(DEFAULTS)
    filled.update(copy.deepcopy(defaults or {}))
    filled.update(copy.deepcopy(data))
    return cls(filled)

  @classmethod
  def FromFile(cls, path, defaults=None):
    """Reads a JSON config file.

    Raises:
      ConfigurationError: unreadable file or invalid content.
    """
    try:
      with open(path) as config_file:
        data = json.load(config_file)
    except OSError as error:
      raise ConfigurationError('config', 'cannot read %s: %s' % (
          path, error.strerror))
    except ValueError as error:
      raise ConfigurationError('config', '%s is not valid JSON: %s' % (
          path, error))
    return cls.FromDict(data, defaults)

  def WithOverrides(self, **overrides):
    """A new config with command-line style overrides applied.

    Recognised keys: experiment, dimension, s, p, q, a, variant, alpha, beta,
    order, seed, format, output, workers. None values are ignored.
    """
    data = copy.deepcopy(self._data)
    overrides = {key: value for key, value in overrides.items()
                 if value is not None}
    for key in ('s', 'p', 'q', 'a'):
      if key in overrides:
        value = overrides.pop(key)
        for point in data['params']:
          point[key] = value
    if 'variant' in overrides:
      data['variants'] = [overrides.pop('variant')]
    for key in ('alpha', 'beta'):
      if key in overrides:
        data['lattice'] = dict(data['lattice'], **{key: overrides.pop(key)})
    unknown = sorted(set(overrides) - set(DEFAULTS))
    if unknown:
      raise ConfigurationError(unknown[0], 'cannot be overridden')
    data.update(overrides)
    return ExperimentConfig(data)

  def AsDict(self):
    """The full config, defaults included, as plain JSON values."""
    return copy.deepcopy(self._data)

  def Corpus(self, grid=None):
    return corpuslib.MakeCorpus(self.corpus, grid or self.grid)

  def Map(self, function, items):
    """Applies `function` to every item, in order, over the worker pool."""
    items = list(items)
    if self.workers > 1 and len(items) > 1:
      with futures.ThreadPoolExecutor(max_workers=self.workers) as pool:
        return list(pool.map(function, items))
    return [function(item) for item in items]


# ##############################################################################
# Checks and results
#
RELATIONS = {'<=': operator.le, '>=': operator.ge, '>': operator.gt}


class Check(object):
  """One measured quantity against its acceptance threshold.

  Members:
    @ name: str
    @ measured: float
    @ threshold: float
    @ relation: str
      How measured must compare with threshold: '<=', '>=' or '>'.
    @ detail: str
    @ passed: bool
  """
  __slots__ = ('name', 'measured', 'threshold', 'relation', 'detail', 'passed')

  def __init__(self, name, measured, threshold, detail='', relation='<='):
    self.name = name
    self.measured = float(measured)
    self.threshold = float(threshold)
    self.relation = relation
    self.detail = detail
    self.passed = bool(RELATIONS[relation](self.measured, self.threshold))

  def __repr__(self):
    return 'Check(%s %s: %.6g %s %.6g, %s)' % (
        self.name, self.detail, self.measured, self.relation, self.threshold,
        'pass' if self.passed else 'FAIL')

  def AsDict(self):
    return {'check': self.name, 'detail': self.detail,
            'measured': self.measured, 'relation': self.relation,
            'threshold': self.threshold, 'passed': self.passed}


class ExperimentResult(object):
  """Tables, checks and summary of one run.

  Members:
    @ config: ExperimentConfig
    @ tables: list of Table
    @ checks: list of Check
    @ summary: dict
    % refusal: str ~~ None
      Why the experiment refused to run; a refused run has no checks.
  """

  def __init__(self, config, tables, checks, summary=None, refusal=None):
    self.config = config
    self.tables = list(tables)
    self.checks = list(checks)
    self.summary = summary or {}
    self.refusal = refusal

  @classmethod
  def Refused(cls, config, error):
    """The failed result of a run that raised `error`."""
    return cls(config, [], [], refusal='%s: %s' % (type(error).__name__, error))

  def __repr__(self):
    if self.refusal:
      state = 'refused'
    else:
      state = 'passed' if self.passed else 'failed'
    return 'ExperimentResult(%s, %d checks, %s)' % (
        self.config.name, len(self.checks), state)

  @property
  def passed(self):
    return self.refusal is None and all(check.passed for check in self.checks)

  def ChecksTable(self):
    checks = table.Table('checks', ['check', 'detail', 'measured', 'relation',
                                    'threshold', 'passed'])
    checks.Extend(check.AsDict() for check in self.checks)
    return checks

  def AsDict(self):
    return {'name': self.config.name,
            'experiment': self.config.experiment,
            'version': VERSION,
            'config': self.config.AsDict(),
            'passed': self.passed,
            'refusal': self.refusal,
            'checks': [check.AsDict() for check in self.checks],
            'summary': self.summary}


def _Inverse(exponent):
  return 0.0 if exponent == gridlib.INFINITY else 1 / exponent


def _Spread(values):
  """max/min - 1 over positive values."""
  values = [value for value in values if value is not None]
  if not values:
    return 0.0
  if min(values) <= 0:
    return math.inf
  return max(values) / min(values) - 1


def _Deviation(values):
  """Largest |value/mean - 1|."""
  mean = float(np.mean(values))
  if mean == 0:
    return math.inf
  return max(abs(value / mean - 1) for value in values)


def _Label(params):
  return '%s s=%g p=%g q=%g%s' % (params.scale, params.s, params.p, params.q,
                                  ' homogeneous' if params.homogeneous else '')


# ##############################################################################
# Norm experiments
#
def KernelPairs(names, grid):
  """The (phi0, phi) pairs named in the config.

  local-means: the unit Gaussian and its Laplacian; radial: phi_0 a Gaussian of
  width sqrt(2) in frequency form and phi = phi_0 - phi_0(2 .).
  """
  pairs = []
  for name in names:
    if name == 'local-means':
      gaussian = kernels.GaussianKernel(grid)
      pairs.append(kernels.BuildLocalMeans(gaussian, gaussian, 1))
    else:
      profile = kernels.GaussianKernel(grid, width=math.sqrt(2))
      pairs.append(kernels.BuildRadialKernel(profile, 1))
  return pairs


def PairGuards(names, guard):
  """Wrap guard of each named pair.

  The radial pair runs unguarded; its dilated profile reaches the box edge at
  the coarse end of the ladder.
  """
  return [None if name in UNGUARDED_PAIRS else guard for name in names]


def _NormChecks(config, wanted, tables, checks, summary):
  corpus = config.Corpus()
  pairs = KernelPairs(config.kernels, config.grid)
  guards = PairGuards(config.kernels, config.guard)
  values = table.Table('values')
  for params in config.params:
    label = _Label(params)
    reports = config.Map(lambda member: funcnorms.NormReportFor(
        member.signal, pairs, params, config.ladder, config.variants,
        guards), corpus)
    for member, report in zip(corpus, reports):
      for row in report.Rows():
        values.AddRow(dict(member=member.name, dilation=member.dilation,
                           shift=member.shift, s=params.s, p=params.p,
                           q=params.q, a=params.a,
                           homogeneous=params.homogeneous, **row))
    if all(report.all_zero for report in reports):
      if 'zero' in wanted:
        largest = max(max(report.values.values()) for report in reports)
        checks.append(Check('zero', largest, 0.0, label))
      continue
    members = [(member, report) for member, report in zip(corpus, reports)
               if not report.all_zero]
    variants = sorted(members[0][1].values)
    reference = funcnorms.REFERENCE_VARIANT[params.scale]
    if 'variants' in wanted:
      for variant in variants:
        if variant != reference:
          checks.append(Check('variants', _Spread(
              [report.ratios[variant] for _member, report in members]),
                              VARIANT_SPREAD, '%s v%d/v%d' % (
                                  label, variant, reference)))
    if 'cross-kernel' in wanted and len(pairs) == 2:
      for variant in variants:
        checks.append(Check('cross-kernel', _Spread(
            [report.cross_kernel[variant] for _member, report in members]),
                            VARIANT_SPREAD, '%s v%d' % (label, variant)))
    if 'covariance' in wanted and params.homogeneous:
      _Covariance(config, params, members, variants, checks)
  tables.append(values)
  summary['members'] = corpus.Names()


def _Covariance(config, params, members, variants, checks):
  """||f(r .)|| against r^(s - d/p) ||f|| for the dilated members."""
  base = {member.shift: report for member, report in members
          if member.dilation == 1.0}
  exponent = params.s - config.dimension * _Inverse(params.p)
  for member, report in members:
    if member.dilation not in COVARIANCE_DILATIONS or member.shift not in base:
      continue
    for variant in variants:
      expected = member.dilation ** exponent * base[member.shift].values[variant]
      checks.append(Check('covariance',
                          abs(report.values[variant] / expected - 1),
                          COVARIANCE_TOLERANCE, '%s v%d r=%g' % (
                              _Label(params), variant, member.dilation)))


def _ChainChecks(config, checks):
  """The chain bound on random sparse non-negative sequences of functions."""
  rng = np.random.default_rng(config.seed)
  grid = gridlib.GridSpec(1, 1.0, CHAIN_SAMPLES)
  shape = (CHAIN_LENGTH, CHAIN_SAMPLES)
  rows = table.Table('chain')
  for p, q in CHAIN_EXPONENTS:
    mixed = gridlib.MixedNormParams(p, q)
    exponent = min(1.0, p, q)
    bound = transform.ChainBound(CHAIN_DECAY, exponent)
    worst = 0.0
    for _index in range(CHAIN_SEQUENCES):
      sequence = rng.random(shape) * (rng.random(shape) < CHAIN_DENSITY)
      smoothed = transform.WeightedChainSmoother(sequence, CHAIN_DECAY)
      before = [gridlib.SampledSignal(grid, row) for row in sequence]
      after = [gridlib.SampledSignal(grid, row) for row in smoothed]
      for norm in (gridlib.LqOfLp, gridlib.LpOfLq):
        denominator = norm(before, mixed)
        if denominator:
          worst = max(worst, norm(after, mixed) / denominator)
    rows.AddRow(p=p, q=q, r=exponent, delta=CHAIN_DECAY, bound=bound,
                worst=worst)
    checks.append(Check('chain', worst / bound, 1.0, 'p=%g q=%g r=%g' % (
        p, q, exponent)))
  return rows


def _FeffermanSteinChecks(config, checks):
  signals = config.Corpus().Signals()
  rows = table.Table('fefferman_stein')
  for p, q in FEFFERMAN_STEIN_EXPONENTS:
    ratio = transform.FeffermanSteinRatio(signals,
                                          gridlib.MixedNormParams(p, q))
    rows.AddRow(p=p, q=q, members=len(signals), ratio=ratio)
    checks.append(Check('fefferman-stein', ratio, FEFFERMAN_STEIN_BOUND,
                        'p=%g q=%g' % (p, q)))
  return rows


def _PeetreExteriorChecks(config, checks):
  """Peetre maximal functions of W_g f on the box against a box twice as wide,
  for every exponent a > d of the config."""
  dimension = config.grid.dimension
  powers = sorted({params.a for params in config.params
                   if params.a > dimension}) or [dimension + 1.0]
  analyzer = kernels.MexicanHat(config.grid)
  corpus = config.Corpus()
  rows = table.Table('peetre_exterior')
  for power in powers:
    defects = config.Map(lambda member: transform.PeetreBoxDefect(
        member.signal, analyzer, PEETRE_EXTERIOR_LADDER, power, config.guard),
                         corpus)
    for member, defect in zip(corpus, defects):
      rows.AddRow(member=member.name, a=power, defect=defect)
    checks.append(Check('peetre-exterior', max(defects),
                        PEETRE_EXTERIOR_TOLERANCE, 'a=%g' % power))
  return rows


def _Norms(config):
  tables, checks, summary = [], [], {}
  wanted = set(config.checks)
  if wanted & {'zero', 'variants', 'cross-kernel', 'covariance'}:
    _NormChecks(config, wanted, tables, checks, summary)
  if 'chain' in wanted:
    tables.append(_ChainChecks(config, checks))
  if 'fefferman-stein' in wanted:
    tables.append(_FeffermanSteinChecks(config, checks))
  if 'peetre-exterior' in wanted:
    tables.append(_PeetreExteriorChecks(config, checks))
  return tables, checks, summary


# ##############################################################################
# Sequence spaces and frame norms
#
def RandomField(lattice, rng, extent, species=None):
  """Coefficients uniform in FIELD_VALUES on every cube inside [-X/4, X/4)^d,
  at every level of the lattice."""
  field = discretization.CoeffField(lattice)
  species = species or (1,) * lattice.dimension
  low, high = FIELD_VALUES
  for level in lattice.Levels():
    count = int(extent / 4 / lattice.Width(level))
    for shift in itertools.product(range(-count, count),
                                   repeat=lattice.dimension):
      field[species, level, shift] = rng.uniform(low, high)
  return field


def _SequenceChecks(config, wanted, tables, checks):
  params = config.params[0]
  s, p, q = params.s, params.p, params.q
  peetre = group.GroupNormParams(s, p, q, params.a, group.P_SPACE)
  lebesgue = group.GroupNormParams(s, p, q, space=group.L_SPACE)
  rng = np.random.default_rng(config.seed)
  fields = [RandomField(config.lattice, rng, config.grid.extent)
            for _index in range(RANDOM_FIELDS)]
  beta = config.lattice.beta
  level_factor = beta ** (s + config.dimension * (_Inverse(q) - _Inverse(p)))

  def Measure(field):
    embedded = discretization.IndicatorEmbed(field, config.grid, config.ladder)
    ratio = (group.GroupNorm(embedded, peetre) /
             discretization.PSharpNorm(field, s, p, q))
    rescaled = field * RESCALING
    rescaled_ratio = (group.GroupNorm(discretization.IndicatorEmbed(
        rescaled, config.grid, config.ladder), peetre) /
                      discretization.PSharpNorm(rescaled, s, p, q))
    l_sharp = discretization.LSharpNorm(field, s, p, q)
    shifted = discretization.LSharpNorm(field.LevelShifted(1), s, p, q)
    return {'coefficients': len(field), 'p_ratio': ratio,
            'rescaled_p_ratio': rescaled_ratio,
            'l_ratio': group.GroupNorm(embedded, lebesgue) / l_sharp,
            'level_shift': shifted / l_sharp, 'expected_shift': level_factor}

  rows = table.Table('sequence')
  for index, row in enumerate(config.Map(Measure, fields)):
    rows.AddRow(dict(field=index, **row))
  tables.append(rows)
  label = 's=%g p=%g q=%g a=%g' % (s, p, q, params.a)
  if 'p-sharp' in wanted:
    checks.append(Check('p-sharp', _Deviation(rows.Column('p_ratio')),
                        SEQUENCE_SPREAD, label))
  if 'rescaling' in wanted:
    checks.append(Check('rescaling', max(
        abs(after / before - 1) for before, after in zip(
            rows.Column('p_ratio'), rows.Column('rescaled_p_ratio'))),
                        EXACT_TOLERANCE, '%s lambda=%g' % (label, RESCALING)))
  if 'level-shift' in wanted:
    checks.append(Check('level-shift', max(
        abs(ratio / level_factor - 1) for ratio in rows.Column('level_shift')),
                        EXACT_TOLERANCE, label))
  if 'l-sharp' in wanted:
    checks.append(Check('l-sharp', _Deviation(rows.Column('l_ratio')),
                        EXACT_TOLERANCE * 100, label))


def _FrameDrift(config, tables, checks):
  """Coorbit norm over the frame sequence norm across the corpus."""
  system = splinewavelets.SplineSystem(
      config.order, gridlib.GridSpec(1, config.grid.extent, config.grid.count))
  corpus = config.Corpus()
  rows = table.Table('frame_norms')
  for params in config.params:
    reports = config.Map(lambda member: discretization.FrameNormEquivalence(
        member.signal, system, config.lattice, params, config.ladder,
        config.guard), corpus)
    for member, report in zip(corpus, reports):
      rows.AddRow(dict(member=member.name, dilation=member.dilation,
                       **report.AsDict()))
    checks.append(Check('frame-drift', _Spread(
        [report.ratio for report in reports]), FRAME_DRIFT, '%s m=%d' % (
            _Label(params), config.order)))
  tables.append(rows)


def _Equivalence(config):
  tables, checks = [], []
  wanted = set(config.checks)
  if wanted & {'p-sharp', 'rescaling', 'level-shift', 'l-sharp'}:
    _SequenceChecks(config, wanted, tables, checks)
  if 'frame-drift' in wanted:
    _FrameDrift(config, tables, checks)
  return tables, checks, {}


# ##############################################################################
# Transform experiments
#
def DerivativeKernel(grid):
  """The partial derivative along x_1 of the unit Gaussian: one vanishing
  moment, Schwartz decay."""
  symbol = lambda *xi: 1j * xi[0] * np.exp(-sum(c ** 2 for c in xi) / 2)
  return kernels.Kernel(grid, symbol=symbol, name='gaussian-d1',
                        role=kernels.PHI, moment_order=1)


def _DecaySetting(config, dimension):
  """Grid, ladder and wrap guard of one decay case.

  The d = 2 case runs on its own grid, where phi_0 still decays to rounding
  level at the box edge and its periodic images stay far below the fitted
  envelope, so it runs unguarded.
  """
  if dimension == 1:
    grid = gridlib.GridSpec(1, config.grid.extent, config.grid.count)
    return grid, config.ladder, config.guard
  grid = gridlib.GridSpec(2, *DECAY_GRID_2D)
  ladder = gridlib.ScaleLadder.Covering(config.ladder.base, 2 * grid.spacing,
                                        1.0, DECAY_OVERSAMPLING_2D)
  return grid, ladder, None


def _Decay(config):
  tables, checks, summary = [], [], {}
  wanted = set(config.checks)
  if wanted & {'decay-slope', 'spatial-order'}:
    profiles = table.Table('decay')
    for order, dimension in DECAY_CASES:
      grid, ladder, guard = _DecaySetting(config, dimension)
      if order == 1:
        phi = DerivativeKernel(grid)
      else:
        phi = kernels.MexicanHat(grid).WithRole(kernels.PHI)
      phi0 = kernels.GaussianKernel(grid, DECAY_PHI0_WIDTH)
      profile = transform.CwtDecayProfile(phi, phi0, ladder, guard)
      detail = 'L=%d d=%d' % (order, dimension)
      found = []
      if 'decay-slope' in wanted:
        found.append(Check('decay-slope',
                           abs(profile.scale_slope - profile.expected),
                           SLOPE_TOLERANCE, detail))
      if 'spatial-order' in wanted:
        found.append(Check('spatial-order', profile.spatial_order,
                           SPATIAL_ORDER, detail, '>='))
      row = profile.AsDict()
      low, high = row.pop('window')
      profiles.AddRow(dict(L=order, d=dimension, phi=phi.name, phi0=phi0.name,
                           t_low=low, t_high=high,
                           passed=all(check.passed for check in found), **row))
      checks.extend(found)
    tables.append(profiles)
    summary['decay'] = [dict(row) for row in profiles]
  if 'tight-frame' in wanted:
    analyzer = kernels.MexicanHat(config.grid)
    corpus = config.Corpus()
    ratios = config.Map(lambda member: transform.TightFrameRatio(
        member.signal, analyzer, config.ladder, config.guard), corpus)
    frames = table.Table('tight_frame')
    for member, ratio in zip(corpus, ratios):
      frames.AddRow(member=member.name, analyzer=analyzer.name, ratio=ratio)
      checks.append(Check('tight-frame', abs(ratio - 1), TIGHT_FRAME_TOLERANCE,
                          member.name))
    tables.append(frames)
  return tables, checks, summary


def LogGaussian(*arguments):
  """F(x, t) = e^(-|x|^2) e^(-4 (log t)^2), negligible at both ladder ends."""
  *points, scale = arguments
  return (np.exp(-sum(c ** 2 for c in points)) *
          np.exp(-4 * np.log(scale) ** 2))


def _GroupScaling(config):
  wanted = set(config.checks)
  function = group.SampleGroupFunction(LogGaussian, config.grid, config.ladder)
  cases = []
  if 'exact-scaling' in wanted:
    cases.extend((space, side, shift, dilation)
                 for space, side, shift in EXACT_SCALINGS
                 for dilation in SCALING_DILATIONS)
  if 'bound' in wanted:
    cases.extend(BOUNDED_SCALINGS)
  rows = table.Table('scaling')
  checks = []
  for params in config.params:
    spaces = {space: group.GroupNormParams(params.s, params.p, params.q,
                                           params.a, space)
              for space in group.SPACES}
    results = config.Map(lambda case: group.TranslationScalingCheck(
        function, spaces[case[0]], case[2], case[3], case[1]), cases)
    for result in results:
      rows.AddRow(dict(s=params.s, p=params.p, q=params.q, bound=result.bound,
                       **result.AsDict()))
      detail = '%s-%s z=%g r=%g s=%g p=%g q=%g' % (
          result.space, result.side, result.shift, result.dilation, params.s,
          params.p, params.q)
      if result.bound:
        checks.append(Check('bound', result.ratio, 1.0, detail))
      else:
        checks.append(Check('exact-scaling', abs(result.ratio - 1),
                            SCALING_TOLERANCE, detail))
  return [rows], checks, {}


def _Coorbit(config):
  corpus = config.Corpus()
  analyzer = kernels.MexicanHat(config.grid)
  rows = table.Table('coorbit')
  checks = []
  for params in config.params:
    for scale, space, variant in COORBIT_CASES:
      display = funcnorms.NormParams(params.s, params.p, params.q, params.a,
                                     scale, True, variant)
      reference = display.WithVariant(funcnorms.REFERENCE_VARIANT[scale])
      a = params.a if space == group.P_SPACE else 0.0

      def Measure(member, display=display, reference=reference, a=a,
                  space=space):
        coorbit = group.CoorbitNorm(member.signal, analyzer, display, a,
                                    config.ladder, space, config.guard)
        shown = funcnorms.Norm(member.signal, analyzer, analyzer, display,
                               config.ladder, config.guard)
        direct = funcnorms.Norm(member.signal, analyzer, analyzer, reference,
                                config.ladder, config.guard)
        return coorbit, shown, direct

      ratios = []
      for member, (coorbit, shown, direct) in zip(
          corpus, config.Map(Measure, corpus)):
        ratio = coorbit / direct if direct else None
        ratios.append(ratio)
        rows.AddRow(member=member.name, dilation=member.dilation, s=params.s,
                    p=params.p, q=params.q, a=a, scale=scale, space=space,
                    variant=variant, coorbit=coorbit, display=shown,
                    direct=direct, ratio=ratio,
                    display_ratio=coorbit / shown if shown else None)
      checks.append(Check('coorbit', _Spread(ratios), COORBIT_SPREAD,
                          '%s/%s s=%g p=%g q=%g' % (scale, space, params.s,
                                                    params.p, params.q)))
  return [rows], checks, {}


# ##############################################################################
# Wavelet frames
#
def _Frames(config):
  wanted = set(config.checks)
  system = splinewavelets.SplineSystem(
      config.order, gridlib.GridSpec(1, config.grid.extent, config.grid.count))
  corpus = config.Corpus()

  def Measure(member):
    norm = gridlib.LpNorm(member.signal, 2)
    if not norm:
      return None
    field = discretization.FrameCoefficients(member.signal, system,
                                             config.lattice)
    restored = discretization.AtomicSynthesis(field, system, config.grid)
    return (len(field), field.Energy() / norm ** 2,
            gridlib.LpNorm(restored - member.signal, 2) / norm)

  rows = table.Table('frames')
  checks = []
  for member, result in zip(corpus, config.Map(Measure, corpus)):
    if result is None:
      LOGGER.warning('frame round trip skips the zero member %s', member.name)
      continue
    count, energy, error = result
    rows.AddRow(member=member.name, order=config.order, coefficients=count,
                energy_ratio=energy, relative_error=error)
    if 'parseval' in wanted:
      checks.append(Check('parseval', abs(energy - 1), FRAME_TOLERANCE,
                          member.name))
    if 'round-trip' in wanted:
      checks.append(Check('round-trip', error, FRAME_TOLERANCE, member.name))
  tables = [rows]
  if 'frame-bounds' in wanted:
    signals = corpuslib.MakeCorpus('band-family', config.grid).Signals()
    lower, upper = discretization.FrameBounds(system, config.lattice, signals,
                                              config.workers)
    bounds = table.Table('frame_bounds')
    bounds.AddRow(alpha=config.lattice.alpha, beta=config.lattice.beta,
                  jmin=config.lattice.jmin, jmax=config.lattice.jmax,
                  lower=lower, upper=upper)
    tables.append(bounds)
    checks.append(Check('frame-bounds', lower, 0.0, 'alpha=%g beta=%g' % (
        config.lattice.alpha, config.lattice.beta), '>'))
  return tables, checks, {}


def Haar(x):
  """1 on [0, 1/2), -1 on [1/2, 1), 0 elsewhere."""
  return np.where((x >= 0) & (x < 0.5), 1.0,
                  np.where((x >= 0.5) & (x < 1), -1.0, 0.0))


def _MomentDefect(system):
  """Largest |int x^l psi_m| / ||psi_m||_1 over l = 0 .. m-1."""
  low, high = system.Support(1)
  mass = splinewavelets.CellQuadrature(
      lambda x: np.abs(system.Wavelet(x)), low, high, 0.5, system.order)
  worst = 0.0
  for power in range(system.order):
    signed = splinewavelets.CellQuadrature(
        lambda x: x ** power * system.Wavelet(x), low, high, 0.5,
        system.order + power)
    worst = max(worst, abs(signed) / mass)
  return worst


def _Refused(grid, system, lattice, ladder):
  """Whether the frame norm equivalence refuses m = 1, s = 0.9 on the grid."""
  order, smoothness = REFUSED_PARAMS
  params = funcnorms.NormParams(smoothness, 2, 2, 1.0, funcnorms.F_SCALE)
  signal = gridlib.SampledSignal.Evaluate(grid, corpuslib.Gaussian())
  try:
    discretization.FrameNormEquivalence(signal, system, lattice, params,
                                        ladder)
  except discretization.WindowRangeError as error:
    LOGGER.debug('m=%d refused as expected: %s', order, error)
    return True
  return False


def _WaveletsVerify(config):
  wanted = set(config.checks)
  line = gridlib.GridSpec(1, config.grid.extent, config.grid.count)
  systems = config.Map(lambda order: splinewavelets.SplineSystem(order, line),
                       range(1, config.order + 1))
  splines = table.Table('splines')
  checks = []
  for system in systems:
    order = system.order
    row = {'order': order}
    if 'orthonormality' in wanted:
      defect = 0.0
      for species in (0, 1):
        for shift in range(-INNER_SHIFTS, INNER_SHIFTS + 1):
          inner = system.AtomInner(((species,), 0, (0,)),
                                   ((species,), 0, (shift,)))
          defect = max(defect, abs(inner - float(shift == 0)))
      row['orthonormality_defect'] = defect
      checks.append(Check('orthonormality', defect, ORTHONORMALITY_TOLERANCE,
                          'm=%d |k|<=%d' % (order, INNER_SHIFTS)))
    if 'moments' in wanted:
      row['moment_defect'] = _MomentDefect(system)
      checks.append(Check('moments', row['moment_defect'], MOMENT_TOLERANCE,
                          'm=%d l<=%d' % (order, order - 1)))
    if 'haar' in wanted and order == 1:
      axis = line.Axis()
      row['haar_defect'] = float(np.max(np.abs(-system.Wavelet(axis - 1) -
                                               Haar(axis))))
      checks.append(Check('haar', row['haar_defect'], HAAR_TOLERANCE, 'm=1'))
    splines.AddRow(row)
  tables = [splines]
  if 'ranges' in wanted:
    ranges = table.Table('ranges')
    for order, dimension, p, q, scale, expected in RANGE_CASES:
      computed = splinewavelets.SplineRange(order, dimension, p, q, scale)
      if computed is None or expected is None:
        defect = 0.0 if computed is expected else math.inf
      else:
        defect = max(abs(value - target)
                     for value, target in zip(computed, expected))
      ranges.AddRow(m=order, d=dimension, p=p, q=q, scale=scale,
                    lower=computed[0] if computed else None,
                    upper=computed[1] if computed else None,
                    empty=computed is None)
      checks.append(Check('ranges', defect, EXACT_TOLERANCE,
                          'm=%d d=%d p=%g q=%g %s' % (order, dimension, p, q,
                                                      scale)))
    tables.append(ranges)
  if 'refusal' in wanted:
    square = gridlib.GridSpec(2, 8.0, 64)
    cases = ((1, line, discretization.LatticeSpec(), config.ladder),
             (2, square, discretization.LatticeSpec(dimension=2),
              gridlib.ScaleLadder(2.0, 0, 2, 2)))
    for dimension, grid, lattice, ladder in cases:
      refused = _Refused(grid, systems[0], lattice, ladder)
      checks.append(Check('refusal', float(refused), 1.0,
                          'm=1 s=%g d=%d' % (REFUSED_PARAMS[1], dimension),
                          '>='))
  return tables, checks, {}


def _PropWiener(config):
  system = splinewavelets.SplineSystem(
      config.order, gridlib.GridSpec(1, config.grid.extent, config.grid.count))
  r1, r2 = splinewavelets.WienerWindow(config.order - 1, 1)
  cases = [(r1 + below, r2 + above) for below in WIENER_OFFSETS
           for above in WIENER_OFFSETS]
  results = config.Map(lambda case: splinewavelets.PropWienerIntegral(
      system.psi, group.WeightSpec(0, *case), WIENER_BOXES), cases)
  rows = table.Table('wiener')
  checks = []
  for (first, second), result in zip(cases, results):
    offsets = (first - r1, second - r2)
    if max(offsets) > 0:
      expected = splinewavelets.DIVERGENT
    elif max(offsets) < 0:
      expected = splinewavelets.FINITE
    else:
      expected = None
    rows.AddRow(r1=first, r2=second, r1_bound=r1, r2_bound=r2,
                verdict=result.verdict, expected=expected,
                largest_box=result.values[-1],
                last_change=result.changes[-1])
    if expected is not None:
      checks.append(Check('wiener', float(result.verdict == expected), 1.0,
                          'r1=%g r2=%g %s' % (first, second, result.verdict),
                          '>='))
  return [rows], checks, {'window': [r1, r2]}


# ##############################################################################
# Running and reporting
#
RUNNERS = {
    'norms': _Norms,
    'equivalence': _Equivalence,
    'decay': _Decay,
    'group-scaling': _GroupScaling,
    'coorbit': _Coorbit,
    'frames': _Frames,
    'wavelets-verify': _WaveletsVerify,
    'propwiener': _PropWiener}


def Run(config):
  """Executes one experiment.

  Arguments:
    @ config: ExperimentConfig

  Raises:
    ucoorbit.Error: the experiment refused its inputs.

  Returns:
    ExperimentResult
  """
  LOGGER.info('running %s (%s, seed %d)', config.name, config.experiment,
              config.seed)
  tables, checks, summary = RUNNERS[config.experiment](config)
  result = ExperimentResult(config, tables, checks, summary)
  for check in result.checks:
    if not check.passed:
      LOGGER.warning('%s: %r', config.name, check)
  LOGGER.info('%s: %d checks, %s', config.name, len(result.checks),
              'passed' if result.passed else 'failed')
  return result


def Write(result, outdir=None, fmt=None):
  """Writes the report of a run.

  CSV: one file per table, the checks table first, named <name>_<table>.csv,
  and the summary <name>.json. JSON: the summary alone, with the tables
  embedded.

  Returns:
    list of str: the written paths, in order.
  """
  outdir = outdir or result.config.output
  fmt = fmt or result.config.format
  os.makedirs(outdir, exist_ok=True)
  tables = [result.ChecksTable()] + result.tables
  summary = result.AsDict()
  paths = []
  if fmt == 'csv':
    for item in tables:
      path = os.path.join(outdir, '%s_%s.csv' % (result.config.name,
                                                 item.name))
      with open(path, 'w', newline='') as report:
        report.write(item.ToCsv())
      paths.append(path)
  else:
    summary['tables'] = [item.AsDict() for item in tables]
  path = os.path.join(outdir, result.config.name + '.json')
  with open(path, 'w') as report:
    report.write(table.Dumps(summary))
  paths.append(path)
  return paths


def ConfigFiles(path):
  """The JSON configs under a directory, sorted, or the file itself."""
  if os.path.isdir(path):
    return sorted(glob.glob(os.path.join(path, '*.json')))
  return [path]
