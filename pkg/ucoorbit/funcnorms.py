#!/usr/bin/python3
"""Besov and Lizorkin-Triebel (quasi-)norms through local means.

Every display is assembled from the same few pieces: the convolution field
(Phi_t * f)(x) over a scale ladder or a dyadic level range, an optional Peetre
supremum or tent average on every column, a scale aggregation (integral over
dt/t or a sum over levels) and an L_p norm in space. The F-scale aggregates
pointwise before the L_p norm, the B-scale the other way round.

Classes:
  NormParams: s, p, q, a, the scale, homogeneity and the variant number.
  NormReport: Values of all variants of one norm, with ratios.

Error Classes:
  Error: Exception base class.
  ConfigurationError: Parameters violate a condition of the characterization.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import logging
import math

# Third-party modules
import numpy as np
from scipy import ndimage
from scipy import signal as scipysignal

# Package modules
from . import grid as gridlib
from . import transform
from .grid import INFINITY

F_SCALE = 'F'
B_SCALE = 'B'
VARIANTS = {F_SCALE: (1, 2, 3, 4, 5), B_SCALE: (1, 2, 3, 4)}
REFERENCE_VARIANT = {F_SCALE: 5, B_SCALE: 4}
PEETRE_VARIANTS = {F_SCALE: (2, 4), B_SCALE: (2, 3)}
CONTINUOUS_VARIANTS = {F_SCALE: (1, 2, 3), B_SCALE: (1, 2)}
LOGGER = logging.getLogger('ucoorbit_funcnorms')


class Error(gridlib.Error):
  """Exception base class for the function space norms."""


class ConfigurationError(Error, ValueError):
  """Parameters violate a condition of the local means characterization."""


class NormParams(object):
  """Parameters of one norm evaluation.

  Members:
    @ s: float
      Smoothness.
    @ p, q: float
      Integrability and summability, in (0, inf].
    @ a: float
      Peetre exponent, only used by the maximal variants.
    @ scale: str
      'F' or 'B'.
    @ homogeneous: bool
    @ variant: int
  """
  __slots__ = ('s', 'p', 'q', 'a', 'scale', 'homogeneous', 'variant')

  def __init__(self, s, p, q, a=0.0, scale=F_SCALE, homogeneous=False,
               variant=None):
    if scale not in VARIANTS:
      raise ConfigurationError('scale must be F or B, got %r' % (scale,))
    try:
      self.p = gridlib.ValidExponent(p, 'p')
      self.q = gridlib.ValidExponent(q, 'q')
    except gridlib.InvalidInputError as error:
      raise ConfigurationError(str(error))
    self.s = float(s)
    self.a = float(a)
    self.scale = scale
    self.homogeneous = bool(homogeneous)
    self.variant = REFERENCE_VARIANT[scale] if variant is None else int(variant)
    if self.variant not in VARIANTS[scale]:
      raise ConfigurationError('variant %r does not exist for the %s-scale' % (
          variant, scale))
    if scale == F_SCALE and self.p == INFINITY:
      raise ConfigurationError('the F-scale needs p < inf')
    if self.a < 0:
      raise ConfigurationError('Peetre exponent a must be >= 0, got %r' % a)

  def __repr__(self):
    return 'NormParams(%s)' % ', '.join(
        '%s=%r' % item for item in self.AsDict().items())

  def WithVariant(self, variant):
    return NormParams(self.s, self.p, self.q, self.a, self.scale,
                      self.homogeneous, variant)

  def AsDict(self):
    return {'s': self.s, 'p': self.p, 'q': self.q, 'a': self.a,
            'scale': self.scale, 'homogeneous': self.homogeneous,
            'variant': self.variant}

  def PeetreBound(self, dimension):
    """The lower bound a must exceed: d/min(p, q) for F, d/p for B."""
    if self.scale == F_SCALE:
      return dimension / min(self.p, self.q)
    return dimension / self.p

  def Validate(self, dimension):
    """Checks the Peetre exponent for the maximal variants.

    Raises:
      ConfigurationError: a <= d/min(p, q) (F) or a <= d/p (B).
    """
    if self.variant in PEETRE_VARIANTS[self.scale]:
      bound = self.PeetreBound(dimension)
      if not self.a > bound:
        raise ConfigurationError(
            'variant %d of the %s-scale needs a > %s = %.4g, got a = %r' % (
                self.variant, self.scale,
                'd/min(p,q)' if self.scale == F_SCALE else 'd/p', bound,
                self.a))


def CheckKernels(phi0, phi, params):
  """Verifies the measured kernel metadata against the chosen variant.

  The local means need R+1 > s vanishing moment degrees. The continuous
  variants need a band: phi must be nonzero on an annulus and, when the norm
  is inhomogeneous, phi0 nonzero on a ball. The discrete variants accept
  kernels without a detectable band, such as partition members.

  Raises:
    ConfigurationError: a condition fails; the message names it.
  """
  if phi0 is not None and phi0.grid != phi.grid:
    raise ConfigurationError('phi0 and phi live on different grids')
  if not phi.meta.moment_order > params.s:
    raise ConfigurationError(
        'local means need R+1 > s: %s has %d vanishing moment degrees, s = %r'
        % (phi.name, phi.meta.moment_order, params.s))
  if params.variant not in CONTINUOUS_VARIANTS[params.scale]:
    return
  if not phi.meta.band > 0:
    raise ConfigurationError(
        'variant %d needs |F phi| > 0 on an annulus; %s has no band' % (
            params.variant, phi.name))
  if not params.homogeneous and not phi0.meta.band > 0:
    raise ConfigurationError(
        'variant %d needs |F phi0| > 0 on a ball; %s has no band' % (
            params.variant, phi0.name))


# ##############################################################################
# Scale ranges
#
def ContinuousLadder(grid, ladder, homogeneous):
  """The ladder part used by the continuous variants.

  Inhomogeneous norms integrate over [t_min, 1] with t_min = max(2h, smallest
  ladder scale); homogeneous norms over the whole ladder, which must lie in
  the resolvable window.
  """
  if homogeneous:
    transform.CheckScales(grid, ladder.Scales())
    return ladder
  try:
    restricted = ladder.Restricted(2 * grid.spacing, 1.0)
  except gridlib.InvalidInputError:
    raise ConfigurationError('ladder %r has no scale inside [2h, 1]' % ladder)
  if len(restricted) < len(ladder):
    LOGGER.debug('continuous ladder restricted to %r', restricted)
  return restricted


def DiscreteLevels(ladder, homogeneous):
  """Dyadic levels k with 2^-k inside the ladder range.

  Inhomogeneous norms always start at k = 0, the level of phi0.

  Raises:
    ConfigurationError: no level fits.
  """
  scales = ladder.Scales()
  first = math.ceil(-math.log2(scales[0]) - 1e-9)
  last = math.floor(-math.log2(scales[-1]) + 1e-9)
  if not homogeneous:
    first = 0
  if first > last:
    raise ConfigurationError('ladder %r holds no dyadic level' % ladder)
  return list(range(first, last + 1))


# ##############################################################################
# Fields and column operators
#
def _LevelField(signal, phi0, phi, levels, homogeneous, guard):
  """(Phi_k * f) for every level, phi0 at k = 0 of an inhomogeneous norm."""
  columns = []
  for level in levels:
    kernel, scale = phi, 2.0 ** -level
    if level == 0 and not homogeneous:
      kernel, scale = phi0, 1.0
    columns.append(transform.ConvolutionField(signal, kernel, [scale],
                                              guard)[..., 0])
  return np.stack(columns, axis=-1)


def _PeetreColumns(field, grid, power, scales):
  return np.stack([transform.PeetreColumn(field[..., position], grid, power,
                                          scale)
                   for position, scale in enumerate(scales)], axis=-1)


def BallWeights(grid, radius):
  """Fraction of every grid cell around an offset z inside |z| < radius.

  Exact in d = 1; in d = 2 the fraction is taken along the radius, with the
  centre cell capped at the ball area.
  """
  spacing = grid.spacing
  reach = math.ceil(radius / spacing + 0.5)
  if reach > grid.count - 1:
    LOGGER.warning('tent ball of radius %.4g clipped to the box', radius)
    reach = grid.count - 1
  offsets = np.arange(-reach, reach + 1) * spacing
  if grid.dimension == 1:
    upper = np.minimum(offsets + spacing / 2, radius)
    lower = np.maximum(offsets - spacing / 2, -radius)
    return np.clip((upper - lower) / spacing, 0.0, 1.0)
  mesh = np.meshgrid(offsets, offsets, indexing='ij')
  distance = np.sqrt(mesh[0] ** 2 + mesh[1] ** 2)
  weights = np.clip((radius - distance) / spacing + 0.5, 0.0, 1.0)
  weights[reach, reach] = min(weights[reach, reach],
                              math.pi * (radius / spacing) ** 2)
  return weights


def TentColumn(magnitude, grid, scale, q):
  """t^-d times the integral of |G(x+z)|^q over |z| < t, or the ball
  supremum of |G| when q is infinite."""
  weights = BallWeights(grid, scale)
  if q == INFINITY:
    return ndimage.maximum_filter(magnitude, footprint=weights > 0,
                                  mode='constant', cval=0.0)
  total = scipysignal.fftconvolve(magnitude ** q, weights, mode='same')
  return np.maximum(total, 0.0) * grid.cell / scale ** grid.dimension


def _ScaleAggregate(values, ladder, s, q, powered=False):
  """Aggregates nonnegative columns over the ladder nodes.

  (integral t^-sq v^q dt/t)^(1/q), or sup t^-s v for q = inf. With `powered`
  the values already carry the q-th power.
  """
  if q == INFINITY:
    return np.max(values * ladder.Scales() ** -s, axis=-1)
  integrand = values if powered else values ** q
  return np.maximum(gridlib.ScaleIntegral(integrand, ladder, s * q),
                    0.0) ** (1 / q)


def _LevelAggregate(values, levels, s, q):
  weights = 2.0 ** (s * np.asarray(levels, dtype=float))
  return gridlib.LqSum(values * weights, q, axis=-1)


def _SpaceNorm(values, grid, p):
  return gridlib.LpArray(values, grid.cell, p, axis=tuple(range(grid.dimension)))


# ##############################################################################
# Norm displays
#
def _BaseTerm(signal, phi0, params, guard):
  """||Phi0 * f||_p, or its Peetre version at t = 1."""
  column = transform.ConvolutionField(signal, phi0, [1.0], guard)[..., 0]
  if params.variant == 2:
    column = transform.PeetreColumn(column, signal.grid, params.a, 1.0)
  return float(_SpaceNorm(column, signal.grid, params.p))


def _ContinuousNorm(signal, phi0, phi, params, ladder, guard, workers):
  grid = signal.grid
  ladder = ContinuousLadder(grid, ladder, params.homogeneous)
  scales = ladder.Scales()
  field = transform.ConvolutionField(signal, phi, scales, guard, workers)
  if params.variant == 2:
    field = transform.PeetreMaximal(
        transform.GroupFunction(grid, ladder, field), params.a, workers).values
  magnitude = np.abs(field)
  if params.scale == F_SCALE:
    if params.variant == 3:
      tents = np.stack([TentColumn(magnitude[..., position], grid, scale,
                                   params.q)
                        for position, scale in enumerate(scales)], axis=-1)
      pointwise = _ScaleAggregate(tents, ladder, params.s, params.q,
                                  powered=params.q != INFINITY)
    else:
      pointwise = _ScaleAggregate(magnitude, ladder, params.s, params.q)
    value = float(_SpaceNorm(pointwise, grid, params.p))
  else:
    norms = _SpaceNorm(magnitude, grid, params.p)
    value = float(_ScaleAggregate(norms, ladder, params.s, params.q))
  if not params.homogeneous:
    value += _BaseTerm(signal, phi0, params, guard)
  return value


def _DiscreteNorm(signal, phi0, phi, params, levels, guard):
  grid = signal.grid
  field = _LevelField(signal, phi0, phi, levels, params.homogeneous, guard)
  if params.variant in PEETRE_VARIANTS[params.scale]:
    field = _PeetreColumns(field, grid, params.a,
                           [2.0 ** -level for level in levels])
  magnitude = np.abs(field)
  if params.scale == F_SCALE:
    pointwise = _LevelAggregate(magnitude, levels, params.s, params.q)
    return float(_SpaceNorm(pointwise, grid, params.p))
  norms = _SpaceNorm(magnitude, grid, params.p)
  return float(_LevelAggregate(norms, levels, params.s, params.q))


def _Norm(signal, phi0, phi, params, ladder, guard, workers):
  params.Validate(signal.grid.dimension)
  if params.homogeneous:
    phi0 = phi
  CheckKernels(phi0, phi, params)
  if phi.grid != signal.grid:
    raise ConfigurationError('kernels and signal live on different grids')
  if not np.any(signal.samples):
    return 0.0
  if params.variant in CONTINUOUS_VARIANTS[params.scale]:
    value = _ContinuousNorm(signal, phi0, phi, params, ladder, guard, workers)
  else:
    levels = DiscreteLevels(ladder, params.homogeneous)
    value = _DiscreteNorm(signal, phi0, phi, params, levels, guard)
  LOGGER.debug('%s-norm variant %d of %r: %.6g', params.scale, params.variant,
               signal, value)
  return value


def FNorm(signal, phi0, phi, params, ladder,
          guard=transform.WRAP_GUARD, workers=None):
  """Evaluates one Lizorkin-Triebel (quasi-)norm display.

  Variants 1-3 are continuous in t: plain, Peetre maximal and tent (Lusin)
  forms. Variants 4 and 5 sum over dyadic levels k with Phi_0 at k = 0: the
  Peetre maximal and the plain form. Homogeneous norms use Phi in place of
  Phi_0 and have no base term.

  Arguments:
    @ signal: SampledSignal
    @ phi0: Kernel
      Ignored for homogeneous norms.
    @ phi: Kernel
    @ params: NormParams
      Must carry the F-scale.
    @ ladder: ScaleLadder
      Continuous variants use its part inside [2h, 1] (inhomogeneous) or all
      of it (homogeneous); discrete variants the dyadic levels it spans.
    % guard: float ~~ 1e-9
      Wrap-around guard of the convolutions.
    % workers: int ~~ None
      Threads for the scale columns.

  Raises:
    ConfigurationError: a parameter or kernel condition fails.
    OutOfRangeError: homogeneous ladder outside the resolvable window.

  Returns:
    float: the norm, 0 for the zero signal.
  """
  if params.scale != F_SCALE:
    raise ConfigurationError('FNorm needs F-scale parameters, got %r' % (
        params.scale,))
  return _Norm(signal, phi0, phi, params, ladder, guard, workers)


def BNorm(signal, phi0, phi, params, ladder,
          guard=transform.WRAP_GUARD, workers=None):
  """Evaluates one Besov (quasi-)norm display.

  Variants 1 and 2 are continuous (plain and Peetre), 3 and 4 discrete
  (Peetre and plain). Same arguments as FNorm.
  """
  if params.scale != B_SCALE:
    raise ConfigurationError('BNorm needs B-scale parameters, got %r' % (
        params.scale,))
  return _Norm(signal, phi0, phi, params, ladder, guard, workers)


def Norm(signal, phi0, phi, params, ladder, guard=transform.WRAP_GUARD,
         workers=None):
  """FNorm or BNorm depending on the parameter scale."""
  return _Norm(signal, phi0, phi, params, ladder, guard, workers)


def ReferenceNorm(signal, partition, params, guard=None):
  """The Fourier-analytic norm of a dyadic partition of unity.

  Sums 2^(jsq) |F^-1[phi_j Ff]|^q over the partition indices, pointwise then
  L_p for F, L_p then summed for B. This is the plain discrete variant run
  with the partition kernels.

  Arguments:
    @ signal: SampledSignal
    @ partition: kernels.PartitionSystem
      Its kind must match params.homogeneous.
    @ params: NormParams
      Only s, p, q, the scale and homogeneity are used.
  """
  homogeneous = partition.kind == partition.HOMOGENEOUS
  if homogeneous != params.homogeneous:
    raise ConfigurationError('%s partition for a %s norm' % (
        partition.kind, 'homogeneous' if params.homogeneous else
        'inhomogeneous'))
  params = params.WithVariant(REFERENCE_VARIANT[params.scale])
  if not np.any(signal.samples):
    return 0.0
  phi0 = None if homogeneous else partition.Kernel(0)
  return _DiscreteNorm(signal, phi0, partition.Generator(), params,
                       partition.Indices(), guard)


def TminSensitivity(signal, phi0, phi, params, ladder,
                    guard=transform.WRAP_GUARD):
  """Relative change of an inhomogeneous continuous norm when the smallest
  scale doubles.

  Returns:
    float: |N(2 t_min) - N(t_min)| / N(t_min), 0 for the zero signal.
  """
  ladder = ContinuousLadder(signal.grid, ladder, False)
  coarse = ladder.Restricted(2 * ladder.Scales()[-1], 1.0)
  fine_value = _Norm(signal, phi0, phi, params, ladder, guard, None)
  if fine_value == 0:
    return 0.0
  coarse_value = _Norm(signal, phi0, phi, params, coarse, guard, None)
  return abs(coarse_value - fine_value) / fine_value


# ##############################################################################
# Reports
#
class NormReport(object):
  """All variant values of one norm for one or two kernel pairs.

  Members:
    @ params: NormParams
      The parameters shared by the variants, with the reference variant.
    @ values: dict
      variant -> value for the first kernel pair.
    @ ratios: dict
      variant -> value / value of the reference variant.
    @ cross_kernel: dict
      variant -> value with the second pair / value with the first pair.
    @ kernel_ids: list
    @ all_zero: bool
  """

  def __init__(self, params, values, cross_values=None, kernel_ids=()):
    self.params = params
    self.values = dict(values)
    self.kernel_ids = list(kernel_ids)
    self.all_zero = not any(self.values.values())
    self.ratios = {}
    self.cross_kernel = {}
    if self.all_zero:
      return
    reference = self.values[REFERENCE_VARIANT[params.scale]]
    self.ratios = {variant: value / reference
                   for variant, value in self.values.items()}
    for variant, value in (cross_values or {}).items():
      self.cross_kernel[variant] = value / self.values[variant]

  def __repr__(self):
    return 'NormReport(%s, values=%r)' % (self.params.scale, self.values)

  def AsDict(self):
    return {'params': self.params.AsDict(),
            'values': {'v%d' % variant: value
                       for variant, value in sorted(self.values.items())},
            'ratios': {'v%d' % variant: value
                       for variant, value in sorted(self.ratios.items())},
            'cross_kernel': {'v%d' % variant: value for variant, value
                             in sorted(self.cross_kernel.items())},
            'kernel_ids': self.kernel_ids,
            'all_zero': self.all_zero}

  def Rows(self):
    """One row per variant, for tabulation."""
    for variant in sorted(self.values):
      yield {'scale': self.params.scale, 'variant': variant,
             'value': self.values[variant],
             'ratio': self.ratios.get(variant),
             'cross_kernel': self.cross_kernel.get(variant)}

  def RatioVector(self):
    return np.array([self.ratios[variant] for variant in sorted(self.ratios)])


def _PairGuards(guard, count):
  """One wrap guard per kernel pair."""
  if guard is None or isinstance(guard, (int, float)):
    return [guard] * count
  guards = list(guard)
  if len(guards) != count:
    raise ConfigurationError('%d guards given for %d kernel pairs' % (
        len(guards), count))
  return guards


def NormReportFor(signal, pairs, params, ladder, variants=None,
                  guard=transform.WRAP_GUARD, workers=None):
  """Evaluates every requested variant and the ratios between them.

  Arguments:
    @ signal: SampledSignal
    @ pairs: list of (Kernel, Kernel)
      One or two (phi0, phi) pairs; the second yields cross-kernel ratios.
    @ params: NormParams
      The variant field is ignored.
    @ ladder: ScaleLadder
    % variants: sequence of int ~~ every variant of the scale
    % guard: float, None or sequence ~~ WRAP_GUARD
      Wrap-around guard of the transforms, or one guard per pair.

  Raises:
    ConfigurationError: parameters invalid for a requested variant, or a
        guard list whose length differs from the pairs.

  Returns:
    NormReport
  """
  pairs = list(pairs)
  if not 1 <= len(pairs) <= 2:
    raise ConfigurationError('a report takes one or two kernel pairs')
  variants = list(variants or VARIANTS[params.scale])
  guards = _PairGuards(guard, len(pairs))
  reference = REFERENCE_VARIANT[params.scale]
  if reference not in variants:
    variants.append(reference)
  for variant in variants:
    params.WithVariant(variant).Validate(signal.grid.dimension)
  values = {}
  cross_values = {}
  for variant in variants:
    current = params.WithVariant(variant)
    phi0, phi = pairs[0]
    values[variant] = _Norm(signal, phi0, phi, current, ladder, guards[0],
                            workers)
    if len(pairs) == 2:
      phi0, phi = pairs[1]
      cross_values[variant] = _Norm(signal, phi0, phi, current, ladder,
                                    guards[1], workers)
  kernel_ids = ['%s/%s' % (phi0.name, phi.name) for phi0, phi in pairs]
  return NormReport(params.WithVariant(reference), values, cross_values,
                    kernel_ids)
