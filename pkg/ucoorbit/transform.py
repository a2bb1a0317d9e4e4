#!/usr/bin/python3
"""Dilation, convolution, the continuous wavelet transform and maximal
functions.

All transforms run on the FFT of the common grid. Convolutions are circular;
a wrap-around guard refuses results whose tail at the box edge is not
negligible against their peak.

Classes:
  DilationTag: Selects the L1, L2 or L_p normalization of D_t.
  GroupFunction: Samples F(x, t) over the grid and a scale ladder.
  DecayProfile: Fitted small-scale behaviour of a wavelet transform.

Error Classes:
  Error: Exception base class.
  OutOfRangeError: A scale lies outside the resolvable window [2h, X/2].
  WrapAroundError: A circular convolution leaks around the box.
  FitError: Too few points for a slope fit.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import itertools
import logging
import math
from concurrent import futures

# Third-party modules
import numpy as np
from scipy import ndimage
from scipy import signal as scipysignal

# Package modules
from . import grid as gridlib
from . import kernels
from .grid import Fourier, InverseFourier, SampledSignal

WRAP_GUARD = 1e-9
LOG_TINY = math.log(1e-300)
LOG_FLOOR = -1e4
LOGGER = logging.getLogger('ucoorbit_transform')


class Error(gridlib.Error):
  """Exception base class for the transform module."""


class OutOfRangeError(Error, ValueError):
  """A scale lies outside the resolvable window [2h, X/2]."""


class WrapAroundError(Error, ArithmeticError):
  """A circular convolution leaks around the box."""


class FitError(Error, ValueError):
  """Too few points for a slope fit."""


class DilationTag(object):
  """Normalization of the dilation D_t^{L_p} g = t^(-d/p) g(./t)."""
  __slots__ = ('normalization', 'p')

  def __init__(self, normalization='L1', p=None):
    if normalization == 'L1':
      p = 1.0
    elif normalization == 'L2':
      p = 2.0
    elif normalization == 'Lp':
      p = gridlib.ValidExponent(p)
    else:
      raise gridlib.InvalidInputError('unknown normalization %r' % normalization)
    self.normalization = normalization
    self.p = p

  def __repr__(self):
    return 'DilationTag(%s, p=%r)' % (self.normalization, self.p)

  def Exponent(self, dimension):
    """Power of t in F(D_t g)(xi) = t^(d(1-1/p)) Fg(t xi)."""
    return dimension * (1 - 1 / self.p)


L1 = DilationTag('L1')
L2 = DilationTag('L2')


def ResolvableWindow(grid):
  """The scale window [2h, X/2] on which operations are trusted."""
  return 2 * grid.spacing, grid.extent / 2


def CheckScales(grid, scales):
  """Raises OutOfRangeError listing the scales outside the resolvable window."""
  low, high = ResolvableWindow(grid)
  scales = np.atleast_1d(scales)
  offending = scales[(scales < low * (1 - 1e-12)) | (scales > high * (1 + 1e-12))]
  if offending.size:
    raise OutOfRangeError('scales %s lie outside the resolvable window '
                          '[%g, %g]' % (', '.join('%.4g' % t for t in offending),
                                        low, high))


def _ScaledAxisTransform(values, axis, grid, scale):
  """DTFT of `values` along `axis` at the frequencies scale*xi, FFT ordered."""
  count = grid.count
  theta = 2 * math.pi * scale / count
  start = np.exp(-1j * theta * count / 2)
  ratio = np.exp(-1j * theta)
  spectrum = scipysignal.czt(values, m=count, w=ratio, a=start, axis=axis)
  spectrum = np.fft.ifftshift(spectrum, axes=axis)
  frequencies = scale * grid.FrequencyAxis()
  shape = [1] * values.ndim
  shape[axis] = count
  phase = np.exp(1j * grid.extent * frequencies).reshape(shape)
  inside = (np.abs(frequencies) < grid.nyquist).reshape(shape)
  return spectrum * phase * inside * grid.spacing / math.sqrt(2 * math.pi)


def ScaledSpectrum(kernel, scale):
  """Returns Fg(t xi) on the frequency grid.

  The exact symbol is used when the kernel has one. Otherwise the stored space
  samples are transformed at the scaled frequencies; values beyond the
  sampled band read zero.
  """
  grid = kernel.grid
  if kernel.symbol is not None:
    return np.asarray(kernel.symbol(*(scale * xi for xi in grid.Frequencies())),
                      dtype=complex) * np.ones(grid.shape)
  if scale == 1:
    return np.array(kernel.frequency)
  values = np.asarray(kernel.space, dtype=complex)
  for axis in range(grid.dimension):
    values = _ScaledAxisTransform(values, axis, grid, scale)
  return values


def Dilate(kernel, scale, tag=L1):
  """Returns D_t g with F(D_t g)(xi) = t^(d(1-1/p)) Fg(t xi).

  Arguments:
    @ kernel: Kernel
    @ scale: float
      The dilation t, inside [2h, X/2].
    % tag: DilationTag ~~ L1

  Raises:
    OutOfRangeError: t outside the resolvable window.
  """
  if not scale > 0:
    raise OutOfRangeError('dilation must be positive, got %r' % scale)
  CheckScales(kernel.grid, scale)
  factor = scale ** tag.Exponent(kernel.grid.dimension)
  symbol = None
  if kernel.symbol is not None:
    base = kernel.symbol
    symbol = lambda *xi: factor * base(*(scale * c for c in xi))
  return kernels.Kernel(
      kernel.grid, frequency=factor * ScaledSpectrum(kernel, scale),
      symbol=symbol, name='D_%.4g(%s)' % (scale, kernel.name), role=kernel.role,
      moment_order=kernel._moment_order)


def _CheckWrap(values, grid, guard, label):
  if guard is None:
    return
  peak = np.max(np.abs(values))
  if peak == 0:
    return
  edge = gridlib.EdgeMaximum(values)
  if edge > guard * peak:
    raise WrapAroundError('%s: edge/peak ratio %.3g exceeds the guard %.1g' % (
        label, edge / peak, guard))


def Convolve(signal, kernel, guard=WRAP_GUARD):
  """Returns f * g through F(f*g) = (2 pi)^(d/2) Ff Fg.

  Arguments:
    @ signal: SampledSignal
    @ kernel: Kernel or SampledSignal
    % guard: float ~~ 1e-9
      Largest tolerated edge/peak ratio of the result; None disables it.

  Raises:
    InvalidInputError: the operands live on different grids.
    WrapAroundError: the result does not decay towards the box edge.
  """
  grid = signal.grid
  if kernel.grid != grid:
    raise gridlib.InvalidInputError('convolution operands on different grids')
  spectrum = getattr(kernel, 'frequency', None)
  if spectrum is None:
    spectrum = Fourier(grid, kernel.samples)
  product = (2 * math.pi) ** (grid.dimension / 2) * Fourier(
      grid, signal.samples) * spectrum
  values = InverseFourier(grid, product)
  _CheckWrap(values, grid, guard, 'convolution with %s' % getattr(
      kernel, 'name', 'signal'))
  return SampledSignal(grid, values)


def _FieldColumn(spectrum, kernel, scale, guard):
  grid = kernel.grid
  product = ((2 * math.pi) ** (grid.dimension / 2)
             * ScaledSpectrum(kernel, scale) * spectrum)
  values = InverseFourier(grid, product)
  _CheckWrap(values, grid, guard, '%s at t=%.4g' % (kernel.name, scale))
  return values


def ConvolutionField(signal, kernel, scales, guard=WRAP_GUARD, workers=None):
  """Returns (Phi_t * f)(x) for every t in `scales`, Phi_t = t^-d Phi(./t).

  The scales are not checked against the resolvable window; kernels with an
  exact symbol stay accurate beyond it.

  Returns:
    ndarray: shape grid.shape + (len(scales),), complex.
  """
  grid = signal.grid
  if kernel.grid != grid:
    raise gridlib.InvalidInputError('convolution operands on different grids')
  scales = [float(scale) for scale in np.atleast_1d(scales)]
  spectrum = Fourier(grid, signal.samples)
  task = lambda scale: _FieldColumn(spectrum, kernel, scale, guard)
  if workers and workers > 1:
    with futures.ThreadPoolExecutor(max_workers=workers) as pool:
      columns = list(pool.map(task, scales))
  else:
    columns = [task(scale) for scale in scales]
  if not columns:
    return np.zeros(grid.shape + (0,), dtype=complex)
  return np.stack(columns, axis=-1)


# ##############################################################################
# Group functions and the continuous wavelet transform
#
class GroupFunction(object):
  """Samples F(x_i, t_m) on a grid times a scale ladder.

  Members:
    @ grid: GridSpec
    @ ladder: ScaleLadder
    @ values: ndarray
      Shape grid.shape + (len(ladder),), complex.
    % dropped: int
      Number of ladder nodes whose values were lost by a translation.
  """
  __slots__ = ('grid', 'ladder', 'values', 'dropped')

  def __init__(self, grid, ladder, values, dropped=0):
    values = np.asarray(values)
    expected = grid.shape + (len(ladder),)
    if values.shape != expected:
      raise gridlib.InvalidInputError('group function shape %r, expected %r' % (
          values.shape, expected))
    if not np.all(np.isfinite(values)):
      raise gridlib.InvalidInputError('group function has non-finite values')
    self.grid = grid
    self.ladder = ladder
    self.values = values
    self.dropped = dropped

  def __repr__(self):
    return 'GroupFunction(%r, %r, dropped=%d)' % (self.grid, self.ladder,
                                                  self.dropped)

  def __mul__(self, scalar):
    return GroupFunction(self.grid, self.ladder, self.values * scalar,
                         self.dropped)

  __rmul__ = __mul__

  def Column(self, position):
    return self.values[..., position]

  def Abs(self):
    return np.abs(self.values)

  def Scales(self):
    return self.ladder.Scales()

  def Evaluate(self, x_index, scale_position):
    return self.values[tuple(x_index) + (scale_position,)]


def _CwtColumn(conjugate_spectrum, reflected, scale, guard):
  grid = reflected.grid
  product = ((2 * math.pi) ** (grid.dimension / 2) * scale ** (grid.dimension / 2)
             * ScaledSpectrum(reflected, scale) * conjugate_spectrum)
  values = InverseFourier(grid, product)
  _CheckWrap(values, grid, guard, 'cwt at t=%.4g' % scale)
  return values


def _Columns(signal, kernel, ladder, guard, workers):
  grid = signal.grid
  if kernel.grid != grid:
    raise gridlib.InvalidInputError('cwt operands on different grids')
  CheckScales(grid, ladder.Scales())
  conjugate_spectrum = Fourier(grid, np.conj(signal.samples))
  reflected = kernel.Reflected()
  task = lambda scale: _CwtColumn(conjugate_spectrum, reflected, scale, guard)
  scales = list(ladder.Scales())
  if workers and workers > 1:
    with futures.ThreadPoolExecutor(max_workers=workers) as pool:
      for column in pool.map(task, scales):
        yield column
  else:
    for scale in scales:
      yield task(scale)


def Cwt(signal, kernel, ladder, guard=WRAP_GUARD, workers=None):
  """The continuous wavelet transform W_g f over a ladder.

  W_g f(., t) = t^(d/2) [(D_t g(-.)) * conj(f)] with the L1 dilation D_t.

  Arguments:
    @ signal: SampledSignal
    @ kernel: Kernel
      The analyzer g.
    @ ladder: ScaleLadder
    % guard: float ~~ 1e-9
      Wrap-around guard per scale, None disables it.
    % workers: int ~~ None
      Threads used for the independent scale columns.

  Raises:
    OutOfRangeError: ladder scales outside [2h, X/2], all listed.
    WrapAroundError: a column does not decay towards the box edge.

  Returns:
    GroupFunction: the transform.
  """
  values = np.empty(signal.grid.shape + (len(ladder),), dtype=complex)
  for position, column in enumerate(
      _Columns(signal, kernel, ladder, guard, workers)):
    values[..., position] = column
  LOGGER.debug('cwt of %r with %s over %r', signal, kernel.name, ladder)
  return GroupFunction(signal.grid, ladder, values)


def CwtEnergy(signal, kernel, ladder, guard=WRAP_GUARD):
  """Streams the integral of |W_g f|^2 dx dt/t^(d+1) over the ladder."""
  grid = signal.grid
  energies = [np.sum(np.abs(column) ** 2) * grid.cell
              for column in _Columns(signal, kernel, ladder, guard, None)]
  energies = np.array(energies) * ladder.Scales() ** -grid.dimension
  return float(gridlib.ScaleIntegral(energies, ladder))


def SphereArea(dimension):
  """Surface measure of the unit sphere S^(d-1)."""
  return 2 * math.pi ** (dimension / 2) / math.gamma(dimension / 2)


def TightFrameConstant(dimension):
  """C_d = (2 pi)^d / |S^(d-1)|, the factor between the group energy of W_g f
  and c_g ||f||_2^2 for radial g."""
  return (2 * math.pi) ** dimension / SphereArea(dimension)


def TightFrameRatio(signal, kernel, ladder, guard=WRAP_GUARD):
  """Returns the group energy of W_g f over C_d c_g ||f||_2^2; one for a tight
  frame when the ladder captures all scales of f."""
  constant = kernels.AdmissibilityConstant(kernel)
  if constant.divergent:
    raise gridlib.InvalidInputError('%s is not admissible' % kernel.name)
  energy = CwtEnergy(signal, kernel, ladder, guard)
  norm = gridlib.LpNorm(signal, 2) ** 2
  return energy / (TightFrameConstant(signal.grid.dimension) * constant.value *
                   norm)


def ReflectionDefect(first, second, ladder):
  """Largest relative defect of ||W_first second(., t)||_2^2 =
  t^d ||W_second first(., 1/t)||_2^2 over the ladder.

  Follows from W_first second(x, t) = conj(W_second first(-x/t, 1/t)). The
  ladder must be symmetric under t -> 1/t.
  """
  grid = first.grid
  inverse = gridlib.ScaleLadder.FromNodes(ladder.base, -ladder.last,
                                          -ladder.first, ladder.oversampling)
  direct = Cwt(second.Signal(), first, ladder, guard=None)
  reflected = Cwt(first.Signal(), second, inverse, guard=None)
  left = np.sum(np.abs(direct.values) ** 2, axis=tuple(range(grid.dimension)))
  right = np.sum(np.abs(reflected.values) ** 2,
                 axis=tuple(range(grid.dimension)))[::-1]
  right = right * ladder.Scales() ** grid.dimension
  return float(np.max(np.abs(left - right) / np.maximum(left, 1e-300)))


# ##############################################################################
# Maximal functions
#
def PeetreColumn(values, grid, power, scale):
  """sup over grid offsets y of |G(x+y)| / (1+|y|/t)^a, off-box values zero."""
  magnitude = np.abs(values)
  peak = magnitude.max()
  if peak == 0:
    return np.zeros_like(magnitude)
  if power == 0:
    return np.full_like(magnitude, peak)
  offsets = (np.arange(2 * grid.count - 1) - (grid.count - 1)) * grid.spacing
  mesh = np.meshgrid(*([offsets] * grid.dimension), indexing='ij')
  radius = np.sqrt(sum(component ** 2 for component in mesh))
  structure = -power * np.log1p(radius / scale)
  logs = np.log(np.maximum(magnitude, 1e-300))
  result = ndimage.grey_dilation(logs, structure=structure, mode='constant',
                                 cval=LOG_FLOOR)
  output = np.exp(result)
  output[result <= LOG_TINY + 1] = 0
  return output


def PeetreMaximal(function, power, workers=None):
  """The Peetre maximal function of every scale column.

  Arguments:
    @ function: GroupFunction
    @ power: float
      The exponent a >= 0; a = 0 gives the column supremum.
    % workers: int ~~ None
      Threads used for the independent columns.

  Returns:
    GroupFunction: (F*_t)_a(x) at every node, real valued.
  """
  if power < 0:
    raise gridlib.InvalidInputError('Peetre exponent must be >= 0, got %r' % (
        power,))
  grid = function.grid
  scales = function.ladder.Scales()
  task = lambda position: PeetreColumn(function.Column(position), grid, power,
                                        scales[position])
  positions = range(len(scales))
  if workers and workers > 1:
    with futures.ThreadPoolExecutor(max_workers=workers) as pool:
      columns = list(pool.map(task, positions))
  else:
    columns = [task(position) for position in positions]
  return GroupFunction(grid, function.ladder, np.stack(columns, axis=-1),
                       function.dropped)


def PeetreBoxDefect(signal, kernel, ladder, power, guard=WRAP_GUARD):
  """How much (W_g f)*_a on the box changes when the box doubles.

  The signal and the analyzer are zero-extended to a box twice as wide with
  the same spacing, so the second supremum also sees the transform outside the
  original box. For decaying f and a > d the change stays at the level of the
  transform at the box edge.

  Returns:
    float: the largest difference on the original box, per scale relative to
        the largest value of that scale.
  """
  narrow = PeetreMaximal(Cwt(signal, kernel, ladder, guard), power)
  wide = PeetreMaximal(Cwt(gridlib.ZeroExtended(signal), kernel.Widened(),
                           ladder, guard), power)
  inside = wide.values[gridlib.InnerBox(signal.grid)]
  axes = tuple(range(signal.grid.dimension))
  peaks = np.max(narrow.values, axis=axes)
  differences = np.max(np.abs(inside - narrow.values), axis=axes)
  defects = differences / np.where(peaks > 0, peaks, 1.0)
  LOGGER.debug('peetre box defect of %r at a=%g: %s', signal, power, defects)
  return float(defects.max())


def DiscretePeetre(signal, kernel, power, level, guard=WRAP_GUARD):
  """(Phi_k^* f)_a(x) = sup_y |(Phi_k * f)(x+y)| / (1+2^k|y|)^a.

  Arguments:
    @ signal: SampledSignal
    @ kernel: Kernel
      The dilate Phi_k = 2^(kd) Phi(2^k .), already built.
    @ power: float
    @ level: int
      The index k.
  """
  convolved = Convolve(signal, kernel, guard)
  return SampledSignal(signal.grid, PeetreColumn(
      convolved.samples, signal.grid, power, 2.0 ** -level))


def _CubeSums(table, half):
  """Sums of the zero-extended samples over the cubes of half-width `half`
  centred at every sample, from the summed-area `table`."""
  count = table.shape[0] - 1
  index = np.arange(count)
  edges = (np.minimum(index + half + 1, count), np.maximum(index - half, 0))
  total = 0.0
  for corner in itertools.product((0, 1), repeat=table.ndim):
    term = table[np.ix_(*(edges[side] for side in corner))]
    total = total - term if sum(corner) % 2 else total + term
  return total


def HardyLittlewood(signal):
  """The centred Hardy-Littlewood maximal function on the grid.

  Maximum over all cubes centred at a sample whose half-width is a multiple of
  the spacing, of the rectangle-rule average of |f| with |f| zero off the box.
  Larger cubes are skipped once their average cannot exceed any current value.
  """
  magnitude = signal.Abs()
  dimension = signal.grid.dimension
  table = np.pad(magnitude, ((1, 0),) * dimension)
  for axis in range(dimension):
    table = np.cumsum(table, axis=axis)
  total = table[(-1,) * dimension]
  result = magnitude.copy()
  for half in range(1, signal.grid.count):
    volume = (2 * half + 1) ** dimension
    if total / volume <= result.min():
      break
    np.maximum(result, _CubeSums(table, half) / volume, out=result)
  return SampledSignal(signal.grid, result)


def FeffermanSteinRatio(members, mixed):
  """||{Mf_k} | L_p(l_q)|| / ||{f_k} | L_p(l_q)||."""
  members = list(members)
  maximal = [HardyLittlewood(member) for member in members]
  denominator = gridlib.LpOfLq(members, mixed)
  if denominator == 0:
    return 0.0
  return gridlib.LpOfLq(maximal, mixed) / denominator


# ##############################################################################
# Decay profiles
#
class DecayProfile(object):
  """Fitted small-scale decay of sup_x |W_Phi Phi_0(x, t)|.

  Members:
    @ scale_slope: float
    @ spatial_order: float
    @ window: tuple
      The scale window (t_lo, t_hi) of the slope fit.
    @ residual: float
      Root mean square residual of the slope fit in log space.
    @ expected: float
      min{L, K} + d/2 from the measured kernel metadata.
  """
  __slots__ = ('scale_slope', 'spatial_order', 'window', 'residual', 'expected')

  def __init__(self, scale_slope, spatial_order, window, residual, expected):
    self.scale_slope = scale_slope
    self.spatial_order = spatial_order
    self.window = window
    self.residual = residual
    self.expected = expected

  def AsDict(self):
    return {'scale_slope': self.scale_slope,
            'spatial_order': self.spatial_order,
            'window': list(self.window), 'residual': self.residual,
            'expected': self.expected}


def _Slope(abscissa, ordinate):
  if len(abscissa) < 4:
    raise FitError('slope fit needs at least 4 points, got %d' % len(abscissa))
  slope, intercept = np.polyfit(abscissa, ordinate, 1)
  residual = np.sqrt(np.mean((ordinate - slope * abscissa - intercept) ** 2))
  return float(slope), float(residual)


def SpatialOrder(column, grid):
  """Fitted polynomial decay order of the radial envelope of |column|.

  The envelope at radius r is the maximum of |F| over |x| >= r; the fit uses
  the range where it lies between 1e-10 and 1e-2 of its peak.
  """
  radius = grid.Radius().ravel()
  magnitude = np.abs(column).ravel()
  order = np.argsort(-radius, kind='stable')
  envelope = np.maximum.accumulate(magnitude[order])
  radii = radius[order]
  peak = envelope[-1]
  window = (envelope >= 1e-10 * peak) & (envelope <= 1e-2 * peak)
  radii, envelope = radii[window], envelope[window]
  radii, unique = np.unique(radii, return_index=True)
  slope, _residual = _Slope(np.log1p(radii), np.log(envelope[unique]))
  return -slope


def CwtDecayProfile(phi, phi0, ladder, guard=WRAP_GUARD):
  """Fits the small-scale decay of W_Phi Phi_0.

  The slope of log sup_x |W_Phi Phi_0(x, t)| against log t is fitted over the
  smallest decade [t_min, 10 t_min] of scales below one, t_min the larger of
  2h and the ladder minimum. The spatial order is fitted at t_min.

  Raises:
    FitError: fewer than 4 ladder nodes in the window.

  Returns:
    DecayProfile: the fits and min{L, K} + d/2.
  """
  grid = phi.grid
  scales = ladder.Scales()
  low = max(2 * grid.spacing, scales.min())
  window = ladder.Restricted(low, min(10 * low, 1.0 - 1e-12))
  transform = Cwt(phi0.Signal(), phi, window, guard)
  axes = tuple(range(grid.dimension))
  suprema = np.max(np.abs(transform.values), axis=axes)
  slope, residual = _Slope(np.log(window.Scales()), np.log(suprema))
  spatial = SpatialOrder(transform.Column(len(window) - 1), grid)
  expected = (min(phi.meta.moment_order, phi0.meta.smoothness,
                  phi.meta.smoothness) + grid.dimension / 2)
  LOGGER.debug('decay profile of %s/%s: slope %.4f, spatial %.2f', phi.name,
               phi0.name, slope, spatial)
  return DecayProfile(slope, spatial, (float(window.Scales().min()),
                                       float(window.Scales().max())),
                      residual, expected)


def EnvelopeSlopes(kernel, ladder):
  """Fitted slopes of sup_x |W_g g(x, t)| over the smallest and the largest
  decade of the ladder.

  For a wavelet with L vanishing moments the two-sided envelope predicts
  L + d/2 and -(L + d/2).
  """
  scales = ladder.Scales()
  small = ladder.Restricted(scales.min(), 10 * scales.min())
  large = ladder.Restricted(scales.max() / 10, scales.max())
  slopes = []
  axes = tuple(range(kernel.grid.dimension))
  for window in (small, large):
    transform = Cwt(kernel.Signal(), kernel, window)
    suprema = np.max(np.abs(transform.values), axis=axes)
    slopes.append(_Slope(np.log(window.Scales()), np.log(suprema))[0])
  return tuple(slopes)


# ##############################################################################
# Weighted chain smoothing
#
def ChainMatrix(indices, decay):
  """The matrix 2^(-|k-l| delta) over an index window."""
  indices = np.asarray(indices)
  return 2.0 ** (-np.abs(indices[:, None] - indices[None, :]) * decay)


def WeightedChainSmoother(sequence, decay):
  """G_l = sum_k 2^(-|k-l| delta) g_k over the finite index window.

  Arguments:
    @ sequence: array_like
      g_k along axis 0; further axes (signal samples) are mapped over.
    @ decay: float
      delta > 0.

  Raises:
    InvalidInputError: delta is not positive.
  """
  if not decay > 0:
    raise gridlib.InvalidInputError('delta must be positive, got %r' % decay)
  sequence = np.asarray(sequence)
  matrix = ChainMatrix(np.arange(sequence.shape[0]), decay)
  return np.tensordot(matrix, sequence, axes=(1, 0))


def ChainBound(decay, exponent):
  """C = (sum over j in Z of 2^(-|j| delta r))^(1/r)."""
  ratio = 2.0 ** (-decay * exponent)
  return ((1 + ratio) / (1 - ratio)) ** (1 / exponent)
