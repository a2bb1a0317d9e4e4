#!/usr/bin/python3
"""Sampled signals on a truncated uniform grid and the Lebesgue norms on them.

Every other module of the laboratory consumes the types defined here. A signal
lives on the box [-X, X)^d, sampled at x_i = -X + i*h with h = 2X/n per axis.
Frequency samples use the FFT ordering of numpy.fft.fftfreq throughout.

Classes:
  GridSpec: Dimension, extent and sample count of the box.
  SampledSignal: Complex samples of a function on a GridSpec.
  ScaleLadder: Geometric ladder of dilation parameters t.
  MixedNormParams: The (p, q) pair of the mixed Lebesgue norms.

Error Classes:
  Error: Exception base class.
  InvalidInputError: Input violates a precondition of a grid operation.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import logging
import math

# Third-party modules
import numpy as np

# Package modules
from . import Error as BaseError

INFINITY = math.inf
_RESAMPLE_CHUNK = 256
LOGGER = logging.getLogger('ucoorbit_grid')


class Error(BaseError):
  """Exception base class for the grid module."""


class InvalidInputError(Error, ValueError):
  """Input violates a precondition of a grid operation."""


def ValidExponent(value, name='p'):
  """Returns `value` as a float after checking it lies in (0, inf].

  Arguments:
    @ value: float or str
      The exponent, 'inf' and math.inf are both accepted.
    % name: str ~~ 'p'
      Name used in the error message.

  Raises:
    InvalidInputError: the exponent is not positive.
  """
  try:
    value = float(value)
  except (TypeError, ValueError):
    raise InvalidInputError('%s must be a number or inf, got %r' % (name, value))
  if not value > 0:
    raise InvalidInputError('%s must lie in (0, inf], got %r' % (name, value))
  return value


class GridSpec(object):
  """Uniform grid over the box [-X, X)^d.

  Members:
    @ dimension: int
      Spatial dimension d, 1 or 2.
    @ extent: float
      Half-width X of the box.
    @ count: int
      Samples per axis, a power of two of at least 16.
  """
  __slots__ = ('dimension', 'extent', 'count')

  def __init__(self, dimension=1, extent=32.0, count=4096):
    if dimension not in (1, 2):
      raise InvalidInputError('dimension must be 1 or 2, got %r' % dimension)
    if not extent > 0:
      raise InvalidInputError('extent must be positive, got %r' % extent)
    count = int(count)
    if count < 16 or count & (count - 1):
      raise InvalidInputError(
          'count must be a power of two of at least 16, got %r' % count)
    self.dimension = dimension
    self.extent = float(extent)
    self.count = count

  def __eq__(self, other):
    return (isinstance(other, GridSpec) and
            (self.dimension, self.extent, self.count) ==
            (other.dimension, other.extent, other.count))

  def __hash__(self):
    return hash((self.dimension, self.extent, self.count))

  def __repr__(self):
    return '%s(dimension=%d, extent=%r, count=%d)' % (
        type(self).__name__, self.dimension, self.extent, self.count)

  @property
  def spacing(self):
    """The sample spacing h = 2X/n."""
    return 2 * self.extent / self.count

  @property
  def cell(self):
    """Volume h^d of one grid cell, the rectangle-rule weight."""
    return self.spacing ** self.dimension

  @property
  def shape(self):
    return (self.count,) * self.dimension

  @property
  def nyquist(self):
    """Largest resolved frequency pi/h."""
    return math.pi / self.spacing

  def Axis(self):
    """Returns the sample positions along one axis."""
    return -self.extent + self.spacing * np.arange(self.count)

  def Points(self):
    """Returns a tuple of d coordinate arrays, each of the full grid shape."""
    axis = self.Axis()
    return np.meshgrid(*([axis] * self.dimension), indexing='ij')

  def Radius(self):
    """Returns |x| at every sample."""
    return np.sqrt(sum(coord ** 2 for coord in self.Points()))

  def FrequencyAxis(self):
    """Returns the angular frequencies along one axis in FFT order."""
    return 2 * math.pi * np.fft.fftfreq(self.count, self.spacing)

  def Frequencies(self):
    """Returns a tuple of d frequency arrays, each of the full grid shape."""
    axis = self.FrequencyAxis()
    return np.meshgrid(*([axis] * self.dimension), indexing='ij')

  def FrequencyRadius(self):
    """Returns |xi| at every frequency sample."""
    return np.sqrt(sum(coord ** 2 for coord in self.Frequencies()))

  def Refined(self, factor=2):
    """Returns a grid on the same box with `factor` times the sample count."""
    return GridSpec(self.dimension, self.extent, self.count * factor)

  def Widened(self, factor=2):
    """Returns a grid with the same spacing over a `factor` times wider box."""
    return GridSpec(self.dimension, self.extent * factor, self.count * factor)


class SampledSignal(object):
  """Complex samples of a function on a GridSpec.

  The samples array is read-only once the signal is constructed.
  """
  __slots__ = ('grid', 'samples')

  def __init__(self, grid, samples):
    """Wraps `samples` after validating shape and finiteness.

    Arguments:
      @ grid: GridSpec
      @ samples: array_like
        Either of the grid shape, or flat of length n^d in row-major order.

    Raises:
      InvalidInputError: shape mismatch or non-finite samples.
    """
    samples = np.array(samples, dtype=complex)
    if samples.size != grid.count ** grid.dimension:
      raise InvalidInputError('expected %d samples for %r, got %d' % (
          grid.count ** grid.dimension, grid, samples.size))
    samples = samples.reshape(grid.shape)
    if not np.all(np.isfinite(samples)):
      raise InvalidInputError('signal contains non-finite samples')
    samples.setflags(write=False)
    self.grid = grid
    self.samples = samples

  @classmethod
  def Evaluate(cls, grid, function):
    """Samples `function(*coordinates)` on the grid."""
    return cls(grid, function(*grid.Points()))

  @classmethod
  def Zero(cls, grid):
    return cls(grid, np.zeros(grid.shape))

  def __repr__(self):
    return '%s(%r)' % (type(self).__name__, self.grid)

  def __add__(self, other):
    _CheckSameGrid([self, other])
    return SampledSignal(self.grid, self.samples + other.samples)

  def __sub__(self, other):
    _CheckSameGrid([self, other])
    return SampledSignal(self.grid, self.samples - other.samples)

  def __mul__(self, scalar):
    return SampledSignal(self.grid, self.samples * scalar)

  __rmul__ = __mul__

  def Abs(self):
    """Returns the real array |f|."""
    return np.abs(self.samples)

  def Conjugate(self):
    return SampledSignal(self.grid, np.conj(self.samples))

  def IsReal(self, tolerance=1e-12):
    scale = np.max(np.abs(self.samples)) or 1.0
    return np.max(np.abs(self.samples.imag)) <= tolerance * scale

  def BoundaryTail(self):
    """Returns the largest |f| on the outer faces of the box."""
    return EdgeMaximum(self.samples)


def EdgeMaximum(values):
  """Returns the largest modulus on the outer faces of a sample array."""
  values = np.abs(values)
  edges = []
  for axis in range(values.ndim):
    edges.append(np.take(values, 0, axis=axis).max())
    edges.append(np.take(values, -1, axis=axis).max())
  return float(max(edges))


def _CheckSameGrid(members):
  if not members:
    return
  grid = members[0].grid
  for member in members[1:]:
    if member.grid != grid:
      raise InvalidInputError('members live on different grids: %r and %r' % (
          grid, member.grid))


# ##############################################################################
# Fourier transform under the (2 pi)^(-d/2) convention
#
def _Phase(grid):
  """e^{iX(xi_1 + ... + xi_d)}, the shift from x_0 = -X to the origin."""
  return np.exp(1j * grid.extent * sum(grid.Frequencies()))


def Fourier(grid, samples):
  """Returns Ff at the FFT-ordered frequencies of `grid`.

  Ff(xi) = (2 pi)^(-d/2) * integral of e^{-ix.xi} f(x) dx, discretized by the
  rectangle rule on the grid.
  """
  scale = (2 * math.pi) ** (-grid.dimension / 2) * grid.cell
  return scale * _Phase(grid) * np.fft.fftn(samples)


def InverseFourier(grid, spectrum):
  """Inverts Fourier(): returns space samples for frequency samples."""
  scale = (2 * math.pi) ** (grid.dimension / 2) / grid.cell
  return scale * np.fft.ifftn(spectrum / _Phase(grid))


# ##############################################################################
# Lebesgue norms
#
def LpArray(values, cell, p, axis=None):
  """Rectangle-rule L_p norm of an array of samples.

  Arguments:
    @ values: ndarray
      Samples, complex or real.
    @ cell: float
      Quadrature weight of one sample.
    @ p: float
      Exponent in (0, inf].
    % axis: int or tuple ~~ None
      Axes integrated over, all of them by default.

  Returns:
    float or ndarray: the norm(s).
  """
  magnitude = np.abs(values)
  if p == INFINITY:
    return magnitude.max(axis=axis)
  return (cell * np.sum(magnitude ** p, axis=axis)) ** (1 / p)


def LpNorm(signal, p):
  """Returns the L_p (quasi-)norm of a SampledSignal.

  Arguments:
    @ signal: SampledSignal
    @ p: float
      Exponent in (0, inf]; inf yields the maximal sample.

  Raises:
    InvalidInputError: p is not positive.

  Returns:
    float: (h^d * sum |f|^p)^(1/p).
  """
  p = ValidExponent(p)
  return float(LpArray(signal.samples, signal.grid.cell, p))


class MixedNormParams(object):
  """The exponents (p, q) of the mixed norms l_q(L_p) and L_p(l_q)."""
  __slots__ = ('p', 'q')

  def __init__(self, p, q):
    self.p = ValidExponent(p, 'p')
    self.q = ValidExponent(q, 'q')

  def __repr__(self):
    return '%s(p=%r, q=%r)' % (type(self).__name__, self.p, self.q)


def LqSum(values, q, axis=None):
  """Returns (sum |v|^q)^(1/q), or the maximum when q is infinite."""
  values = np.abs(values)
  if q == INFINITY:
    return values.max(axis=axis)
  return np.sum(values ** q, axis=axis) ** (1 / q)


def LqOfLp(members, mixed):
  """Returns ||{f_k} | l_q(L_p)||, the q-sum of the members' L_p norms.

  Raises:
    InvalidInputError: the members live on different grids.
  """
  members = list(members)
  if not members:
    return 0.0
  _CheckSameGrid(members)
  norms = np.array([LpNorm(member, mixed.p) for member in members])
  return float(LqSum(norms, mixed.q))


def LpOfLq(members, mixed):
  """Returns ||{f_k} | L_p(l_q)||, pointwise q-aggregation then L_p.

  Raises:
    InvalidInputError: the members live on different grids.
  """
  members = list(members)
  if not members:
    return 0.0
  _CheckSameGrid(members)
  stack = np.stack([member.samples for member in members])
  pointwise = LqSum(stack, mixed.q, axis=0)
  return float(LpArray(pointwise, members[0].grid.cell, mixed.p))


# ##############################################################################
# Resampling
#
def _InterpolateAxis(values, axis, grid, positions, periodic):
  """Evaluates the trigonometric interpolant of `values` along `axis`.

  The Nyquist term enters as a cosine so that real data stays real.
  """
  count = grid.count
  frequencies = grid.FrequencyAxis()
  nyquist = count // 2
  coefficients = np.moveaxis(np.fft.fft(values, axis=axis) / count, axis, 0)
  result = np.empty((len(positions),) + coefficients.shape[1:], dtype=complex)
  for start in range(0, len(positions), _RESAMPLE_CHUNK):
    offset = positions[start:start + _RESAMPLE_CHUNK] + grid.extent
    basis = np.exp(1j * np.outer(offset, frequencies))
    basis[:, nyquist] = np.cos(frequencies[nyquist] * offset)
    result[start:start + _RESAMPLE_CHUNK] = np.tensordot(
        basis, coefficients, axes=(1, 0))
  if not periodic:
    outside = (positions < -grid.extent) | (positions >= grid.extent)
    result[outside] = 0
  return np.moveaxis(result, 0, axis)


def Resample(signal, shift=0.0, dilation=1.0):
  """Returns samples of x -> f(lambda * (x - shift)) on the same grid.

  Shifts by whole grid steps at lambda = 1 are exact circular rolls. All other
  cases evaluate the band-limited interpolant; with lambda = 1 it is periodic,
  otherwise points mapped outside the box read zero.

  Arguments:
    @ signal: SampledSignal
    % shift: float or sequence of d floats ~~ 0.0
    % dilation: float ~~ 1.0
      The factor lambda, must be positive.

  Raises:
    InvalidInputError: dilation is not positive or shift has the wrong length.

  Returns:
    SampledSignal: the resampled function.
  """
  if not dilation > 0:
    raise InvalidInputError('dilation must be positive, got %r' % dilation)
  grid = signal.grid
  shift = np.broadcast_to(np.asarray(shift, dtype=float), (grid.dimension,))
  steps = shift / grid.spacing
  if dilation == 1 and np.allclose(steps, np.round(steps), rtol=0, atol=1e-9):
    rolled = np.roll(signal.samples, tuple(int(round(s)) for s in steps),
                     axis=tuple(range(grid.dimension)))
    return SampledSignal(grid, rolled)
  values = signal.samples
  axis_points = grid.Axis()
  for axis in range(grid.dimension):
    positions = dilation * (axis_points - shift[axis])
    values = _InterpolateAxis(values, axis, grid, positions, dilation == 1)
  return SampledSignal(grid, values)


def InnerBox(grid, factor=2):
  """Index of the box of `grid` inside grid.Widened(factor)."""
  margin = (factor - 1) * grid.count // 2
  return (slice(margin, margin + grid.count),) * grid.dimension


def ZeroExtended(signal, factor=2):
  """The signal on grid.Widened(factor), zero outside its own box."""
  margin = (factor - 1) * signal.grid.count // 2
  return SampledSignal(signal.grid.Widened(factor),
                       np.pad(signal.samples, margin))


# ##############################################################################
# Geometric scale ladder and log-measure quadrature
#
class ScaleLadder(object):
  """Geometric ladder t_u = beta^(-u/nu) for node indices u in [first, last].

  Octave indices j in [j_min, j_max] cover the nodes u = j_min*nu .. j_max*nu,
  so scales decrease as the index grows.
  """
  __slots__ = ('base', 'first', 'last', 'oversampling')

  def __init__(self, base=2.0, jmin=-2, jmax=5, oversampling=8):
    if not base > 1:
      raise InvalidInputError('ladder base must exceed 1, got %r' % base)
    if jmin > jmax:
      raise InvalidInputError('ladder needs jmin <= jmax, got [%r, %r]' % (
          jmin, jmax))
    if int(oversampling) < 1:
      raise InvalidInputError('oversampling must be at least 1, got %r' % (
          oversampling,))
    self.base = float(base)
    self.oversampling = int(oversampling)
    self.first = int(round(jmin * self.oversampling))
    self.last = int(round(jmax * self.oversampling))

  @classmethod
  def FromNodes(cls, base, first, last, oversampling):
    """Builds a ladder directly from node indices."""
    ladder = cls(base, 0, 0, oversampling)
    if first > last:
      raise InvalidInputError('empty ladder [%r, %r]' % (first, last))
    ladder.first, ladder.last = int(first), int(last)
    return ladder

  @classmethod
  def Covering(cls, base, tmin, tmax, oversampling):
    """Returns the widest ladder whose scales lie inside [tmin, tmax]."""
    logbase = math.log(base) / oversampling
    first = math.ceil(-math.log(tmax) / logbase - 1e-9)
    last = math.floor(-math.log(tmin) / logbase + 1e-9)
    return cls.FromNodes(base, first, last, oversampling)

  def __eq__(self, other):
    return (isinstance(other, ScaleLadder) and
            (self.base, self.first, self.last, self.oversampling) ==
            (other.base, other.first, other.last, other.oversampling))

  def __len__(self):
    return self.last - self.first + 1

  def __repr__(self):
    return '%s(base=%r, nodes=[%d, %d], oversampling=%d)' % (
        type(self).__name__, self.base, self.first, self.last,
        self.oversampling)

  @property
  def jmin(self):
    return self.first / self.oversampling

  @property
  def jmax(self):
    return self.last / self.oversampling

  @property
  def step(self):
    """Ratio beta^(1/nu) between neighbouring scales."""
    return self.base ** (1 / self.oversampling)

  def Indices(self):
    return np.arange(self.first, self.last + 1)

  def Scales(self):
    """Returns the scales, strictly decreasing."""
    return self.base ** (-self.Indices() / self.oversampling)

  def Weights(self):
    """Trapezoid weights of the log-measure dt/t at each node."""
    weight = math.log(self.base) / self.oversampling
    weights = np.full(len(self), weight)
    if len(self) > 1:
      weights[0] = weights[-1] = weight / 2
    return weights

  def Position(self, index):
    """Returns the array position of node `index`, or None if absent."""
    if self.first <= index <= self.last:
      return index - self.first
    return None

  def Restricted(self, tmin=0.0, tmax=INFINITY):
    """Returns the sub-ladder of scales inside [tmin, tmax].

    Raises:
      InvalidInputError: no node lies inside the window.
    """
    scales = self.Scales()
    keep = np.flatnonzero((scales >= tmin * (1 - 1e-12)) &
                          (scales <= tmax * (1 + 1e-12)))
    if not keep.size:
      raise InvalidInputError('no ladder scale inside [%r, %r]' % (tmin, tmax))
    return ScaleLadder.FromNodes(self.base, self.first + keep[0],
                                 self.first + keep[-1], self.oversampling)


def ScaleIntegral(values, ladder, exponent=0.0, axis=-1):
  """Quadrature of the integral of v(t) t^(-sq) dt/t over the ladder.

  Any further t-powers are the caller's business and go inside `values`.

  Arguments:
    @ values: array_like
      One value per ladder node along `axis`.
    @ ladder: ScaleLadder
    % exponent: float ~~ 0.0
      The product s*q.
    % axis: int ~~ -1
      Axis of `values` that runs over the ladder.

  Raises:
    InvalidInputError: empty input, length mismatch or non-finite values.

  Returns:
    float or ndarray: the integral, reduced over `axis`.
  """
  values = np.asarray(values)
  if values.size == 0:
    raise InvalidInputError('scale integral over an empty ladder')
  if values.shape[axis] != len(ladder):
    raise InvalidInputError('expected %d values per ladder, got %d' % (
        len(ladder), values.shape[axis]))
  if not np.all(np.isfinite(values)):
    raise InvalidInputError('scale integrand contains non-finite values')
  factor = ladder.Weights() * ladder.Scales() ** (-exponent)
  values = np.moveaxis(values, axis, -1)
  return values @ factor
