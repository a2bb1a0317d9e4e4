#!/usr/bin/python3
"""Cardinal B-splines and the orthonormal spline wavelets built from them.

Every function here is a spline: the scaling function phi_m is a combination
sum_n c_n N_m(x - n) of shifted B-splines, and the wavelet psi_m a combination
sum_l d_l N_m(2x - l). The coefficient sequences are Fourier coefficients of
smooth periodic symbols, computed once on a circle of frequencies and cut where
their exponential decay reaches the floating point floor. Evaluation is then
exact at any point, so the quadrature checks below integrate piecewise
polynomials with Gauss-Legendre rules instead of grid sums.

Classes:
  SplineSystem: phi_m, psi_m and their coefficient sequences.
  WienerResult: Box values and verdict of the integrability check.

Error Classes:
  Error: Exception base class.
  PeriodizationError: The truncated periodization sum is not accurate enough.
  TruncationError: A coefficient sequence does not decay on the circle.
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
from scipy import interpolate
from scipy import ndimage
from scipy import special

# Package modules
from . import grid as gridlib
from . import kernels
from . import transform
from .funcnorms import ConfigurationError
from .grid import INFINITY

MAX_ORDER = 8
PERIODIZATION_TERMS = 64
PERIODIZATION_TOLERANCE = 1e-10
TRUNCATION_TOLERANCE = 1e-10
SEQUENCE_FLOOR = 1e-14
CIRCLE_POINTS = 4096
TENSOR_GRID = (8.0, 256)
FINITE_CHANGE = 0.01
DIVERGENT_CHANGE = 0.10
MOMENT_TOLERANCE = 1e-7
FINITE = 'finite'
DIVERGENT = 'divergent-trend'
UNDECIDED = 'undecided'
LOGGER = logging.getLogger('ucoorbit_splinewavelets')


class Error(gridlib.Error):
  """Superclass used for inheritance and external exception handling."""


class PeriodizationError(Error, ArithmeticError):
  """The periodization tail exceeds the tolerance; more terms are needed."""


class TruncationError(Error, ArithmeticError):
  """A coefficient sequence has not decayed before the circle wraps."""


def CheckOrder(order):
  """Returns the spline order as int, raising InvalidInputError outside
  [1, 8]."""
  if int(order) != order or not 1 <= order <= MAX_ORDER:
    raise gridlib.InvalidInputError(
        'spline order m must be an integer in [1, %d], got %r' % (
            MAX_ORDER, order))
  return int(order)


# ##############################################################################
# B-splines and the periodization
#
def CardinalBSpline(order, x):
  """N_m(x), the B-spline on the knots 0, 1, .., m, supported on [0, m).

  N_1 is the indicator of [0, 1); for m >= 2 the spline is continuous, so the
  half-open convention only matters for the box. Orders above 8 are accepted
  here because the Gram form of the periodization needs N_2m.
  """
  if int(order) != order or order < 1:
    raise gridlib.InvalidInputError(
        'B-spline order must be a positive integer, got %r' % (order,))
  x = np.asarray(x, dtype=float)
  spline = interpolate.BSpline.basis_element(np.arange(int(order) + 1.0),
                                             extrapolate=False)
  values = np.nan_to_num(spline(x))
  return np.where((x >= 0) & (x < order), values, 0.0)


def BSplineSymbol(order):
  """Returns FN_m(xi) = (2 pi)^(-1/2) ((1 - e^(-i xi))/(i xi))^m."""
  order = CheckOrder(order)
  def Symbol(xi):
    xi = np.asarray(xi, dtype=float)
    return (np.exp(-0.5j * order * xi) * np.sinc(xi / (2 * math.pi)) ** order /
            math.sqrt(2 * math.pi))
  return Symbol


def _TensorSymbol(factors):
  def Symbol(*xi):
    result = 1.0
    for factor, component in zip(factors, xi):
      result = result * factor(component)
    return result
  return Symbol


def BSpline(order, grid):
  """The cardinal B-spline N_m as a kernel, tensorized over the grid axes.

  Arguments:
    @ order: int
      m, 1 .. 8.
    @ grid: GridSpec

  Raises:
    InvalidInputError: m outside [1, 8].

  Returns:
    Kernel: exact space samples with the exact symbol attached.
  """
  order = CheckOrder(order)
  samples = 1.0
  for coordinate in grid.Points():
    samples = samples * CardinalBSpline(order, coordinate)
  symbol = _TensorSymbol([BSplineSymbol(order)] * grid.dimension)
  return kernels.Kernel(grid, space=samples, symbol=symbol,
                        name='N_%d' % order, role=kernels.PHI0)


def Periodization(order, xi, terms=PERIODIZATION_TERMS, exact_tail=True):
  """P(xi) = sum_k |FN_m(xi + 2 pi k)|^2, summed over |k| <= K.

  The frequency is first reduced to xi0 in [-pi, pi). With exact_tail the
  remainder sin^(2m)(xi0/2) pi^(-2m) [zeta(2m, K+1+y) + zeta(2m, K+1-y)],
  y = xi0/(2 pi), is added through the Hurwitz zeta function; otherwise its
  worst case must stay below 1e-10.

  Arguments:
    @ order: int
    @ xi: array_like
    % terms: int ~~ 64
      K_per.
    % exact_tail: bool ~~ True

  Raises:
    PeriodizationError: the tail bound exceeds 1e-10 without the exact tail.

  Returns:
    ndarray: P at every frequency.
  """
  order = CheckOrder(order)
  power = 2 * order
  offset = np.mod(np.asarray(xi, dtype=float) + math.pi,
                  2 * math.pi) / (2 * math.pi) - 0.5
  total = np.zeros_like(offset)
  for k in range(-terms, terms + 1):
    total += np.sinc(offset + k) ** power
  if exact_tail:
    total += (np.sin(math.pi * offset) ** power / math.pi ** power *
              (special.zeta(power, terms + 1 + offset) +
               special.zeta(power, terms + 1 - offset)))
  else:
    bound = (special.zeta(power, terms + 0.5) +
             special.zeta(power, terms + 1.5)) / math.pi ** power
    if bound > PERIODIZATION_TOLERANCE:
      raise PeriodizationError(
          'periodization tail bound %.3g for m=%d exceeds %g; raise K_per '
          'above %d' % (bound, order, PERIODIZATION_TOLERANCE, terms))
  return total / (2 * math.pi)


def GramPeriodization(order, xi):
  """The same periodization in closed form: sum_n N_2m(m+n) e^(-in xi)/(2 pi)."""
  order = CheckOrder(order)
  xi = np.asarray(xi, dtype=float)
  total = np.zeros_like(xi)
  for n in range(-order + 1, order):
    total += CardinalBSpline(2 * order, order + n) * np.cos(n * xi)
  return total / (2 * math.pi)


def PeriodizationDefect(order, count=1024, terms=PERIODIZATION_TERMS):
  """Largest gap between Periodization and GramPeriodization on [-pi, pi)."""
  xi = np.linspace(-math.pi, math.pi, count, endpoint=False)
  return float(np.max(np.abs(Periodization(order, xi, terms) -
                             GramPeriodization(order, xi))))


# ##############################################################################
# Coefficient sequences
#
def _CircleSequence(values, name):
  """Fourier coefficients of a periodic symbol sampled on the circle, cut at
  the floor.

  Returns:
    tuple: (coefficients, offset) where coefficients[i] belongs to index
    offset + i.
  """
  count = values.size
  sequence = np.fft.fftshift(np.fft.ifft(values))
  if np.max(np.abs(sequence.imag)) > 1e-12 * np.max(np.abs(sequence)):
    raise TruncationError('%s sequence is not real' % name)
  sequence = sequence.real
  magnitude = np.abs(sequence)
  keep = np.flatnonzero(magnitude >= SEQUENCE_FLOOR * magnitude.max())
  first, last = keep[0], keep[-1]
  if first < count // 8 or last > count - count // 8:
    raise TruncationError('%s sequence has not decayed within %d terms' % (
        name, count // 2))
  discarded = magnitude.sum() - magnitude[first:last + 1].sum()
  if discarded > TRUNCATION_TOLERANCE * magnitude.max():
    raise TruncationError('%s truncation tail %.3g exceeds %g' % (
        name, discarded, TRUNCATION_TOLERANCE))
  return sequence[first:last + 1].copy(), int(first - count // 2)


def _Circle(count=CIRCLE_POINTS):
  return 2 * math.pi * np.arange(count) / count


def ScalingCoefficients(order, terms=PERIODIZATION_TERMS, exact_tail=True):
  """c_n with phi_m = sum_n c_n N_m(. - n): the Fourier coefficients of
  (2 pi P)^(-1/2)."""
  xi = _Circle()
  gram = 2 * math.pi * Periodization(order, xi, terms, exact_tail)
  return _CircleSequence(gram ** -0.5, 'scaling')


def ConnectionCoefficients(order, terms=PERIODIZATION_TERMS, exact_tail=True):
  """a_k = <phi_m(t/2), phi_m(t - k)>.

  In frequency the inner product collapses to the 2 pi periodic filter
  H(xi) = Fphi(2 xi)/Fphi(xi) = ((1 + e^(-i xi))/2)^m (P(xi)/P(2 xi))^(1/2),
  and a_k = (1/pi) int_0^(2 pi) H(xi) e^(ik xi) d xi.
  """
  xi = _Circle()
  ratio = (Periodization(order, xi, terms, exact_tail) /
           Periodization(order, 2 * xi, terms, exact_tail))
  filtered = ((1 + np.exp(-1j * xi)) / 2) ** order * np.sqrt(ratio)
  coefficients, offset = _CircleSequence(filtered, 'connection')
  return 2 * coefficients, offset


def _SplineSum(coefficients, offset, order, u):
  """sum_n coefficients[n - offset] N_m(u - n), touching only the m nonzero
  terms at each point."""
  u = np.asarray(u, dtype=float)
  base = np.floor(u).astype(int)
  total = np.zeros_like(u)
  for i in range(order):
    index = base - i - offset
    valid = (index >= 0) & (index < coefficients.size)
    total[valid] += (coefficients[index[valid]] *
                     CardinalBSpline(order, u[valid] - (base[valid] - i)))
  return total


def Species(dimension):
  """The species E = {0,1}^d without the zero tuple, in lexicographic order."""
  return [species for species in itertools.product((0, 1), repeat=dimension)
          if any(species)]


# ##############################################################################
# The spline system
#
class SplineSystem(object):
  """The Battle-Lemarie scaling function phi_m and the wavelet psi_m.

  Members:
    @ order: int
    @ grid: GridSpec
      One-dimensional grid carrying the kernels.
    @ scaling: tuple
      (c_n, offset) of phi_m = sum c_n N_m(x - n).
    @ connection: tuple
      (a_k, offset), the connection coefficients.
    @ wavelet: tuple
      (d_l, offset) of psi_m = sum d_l N_m(2x - l).
    @ phi: Kernel
    @ psi: Kernel
  """

  def __init__(self, order, grid=None, terms=PERIODIZATION_TERMS,
               exact_tail=True):
    """Builds the coefficient sequences and both kernels.

    Arguments:
      @ order: int
        m, 1 .. 8.
      % grid: GridSpec ~~ GridSpec(1, 32, 4096)
      % terms: int ~~ 64
        K_per for the periodization sums.
      % exact_tail: bool ~~ True
        Adds the Hurwitz zeta remainder to the periodization sums.

    Raises:
      InvalidInputError: m out of range or a grid that is not one-dimensional.
      PeriodizationError, TruncationError: from the sequence construction.
    """
    self.order = CheckOrder(order)
    self.grid = grid or gridlib.GridSpec(1, 32.0, 4096)
    if self.grid.dimension != 1:
      raise gridlib.InvalidInputError(
          'a spline system lives on a 1-d grid, got dimension %d' % (
              self.grid.dimension,))
    self.terms = terms
    self.scaling = ScalingCoefficients(self.order, terms, exact_tail)
    self.connection = ConnectionCoefficients(self.order, terms, exact_tail)
    self.wavelet = self._WaveletSequence()
    LOGGER.debug('spline system m=%d: %d scaling, %d connection terms',
                 self.order, self.scaling[0].size, self.connection[0].size)
    axis = self.grid.Axis()
    self.phi = kernels.Kernel(
        self.grid, space=self.Scaling(axis), symbol=self.ScalingSymbol,
        name='phi_%d' % self.order, role=kernels.PHI0)
    self.psi = kernels.Kernel(
        self.grid, space=self.Wavelet(axis), symbol=self.WaveletSymbol,
        name='psi_%d' % self.order, role=kernels.WAVELET,
        moment_order=self.order)

  def __repr__(self):
    return '%s(m=%d)' % (type(self).__name__, self.order)

  def _WaveletSequence(self):
    """d_l = sum_k a_k (-1)^k c_(l+k+1), as one convolution."""
    scaling, scaling_offset = self.scaling
    connection, connection_offset = self.connection
    signs = (-1.0) ** (connection_offset + np.arange(connection.size))
    sequence = np.convolve((connection * signs)[::-1], scaling)
    last = connection_offset + connection.size - 1
    return sequence, scaling_offset - last - 1

  def Scaling(self, x):
    """phi_m at arbitrary points."""
    coefficients, offset = self.scaling
    return _SplineSum(coefficients, offset, self.order, x)

  def Wavelet(self, x):
    """psi_m at arbitrary points."""
    coefficients, offset = self.wavelet
    return _SplineSum(coefficients, offset, self.order,
                      2 * np.asarray(x, dtype=float))

  def Evaluate(self, species, x):
    """Psi^0 = phi_m or Psi^1 = psi_m at arbitrary points."""
    return self.Wavelet(x) if species else self.Scaling(x)

  def Support(self, species):
    """The interval outside which Psi^species is zero."""
    if species:
      coefficients, offset = self.wavelet
      return offset / 2, (offset + coefficients.size - 1 + self.order) / 2
    coefficients, offset = self.scaling
    return float(offset), float(offset + coefficients.size - 1 + self.order)

  def Filter(self, omega):
    """H(omega) = Fphi_m(2 omega)/Fphi_m(omega), so that
    a_k = (1/pi) int_0^(2 pi) H e^(ik omega)."""
    omega = np.asarray(omega, dtype=float)
    return (((1 + np.exp(-1j * omega)) / 2) ** self.order *
            np.sqrt(GramPeriodization(self.order, omega) /
                    GramPeriodization(self.order, 2 * omega)))

  def ScalingSymbol(self, xi):
    """Fphi_m = (2 pi)^(-1/2) FN_m / P^(1/2), with P in closed form."""
    return (BSplineSymbol(self.order)(xi) /
            np.sqrt(2 * math.pi * GramPeriodization(self.order, xi)))

  def WaveletSymbol(self, xi):
    """Fpsi_m(xi) = Fphi_m(xi/2)/2 sum_k a_k (-1)^k e^(i(k+1) xi/2)
    = e^(i xi/2) conj(H(xi/2 + pi)) Fphi_m(xi/2)."""
    xi = np.asarray(xi, dtype=float)
    return (np.exp(0.5j * xi) * np.conj(self.Filter(xi / 2 + math.pi)) *
            self.ScalingSymbol(xi / 2))

  def Atom(self, species, level, shift, points):
    """beta^(jd/2) prod_i Psi^(c_i)(2^j x_i - k_i) at the given coordinates.

    Arguments:
      @ species: tuple of int
        c, one entry per dimension.
      @ level: int
        j.
      @ shift: tuple of int
        k, one entry per dimension.
      @ points: sequence of ndarray
        One coordinate array per dimension, as GridSpec.Points returns.
    """
    values = 1.0
    for component, offset, coordinate in zip(species, shift, points):
      values = values * 2 ** (level / 2) * self.Evaluate(
          component, 2.0 ** level * np.asarray(coordinate) - offset)
    return values

  def AtomSupport(self, species, level, shift):
    """The interval covered by a 1-d atom."""
    low, high = self.Support(species)
    return (low + shift) / 2 ** level, (high + shift) / 2 ** level

  def AtomInner(self, first, second):
    """Exact inner product of two tensor atoms.

    Arguments:
      @ first: tuple
        (species, level, shift) with per-dimension species and shift tuples.
      @ second: tuple
        Same layout.

    Returns:
      float: the product of the per-axis Gauss-Legendre integrals.
    """
    (species, level, shift), (species2, level2, shift2) = first, second
    cell = 2.0 ** -(max(level, level2) + 1)
    total = 1.0
    for axis in range(len(species)):
      low, high = self.AtomSupport(species[axis], level, shift[axis])
      low2, high2 = self.AtomSupport(species2[axis], level2, shift2[axis])
      low, high = max(low, low2), min(high, high2)
      if low >= high:
        return 0.0
      left = lambda x, axis=axis: self.Atom(
          (species[axis],), level, (shift[axis],), (x,))
      right = lambda x, axis=axis: self.Atom(
          (species2[axis],), level2, (shift2[axis],), (x,))
      total *= CellQuadrature(lambda x: left(x) * right(x), low, high, cell,
                              self.order + 1)
    return float(total)

  def AsDict(self):
    """Metadata stored next to kernel archives."""
    connection, offset = self.connection
    return {'m': self.order,
            'connection': [float(value) for value in connection],
            'connection_offset': offset,
            'scaling_terms': int(self.scaling[0].size),
            'wavelet_terms': int(self.wavelet[0].size),
            'truncation_tolerance': TRUNCATION_TOLERANCE}


def BattleLemarieScaling(order, grid, terms=PERIODIZATION_TERMS):
  """The orthonormal spline scaling function phi_m as a kernel."""
  return SplineSystem(order, grid, terms).phi


def SplineWavelet(order, grid, terms=PERIODIZATION_TERMS):
  """The spline wavelet psi_m as a kernel."""
  return SplineSystem(order, grid, terms).psi


def SpeciesKernel(system, species, grid):
  """Psi^c = Psi^(c_1) x ... x Psi^(c_d) as a kernel on a d-dimensional grid;
  the zero species is the tensor scaling function."""
  if len(species) != grid.dimension:
    raise gridlib.InvalidInputError('species %r does not fit a %d-d grid' % (
        tuple(species), grid.dimension))
  if grid == system.grid:
    return system.psi if species[0] else system.phi
  factors = {0: system.ScalingSymbol, 1: system.WaveletSymbol}
  wavelet = any(species)
  return kernels.Kernel(
      grid, space=system.Atom(species, 0, (0,) * grid.dimension, grid.Points()),
      symbol=_TensorSymbol([factors[c] for c in species]),
      name='psi_%d^%s' % (system.order, ''.join(map(str, species))),
      role=kernels.WAVELET if wavelet else kernels.PHI0,
      moment_order=system.order if wavelet else None)


def TensorSystem(system, dimension, grid=None):
  """The tensor wavelets Psi^c for c in E.

  Arguments:
    @ system: SplineSystem
    @ dimension: int
      1 or 2.
    % grid: GridSpec ~~ None
      Defaults to the system grid in d = 1 and to an 8-wide box of 256^2
      samples in d = 2.

  Raises:
    InvalidInputError: d outside {1, 2} or a grid of another dimension.

  Returns:
    list: one Kernel per species, ordered as Species(d).
  """
  if dimension not in (1, 2):
    raise gridlib.InvalidInputError('tensor systems need d in {1, 2}, got %r'
                                    % (dimension,))
  if grid is None:
    grid = (system.grid if dimension == 1 else
            gridlib.GridSpec(dimension, *TENSOR_GRID))
  if grid.dimension != dimension:
    raise gridlib.InvalidInputError('grid dimension %d does not match d=%d' % (
        grid.dimension, dimension))
  return [SpeciesKernel(system, species, grid)
          for species in Species(dimension)]


# ##############################################################################
# Verification
#
def CellQuadrature(function, low, high, cell=0.5, order=8):
  """Gauss-Legendre quadrature over the cells [low + i*cell, low + (i+1)*cell].

  Exact for piecewise polynomials of degree 2*order - 1 whose breakpoints sit
  on the cell boundaries.
  """
  nodes, weights = np.polynomial.legendre.leggauss(order)
  start = math.floor(low / cell) * cell
  edges = np.arange(start, high + cell, cell)
  left = edges[:-1]
  points = left[:, None] + (nodes[None, :] + 1) * (cell / 2)
  return float(np.sum(function(points) * weights[None, :]) * cell / 2)


def WaveletMoments(system, count=None):
  """Relative moments int x^l psi_m / int |x^l psi_m| for l = 0 .. count-1."""
  count = system.order + 1 if count is None else count
  low, high = system.Support(1)
  moments = []
  for power in range(count):
    signed = CellQuadrature(lambda x: x ** power * system.Wavelet(x), low, high,
                            0.5, system.order + power)
    absolute = CellQuadrature(lambda x: np.abs(x ** power * system.Wavelet(x)),
                              low, high, 0.5, system.order + power)
    moments.append(abs(signed) / absolute)
  return moments


def FirstNonVanishingMoment(system, cap=None):
  """The smallest l whose relative moment exceeds 1e-7, or None up to cap."""
  cap = system.order + 1 if cap is None else cap
  for power, moment in enumerate(WaveletMoments(system, cap + 1)):
    if moment > MOMENT_TOLERANCE:
      return power
  return None


def PiecewisePolynomialResidual(system, samples=24):
  """Largest misfit of a degree m-1 polynomial on any half-integer cell of
  psi_m, relative to max |psi_m|."""
  low, high = system.Support(1)
  chebyshev = np.cos(math.pi * (np.arange(samples) + 0.5) / samples)
  worst = peak = 0.0
  for left in np.arange(math.floor(2 * low) / 2, high, 0.5):
    x = left + 0.25 * (1 + chebyshev)
    values = system.Wavelet(x)
    fit = np.polynomial.Polynomial.fit(x, values, system.order - 1)
    worst = max(worst, float(np.max(np.abs(fit(x) - values))))
    peak = max(peak, float(np.max(np.abs(values))))
  return worst / peak


def _Difference(function, x, step, order):
  return sum((-1) ** (order - j) * special.comb(order, j, exact=True) *
             function(x + j * step) for j in range(order + 1))


def SmoothnessDifferences(system, steps=(1e-2, 1e-3)):
  """Scaled finite differences of psi_m for each step h.

  Returns:
    list of dict: per step the maxima of |Delta^r psi|/h^r for r = m-2
    ('bounded'), m-1 ('lipschitz') and m ('jump').
  """
  order = system.order
  low, high = system.Support(1)
  rows = []
  for step in steps:
    x = np.arange(low - order * step, high, step)
    row = {'step': step}
    for key, difference in (('bounded', order - 2), ('lipschitz', order - 1),
                            ('jump', order)):
      if difference < 0:
        row[key] = None
        continue
      values = _Difference(system.Wavelet, x, step, difference)
      row[key] = float(np.max(np.abs(values)) / step ** difference)
    rows.append(row)
  return rows


# ##############################################################################
# Parameter ranges
#
def WavdecRange(moments, smoothness, dimension, p, q, scale='B'):
  """The open s-interval of the wavelet characterization.

  With M = min{L, K}: B-scale -M + d/p < s < M - d(1 - 1/p); F-scale
  -M + 2d max{1/p, 1/q} < s < M - d max{1/p, 1/q, 1 - 1/p}.

  Raises:
    ConfigurationError: an unknown scale.
    InvalidInputError: invalid exponents.

  Returns:
    tuple or None: (lower, upper), None when the interval is empty.
  """
  p = gridlib.ValidExponent(p, 'p')
  q = gridlib.ValidExponent(q, 'q')
  inverse_p = 0.0 if p == INFINITY else 1 / p
  inverse_q = 0.0 if q == INFINITY else 1 / q
  bound = min(moments, smoothness)
  d = dimension
  if scale == 'B':
    lower, upper = -bound + d * inverse_p, bound - d * (1 - inverse_p)
  elif scale == 'F':
    lower = -bound + 2 * d * max(inverse_p, inverse_q)
    upper = bound - d * max(inverse_p, inverse_q, 1 - inverse_p)
  else:
    raise ConfigurationError('scale must be B or F, got %r' % (scale,))
  if lower >= upper:
    return None
  return lower, upper


def SplineRange(order, dimension, p, q, scale='B'):
  """WavdecRange for the spline system of order m, where min{L, K} = m - 1."""
  order = CheckOrder(order)
  return WavdecRange(order - 1, order - 1, dimension, p, q, scale)


def WienerWindow(bound, dimension, v=0.0):
  """Largest (r1, r2) for which the weighted integrability is guaranteed:
  r1 < min{L,K} - d/2 and r2 < min{L,K} + d/2 - v."""
  return bound - dimension / 2, bound + dimension / 2 - v


class WienerResult(object):
  """Values of the integrability check over the nested boxes.

  Members:
    @ boxes: list of tuple
      (tmin, tmax) per box.
    @ values: list of float
    @ changes: list of float
      Relative change between consecutive boxes.
    @ verdict: str
      'finite', 'divergent-trend' or 'undecided'.
  """

  def __init__(self, boxes, values):
    self.boxes = boxes
    self.values = values
    self.changes = [abs(after - before) / before if before else INFINITY
                    for before, after in zip(values, values[1:])]
    if len(self.changes) >= 2 and max(self.changes[-2:]) < FINITE_CHANGE:
      self.verdict = FINITE
    elif self.changes and self.changes[-1] > DIVERGENT_CHANGE:
      self.verdict = DIVERGENT
    else:
      self.verdict = UNDECIDED

  def __repr__(self):
    return 'WienerResult(%s, values=%s)' % (
        self.verdict, ', '.join('%.4g' % value for value in self.values))

  def AsDict(self):
    return {'boxes': [list(box) for box in self.boxes], 'values': self.values,
            'changes': self.changes, 'verdict': self.verdict}


def PropWienerIntegral(kernel, weight, small=(1, 2, 3, 4), large=None,
                       oversampling=2, guard=None, workers=None):
  """The integral of sup over (x,t)V of |<pi(y,s)Psi, Psi>| times w(x,t),
  with V = [-1,1]^d x (1/2, 1], over nested boxes.

  Box i covers t in [2^(-small[i]), 2^(large[i])] and the whole grid in x.
  The tile sup runs over all grid points with |y - x|_inf <= t and over the
  ladder scales in [t/2, t], both endpoints included.

  Arguments:
    @ kernel: Kernel
      Psi, evaluated against itself.
    @ weight: WeightSpec
    % small: sequence of int ~~ (1, 2, 3, 4)
      Octaves below 1 per box, non-decreasing.
    % large: sequence of int ~~ small
      Octaves above 1 per box.
    % oversampling: int ~~ 2
      Ladder nodes per octave; the tile sees oversampling + 1 scales.
    % guard: float ~~ None
      Wrap-around guard of the transform.
    % workers: int ~~ None

  Raises:
    InvalidInputError: boxes of different counts.
    OutOfRangeError: the boxes leave the resolvable window.

  Returns:
    WienerResult
  """
  large = small if large is None else large
  if len(small) != len(large) or not small:
    raise gridlib.InvalidInputError('need one (small, large) pair per box')
  grid = kernel.grid
  ladder = gridlib.ScaleLadder(2.0, -max(large), max(small) + 1, oversampling)
  transformed = transform.Cwt(kernel.Signal(), kernel, ladder, guard, workers)
  magnitude = np.abs(transformed.values)
  scales = ladder.Scales()
  radius = grid.Radius()
  tiles = len(ladder) - oversampling

  def SpatialIntegral(position):
    scale = scales[position]
    stacked = magnitude[..., position:position + oversampling + 1].max(axis=-1)
    width = 2 * int(math.floor(scale / grid.spacing * (1 + 1e-9))) + 1
    tile = ndimage.maximum_filter(stacked, size=width, mode='constant')
    return float(np.sum(tile * weight(radius, scale)) * grid.cell)

  if workers and workers > 1:
    with futures.ThreadPoolExecutor(max_workers=workers) as pool:
      integrals = np.array(list(pool.map(SpatialIntegral, range(tiles))))
  else:
    integrals = np.array([SpatialIntegral(position)
                          for position in range(tiles)])
  tile_ladder = gridlib.ScaleLadder.FromNodes(
      2.0, ladder.first, ladder.first + tiles - 1, oversampling)
  boxes, values = [], []
  for below, above in zip(small, large):
    box = tile_ladder.Restricted(2.0 ** -below, 2.0 ** above)
    start = box.first - tile_ladder.first
    values.append(float(gridlib.ScaleIntegral(
        integrals[start:start + len(box)], box, grid.dimension)))
    boxes.append((2.0 ** -below, 2.0 ** above))
    LOGGER.debug('wiener box %r: %.6g', boxes[-1], values[-1])
  return WienerResult(boxes, values)


def SubTileRefinement(kernel, weight, small=(1, 2, 3, 4), large=None,
                      oversampling=2, workers=None):
  """Relative change of the largest-box value when the scale samples of each
  tile are doubled."""
  coarse = PropWienerIntegral(kernel, weight, small, large, oversampling,
                              workers=workers)
  fine = PropWienerIntegral(kernel, weight, small, large, 2 * oversampling,
                            workers=workers)
  return abs(fine.values[-1] - coarse.values[-1]) / coarse.values[-1]
