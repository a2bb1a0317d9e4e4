#!/usr/bin/python3
"""Local-means kernels, analyzing vectors and dyadic partitions of unity.

A Kernel holds space and frequency samples on a GridSpec that agree under the
discrete Fourier transform. Its metadata (vanishing moments, smoothness proxy,
decay order, band and role) is never given by hand: it is measured by the
checkers in this module the first time it is asked for.

Classes:
  KernelMeta: Measured properties of a kernel.
  Kernel: Space/frequency samples of a kernel.
  Admissibility: Value of the admissibility constant, or divergence.
  PartitionSystem: Frequency members of a dyadic partition of unity.

Error Classes:
  Error: Exception base class.
  PreconditionError: A construction precondition does not hold.
  InvalidKernelError: A kernel fails a verified property.
  RangeTruncationError: The grid does not resolve the requested frequencies.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import itertools
import logging
import math

# Third-party modules
import numpy as np
from scipy import special

# Package modules
from . import grid as gridlib
from .grid import Fourier, InverseFourier

PHI0 = 'phi0'
PHI = 'phi'
WAVELET = 'wavelet'
ROLES = (PHI0, PHI, WAVELET)

MOMENT_CAP = 10
SMOOTHNESS_CAP = 8
DECAY_CAP = 8
MOMENT_TOLERANCE = 1e-8
BAND_THRESHOLD = 1e-6
DECAY_LIMIT = 1e6
SPECTRAL_FLOOR = 1e-12
LOGGER = logging.getLogger('ucoorbit_kernels')


class Error(gridlib.Error):
  """Exception base class for the kernels module."""


class PreconditionError(Error, ValueError):
  """A construction precondition does not hold."""


class InvalidKernelError(Error, ValueError):
  """A kernel fails a verified property."""


class RangeTruncationError(Error, ValueError):
  """The grid does not resolve the requested frequencies."""


def MultiIndices(dimension, order):
  """Returns all multi-indices with |alpha|_1 <= order, ordered by degree."""
  indices = []
  for degree in range(order + 1):
    for alpha in itertools.product(range(degree + 1), repeat=dimension):
      if sum(alpha) == degree:
        indices.append(tuple(reversed(alpha)))
  return indices


class KernelMeta(object):
  """Measured properties of a kernel.

  Members:
    @ moment_order: int
      L, the number of consecutive vanishing moment degrees starting at 0.
    @ smoothness: int
      K, the largest tested weight exponent passing the (S_K) check, -1 if none.
    @ decay: int
      Largest N passing the (D) check.
    @ band: float
      The band parameter epsilon, 0 when no band is detected.
    @ role: str
      One of 'phi0', 'phi', 'wavelet'.
  """
  __slots__ = ('moment_order', 'smoothness', 'decay', 'band', 'role')

  def __init__(self, moment_order, smoothness, decay, band, role):
    self.moment_order = moment_order
    self.smoothness = smoothness
    self.decay = decay
    self.band = band
    self.role = role

  def __repr__(self):
    return 'KernelMeta(%s)' % ', '.join(
        '%s=%r' % item for item in self.AsDict().items())

  def AsDict(self):
    return {'L': self.moment_order, 'K': self.smoothness,
            'N_dec': self.decay, 'epsilon': self.band, 'role': self.role}


class Kernel(object):
  """Space and frequency samples of a kernel on a grid.

  Members:
    @ grid: GridSpec
    @ space: ndarray
      Space samples; real whenever the imaginary part is negligible.
    @ frequency: ndarray
      Frequency samples under the (2 pi)^(-d/2) convention, FFT ordered.
    % symbol: callable or None
      Exact Fourier transform, called with d frequency arrays. Used to dilate
      without interpolation.
    @ name: str
  """

  def __init__(self, grid, space=None, frequency=None, symbol=None,
               name='kernel', role=WAVELET, moment_order=None):
    """Builds a kernel from exactly one of space samples, frequency samples or
    a symbol.

    Arguments:
      @ grid: GridSpec
      % space: ndarray ~~ None
      % frequency: ndarray ~~ None
      % symbol: callable ~~ None
      % name: str ~~ 'kernel'
      % role: str ~~ 'wavelet'
      % moment_order: int ~~ None
        A moment order established by the constructing routine; verified when
        the metadata is measured.

    Raises:
      PreconditionError: no representation, or an unknown role.
    """
    if role not in ROLES:
      raise PreconditionError('unknown kernel role %r' % role)
    if space is not None:
      space = np.asarray(space).reshape(grid.shape)
      frequency = Fourier(grid, space)
    else:
      if frequency is None:
        if symbol is None:
          raise PreconditionError('kernel %r has no representation' % name)
        frequency = symbol(*grid.Frequencies())
      frequency = np.asarray(frequency, dtype=complex).reshape(grid.shape)
      space = InverseFourier(grid, frequency)
    if np.iscomplexobj(space):
      scale = np.max(np.abs(space)) or 1.0
      if np.max(np.abs(space.imag)) <= 1e-12 * scale:
        space = space.real
    if not (np.all(np.isfinite(space)) and np.all(np.isfinite(frequency))):
      raise InvalidKernelError('kernel %r has non-finite samples' % name)
    space = np.array(space)
    frequency = np.array(frequency, dtype=complex)
    space.setflags(write=False)
    frequency.setflags(write=False)
    self.grid = grid
    self.space = space
    self.frequency = frequency
    self.symbol = symbol
    self.name = name
    self.role = role
    self._moment_order = moment_order
    self._meta = None

  def __repr__(self):
    return '%s(%r, role=%r)' % (type(self).__name__, self.name, self.role)

  @property
  def meta(self):
    """Measured KernelMeta, computed on first access."""
    if self._meta is None:
      self._meta = Measure(self, self._moment_order)
    return self._meta

  def Consistency(self):
    """Largest deviation between the frequency samples and the DFT of the
    space samples."""
    return float(np.max(np.abs(Fourier(self.grid, self.space) - self.frequency)))

  def Signal(self):
    return gridlib.SampledSignal(self.grid, self.space)

  def Mass(self):
    """Integral of the kernel by the rectangle rule."""
    return complex(self.space.sum() * self.grid.cell)

  def L1Norm(self):
    return float(np.abs(self.space).sum() * self.grid.cell)

  def L2Norm(self):
    return float(np.sqrt((np.abs(self.space) ** 2).sum() * self.grid.cell))

  def IsReal(self):
    return not np.iscomplexobj(self.space)

  def Reflected(self):
    """Returns x -> g(-x); exact on the grid through x_{n-i} = -x_i."""
    axes = tuple(range(self.grid.dimension))
    samples = np.roll(np.flip(self.space, axis=axes), 1, axis=axes)
    symbol = None
    if self.symbol is not None:
      original = self.symbol
      symbol = lambda *xi: original(*(-component for component in xi))
    reflected = Kernel(self.grid, space=samples, name=self.name + '~',
                       role=self.role, moment_order=self._moment_order)
    reflected.symbol = symbol
    return reflected

  def IsEven(self, tolerance=1e-10):
    scale = np.max(np.abs(self.space)) or 1.0
    return np.max(np.abs(self.Reflected().space - self.space)) <= tolerance * scale

  def IsRadial(self, tolerance=1e-8):
    """Whether |Fg| depends on |xi| only, checked on the coordinate axes and
    the diagonal for d = 2."""
    if self.grid.dimension == 1:
      return self.IsEven(tolerance)
    values = self.frequency
    scale = np.max(np.abs(values)) or 1.0
    deviation = max(np.max(np.abs(values - values.T)),
                    np.max(np.abs(values - np.roll(np.flip(values, 0), 1, 0))))
    return deviation <= tolerance * scale

  def WithRole(self, role):
    """Returns a copy tagged with another role."""
    clone = Kernel(self.grid, space=self.space, name=self.name, role=role,
                   moment_order=self._moment_order)
    clone.frequency = self.frequency
    clone.symbol = self.symbol
    return clone

  def Widened(self, factor=2):
    """The kernel on grid.Widened(factor), from its symbol when it has one
    and from the zero-extended space samples otherwise."""
    wide = self.grid.Widened(factor)
    if self.symbol is not None:
      return Kernel(wide, symbol=self.symbol, name=self.name, role=self.role,
                    moment_order=self._moment_order)
    extended = gridlib.ZeroExtended(self.Signal(), factor)
    return Kernel(wide, space=extended.samples, name=self.name, role=self.role,
                  moment_order=self._moment_order)


# ##############################################################################
# Condition checkers
#
def Moments(kernel, lmax):
  """Returns the moments integral of x^alpha g(x) dx for all |alpha| <= lmax.

  Arguments:
    @ kernel: Kernel
    @ lmax: int
      Highest total degree, at most 10.

  Raises:
    PreconditionError: lmax outside [0, 10].

  Returns:
    ndarray: one moment per multi-index, in MultiIndices order.
  """
  if not 0 <= lmax <= MOMENT_CAP:
    raise PreconditionError('moment degree must lie in [0, %d], got %r' % (
        MOMENT_CAP, lmax))
  points = kernel.grid.Points()
  values = []
  for alpha in MultiIndices(kernel.grid.dimension, lmax):
    monomial = np.prod([coord ** power for coord, power in zip(points, alpha)],
                       axis=0)
    values.append((monomial * kernel.space).sum() * kernel.grid.cell)
  values = np.array(values)
  return values.real if not np.iscomplexobj(kernel.space) else values


def _MomentScale(kernel, degree):
  """The absolute moment integral of (1+|x|)^degree |g|."""
  weight = (1 + kernel.grid.Radius()) ** degree
  return float((weight * np.abs(kernel.space)).sum() * kernel.grid.cell)


def VanishingDegrees(kernel, cap=MOMENT_CAP):
  """Returns L: the moments of degree 0 .. L-1 all vanish numerically."""
  moments = Moments(kernel, cap)
  indices = MultiIndices(kernel.grid.dimension, cap)
  for degree in range(cap + 1):
    threshold = MOMENT_TOLERANCE * _MomentScale(kernel, degree)
    block = [abs(value) for value, alpha in zip(moments, indices)
             if sum(alpha) == degree]
    if max(block) > threshold:
      return degree
  return cap


def FirstNonVanishingMoment(kernel, cap=MOMENT_CAP):
  """Returns (degree, largest moment of that degree), or (None, 0.0)."""
  degree = VanishingDegrees(kernel, cap)
  if degree >= cap:
    return None, 0.0
  moments = Moments(kernel, degree)
  indices = MultiIndices(kernel.grid.dimension, degree)
  block = [abs(value) for value, alpha in zip(moments, indices)
           if sum(alpha) == degree]
  return degree, max(block)


def CheckDecay(kernel, order):
  """Checks the decay condition |g(x)| <= c_N/(1+|x|)^N on the grid.

  The bound is accepted when the weighted profile |g|(1+|x|)^N attains its
  maximum inside |x| <= X/2 (it does not grow towards the box edge) and the
  constant stays moderate.

  Arguments:
    @ kernel: Kernel
    @ order: int
      The decay order N, 1 .. 8.

  Raises:
    PreconditionError: N outside [1, 8].

  Returns:
    tuple: (holds: bool, c_N: float)
  """
  if not 1 <= order <= DECAY_CAP:
    raise PreconditionError('decay order must lie in [1, %d], got %r' % (
        DECAY_CAP, order))
  radius = kernel.grid.Radius()
  weighted = np.abs(kernel.space) * (1 + radius) ** order
  constant = float(weighted.max())
  inner = radius <= kernel.grid.extent / 2
  outer_max = weighted[~inner].max() if np.any(~inner) else 0.0
  holds = bool(outer_max <= weighted[inner].max() and constant < DECAY_LIMIT)
  return holds, constant


def _SmoothnessSpectra(kernel, order):
  """Returns |D^alpha Fg| for |alpha| <= order by spectral differentiation."""
  grid = kernel.grid
  points = grid.Points()
  spectra = []
  for alpha in MultiIndices(grid.dimension, order):
    factor = np.prod([(-1j * coord) ** power
                      for coord, power in zip(points, alpha)], axis=0)
    spectrum = np.abs(Fourier(grid, factor * kernel.space))
    # roundoff floor; the weight (1+|xi|)^K would otherwise amplify it
    spectrum[spectrum < SPECTRAL_FLOOR * spectrum.max()] = 0
    spectra.append(spectrum)
  return spectra


def _SmoothnessStable(kernel, spectra, weight_exponent):
  grid = kernel.grid
  radius = grid.FrequencyRadius()
  box = np.max(np.abs(np.stack(grid.Frequencies())), axis=0)
  cell = (2 * math.pi / (2 * grid.extent)) ** grid.dimension
  weight = (1 + radius) ** weight_exponent * cell
  limits = grid.nyquist / np.array([8.0, 4.0, 2.0])
  for spectrum in spectra:
    integrand = spectrum * weight
    totals = [integrand[box <= limit].sum() for limit in limits]
    first, second = totals[1] - totals[0], totals[2] - totals[1]
    if not (second <= 0.8 * first or second <= 1e-9 * totals[2]):
      return False
  return True


def CheckSmoothnessWeight(kernel, weight_exponent, order=1):
  """Checks that (1+|xi|)^K |D^alpha Fg| is integrable for |alpha| <= order.

  Integrals over the nested frequency boxes of half-width pi/(8h), pi/(4h) and
  pi/(2h) must stabilize: the last increment is at most 0.8 times the one
  before, or negligible.

  Arguments:
    @ kernel: Kernel
    @ weight_exponent: float
      The exponent K.
    % order: int ~~ 1
      Derivative order cap A, at most 4.

  Raises:
    PreconditionError: order outside [0, 4].

  Returns:
    bool: whether every integral stabilizes.
  """
  if not 0 <= order <= 4:
    raise PreconditionError('derivative order must lie in [0, 4], got %r' % (
        order,))
  return _SmoothnessStable(kernel, _SmoothnessSpectra(kernel, order),
                           weight_exponent)


def DetectBand(kernel, role=None):
  """Returns the band parameter epsilon of a kernel.

  For a 'phi0' kernel, |Fg| > 0 must hold on the ball |xi| < 2 epsilon; for
  the other roles on the annulus epsilon/2 < |xi| < 2 epsilon. "Nonzero" means
  above 1e-6 times the maximum of |Fg|. Zero means no band was found.
  """
  role = role or kernel.role
  magnitude = np.abs(kernel.frequency).ravel()
  peak = magnitude.max()
  if peak == 0:
    return 0.0
  radius = kernel.grid.FrequencyRadius().ravel()
  small = magnitude <= BAND_THRESHOLD * peak
  if role == PHI0:
    if not small.any():
      return kernel.grid.nyquist / 2
    return float(radius[small].min() / 2)
  step = 2 * math.pi / (2 * kernel.grid.extent)
  candidates = 2.0 ** (np.arange(-80, 81) / 8)
  best = 0.0
  for epsilon in candidates:
    if 2 * epsilon > kernel.grid.nyquist:
      break
    if epsilon / 2 < step:
      continue
    annulus = (radius > epsilon / 2) & (radius < 2 * epsilon)
    if annulus.any() and not small[annulus].any():
      best = float(epsilon)
  return best


def Measure(kernel, moment_order=None):
  """Measures the KernelMeta of a kernel.

  Arguments:
    @ kernel: Kernel
    % moment_order: int ~~ None
      An order established by construction. It is checked against the
      measured vanishing moments and then reported as is.

  Raises:
    InvalidKernelError: the established moment order is not confirmed.
  """
  measured = VanishingDegrees(kernel)
  if moment_order is not None:
    if measured < min(moment_order, MOMENT_CAP):
      raise InvalidKernelError(
          'kernel %r should have %d vanishing moment degrees, measured %d' % (
              kernel.name, moment_order, measured))
    measured = moment_order
  spectra = _SmoothnessSpectra(kernel, 1)
  smoothness = -1
  for exponent in range(SMOOTHNESS_CAP + 1):
    if not _SmoothnessStable(kernel, spectra, exponent):
      break
    smoothness = exponent
  decay = 0
  for order in range(1, DECAY_CAP + 1):
    if not CheckDecay(kernel, order)[0]:
      break
    decay = order
  meta = KernelMeta(measured, smoothness, decay, DetectBand(kernel),
                    kernel.role)
  LOGGER.debug('measured %s: %r', kernel.name, meta)
  return meta


class Admissibility(object):
  """The admissibility constant c_g, or a divergence flag."""
  __slots__ = ('value', 'divergent')

  def __init__(self, value, divergent=False):
    self.value = math.inf if divergent else float(value)
    self.divergent = divergent

  def __repr__(self):
    if self.divergent:
      return 'Admissibility(divergent)'
    return 'Admissibility(%r)' % self.value

  def __float__(self):
    return self.value


def AdmissibilityConstant(kernel):
  """Computes c_g, the integral of |Fg(xi)|^2/|xi|^d.

  The frequency origin is excluded from the sum and replaced by the local
  model |Fg(xi)|^2 ~ c|xi|^(2L) integrated over a cell of equal volume, with
  L the measured moment order. L = 0 makes the singularity non-integrable.

  Returns:
    Admissibility: the value, or divergent.
  """
  grid = kernel.grid
  magnitude = np.abs(kernel.frequency) ** 2
  if magnitude.max() == 0:
    return Admissibility(0.0)
  order = kernel.meta.moment_order
  if order == 0:
    return Admissibility(None, divergent=True)
  step = 2 * math.pi / (2 * grid.extent)
  radius = grid.FrequencyRadius()
  integrand = np.zeros_like(magnitude)
  mask = radius > 0
  integrand[mask] = magnitude[mask] / radius[mask] ** grid.dimension
  total = integrand.sum() * step ** grid.dimension
  neighbour = (1,) + (0,) * (grid.dimension - 1)
  coefficient = magnitude[neighbour] / step ** (2 * order)
  if grid.dimension == 1:
    cell = 2 * coefficient * (step / 2) ** (2 * order) / (2 * order)
  else:
    rho = step / math.sqrt(math.pi)
    cell = 2 * math.pi * coefficient * rho ** (2 * order) / (2 * order)
  LOGGER.debug('admissibility of %s: bulk %g, origin cell %g',
               kernel.name, total, cell)
  return Admissibility(total + cell)


# ##############################################################################
# Dyadic partitions of unity
#
def _Transition(u):
  """The C-infinity function e^{-1/u} for u > 0, zero otherwise."""
  u = np.asarray(u, dtype=float)
  result = np.zeros_like(u)
  positive = u > 0
  result[positive] = np.exp(-1 / u[positive])
  return result


def BumpProfile(radius):
  """phi_0 as a function of |xi|: one on [0, 1], zero beyond 2."""
  rising = _Transition(2 - np.asarray(radius, dtype=float))
  falling = _Transition(np.asarray(radius, dtype=float) - 1)
  return rising / (rising + falling)


def AnnulusProfile(radius):
  """phi(xi) = phi_0(xi) - phi_0(2 xi), supported in 1/2 <= |xi| <= 2."""
  return BumpProfile(radius) - BumpProfile(2 * np.asarray(radius))


class PartitionSystem(object):
  """Frequency-domain members phi_j of a dyadic partition of unity.

  Members:
    @ grid: GridSpec
    @ kind: str
      'inhomogeneous' or 'homogeneous'.
    @ jmin, jmax: int
      The index range; the inhomogeneous system starts at 0 with phi_0.
  """
  INHOMOGENEOUS = 'inhomogeneous'
  HOMOGENEOUS = 'homogeneous'

  def __init__(self, grid, kind, jmin, jmax):
    self.grid = grid
    self.kind = kind
    self.jmin = jmin
    self.jmax = jmax
    self._radius = grid.FrequencyRadius()

  def __repr__(self):
    return 'PartitionSystem(%s, j=[%d, %d])' % (self.kind, self.jmin, self.jmax)

  def Indices(self):
    return list(range(self.jmin, self.jmax + 1))

  def Profile(self, index):
    """Returns the radial profile r -> phi_index(r) as a callable."""
    if self.kind == self.INHOMOGENEOUS and index == 0:
      return BumpProfile
    scale = 2.0 ** -index
    return lambda radius: AnnulusProfile(scale * np.asarray(radius))

  def Member(self, index):
    """Returns the samples phi_j(xi) on the frequency grid."""
    if not self.jmin <= index <= self.jmax:
      raise RangeTruncationError('index %d outside the partition [%d, %d]' % (
          index, self.jmin, self.jmax))
    return self.Profile(index)(self._radius)

  def Sum(self):
    return sum(self.Member(index) for index in self.Indices())

  def Covered(self):
    """Mask of frequencies where the members sum to one exactly."""
    upper = self._radius <= 2.0 ** self.jmax
    if self.kind == self.INHOMOGENEOUS:
      return upper
    return upper & (self._radius >= 2.0 ** self.jmin)

  def Kernel(self, index):
    """Convolution kernel whose action is f -> F^-1[phi_j Ff]."""
    profile = self.Profile(index)
    factor = (2 * math.pi) ** (-self.grid.dimension / 2)
    symbol = lambda *xi: factor * profile(np.sqrt(sum(c ** 2 for c in xi)))
    role = PHI0 if (self.kind == self.INHOMOGENEOUS and index == 0) else PHI
    return Kernel(self.grid, symbol=symbol, name='partition[%d]' % index,
                  role=role)

  def Generator(self):
    """The kernel of phi itself; its L1 dilate by 2^-j acts as phi_j."""
    factor = (2 * math.pi) ** (-self.grid.dimension / 2)
    symbol = lambda *xi: factor * AnnulusProfile(
        np.sqrt(sum(c ** 2 for c in xi)))
    return Kernel(self.grid, symbol=symbol, name='partition generator',
                  role=PHI)


def _CheckPartitionRange(grid, jmax):
  if grid.nyquist < 2.0 ** jmax:
    raise RangeTruncationError(
        'frequency extent %.4g does not resolve 2^%d; lower jmax or refine the '
        'grid' % (grid.nyquist, jmax))


def BuildInhomogeneousPartition(grid, jmax=None):
  """Returns the partition phi_0, phi_j = phi(2^-j .), j = 1 .. jmax.

  The default jmax is the smallest index with 2^jmax >= pi/(2h), so the
  members sum to one on every frequency |xi| <= pi/(2h).

  Raises:
    RangeTruncationError: the grid frequency extent is below 2^jmax.
  """
  if jmax is None:
    jmax = max(1, math.ceil(math.log2(grid.nyquist / 2)))
  _CheckPartitionRange(grid, jmax)
  return PartitionSystem(grid, PartitionSystem.INHOMOGENEOUS, 0, jmax)


def BuildHomogeneousPartition(grid, jmin, jmax):
  """Returns phi_j = phi(2^-j .) for j in [jmin, jmax].

  The members sum to one on 2^jmin <= |xi| <= 2^jmax.

  Raises:
    RangeTruncationError: empty range, or the grid frequency extent is below
      2^jmax.
  """
  if jmin > jmax:
    raise RangeTruncationError('empty partition range [%d, %d]' % (jmin, jmax))
  _CheckPartitionRange(grid, jmax)
  return PartitionSystem(grid, PartitionSystem.HOMOGENEOUS, jmin, jmax)


# ##############################################################################
# Kernel constructions
#
def GaussianKernel(grid, width=1.0, role=PHI0):
  """The Gaussian e^{-|x|^2/(2 w^2)}, with transform w^d e^{-w^2|xi|^2/2}."""
  dimension = grid.dimension
  symbol = lambda *xi: width ** dimension * np.exp(
      -width ** 2 * sum(c ** 2 for c in xi) / 2)
  return Kernel(grid, symbol=symbol, name='gaussian(%g)' % width, role=role)


def MexicanHat(grid, width=1.0):
  """Minus the Laplacian of the Gaussian; (1-x^2)e^{-x^2/2} in d = 1."""
  dimension = grid.dimension
  symbol = lambda *xi: (sum(c ** 2 for c in xi) * width ** (dimension + 2) *
                        np.exp(-width ** 2 * sum(c ** 2 for c in xi) / 2))
  return Kernel(grid, symbol=symbol, name='mexican-hat(%g)' % width,
                role=WAVELET, moment_order=2)


def BuildLocalMeans(k0, k_up, power):
  """Builds the local means Phi_0 = k0 and Phi = Laplacian^N k_up.

  Arguments:
    @ k0: Kernel
    @ k_up: Kernel
    @ power: int
      N, the power of the Laplacian.

  Raises:
    PreconditionError: Fk0(0) or Fk_up(0) vanishes, or N < 1.
    InvalidKernelError: the moments up to 2N-1 of Phi do not vanish.

  Returns:
    tuple: (Phi_0, Phi) with Phi carrying moment order 2N.
  """
  if power < 1:
    raise PreconditionError('N must be a positive integer, got %r' % power)
  for kernel in (k0, k_up):
    if abs(kernel.frequency[(0,) * kernel.grid.dimension]) <= 1e-6:
      raise PreconditionError(
          'Fourier transform of %s vanishes at the origin' % kernel.name)
  grid = k_up.grid
  multiplier = lambda *xi: (-sum(c ** 2 for c in xi)) ** power
  symbol = None
  if k_up.symbol is not None:
    base = k_up.symbol
    symbol = lambda *xi: multiplier(*xi) * base(*xi)
  frequency = multiplier(*grid.Frequencies()) * k_up.frequency
  phi = Kernel(grid, frequency=frequency, symbol=symbol,
               name='laplacian^%d(%s)' % (power, k_up.name), role=PHI)
  moments = Moments(phi, min(2 * power - 1, MOMENT_CAP))
  scale = MOMENT_TOLERANCE * _MomentScale(phi, 2 * power - 1)
  if np.max(np.abs(moments)) > scale:
    raise InvalidKernelError('moments of %s up to %d do not vanish' % (
        phi.name, 2 * power - 1))
  phi._moment_order = 2 * power
  return k0.WithRole(PHI0), phi


def _ProfileDerivatives(profile, order):
  """Taylor derivatives at 0 of a radial profile, by a local polynomial fit."""
  points = np.linspace(-0.1, 0.1, 41)
  coefficients = np.polynomial.polynomial.polyfit(
      points, profile(points), order + 2)
  return [coefficients[k] * special.factorial(k) for k in range(order + 1)]


def BuildRadialKernel(phi0, order):
  """Builds Phi_0 = F^-1 phi_0 and Phi = F^-1(phi_0 - phi_0(2 .)).

  Arguments:
    @ phi0: Kernel
      Carries the radial profile as its frequency samples and symbol.
    @ order: int
      R; the derivatives of phi_0 of orders 1 .. R must vanish at 0.

  Raises:
    InvalidKernelError: phi_0 is not radial, not non-increasing, vanishes at
      the origin, or has a non-vanishing low-order derivative at 0.

  Returns:
    tuple: (Phi_0, Phi) with Phi carrying moment order R+1.
  """
  grid = phi0.grid
  if phi0.symbol is None:
    raise InvalidKernelError('radial construction needs the exact symbol')
  radius = grid.FrequencyRadius().ravel()
  values = phi0.frequency.ravel()
  if np.max(np.abs(values.imag)) > 1e-12 * np.max(np.abs(values)):
    raise InvalidKernelError('phi_0 must be real valued')
  order_by_radius = np.argsort(radius, kind='stable')
  profile = values.real[order_by_radius]
  distinct = np.concatenate(([True], np.diff(radius[order_by_radius]) > 1e-12))
  if np.any(np.diff(profile[distinct]) > 1e-12 * np.max(np.abs(profile))):
    raise InvalidKernelError('phi_0 is not non-increasing in |xi|')
  if not phi0.IsRadial():
    raise InvalidKernelError('phi_0 is not radial')
  symbol = phi0.symbol
  along_axis = lambda r: symbol(*((r,) + (np.zeros_like(r),) *
                                  (grid.dimension - 1)))
  derivatives = _ProfileDerivatives(lambda r: np.real(along_axis(r)), order)
  if abs(derivatives[0]) <= 1e-12:
    raise InvalidKernelError('phi_0 vanishes at the origin')
  for degree in range(1, order + 1):
    if abs(derivatives[degree]) > 1e-6 * abs(derivatives[0]):
      raise InvalidKernelError(
          'derivative of order %d of phi_0 does not vanish at 0 (%.3g)' % (
              degree, derivatives[degree]))
  big = Kernel(grid, frequency=phi0.frequency, symbol=symbol,
               name='radial-phi0(%s)' % phi0.name, role=PHI0)
  annulus = lambda *xi: symbol(*xi) - symbol(*(2 * c for c in xi))
  small = Kernel(grid, symbol=annulus, name='radial-phi(%s)' % phi0.name,
                 role=PHI, moment_order=order + 1)
  return big, small
