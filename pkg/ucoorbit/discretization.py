#!/usr/bin/python3
"""Lattices in the ax+b group, coefficient sequences and wavelet frames.

The lattice points x_(j,k) = (alpha k beta^-j, beta^-j) carry the tiles
Q_(j,k) x (beta^-(j+1), beta^-j], which partition the strip they cover.
Coefficient fields live on these points; their sequence norms are evaluated in
closed form, and their piecewise constant embedding into the group lets the
group norms of the group module act on them. Frame coefficients against a
spline system are computed both by grid quadrature and by sampling the
continuous wavelet transform at the lattice points.

Classes:
  LatticeSpec: The lattice parameters and the k-box per level.
  LatticeSite: One lattice point with its tile.
  CoeffField: Finitely many coefficients lambda_(c,j,k).
  EquivalenceReport: Function norm, sequence norm and their ratio.

Error Classes:
  Error: Exception base class.
  CoverageError: Tiles that leave the grid or the ladder.
  WindowRangeError: Parameters outside the wavelet characterization window.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import collections
import itertools
import logging
import math
from concurrent import futures

# Third-party modules
import numpy as np

# Package modules
from . import grid as gridlib
from . import group
from . import splinewavelets
from . import transform
from .funcnorms import ConfigurationError
from .grid import INFINITY

MASS_FRACTION = 1 - 1e-8
SUPPORT_STEP = 1 / 256
QUADRATURE = 'quadrature'
CWT = 'cwt'
PATHS = (QUADRATURE, CWT)
LOGGER = logging.getLogger('ucoorbit_discretization')


class Error(gridlib.Error):
  """Superclass used for inheritance and external exception handling."""


class CoverageError(Error, ValueError):
  """A tile lies outside the grid box or the ladder's scale range."""


class WindowRangeError(Error, ValueError):
  """The smoothness lies outside the window of the wavelet characterization."""


# ##############################################################################
# Lattice
#
LatticeSite = collections.namedtuple('LatticeSite', 'level shift point tile')


class LatticeSpec(object):
  """The lattice x_(j,k) = (alpha k beta^-j, beta^-j).

  Members:
    @ alpha: float
    @ beta: float
    @ jmin, jmax: int
      The level range.
    % extent: float or None
      Half-width R of the covered strip [-R, R)^d; None leaves the k-box to
      the grid the lattice is used on.
    @ dimension: int
  """
  __slots__ = ('alpha', 'beta', 'jmin', 'jmax', 'extent', 'dimension')

  def __init__(self, alpha=1.0, beta=2.0, jmin=0, jmax=3, extent=None,
               dimension=1):
    if not alpha > 0:
      raise ConfigurationError('lattice alpha must be positive, got %r' % alpha)
    if not beta > 1:
      raise ConfigurationError('lattice beta must exceed 1, got %r' % beta)
    if int(jmin) != jmin or int(jmax) != jmax or jmin > jmax:
      raise ConfigurationError('lattice levels need integers jmin <= jmax, '
                               'got [%r, %r]' % (jmin, jmax))
    if extent is not None and not extent > 0:
      raise ConfigurationError('lattice extent must be positive, got %r' % (
          extent,))
    self.alpha = float(alpha)
    self.beta = float(beta)
    self.jmin = int(jmin)
    self.jmax = int(jmax)
    self.extent = None if extent is None else float(extent)
    self.dimension = int(dimension)

  def __repr__(self):
    return ('LatticeSpec(alpha=%g, beta=%g, j=[%d, %d], extent=%r, d=%d)' % (
        self.alpha, self.beta, self.jmin, self.jmax, self.extent,
        self.dimension))

  def __eq__(self, other):
    return (isinstance(other, LatticeSpec) and
            all(getattr(self, name) == getattr(other, name)
                for name in self.__slots__))

  @property
  def orthonormal(self):
    """Whether the lattice is the dyadic one of the orthonormal bases."""
    return self.alpha == 1 and self.beta == 2

  def Levels(self):
    return range(self.jmin, self.jmax + 1)

  def Scale(self, level):
    return self.beta ** -level

  def Width(self, level):
    """Side length alpha beta^-j of the cubes at a level."""
    return self.alpha * self.beta ** -level

  def ShiftRange(self, level):
    """The k-range per axis whose cubes tile [-R, R)."""
    if self.extent is None:
      raise ConfigurationError('the lattice has no extent; its k-box comes '
                               'from a grid')
    width = self.Width(level)
    return (int(math.floor(-self.extent / width + 1e-9)),
            int(math.ceil(self.extent / width - 1e-9)) - 1)

  def Shifts(self, level):
    low, high = self.ShiftRange(level)
    return list(itertools.product(range(low, high + 1),
                                  repeat=self.dimension))

  def Point(self, level, shift):
    scale = self.Scale(level)
    return group.GroupPoint(self.alpha * np.asarray(shift, dtype=float) * scale,
                            scale)

  def Tile(self, level, shift):
    """Returns (cube low corner, cube high corner, tmin, tmax)."""
    width = self.Width(level)
    low = np.asarray(shift, dtype=float) * width
    return low, low + width, self.beta ** -(level + 1), self.beta ** -level

  def AsDict(self):
    return {name: getattr(self, name) for name in self.__slots__}


def LatticePoints(lattice):
  """Enumerates the lattice points with their tiles, level by level.

  Raises:
    ConfigurationError: the lattice has no extent.

  Returns:
    list of LatticeSite
  """
  return [LatticeSite(level, shift, lattice.Point(level, shift),
                      lattice.Tile(level, shift))
          for level in lattice.Levels() for shift in lattice.Shifts(level)]


# ##############################################################################
# Coefficient fields
#
def _Key(species, level, shift):
  if np.isscalar(species):
    species = (species,)
  if np.isscalar(shift):
    shift = (shift,)
  return (tuple(int(c) for c in species), int(level),
          tuple(int(k) for k in shift))


class CoeffField(object):
  """Coefficients lambda_(c,j,k), keyed by (species, level, shift) tuples.

  Members:
    @ lattice: LatticeSpec
    @ values: dict
  """

  def __init__(self, lattice, values=None):
    self.lattice = lattice
    self.values = {}
    for key, value in (values or {}).items():
      self[key] = value

  @classmethod
  def Single(cls, lattice, species, level, shift, value=1.0):
    field = cls(lattice)
    field[species, level, shift] = value
    return field

  def __repr__(self):
    return 'CoeffField(%d coefficients, %r)' % (len(self.values), self.lattice)

  def __len__(self):
    return len(self.values)

  def __setitem__(self, key, value):
    key = _Key(*key)
    if len(key[0]) != self.lattice.dimension or len(key[2]) != len(key[0]):
      raise gridlib.InvalidInputError('coefficient key %r does not fit d=%d' % (
          key, self.lattice.dimension))
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
      raise gridlib.InvalidInputError('coefficient %r is not finite' % (key,))
    self.values[key] = value

  def __getitem__(self, key):
    return self.values.get(_Key(*key), 0j)

  def __add__(self, other):
    total = CoeffField(self.lattice, self.values)
    for key, value in other.values.items():
      total.values[key] = total.values.get(key, 0j) + value
    return total

  def __mul__(self, factor):
    return CoeffField(self.lattice, {key: value * factor
                                     for key, value in self.values.items()})

  __rmul__ = __mul__

  def Items(self):
    """(key, value) pairs in a fixed order."""
    return sorted(self.values.items())

  def Levels(self):
    return sorted({level for _species, level, _shift in self.values})

  def Species(self):
    return sorted({species for species, _level, _shift in self.values})

  def LevelShifted(self, offset=1):
    """The same k-pattern moved `offset` levels finer."""
    return CoeffField(self.lattice, {
        (species, level + offset, shift): value
        for (species, level, shift), value in self.values.items()})

  def Restricted(self, species=None, levels=None):
    return CoeffField(self.lattice, {
        key: value for key, value in self.values.items()
        if (species is None or key[0] in species) and
        (levels is None or key[1] in levels)})

  def Energy(self):
    return float(sum(abs(value) ** 2 for value in self.values.values()))

  def MaxDeviation(self, other):
    """Largest coefficient gap over the union of both supports."""
    keys = set(self.values) | set(other.values)
    return max((abs(self.values.get(key, 0j) - other.values.get(key, 0j))
                for key in keys), default=0.0)


# ##############################################################################
# Sequence norms
#
def _LevelArrays(field, power):
  """Per level: (k offsets, dense array of sum_c |lambda|^power), the maximum
  over species when the power is infinite."""
  levels = collections.defaultdict(dict)
  for (_species, level, shift), value in field.values.items():
    magnitude = abs(value)
    if magnitude == 0:
      continue
    if power == INFINITY:
      levels[level][shift] = max(levels[level].get(shift, 0.0), magnitude)
    else:
      levels[level][shift] = levels[level].get(shift, 0.0) + magnitude ** power
  arrays = {}
  for level, entries in levels.items():
    shifts = np.array(list(entries), dtype=int)
    low = shifts.min(axis=0)
    dense = np.zeros(tuple(shifts.max(axis=0) - low + 1))
    for shift, value in entries.items():
      dense[tuple(np.array(shift) - low)] = value
    arrays[level] = (low, dense)
  return arrays


def PSharpNorm(field, s, p, q):
  """||(sum_l sum_k beta^(l(s+d/q)q) |lambda_(l,k)|^q chi_(l,k))^(1/q)|L_p||.

  The L_p norm is integrated exactly over the common refinement of all cubes
  that carry a coefficient.

  Arguments:
    @ field: CoeffField
    @ s: float
    @ p, q: float
      In (0, inf].

  Returns:
    float
  """
  p = gridlib.ValidExponent(p, 'p')
  q = gridlib.ValidExponent(q, 'q')
  lattice = field.lattice
  d = lattice.dimension
  arrays = _LevelArrays(field, q)
  if not arrays:
    return 0.0
  edges = [set() for _ in range(d)]
  for level, (low, dense) in arrays.items():
    width = lattice.Width(level)
    for axis in range(d):
      nonzero = np.flatnonzero(dense.any(axis=tuple(
          other for other in range(d) if other != axis)))
      ks = low[axis] + nonzero
      edges[axis].update((ks * width).tolist())
      edges[axis].update(((ks + 1) * width).tolist())
  edges = [np.array(sorted(axis_edges)) for axis_edges in edges]
  middles = [(axis_edges[:-1] + axis_edges[1:]) / 2 for axis_edges in edges]
  lengths = [np.diff(axis_edges) for axis_edges in edges]
  accumulated = np.zeros(tuple(middle.size for middle in middles))
  exponent = s + (0 if q == INFINITY else d / q)
  for level, (low, dense) in sorted(arrays.items()):
    width = lattice.Width(level)
    indices = []
    mask = np.ones(accumulated.shape, dtype=bool)
    for axis, middle in enumerate(middles):
      index = np.floor(middle / width).astype(int) - low[axis]
      valid = (index >= 0) & (index < dense.shape[axis])
      indices.append(np.where(valid, index, 0))
      mask &= valid.reshape([-1 if other == axis else 1 for other in range(d)])
    gathered = dense[np.ix_(*indices)] * mask
    if q == INFINITY:
      accumulated = np.maximum(accumulated,
                               lattice.beta ** (level * exponent) * gathered)
    else:
      accumulated += lattice.beta ** (level * exponent * q) * gathered
  inner = accumulated if q == INFINITY else accumulated ** (1 / q)
  if p == INFINITY:
    return float(inner.max())
  volumes = lengths[0]
  for length in lengths[1:]:
    volumes = np.multiply.outer(volumes, length)
  return float(np.sum(inner ** p * volumes) ** (1 / p))


def LSharpNorm(field, s, p, q):
  """(sum_l beta^(l(s+d/q-d/p)q) (sum_k |lambda_(l,k)|^p)^(q/p))^(1/q)."""
  p = gridlib.ValidExponent(p, 'p')
  q = gridlib.ValidExponent(q, 'q')
  lattice = field.lattice
  d = lattice.dimension
  exponent = (s + (0 if q == INFINITY else d / q) -
              (0 if p == INFINITY else d / p))
  per_level = collections.defaultdict(list)
  for (_species, level, _shift), value in field.Items():
    per_level[level].append(abs(value))
  if not per_level:
    return 0.0
  levels = sorted(per_level)
  inner = np.array([gridlib.LqSum(np.array(per_level[level]), p)
                    for level in levels])
  weights = lattice.beta ** (np.array(levels) * exponent)
  return float(gridlib.LqSum(weights * inner, q))


def IndicatorEmbed(field, grid, ladder):
  """F(x,t) = sum |lambda_(j,k)| chi_(Q_(j,k))(x) chi_(beta^-(j+1), beta^-j](t).

  Raises:
    CoverageError: a tile leaves the grid box or the ladder's scale range, or
      a level band holds no ladder node.

  Returns:
    GroupFunction: real, piecewise constant.
  """
  lattice = field.lattice
  if grid.dimension != lattice.dimension:
    raise CoverageError('grid dimension %d does not match the lattice d=%d' % (
        grid.dimension, lattice.dimension))
  scales = ladder.Scales()
  axis = grid.Axis()
  values = np.zeros(grid.shape + (len(ladder),))
  bands = {}
  for level in field.Levels():
    top, bottom = lattice.Scale(level), lattice.Scale(level + 1)
    if (scales.max() < top * (1 - 1e-9) or
        scales.min() > bottom * (1 + 1e-9)):
      raise CoverageError('level %d spans t in (%g, %g], outside the ladder '
                          '[%g, %g]' % (level, bottom, top, scales.min(),
                                        scales.max()))
    band = np.flatnonzero((scales > bottom * (1 + 1e-12)) &
                          (scales <= top * (1 + 1e-12)))
    if not band.size:
      raise CoverageError('no ladder node inside the band of level %d' % level)
    bands[level] = band
  for (_species, level, shift), value in field.Items():
    low, high, _, _ = lattice.Tile(level, shift)
    if (low < -grid.extent - 1e-9).any() or (high > grid.extent + 1e-9).any():
      raise CoverageError('cube of (j=%d, k=%r) leaves the box [-%g, %g)' % (
          level, shift, grid.extent, grid.extent))
    region = tuple(slice(np.searchsorted(axis, low[i] - 1e-9 * grid.spacing),
                         np.searchsorted(axis, high[i] - 1e-9 * grid.spacing))
                   for i in range(grid.dimension))
    values[region + (bands[level],)] += abs(value)
  return transform.GroupFunction(grid, ladder, values)


# ##############################################################################
# Frames
#
def EffectiveSupport(system, component, fraction=MASS_FRACTION):
  """The interval holding `fraction` of the L2 mass of Psi^component."""
  low, high = system.Support(component)
  x = np.arange(low, high, SUPPORT_STEP) + SUPPORT_STEP / 2
  energy = system.Evaluate(component, x) ** 2
  cumulative = np.cumsum(energy) / energy.sum()
  outside = (1 - fraction) / 2
  first = np.searchsorted(cumulative, outside)
  last = np.searchsorted(cumulative, 1 - outside)
  return (x[first] - SUPPORT_STEP, x[min(last, x.size - 1)] + SUPPORT_STEP)


def _AxisShifts(system, component, level, lattice, grid):
  """k-range on one axis whose atoms keep their effective support in the
  box, intersected with the lattice's own k-box."""
  low, high = EffectiveSupport(system, component)
  stretch = lattice.beta ** level
  first = math.ceil((-grid.extent * stretch - low) / lattice.alpha - 1e-9)
  last = math.floor((grid.extent * stretch - high) / lattice.alpha + 1e-9)
  if lattice.extent is not None:
    box_low, box_high = lattice.ShiftRange(level)
    first, last = max(first, box_low), min(last, box_high)
  return np.arange(first, last + 1)


def _AtomMatrix(system, component, level, shifts, lattice, axis):
  """Rows beta^(j/2) Psi^c(beta^j x - alpha k) on one grid axis."""
  stretch = lattice.beta ** level
  arguments = stretch * axis[None, :] - lattice.alpha * shifts[:, None]
  return math.sqrt(stretch) * system.Evaluate(component, arguments)


def _Blocks(system, lattice, grid, orthonormal, coarse):
  """(species, level) pairs of the frame, the coarse scaling block first."""
  d = grid.dimension
  blocks = []
  if orthonormal and coarse:
    blocks.append(((0,) * d, lattice.jmin))
  blocks.extend((species, level) for level in lattice.Levels()
                for species in splinewavelets.Species(d))
  return blocks


def _CheckFrame(system, lattice, grid, orthonormal):
  if lattice.dimension != grid.dimension:
    raise ConfigurationError('lattice d=%d does not match the grid d=%d' % (
        lattice.dimension, grid.dimension))
  if orthonormal and not lattice.orthonormal:
    raise ConfigurationError(
        'the orthonormal path needs alpha = 1 and beta = 2, got alpha=%g, '
        'beta=%g' % (lattice.alpha, lattice.beta))
  if system.grid.dimension != 1:
    raise ConfigurationError('spline systems are built on 1-d grids')


def _Contract(values, matrices, transpose=False):
  """Applies one matrix per axis: x -> k (analysis) or k -> x (synthesis)."""
  for axis, matrix in enumerate(matrices):
    contracted = np.tensordot(values, matrix, axes=([axis], [0 if transpose
                                                             else 1]))
    values = np.moveaxis(contracted, -1, axis)
  return values


def _QuadratureBlock(signal, system, lattice, species, level):
  grid = signal.grid
  axis = grid.Axis()
  shifts = [_AxisShifts(system, c, level, lattice, grid) for c in species]
  if any(not axis_shifts.size for axis_shifts in shifts):
    return {}
  matrices = [_AtomMatrix(system, c, level, axis_shifts, lattice, axis)
              for c, axis_shifts in zip(species, shifts)]
  block = _Contract(signal.samples, matrices) * grid.cell
  return {(species, level, tuple(int(k) for k in shift)): block[index]
          for index, shift in zip(
              itertools.product(*[range(s.size) for s in shifts]),
              itertools.product(*shifts))}


def _CwtBlock(signal, system, lattice, species, level, guard):
  grid = signal.grid
  shifts = [_AxisShifts(system, c, level, lattice, grid) for c in species]
  if any(not axis_shifts.size for axis_shifts in shifts):
    return {}
  kernel = splinewavelets.SpeciesKernel(system, species, grid)
  ladder = gridlib.ScaleLadder.FromNodes(lattice.beta, level, level, 1)
  column = transform.Cwt(signal, kernel, ladder, guard).Column(0)
  width = lattice.Width(level)
  indices = []
  for axis_shifts in shifts:
    position = (axis_shifts * width + grid.extent) / grid.spacing
    if np.max(np.abs(position - np.round(position))) > 1e-9:
      raise group.AlignmentError(
          'lattice points of level %d are not grid points (spacing %g)' % (
              level, grid.spacing))
    indices.append(np.round(position).astype(int))
  sampled = np.conj(column[np.ix_(*indices)])
  return {(species, level, tuple(int(k) for k in shift)): sampled[index]
          for index, shift in zip(
              itertools.product(*[range(s.size) for s in shifts]),
              itertools.product(*shifts))}


def FrameCoefficients(signal, system, lattice, path=QUADRATURE,
                      orthonormal=True, coarse=True, guard=None, workers=None):
  """lambda_(c,j,k) = <Psi^c_(j,k), f> for the atoms inside the grid box.

  Atoms are beta^(jd/2) Psi^c(beta^j x - alpha k); an atom is kept when its
  effective support, holding 1 - 1e-8 of its L2 mass, stays in the box.

  Arguments:
    @ signal: SampledSignal
    @ system: SplineSystem
    @ lattice: LatticeSpec
    % path: str ~~ 'quadrature'
      'quadrature' sums over the grid; 'cwt' samples W_Psi f at the lattice
      points.
    % orthonormal: bool ~~ True
      Requires the dyadic lattice; adds the coarse scaling block.
    % coarse: bool ~~ True
      Whether the orthonormal path includes the scaling species at jmin.
    % guard: float ~~ None
      Wrap-around guard of the cwt path.
    % workers: int ~~ None
      Threads for the independent (species, level) blocks.

  Raises:
    ConfigurationError: an unknown path, mismatched dimensions, or a
      non-dyadic lattice on the orthonormal path.
    AlignmentError: cwt path with lattice points off the grid.

  Returns:
    CoeffField
  """
  if path not in PATHS:
    raise ConfigurationError('coefficient path must be one of %s, got %r' % (
        ', '.join(PATHS), path))
  grid = signal.grid
  _CheckFrame(system, lattice, grid, orthonormal)
  if path == QUADRATURE:
    task = lambda block: _QuadratureBlock(signal, system, lattice, *block)
  else:
    task = lambda block: _CwtBlock(signal, system, lattice, *block, guard)
  blocks = _Blocks(system, lattice, grid, orthonormal, coarse)
  if workers and workers > 1:
    with futures.ThreadPoolExecutor(max_workers=workers) as pool:
      results = list(pool.map(task, blocks))
  else:
    results = [task(block) for block in blocks]
  field = CoeffField(lattice)
  for result in results:
    for key, value in result.items():
      field[key] = value
  LOGGER.debug('%d %s coefficients of %r', len(field), path, signal)
  return field


def CoefficientDefect(signal, system, lattice, coarse=True, workers=None):
  """Largest gap between the quadrature and the cwt coefficients."""
  direct = FrameCoefficients(signal, system, lattice, QUADRATURE,
                             coarse=coarse, workers=workers)
  sampled = FrameCoefficients(signal, system, lattice, CWT, coarse=coarse,
                              workers=workers)
  return direct.MaxDeviation(sampled)


def AtomicSynthesis(field, system, grid):
  """f = sum lambda_(c,j,k) Psi^c_(j,k) on the grid.

  Blocks are accumulated in a fixed (species, level) order.

  Returns:
    SampledSignal
  """
  lattice = field.lattice
  if lattice.dimension != grid.dimension:
    raise ConfigurationError('lattice d=%d does not match the grid d=%d' % (
        lattice.dimension, grid.dimension))
  axis = grid.Axis()
  blocks = collections.defaultdict(dict)
  for (species, level, shift), value in field.Items():
    blocks[species, level][shift] = value
  samples = np.zeros(grid.shape, dtype=complex)
  for (species, level), entries in sorted(blocks.items()):
    shifts = np.array(list(entries), dtype=int)
    low = shifts.min(axis=0)
    dense = np.zeros(tuple(shifts.max(axis=0) - low + 1), dtype=complex)
    for shift, value in entries.items():
      dense[tuple(np.array(shift) - low)] = value
    matrices = [
        _AtomMatrix(system, c, level, low[i] + np.arange(dense.shape[i]),
                    lattice, axis)
        for i, c in enumerate(species)]
    samples += _Contract(dense, matrices, transpose=True)
  return gridlib.SampledSignal(grid, samples)


def FrameBounds(system, lattice, signals, workers=None):
  """Smallest and largest sum |<g_(j,k), f>|^2 / ||f||_2^2 over the signals.

  An exploratory estimate of the frame bounds at (alpha, beta); only the
  wavelet species enter.
  """
  ratios = []
  for signal in signals:
    energy = gridlib.LpNorm(signal, 2) ** 2
    if energy == 0:
      raise gridlib.InvalidInputError('frame bounds need nonzero signals')
    field = FrameCoefficients(signal, system, lattice, orthonormal=False,
                              workers=workers)
    ratios.append(field.Energy() / energy)
  return min(ratios), max(ratios)


# ##############################################################################
# Norm equivalence
#
class EquivalenceReport(object):
  """Function and sequence norm of one signal."""

  def __init__(self, function_norm, sequence_norm, params, space):
    self.function_norm = function_norm
    self.sequence_norm = sequence_norm
    self.params = params
    self.space = space
    self.ratio = (function_norm / sequence_norm if sequence_norm else
                  INFINITY)

  def __repr__(self):
    return 'EquivalenceReport(function=%.6g, sequence=%.6g, ratio=%.6g)' % (
        self.function_norm, self.sequence_norm, self.ratio)

  def AsDict(self):
    return {'function_norm': self.function_norm,
            'sequence_norm': self.sequence_norm, 'ratio': self.ratio,
            'space': self.space, 'params': self.params.AsDict()}


def CheckWaveletWindow(system, params, dimension):
  """Raises WindowRangeError when s leaves the window of the system."""
  window = splinewavelets.SplineRange(system.order, dimension, params.p,
                                      params.q, params.scale)
  if window is None or not window[0] < params.s < window[1]:
    raise WindowRangeError(
        's=%g is outside the %s-window %s of the order %d spline system for '
        'p=%g, q=%g, d=%d' % (
            params.s, params.scale,
            'empty' if window is None else '(%g, %g)' % window,
            system.order, params.p, params.q, dimension))
  return window


def FrameNormEquivalence(signal, system, lattice, params, ladder, guard=None,
                         workers=None):
  """Compares ||f|Co Y|| with the sequence norm of its frame coefficients.

  Y is L^(s+d/2-d/q) for the B-scale and P^(s+d/2-d/q, a) for the F-scale;
  the function norm analyses f with Psi^(1,..,1), the sequence norm is
  l_sharp or p_sharp of the orthonormal wavelet coefficients.

  Arguments:
    @ signal: SampledSignal
    @ system: SplineSystem
    @ lattice: LatticeSpec
      The dyadic lattice.
    @ params: funcnorms.NormParams
    @ ladder: ScaleLadder
      Scales of the function norm.
    % guard: float ~~ None
    % workers: int ~~ None

  Raises:
    WindowRangeError: s outside the window for m.
    ConfigurationError: a <= d/min(p, q) on the F-scale.

  Returns:
    EquivalenceReport
  """
  d = signal.grid.dimension
  CheckWaveletWindow(system, params, d)
  group_params = group.CoorbitParams(params, params.a)(d)
  if (group_params.space == group.P_SPACE and
      not params.a > group_params.PairingBound(d)):
    raise ConfigurationError('the P space needs a > %g, got a = %r' % (
        group_params.PairingBound(d), params.a))
  analyzer = splinewavelets.SpeciesKernel(system, (1,) * d, signal.grid)
  coefficients = transform.Cwt(signal, analyzer, ladder, guard, workers)
  function_norm = group.GroupNorm(coefficients, group_params, workers)
  field = FrameCoefficients(signal, system, lattice, coarse=False,
                            workers=workers)
  if group_params.space == group.P_SPACE:
    sequence_norm = PSharpNorm(field, group_params.s, params.p, params.q)
  else:
    sequence_norm = LSharpNorm(field, group_params.s, params.p, params.q)
  report = EquivalenceReport(function_norm, sequence_norm, params,
                             group_params.space)
  LOGGER.debug('frame equivalence %r', report)
  return report
