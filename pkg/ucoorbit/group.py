#!/usr/bin/python3
"""The ax+b group, its Haar measure and the group function spaces.

Group functions live on the grid times a scale ladder (transform.GroupFunction).
Translations act by spatial resampling and by relabelling the ladder nodes,
so only dilations r that are whole powers of the ladder step are accepted.

Classes:
  GroupPoint: An element (x, t) of the ax+b group.
  GroupNormParams: s, p, q, a and the space tag L, T or P.
  ScalingCheck: Measured against predicted operator norm of a translation.
  WeightSpec: The weight (1+|x|)^v (t^r2 + t^-r1).

Error Classes:
  Error: Exception base class.
  InadmissibleError: The analyzer violates the coorbit hypotheses.
  AlignmentError: A dilation is not a power of the ladder step.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import logging
import math

# Third-party modules
import numpy as np

# Package modules
from . import funcnorms
from . import grid as gridlib
from . import kernels
from . import transform
from .funcnorms import ConfigurationError
from .grid import INFINITY

L_SPACE = 'L'
T_SPACE = 'T'
P_SPACE = 'P'
SPACES = (L_SPACE, T_SPACE, P_SPACE)
LEFT = 'left'
RIGHT = 'right'
ALIGNMENT_TOLERANCE = 1e-9
LOGGER = logging.getLogger('ucoorbit_group')


class Error(gridlib.Error):
  """Superclass used for inheritance and external exception handling."""


class InadmissibleError(Error, ValueError):
  """The analyzing vector is not radial, admissible or cancelling enough."""


class AlignmentError(Error, ValueError):
  """A translation dilates by a factor that is not on the ladder."""


# ##############################################################################
# Group law and Haar measure
#
class GroupPoint(object):
  """The element (x, t) with x in R^d and t > 0.

  The product is (x, t)(y, s) = (x + ty, st), the identity (0, 1).
  """
  __slots__ = ('x', 't')

  def __init__(self, x, t):
    if not t > 0:
      raise gridlib.InvalidInputError('group scale t must be positive, got %r'
                                      % (t,))
    self.x = np.atleast_1d(np.asarray(x, dtype=float)).copy()
    self.t = float(t)

  @classmethod
  def Identity(cls, dimension=1):
    return cls(np.zeros(dimension), 1.0)

  def __repr__(self):
    return 'GroupPoint(x=%s, t=%r)' % (np.array2string(self.x), self.t)

  def __mul__(self, other):
    return GroupProduct(self, other)

  @property
  def dimension(self):
    return len(self.x)

  def Inverse(self):
    return GroupInverse(self)

  def IsClose(self, other, tolerance=1e-12):
    return (np.allclose(self.x, other.x, rtol=0, atol=tolerance) and
            abs(self.t - other.t) <= tolerance)


def GroupProduct(first, second):
  """(x, t)(y, s) = (x + ty, st)."""
  if first.dimension != second.dimension:
    raise gridlib.InvalidInputError('group points of dimension %d and %d' % (
        first.dimension, second.dimension))
  return GroupPoint(first.x + first.t * second.x, first.t * second.t)


def GroupInverse(point):
  """(x, t)^-1 = (-x/t, 1/t)."""
  return GroupPoint(-point.x / point.t, 1 / point.t)


def HaarWeight(point):
  """Density 1/t^(d+1) of the left Haar measure dx dt/t^(d+1)."""
  return point.t ** -(point.dimension + 1)


def HaarModule(point):
  """The modular function t^-d."""
  return point.t ** -point.dimension


def SampleGroupFunction(function, grid, ladder):
  """Samples a callable F(x_1, .., x_d, t) on the grid times the ladder."""
  points = grid.Points()
  columns = [np.broadcast_to(function(*points, scale), grid.shape)
             for scale in ladder.Scales()]
  return transform.GroupFunction(grid, ladder, np.stack(columns, axis=-1))


def HaarIntegral(function, grid=None, ladder=None):
  """Quadrature of the integral of F over the group against dx dt/t^(d+1).

  Arguments:
    @ function: GroupFunction or callable
      A callable F(x_1, .., x_d, t) is sampled on `grid` and `ladder`.
    % grid: GridSpec ~~ None
    % ladder: ScaleLadder ~~ None

  Returns:
    float, or complex for complex samples.
  """
  if not isinstance(function, transform.GroupFunction):
    if grid is None or ladder is None:
      raise gridlib.InvalidInputError('sampling a callable needs grid and ladder')
    function = SampleGroupFunction(function, grid, ladder)
  grid = function.grid
  sums = function.values.reshape(-1, len(function.ladder)).sum(axis=0)
  total = gridlib.ScaleIntegral(sums * grid.cell, function.ladder,
                                grid.dimension)
  if np.iscomplexobj(total):
    return complex(total)
  return float(total)


# ##############################################################################
# Translations
#
def LadderShift(ladder, dilation):
  """Number of ladder nodes k with dilation = step^k.

  Raises:
    AlignmentError: the dilation is not a whole power of the ladder step.
  """
  if not dilation > 0:
    raise AlignmentError('dilation must be positive, got %r' % (dilation,))
  steps = math.log(dilation) / math.log(ladder.step)
  shift = int(round(steps))
  if abs(steps - shift) > ALIGNMENT_TOLERANCE:
    raise AlignmentError(
        'dilation %r is not a power of the ladder step %.6g (%.6g steps)' % (
            dilation, ladder.step, steps))
  return shift


def _Relabel(function, shift, transform_column):
  """Moves column m + shift to position m, transforming it on the way."""
  ladder = function.ladder
  count = len(ladder)
  values = np.zeros(function.values.shape, dtype=complex)
  lost = 0
  used = set()
  for position in range(count):
    source = position + shift
    if 0 <= source < count:
      values[..., position] = transform_column(function.Column(source),
                                               position)
      used.add(source)
    else:
      lost += 1
  unused = [source for source in range(count) if source not in used]
  if unused:
    peak = np.max(np.abs(function.values)) if function.values.size else 0
    leaked = max(np.max(np.abs(function.Column(source))) for source in unused)
    if peak and leaked > 1e-12 * peak:
      LOGGER.warning('translation drops %d ladder nodes carrying %.3g of the '
                     'peak', len(unused), leaked / peak)
  return transform.GroupFunction(function.grid, ladder, values,
                                 function.dropped + lost)


def _SpatialMap(grid, column, shift, dilation):
  return gridlib.Resample(gridlib.SampledSignal(grid, column), shift,
                          dilation).samples


def LeftTranslate(function, shift, dilation):
  """L_(z,r) F(x, t) = F((x - z)/r, t/r).

  Arguments:
    @ function: GroupFunction
    @ shift: float or sequence of d floats
      The translation z.
    @ dilation: float
      The factor r, a whole power of the ladder step.

  Raises:
    AlignmentError: r is not ladder-aligned.

  Returns:
    GroupFunction: the translate; nodes whose source scale leaves the ladder
    read zero and are counted in `dropped`.
  """
  grid = function.grid
  offset = LadderShift(function.ladder, dilation)
  column = lambda values, position: _SpatialMap(grid, values, shift,
                                                1 / dilation)
  return _Relabel(function, offset, column)


def RightTranslate(function, shift, dilation):
  """R_(z,r) F(x, t) = F(x + tz, rt), same conventions as LeftTranslate."""
  grid = function.grid
  scales = function.ladder.Scales()
  offset = -LadderShift(function.ladder, dilation)
  shift = np.broadcast_to(np.asarray(shift, dtype=float), (grid.dimension,))
  column = lambda values, position: _SpatialMap(
      grid, values, -scales[position] * shift, 1.0)
  return _Relabel(function, offset, column)


def Translate(function, side, shift, dilation):
  if side == LEFT:
    return LeftTranslate(function, shift, dilation)
  if side == RIGHT:
    return RightTranslate(function, shift, dilation)
  raise gridlib.InvalidInputError('translation side must be %r or %r, got %r'
                                  % (LEFT, RIGHT, side))


# ##############################################################################
# Group function spaces
#
class GroupNormParams(object):
  """Parameters of the spaces L^s_(p,q), T^s_(p,q) and P^(s,a)_(p,q).

  Members:
    @ s: float
    @ p, q: float
      Exponents in (0, inf].
    @ a: float
      Peetre exponent, must be positive for P.
    @ space: str
      'L', 'T' or 'P'.
  """
  __slots__ = ('s', 'p', 'q', 'a', 'space')

  def __init__(self, s, p, q, a=0.0, space=L_SPACE):
    if space not in SPACES:
      raise ConfigurationError('space must be one of %s, got %r' % (
          ', '.join(SPACES), space))
    try:
      self.p = gridlib.ValidExponent(p, 'p')
      self.q = gridlib.ValidExponent(q, 'q')
    except gridlib.InvalidInputError as error:
      raise ConfigurationError(str(error))
    if space == P_SPACE and not a > 0:
      raise ConfigurationError('the P space needs a > 0, got a = %r' % (a,))
    self.s = float(s)
    self.a = float(a)
    self.space = space

  def __repr__(self):
    return 'GroupNormParams(%s, s=%r, p=%r, q=%r, a=%r)' % (
        self.space, self.s, self.p, self.q, self.a)

  def AsDict(self):
    return {'space': self.space, 's': self.s, 'p': self.p, 'q': self.q,
            'a': self.a}

  def PairingBound(self, dimension):
    """d/min(p, q), the bound a must exceed for the F-scale pairing."""
    return dimension / min(self.p, self.q)


def _Aggregate(values, ladder, s, q, extra):
  """(integral of t^-sq v^q t^-extra dt/t)^(1/q); sup of t^-s v for q = inf."""
  if q == INFINITY:
    return np.max(values * ladder.Scales() ** -s, axis=-1)
  return np.maximum(gridlib.ScaleIntegral(values ** q, ladder, s * q + extra),
                    0.0) ** (1 / q)


def GroupNorm(function, params, workers=None):
  """The (quasi-)norm of F in L^s_(p,q), T^s_(p,q) or P^(s,a)_(p,q).

  All three integrate t^-sq [...]^q against dt/t^(d+1). L takes the L_p norm
  of every column first; T averages |F|^q over the ball |z| < t and P takes
  the Peetre supremum before the scale integral and the final L_p norm.

  Arguments:
    @ function: GroupFunction
    @ params: GroupNormParams
    % workers: int ~~ None
      Threads for the Peetre columns.

  Raises:
    OutOfRangeError: ladder scales outside the resolvable window [2h, X/2].

  Returns:
    float
  """
  grid = function.grid
  ladder = function.ladder
  transform.CheckScales(grid, ladder.Scales())
  if not np.any(function.values):
    return 0.0
  space_axes = tuple(range(grid.dimension))
  dimension = grid.dimension
  magnitude = function.Abs()
  if params.space == L_SPACE:
    norms = gridlib.LpArray(magnitude, grid.cell, params.p, axis=space_axes)
    value = _Aggregate(norms, ladder, params.s, params.q, dimension)
  else:
    if params.space == P_SPACE:
      magnitude = transform.PeetreMaximal(function, params.a, workers).Abs()
      pointwise = _Aggregate(magnitude, ladder, params.s, params.q, dimension)
    else:
      scales = ladder.Scales()
      tents = np.stack([funcnorms.TentColumn(magnitude[..., position], grid,
                                             scale, params.q)
                        for position, scale in enumerate(scales)], axis=-1)
      if params.q == INFINITY:
        pointwise = _Aggregate(tents, ladder, params.s, params.q, 0)
      else:
        pointwise = np.maximum(gridlib.ScaleIntegral(
            tents, ladder, params.s * params.q), 0.0) ** (1 / params.q)
    value = gridlib.LpArray(pointwise, grid.cell, params.p, axis=space_axes)
  LOGGER.debug('%s-norm of %r: %.6g', params.space, function, value)
  return float(value)


# ##############################################################################
# Translation operator norms
#
def PredictedScaling(params, side, shift, dilation, dimension):
  """Operator norm of a translation on a group space, or its upper bound.

  Returns:
    tuple: (value, is_bound). The T-right bound carries an unknown constant
    and exponent; it is reported with C = 1 and b = d/min(p, q).
  """
  s, p, q, r = params.s, params.p, params.q, dilation
  d = dimension
  inverse = lambda exponent: 0.0 if exponent == INFINITY else d / exponent
  distance = float(np.linalg.norm(np.atleast_1d(shift)))
  if side == LEFT:
    if params.space == T_SPACE:
      return r ** (inverse(p) - s), False
    return r ** (inverse(p) - inverse(q) - s), False
  base = r ** (s + inverse(q))
  if params.space == L_SPACE:
    return base, False
  if params.space == P_SPACE:
    return base * max(1.0, r ** -params.a) * (1 + distance) ** params.a, True
  b = params.PairingBound(d)
  return base * max(1.0, r ** -b * (1 + distance) ** b), True


class ScalingCheck(object):
  """A measured translation scaling against its prediction."""
  __slots__ = ('space', 'side', 'shift', 'dilation', 'measured', 'predicted',
               'bound')

  def __init__(self, space, side, shift, dilation, measured, predicted, bound):
    self.space = space
    self.side = side
    self.shift = shift
    self.dilation = dilation
    self.measured = measured
    self.predicted = predicted
    self.bound = bound

  def __repr__(self):
    return 'ScalingCheck(%s-%s, measured=%.6g, predicted=%.6g)' % (
        self.space, self.side, self.measured, self.predicted)

  @property
  def ratio(self):
    return self.measured / self.predicted

  def Holds(self, tolerance=0.02):
    """Equalities within the relative tolerance, bounds one-sided."""
    if self.bound:
      return self.ratio <= 1 + tolerance
    return abs(self.ratio - 1) <= tolerance

  def AsDict(self):
    shift = np.atleast_1d(self.shift)
    return {'space': self.space, 'side': self.side,
            'z': ' '.join('%g' % value for value in shift),
            'r': self.dilation, 'predicted': self.predicted,
            'measured': self.measured, 'ratio': self.ratio}


def TranslationScalingCheck(function, params, shift, dilation, side=LEFT,
                            workers=None):
  """Measures ||translate(F)|| / ||F|| and the predicted operator norm.

  Arguments:
    @ function: GroupFunction
      Should vanish near both ladder ends, otherwise relabelled mass is lost.
    @ params: GroupNormParams
    @ shift: float or sequence of d floats
    @ dilation: float
      Ladder-aligned r.
    % side: str ~~ 'left'

  Raises:
    AlignmentError: r is not ladder-aligned.
    InvalidInputError: F has zero norm.

  Returns:
    ScalingCheck
  """
  original = GroupNorm(function, params, workers)
  if original == 0:
    raise gridlib.InvalidInputError('scaling check of a zero group function')
  moved = GroupNorm(Translate(function, side, shift, dilation), params, workers)
  predicted, bound = PredictedScaling(params, side, shift, dilation,
                                      function.grid.dimension)
  check = ScalingCheck(params.space, side, shift, dilation, moved / original,
                       predicted, bound)
  LOGGER.debug('%r', check)
  return check


# ##############################################################################
# Coorbit norms
#
def CoorbitParams(params, a=0.0, space=None):
  """The group space whose coorbit is the homogeneous B or F space.

  B^s_(p,q) is the coorbit of L^(s+d/2-d/q); F^s_(p,q) that of
  P^(s+d/2-d/q, a) or of T^(s+d/2).

  Arguments:
    @ params: funcnorms.NormParams
    % a: float ~~ 0.0
      Required above d/min(p, q) for the P space.
    % space: str ~~ 'L' for B, 'P' for F

  Returns:
    callable: dimension -> GroupNormParams
  """
  if space is None:
    space = L_SPACE if params.scale == funcnorms.B_SCALE else P_SPACE
  if (params.scale == funcnorms.B_SCALE) != (space == L_SPACE):
    raise ConfigurationError('%s-scale norms are not coorbits of %s spaces' % (
        params.scale, space))

  def Build(dimension):
    shifted = params.s + dimension / 2
    if space != T_SPACE and params.q != INFINITY:
      shifted -= dimension / params.q
    return GroupNormParams(shifted, params.p, params.q, a, space)
  return Build


def CheckAnalyzer(kernel):
  """Verifies that g is radial, admissible and has a vanishing moment.

  Raises:
    InadmissibleError: naming the failed hypothesis.
  """
  if not kernel.IsRadial():
    raise InadmissibleError('analyzer %s is not radial' % kernel.name)
  if kernel.meta.moment_order < 1:
    raise InadmissibleError('analyzer %s has no vanishing moment (L = %d)' % (
        kernel.name, kernel.meta.moment_order))
  constant = kernels.AdmissibilityConstant(kernel)
  if constant.divergent or not 0 < constant.value < INFINITY:
    raise InadmissibleError('analyzer %s is not admissible (c_g = %r)' % (
        kernel.name, constant.value))


def CoorbitNorm(signal, kernel, params, a, ladder, space=None,
                guard=transform.WRAP_GUARD, workers=None):
  """The norm of f as an element of the coorbit of a group space.

  Computes the wavelet transform W_g f over the ladder and its group norm with
  the shifted smoothness index.

  Arguments:
    @ signal: SampledSignal
    @ kernel: Kernel
      The analyzer g: radial, admissible, at least one vanishing moment.
    @ params: funcnorms.NormParams
      s, p, q and the scale of the homogeneous target norm.
    @ a: float
      Peetre exponent of the P pairing, above d/min(p, q).
    @ ladder: ScaleLadder
    % space: str ~~ 'L' for B, 'P' for F
      'T' selects the tent space for F.

  Raises:
    InadmissibleError: the analyzer fails a hypothesis.
    ConfigurationError: p or q below 1, or a too small for the P pairing.

  Returns:
    float
  """
  dimension = signal.grid.dimension
  if params.p < 1 or params.q < 1:
    raise ConfigurationError('coorbit identities need p, q >= 1, got %r, %r'
                             % (params.p, params.q))
  group_params = CoorbitParams(params, a, space)(dimension)
  if (group_params.space == P_SPACE and
      not a > group_params.PairingBound(dimension)):
    raise ConfigurationError('the P pairing needs a > d/min(p,q) = %.4g, got '
                             'a = %r' % (group_params.PairingBound(dimension), a))
  CheckAnalyzer(kernel)
  if not np.any(signal.samples):
    return 0.0
  coefficients = transform.Cwt(signal, kernel, ladder, guard, workers)
  return GroupNorm(coefficients, group_params, workers)


# ##############################################################################
# Weights
#
class WeightSpec(object):
  """The weight w(x, t) = (1+|x|)^v (t^r2 + t^-r1)."""
  __slots__ = ('v', 'r1', 'r2')

  def __init__(self, v, r1, r2):
    if v < 0:
      raise gridlib.InvalidInputError('weight exponent v must be >= 0, got %r'
                                      % (v,))
    self.v = float(v)
    self.r1 = float(r1)
    self.r2 = float(r2)

  def __repr__(self):
    return 'WeightSpec(v=%r, r1=%r, r2=%r)' % (self.v, self.r1, self.r2)

  def __eq__(self, other):
    return (isinstance(other, WeightSpec) and
            (self.v, self.r1, self.r2) == (other.v, other.r1, other.r2))

  def __call__(self, x, t):
    radius = np.abs(np.asarray(x, dtype=float))
    t = np.asarray(t, dtype=float)
    return (1 + radius) ** self.v * (t ** self.r2 + t ** -self.r1)

  def AsDict(self):
    return {'v': self.v, 'r1': self.r1, 'r2': self.r2}


def _WeightTerms(params, dimension):
  """The four operator-norm terms of w_Y as (t-exponent below 1, t-exponent
  above 1, x-exponent)."""
  d = dimension
  if params.space == T_SPACE:
    raise ConfigurationError('the translation weight of T is not available')
  left = params.s - d / params.p + (0 if params.q == INFINITY else d / params.q)
  right = params.s + (0 if params.q == INFINITY else d / params.q)
  terms = [(-left, -left, 0.0), (left, left, 0.0)]
  if params.space == P_SPACE:
    a = params.a
    terms += [(right - a, right, a), (d - right - a, d - right + a, a)]
  else:
    terms += [(right, right, 0.0), (d - right, d - right, 0.0)]
  return terms


def TranslationWeight(params, dimension):
  """The weight max{||L_g||, ||L_g^-1||, ||R_g||, Delta(g^-1)||R_g^-1||}.

  Uses the operator norms of the translations on L and P (the P right bound
  in the form max{1, t^-a}(1+|x|)^a); T is not covered.

  Returns:
    callable: (x, t) -> w_Y(x, t)
  """
  terms = _WeightTerms(params, dimension)

  def Weight(x, t):
    radius = np.abs(np.asarray(x, dtype=float))
    t = np.asarray(t, dtype=float)
    values = [np.where(t < 1, t ** low, t ** high) * (1 + radius) ** spatial
              for low, high, spatial in terms]
    return np.max(values, axis=0)
  return Weight


def WeightForSpace(params, dimension, a=None, space=None):
  """A weight (1+|x|)^v (t^r2 + t^-r1) dominating w_Y for the coorbit space
  of a homogeneous B or F norm.

  r1 and r2 are the largest decay and growth exponents among the w_Y terms,
  floored at zero, and v = a for the P space. For L and for P with s >= 0
  these are the choices
    L: r1 = max{s - e, e - s, s - d/2}, r2 = max{s + d/2, e - s}  (s >= 0)
       r1 = max{s - e, e - s, -s - d/2}, r2 = max{d/2 - s, e - s}  (s < 0)
    P: r1 = max{s + a - d/2, s + d/2 - d/p}, r2 = max{s + d/2, d/2 - s + a}
  with e = d(1/p - 1/2).

  Arguments:
    @ params: funcnorms.NormParams
    @ dimension: int
    % a: float ~~ None
      Required for the F-scale (P space).
    % space: str ~~ 'L' for B, 'P' for F

  Returns:
    WeightSpec
  """
  group_params = CoorbitParams(params, a or 0.0, space)(dimension)
  terms = _WeightTerms(group_params, dimension)
  r1 = max([0.0] + [-low for low, _, _ in terms])
  r2 = max([0.0] + [high for _, high, _ in terms])
  v = group_params.a if group_params.space == P_SPACE else 0.0
  return WeightSpec(v, r1, r2)
