#!/usr/bin/python3
"""Deterministic test signals with closed forms.

A selector names a family; every member is sampled from its closed form on the
requested grid and must have decayed below TAIL_LIMIT at the box faces.

  gaussian-family       e^(-|x|^2/(2w^2)) for w in {1/2, 1, 2, 4}
  gaussian-derivatives  d^n/dx_1^n e^(-|x|^2/2) for n in {1, 2, 3}
  bsplines              centred cardinal B-splines of orders 2 to 4
  chirps                e^(-|x|^2/2) cos(omega x_1) for omega in {2, 4, 8}
  dilation-family       f(r x) for the Gaussian f and r in {1, 2, 4}
  derivative-dilations  the first Gaussian derivative dilated by r in {1, 2, 4}
  translation-family    f(x - z) for z in {0, 1, 2} along the first axis
  mixed-family          f(r (x - z)) for r in {1, 2, 4} and z in {0, 1.5}
  band-family           the chirp with omega = 5, dilated by r in {1, 2, 4}
  zero                  the zero signal

Classes:
  CorpusMember: One named signal with its dilation and shift.
  Corpus: The ordered members of one selector.

Error Classes:
  Error: Exception base class.
  SelectorError: The selector is empty or unknown.
  TailError: A member has not decayed at the box faces.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import collections
import logging

# Third-party modules
import numpy as np
from numpy.polynomial import hermite_e

# Package modules
from . import grid as gridlib
from . import splinewavelets

TAIL_LIMIT = 1e-10
GAUSSIAN_WIDTHS = (0.5, 1.0, 2.0, 4.0)
DERIVATIVE_ORDERS = (1, 2, 3)
SPLINE_ORDERS = (2, 3, 4)
CHIRP_FREQUENCIES = (2.0, 4.0, 8.0)
DILATIONS = (1.0, 2.0, 4.0)
SHIFTS = (0.0, 1.0, 2.0)
MIXED_SHIFTS = (0.0, 1.5)
BAND_FREQUENCY = 5.0
LOGGER = logging.getLogger('ucoorbit_corpus')


class Error(gridlib.Error):
  """Superclass used for inheritance and external exception handling."""


class SelectorError(Error, ValueError):
  """The corpus selector is empty or unknown."""


class TailError(Error, ValueError):
  """A corpus member does not vanish at the faces of the grid box."""


CorpusMember = collections.namedtuple('CorpusMember',
                                      'name signal dilation shift')


def Gaussian(width=1.0):
  """x -> e^(-|x|^2/(2w^2)) for any number of coordinate arrays."""
  return lambda *x: np.exp(-sum(c ** 2 for c in x) / (2 * width ** 2))


def GaussianDerivative(order):
  """x -> d^n/dx_1^n e^(-|x|^2/2) = (-1)^n He_n(x_1) e^(-|x|^2/2)."""
  coefficients = np.zeros(order + 1)
  coefficients[order] = (-1) ** order
  return lambda *x: hermite_e.hermeval(x[0], coefficients) * Gaussian()(*x)


def CentredBSpline(order):
  """Tensor product of N_m(x_i + m/2)."""
  def Spline(*x):
    values = 1.0
    for coordinate in x:
      values = values * splinewavelets.CardinalBSpline(order,
                                                       coordinate + order / 2)
    return values
  return Spline


def Chirp(frequency, width=1.0):
  """The modulated Gaussian e^(-|x|^2/(2w^2)) cos(omega x_1)."""
  return lambda *x: Gaussian(width)(*x) * np.cos(frequency * x[0])


def Transformed(function, dilation=1.0, shift=0.0):
  """x -> f(r (x - z)) with z along the first axis."""
  return lambda *x: function(*((dilation * (x[0] - shift),) +
                               tuple(dilation * c for c in x[1:])))


def _Families():
  families = collections.OrderedDict()
  families['gaussian-family'] = [
      ('gaussian(w=%g)' % width, Gaussian(width), 1.0, 0.0)
      for width in GAUSSIAN_WIDTHS]
  families['gaussian-derivatives'] = [
      ('gaussian-d%d' % order, GaussianDerivative(order), 1.0, 0.0)
      for order in DERIVATIVE_ORDERS]
  families['bsplines'] = [
      ('bspline(m=%d)' % order, CentredBSpline(order), 1.0, 0.0)
      for order in SPLINE_ORDERS]
  families['chirps'] = [
      ('chirp(omega=%g)' % frequency, Chirp(frequency), 1.0, 0.0)
      for frequency in CHIRP_FREQUENCIES]
  families['dilation-family'] = [
      ('gaussian(r=%g)' % dilation, Transformed(Gaussian(), dilation), dilation,
       0.0) for dilation in DILATIONS]
  families['derivative-dilations'] = [
      ('gaussian-d1(r=%g)' % dilation, Transformed(GaussianDerivative(1),
                                                   dilation), dilation, 0.0)
      for dilation in DILATIONS]
  families['translation-family'] = [
      ('gaussian(z=%g)' % shift, Transformed(Gaussian(), 1.0, shift), 1.0,
       shift) for shift in SHIFTS]
  families['mixed-family'] = [
      ('gaussian(r=%g,z=%g)' % (dilation, shift),
       Transformed(Gaussian(), dilation, shift), dilation, shift)
      for dilation in DILATIONS for shift in MIXED_SHIFTS]
  families['band-family'] = [
      ('chirp(omega=%g,r=%g)' % (BAND_FREQUENCY, dilation),
       Transformed(Chirp(BAND_FREQUENCY), dilation), dilation, 0.0)
      for dilation in DILATIONS]
  families['zero'] = [('zero', lambda *x: np.zeros_like(x[0]), 1.0, 0.0)]
  return families


SELECTORS = tuple(_Families())


class Corpus(object):
  """The members of one selector on one grid, in a fixed order."""

  def __init__(self, selector, grid, members):
    self.selector = selector
    self.grid = grid
    self.members = list(members)

  def __repr__(self):
    return 'Corpus(%r, %d members, %r)' % (self.selector, len(self.members),
                                           self.grid)

  def __len__(self):
    return len(self.members)

  def __iter__(self):
    return iter(self.members)

  def Names(self):
    return [member.name for member in self.members]

  def Signals(self):
    return [member.signal for member in self.members]

  def Tails(self):
    """Boundary tail of every member relative to its peak."""
    tails = {}
    for member in self.members:
      peak = np.max(member.signal.Abs())
      tails[member.name] = (member.signal.BoundaryTail() / peak
                            if peak else 0.0)
    return tails


def MakeCorpus(selector, grid):
  """Samples the members of a selector on a grid.

  Arguments:
    @ selector: str
      One of SELECTORS.
    @ grid: GridSpec

  Raises:
    SelectorError: an empty or unknown selector.
    TailError: a member exceeds TAIL_LIMIT at the box faces.

  Returns:
    Corpus
  """
  if not selector:
    raise SelectorError('the corpus selector is empty')
  families = _Families()
  if selector not in families:
    raise SelectorError('unknown corpus selector %r, expected one of %s' % (
        selector, ', '.join(families)))
  members = [CorpusMember(name, gridlib.SampledSignal.Evaluate(grid, function),
                          dilation, shift)
             for name, function, dilation, shift in families[selector]]
  corpus = Corpus(selector, grid, members)
  for name, tail in corpus.Tails().items():
    if tail >= TAIL_LIMIT:
      raise TailError('corpus member %s has tail %.3g >= %g on %r' % (
          name, tail, TAIL_LIMIT, grid))
  LOGGER.debug('built %r', corpus)
  return corpus
