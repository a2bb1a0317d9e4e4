#!/usr/bin/python3
"""Test suite for the ax+b group, its function spaces and coorbit norms."""

# Too many public methods
# pylint: disable=R0904

# Standard modules
import math
import unittest

# Third-party modules
import numpy as np

# Unittest target
from ucoorbit import funcnorms
from ucoorbit import grid as gridlib
from ucoorbit import group
from ucoorbit import kernels
from ucoorbit import transform


def LogGaussian(x, t):
  """e^{-x^2} e^{-4 (log t)^2}, negligible at both ends of the test ladders."""
  return np.exp(-x ** 2) * np.exp(-4 * np.log(t) ** 2)


class GroupLawTests(unittest.TestCase):
  """Product, inverse and identity of the ax+b group."""

  def testIdentity(self):
    """[GroupPoint] the identity is neutral on both sides"""
    point = group.GroupPoint([1.5, -2.0], 3.0)
    identity = group.GroupPoint.Identity(2)
    self.assertTrue((identity * point).IsClose(point))
    self.assertTrue((point * identity).IsClose(point))

  def testInverse(self):
    """[GroupInverse] (2, 4)^-1 = (-1/2, 1/4)"""
    point = group.GroupPoint(2.0, 4.0)
    inverse = group.GroupInverse(point)
    self.assertAlmostEqual(inverse.x[0], -0.5)
    self.assertAlmostEqual(inverse.t, 0.25)
    self.assertTrue(group.GroupProduct(point, inverse).IsClose(
        group.GroupPoint.Identity()))
    self.assertTrue((inverse * point).IsClose(group.GroupPoint.Identity()))

  def testAssociativity(self):
    """[GroupProduct] the product is associative"""
    rng = np.random.default_rng(7)
    for _ in range(20):
      first, second, third = [
          group.GroupPoint(rng.normal(size=2), math.exp(rng.uniform(-2, 2)))
          for _ in range(3)]
      self.assertTrue(((first * second) * third).IsClose(
          first * (second * third), 1e-12))

  def testProduct(self):
    """[GroupProduct] (x, t)(y, s) = (x + ty, st)"""
    product = group.GroupPoint(1.0, 2.0) * group.GroupPoint(3.0, 5.0)
    self.assertAlmostEqual(product.x[0], 7.0)
    self.assertAlmostEqual(product.t, 10.0)

  def testInvalidPoint(self):
    """[GroupPoint] scales must be positive"""
    self.assertRaises(gridlib.InvalidInputError, group.GroupPoint, 0.0, 0.0)
    self.assertRaises(gridlib.InvalidInputError, group.GroupProduct,
                      group.GroupPoint(0.0, 1.0),
                      group.GroupPoint([0.0, 0.0], 1.0))


class HaarTests(unittest.TestCase):
  """Haar density, module and integral."""

  def setUp(self):
    self.grid = gridlib.GridSpec(1, 16, 1024)
    self.ladder = gridlib.ScaleLadder(2.0, -5, 5, 8)
    self.exact = math.sqrt(math.pi) * math.sqrt(math.pi / 4) * math.exp(1 / 16)

  def testWeightAndModule(self):
    """[HaarWeight] 1/t^(d+1) and t^-d"""
    self.assertEqual(group.HaarWeight(group.GroupPoint(0.0, 1.0)), 1.0)
    self.assertEqual(group.HaarModule(group.GroupPoint(0.0, 1.0)), 1.0)
    self.assertEqual(group.HaarModule(group.GroupPoint(0.0, 2.0)), 0.5)
    self.assertEqual(group.HaarWeight(group.GroupPoint(0.0, 2.0)), 0.25)
    self.assertEqual(group.HaarWeight(group.GroupPoint([0.0, 0.0], 2.0)),
                     0.125)

  def testClosedForm(self):
    """[HaarIntegral] matches the closed form of a log-Gaussian"""
    value = group.HaarIntegral(LogGaussian, self.grid, self.ladder)
    self.assertAlmostEqual(value / self.exact, 1.0, places=6)

  def testLeftInvariance(self):
    """[HaarIntegral] left translates keep the integral"""
    shift, dilation = 0.3, 1.3
    moved = lambda x, t: LogGaussian((x - shift) / dilation, t / dilation)
    value = group.HaarIntegral(moved, self.grid, self.ladder)
    self.assertAlmostEqual(value / self.exact, 1.0, places=6)

  def testRightModule(self):
    """[HaarIntegral] right translates pick up Delta(g^-1) = r^d"""
    shift, dilation = 0.5, 1.3
    moved = lambda x, t: LogGaussian(x + t * shift, dilation * t)
    value = group.HaarIntegral(moved, self.grid, self.ladder)
    self.assertAlmostEqual(value / self.exact, dilation, places=5)

  def testGroupFunction(self):
    """[HaarIntegral] sampled group functions integrate the same way"""
    function = group.SampleGroupFunction(LogGaussian, self.grid, self.ladder)
    self.assertEqual(group.HaarIntegral(function),
                     group.HaarIntegral(LogGaussian, self.grid, self.ladder))

  def testNeedsGrid(self):
    """[HaarIntegral] callables need a grid and a ladder"""
    self.assertRaises(gridlib.InvalidInputError, group.HaarIntegral,
                      LogGaussian)


class GroupFunctionTestCase(unittest.TestCase):

  def setUp(self):
    self.grid = gridlib.GridSpec(1, 16, 1024)
    self.ladder = gridlib.ScaleLadder(2.0, -3, 4, 4)
    self.function = group.SampleGroupFunction(LogGaussian, self.grid,
                                              self.ladder)


class TranslationTests(GroupFunctionTestCase):
  """Left and right translations of sampled group functions."""

  def testIdentity(self):
    """[LeftTranslate] (0, 1) is the identity on both sides"""
    for side in (group.LEFT, group.RIGHT):
      moved = group.Translate(self.function, side, 0.0, 1.0)
      np.testing.assert_array_equal(moved.values, self.function.values)
      self.assertEqual(moved.dropped, 0)

  def testGridShift(self):
    """[LeftTranslate] whole grid steps at r = 1 are exact shifts"""
    moved = group.LeftTranslate(self.function, 4 * self.grid.spacing, 1.0)
    np.testing.assert_array_equal(moved.values,
                                  np.roll(self.function.values, 4, axis=0))

  def testRightRelabel(self):
    """[RightTranslate] z = 0 and r = one ladder step only relabels scales"""
    moved = group.RightTranslate(self.function, 0.0, self.ladder.step)
    np.testing.assert_array_equal(moved.values[..., 1:],
                                  self.function.values[..., :-1])
    np.testing.assert_array_equal(moved.values[..., 0], 0)
    self.assertEqual(moved.dropped, 1)

  def testLeftRelabel(self):
    """[LeftTranslate] r = one ladder step reads the next smaller scale"""
    moved = group.LeftTranslate(self.function, 0.0, self.ladder.step)
    self.assertEqual(moved.dropped, 1)
    np.testing.assert_array_equal(moved.values[..., -1], 0)

  def testAlignment(self):
    """[LeftTranslate] dilations off the ladder are refused"""
    self.assertRaises(group.AlignmentError, group.LeftTranslate,
                      self.function, 0.0, 1.5)
    self.assertRaises(group.AlignmentError, group.RightTranslate,
                      self.function, 0.0, -2.0)
    self.assertEqual(group.LadderShift(self.ladder, 2.0), 4)
    self.assertEqual(group.LadderShift(self.ladder, 0.5), -4)

  def testSide(self):
    """[Translate] the side must be left or right"""
    self.assertRaises(gridlib.InvalidInputError, group.Translate,
                      self.function, 'up', 0.0, 1.0)


class GroupNormTests(GroupFunctionTestCase):
  """The L, T and P group norms."""

  def Params(self, space, s=0.5, p=2, q=2):
    return group.GroupNormParams(s, p, q, a=2.0, space=space)

  def testZero(self):
    """[GroupNorm] the zero function has norm zero"""
    zero = self.function * 0
    for space in group.SPACES:
      self.assertEqual(group.GroupNorm(zero, self.Params(space)), 0.0)

  def testSingleSlab(self):
    """[GroupNorm] one populated node gives w^(1/q) t^(-s-d/q) ||F||_p"""
    position = 6
    values = np.zeros(self.grid.shape + (len(self.ladder),))
    values[..., position] = np.exp(-self.grid.Axis() ** 2)
    function = transform.GroupFunction(self.grid, self.ladder, values)
    scale = self.ladder.Scales()[position]
    width = self.ladder.Weights()[position]
    expected = (width ** 0.5 * scale ** (-0.5 - 0.5) *
                (math.pi / 2) ** 0.25)
    value = group.GroupNorm(function, self.Params(group.L_SPACE))
    self.assertAlmostEqual(value / expected, 1.0, places=6)

  def testPeetreDominatesPointwise(self):
    """[GroupNorm] the P norm dominates its y = 0 evaluation"""
    rng = np.random.default_rng(3)
    values = (rng.normal(size=self.function.values.shape) +
              1j * rng.normal(size=self.function.values.shape))
    function = transform.GroupFunction(self.grid, self.ladder, values)
    params = self.Params(group.P_SPACE)
    pointwise = gridlib.ScaleIntegral(np.abs(values) ** 2, self.ladder,
                                      params.s * 2 + 1) ** 0.5
    plain = gridlib.LpArray(pointwise, self.grid.cell, 2)
    self.assertGreaterEqual(group.GroupNorm(function, params), plain)

  def testHomogeneity(self):
    """[GroupNorm] ||cF|| = |c| ||F|| in every space"""
    for p, q in ((2, 2), (1, 3), (0.5, math.inf)):
      for space in group.SPACES:
        params = self.Params(space, p=p, q=q)
        value = group.GroupNorm(self.function, params)
        scaled = group.GroupNorm(self.function * -2.5, params)
        self.assertAlmostEqual(scaled / value, 2.5, places=10)

  def testOutOfRange(self):
    """[GroupNorm] ladders beyond the resolvable window are refused"""
    ladder = gridlib.ScaleLadder(2.0, -4, 4, 4)
    function = group.SampleGroupFunction(LogGaussian, self.grid, ladder)
    self.assertRaises(transform.OutOfRangeError, group.GroupNorm, function,
                      self.Params(group.L_SPACE))

  def testParams(self):
    """[GroupNormParams] P needs a > 0 and the space tag must be known"""
    self.assertRaises(funcnorms.ConfigurationError, group.GroupNormParams, 0,
                      2, 2, space=group.P_SPACE)
    self.assertRaises(funcnorms.ConfigurationError, group.GroupNormParams, 0,
                      2, 2, space='Q')
    self.assertRaises(funcnorms.ConfigurationError, group.GroupNormParams, 0,
                      -1, 2)


class ScalingTests(GroupFunctionTestCase):
  """Operator norms of translations on the group spaces."""

  def Check(self, space, side, shift, dilation, s=0.5, p=2, q=2):
    params = group.GroupNormParams(s, p, q, a=2.0, space=space)
    return group.TranslationScalingCheck(self.function, params, shift,
                                         dilation, side)

  def testLeftExample(self):
    """[TranslationScalingCheck] L-left, s = 1, r = 2 predicts 1/2"""
    check = self.Check(group.L_SPACE, group.LEFT, 0.0, 2.0, s=1)
    self.assertAlmostEqual(check.predicted, 0.5)
    self.assertAlmostEqual(check.ratio, 1.0, delta=0.02)

  def testIdentity(self):
    """[TranslationScalingCheck] the identity measures and predicts 1"""
    for space in group.SPACES:
      check = self.Check(space, group.LEFT, 0.0, 1.0)
      self.assertEqual(check.predicted, 1.0)
      self.assertAlmostEqual(check.measured, 1.0, places=12)

  def testExactScalings(self):
    """[TranslationScalingCheck] L left and right, P left are equalities"""
    cases = [(group.L_SPACE, group.LEFT, 0.25), (group.L_SPACE, group.RIGHT,
                                                  0.5),
             (group.P_SPACE, group.LEFT, 0.25)]
    for s, p, q in ((0.5, 2, 2), (1, 3, 2)):
      for space, side, shift in cases:
        for dilation in (0.5, 2.0):
          check = self.Check(space, side, shift, dilation, s, p, q)
          self.assertFalse(check.bound)
          self.assertTrue(check.Holds(0.02), msg=repr(check))

  def testTentLeft(self):
    """[TranslationScalingCheck] T-left scales like r^(d/p - s)"""
    for dilation in (0.5, 2.0):
      check = self.Check(group.T_SPACE, group.LEFT, 0.0, dilation)
      self.assertAlmostEqual(check.predicted, dilation ** 0.0)
      self.assertAlmostEqual(check.ratio, 1.0, delta=0.02)

  def testRightBounds(self):
    """[TranslationScalingCheck] P-right and T-right stay below the bound"""
    for shift, dilation in ((1.0, 2.0), (0.0, 0.5)):
      check = self.Check(group.P_SPACE, group.RIGHT, shift, dilation)
      self.assertTrue(check.bound)
      self.assertLessEqual(check.measured, check.predicted)
    check = self.Check(group.T_SPACE, group.RIGHT, 0.0, 2.0)
    self.assertTrue(check.bound)
    self.assertLessEqual(check.measured, check.predicted)

  def testRow(self):
    """[ScalingCheck] rows carry the report columns"""
    row = self.Check(group.L_SPACE, group.RIGHT, 0.5, 2.0).AsDict()
    self.assertEqual(sorted(row), ['measured', 'predicted', 'r', 'ratio',
                                   'side', 'space', 'z'])
    self.assertEqual(row['z'], '0.5')

  def testZeroFunction(self):
    """[TranslationScalingCheck] a zero function has no scaling"""
    params = group.GroupNormParams(0, 2, 2)
    self.assertRaises(gridlib.InvalidInputError,
                      group.TranslationScalingCheck, self.function * 0,
                      params, 0.0, 2.0)


class CoorbitTests(unittest.TestCase):
  """Coorbit norms against the homogeneous local-means displays."""

  def setUp(self):
    self.grid = gridlib.GridSpec(1, 32, 4096)
    self.x = self.grid.Axis()
    self.signal = gridlib.SampledSignal(self.grid, np.exp(-self.x ** 2))
    self.analyzer = kernels.MexicanHat(self.grid)
    self.ladder = gridlib.ScaleLadder(2.0, -1, 5, 2)

  def Params(self, scale, variant):
    return funcnorms.NormParams(0.5, 2, 2, a=2.0, scale=scale,
                                homogeneous=True, variant=variant)

  def Direct(self, params):
    return funcnorms.Norm(self.signal, self.analyzer, self.analyzer, params,
                          self.ladder)

  def testZero(self):
    """[CoorbitNorm] the zero signal has norm zero"""
    zero = gridlib.SampledSignal.Zero(self.grid)
    self.assertEqual(group.CoorbitNorm(zero, self.analyzer,
                                       self.Params('B', 1), 0.0, self.ladder),
                     0.0)

  def testBesov(self):
    """[CoorbitNorm] the L coorbit is the continuous homogeneous B norm"""
    params = self.Params('B', 1)
    value = group.CoorbitNorm(self.signal, self.analyzer, params, 0.0,
                              self.ladder)
    self.assertAlmostEqual(value / self.Direct(params), 1.0, places=10)

  def testTent(self):
    """[CoorbitNorm] the T coorbit is the tent display of the F norm"""
    params = self.Params('F', 3)
    value = group.CoorbitNorm(self.signal, self.analyzer, params, 0.0,
                              self.ladder, space=group.T_SPACE)
    self.assertAlmostEqual(value / self.Direct(params), 1.0, places=10)

  def testPeetre(self):
    """[CoorbitNorm] the P coorbit is the Peetre display of the F norm"""
    params = self.Params('F', 2)
    value = group.CoorbitNorm(self.signal, self.analyzer, params, 2.0,
                              self.ladder)
    self.assertAlmostEqual(value / self.Direct(params), 1.0, places=10)

  def testTranslation(self):
    """[CoorbitNorm] grid-multiple shifts leave the norm unchanged"""
    params = self.Params('B', 1)
    moved = gridlib.SampledSignal(self.grid, np.roll(self.signal.samples, 40))
    first = group.CoorbitNorm(self.signal, self.analyzer, params, 0.0,
                              self.ladder)
    second = group.CoorbitNorm(moved, self.analyzer, params, 0.0, self.ladder)
    self.assertLess(abs(second - first) / first, 1e-6)

  def testInadmissible(self):
    """[CoorbitNorm] analyzers without cancellation or symmetry fail"""
    params = self.Params('B', 1)
    self.assertRaises(group.InadmissibleError, group.CoorbitNorm, self.signal,
                      kernels.GaussianKernel(self.grid), params, 0.0,
                      self.ladder)
    odd = kernels.Kernel(self.grid,
                         symbol=lambda xi: 1j * xi * np.exp(-xi ** 2),
                         name='odd')
    self.assertRaises(group.InadmissibleError, group.CoorbitNorm, self.signal,
                      odd, params, 0.0, self.ladder)

  def testPairing(self):
    """[CoorbitNorm] the P pairing needs a > d/min(p, q) and p, q >= 1"""
    self.assertRaises(funcnorms.ConfigurationError, group.CoorbitNorm,
                      self.signal, self.analyzer, self.Params('F', 2), 0.4,
                      self.ladder)
    params = funcnorms.NormParams(0.5, 0.5, 2, homogeneous=True)
    self.assertRaises(funcnorms.ConfigurationError, group.CoorbitNorm,
                      self.signal, self.analyzer, params, 5.0, self.ladder)
    self.assertRaises(funcnorms.ConfigurationError, group.CoorbitNorm,
                      self.signal, self.analyzer, self.Params('B', 1), 2.0,
                      self.ladder, space=group.P_SPACE)

  def testShiftedIndex(self):
    """[CoorbitParams] L and P use s + d/2 - d/q, T uses s + d/2"""
    params = funcnorms.NormParams(0.5, 2, 4, homogeneous=True)
    self.assertAlmostEqual(group.CoorbitParams(params, 2.0)(1).s, 0.75)
    self.assertAlmostEqual(
        group.CoorbitParams(params, space=group.T_SPACE)(1).s, 1.0)
    besov = funcnorms.NormParams(0.5, 2, 4, scale='B', homogeneous=True)
    self.assertEqual(group.CoorbitParams(besov)(2).space, group.L_SPACE)
    self.assertAlmostEqual(group.CoorbitParams(besov)(2).s, 1.0)


class WeightTests(unittest.TestCase):
  """Weights dominating the translation norms."""

  def testEvaluate(self):
    """[WeightSpec] (1+|x|)^v (t^r2 + t^-r1)"""
    weight = group.WeightSpec(1, 2, 3)
    self.assertAlmostEqual(weight(1.0, 2.0), 16.5)
    self.assertAlmostEqual(weight(0.0, 1.0), 2.0)
    self.assertRaises(gridlib.InvalidInputError, group.WeightSpec, -1, 0, 0)

  def testBesovWeights(self):
    """[WeightForSpace] the L choices for s >= 0 and s < 0"""
    positive = funcnorms.NormParams(0.5, 2, 2, scale='B', homogeneous=True)
    self.assertEqual(group.WeightForSpace(positive, 1),
                     group.WeightSpec(0, 0.5, 1.0))
    negative = funcnorms.NormParams(-0.5, 1, 2, scale='B', homogeneous=True)
    self.assertEqual(group.WeightForSpace(negative, 1),
                     group.WeightSpec(0, 1.0, 1.0))

  def testPeetreWeights(self):
    """[WeightForSpace] the P choice for s >= 0 carries v = a"""
    params = funcnorms.NormParams(0.5, 2, 2, homogeneous=True)
    self.assertEqual(group.WeightForSpace(params, 1, a=1.5),
                     group.WeightSpec(1.5, 1.5, 1.5))

  def testDominates(self):
    """[WeightForSpace] the weight bounds w_Y everywhere"""
    x, t = np.meshgrid(np.linspace(0, 5, 11), np.logspace(-3, 3, 61))
    cases = [
        (funcnorms.NormParams(0.5, 2, 2, scale='B', homogeneous=True), None),
        (funcnorms.NormParams(-0.5, 1, 2, scale='B', homogeneous=True), None),
        (funcnorms.NormParams(1.0, 3, 2, scale='B', homogeneous=True), None),
        (funcnorms.NormParams(0.5, 2, 2, homogeneous=True), 1.5),
        (funcnorms.NormParams(-0.1, 2, 2, homogeneous=True), 1.5)]
    for params, a in cases:
      weight = group.WeightForSpace(params, 1, a=a)
      translation = group.TranslationWeight(
          group.CoorbitParams(params, a or 0.0)(1), 1)
      self.assertTrue(np.all(translation(x, t) <= weight(x, t) * (1 + 1e-12)),
                      msg=repr(params))
      self.assertTrue(np.all(weight(x, t) >= 1))

  def testTentRefused(self):
    """[WeightForSpace] no weight is derived for the tent space"""
    params = funcnorms.NormParams(0.5, 2, 2, homogeneous=True)
    self.assertRaises(funcnorms.ConfigurationError, group.WeightForSpace,
                      params, 1, space=group.T_SPACE)


if __name__ == '__main__':
  unittest.main(testRunner=unittest.TextTestRunner(verbosity=2))
