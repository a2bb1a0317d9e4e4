#!/usr/bin/python3
"""Test suite for the Besov and Lizorkin-Triebel norm displays (funcnorms)."""

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
from ucoorbit import kernels
from ucoorbit import transform


def LocalMeans(grid):
  gaussian = kernels.GaussianKernel(grid)
  return kernels.BuildLocalMeans(gaussian, gaussian, 1)


class NormTestCase(unittest.TestCase):
  """Shared fixtures: a 1D grid with h = 1/64 and Laplacian local means."""

  def setUp(self):
    self.grid = gridlib.GridSpec(1, 32, 4096)
    self.x = self.grid.Axis()
    self.phi0, self.phi = LocalMeans(self.grid)
    self.ladder = gridlib.ScaleLadder(2.0, 0, 5, 2)
    self.homogeneous_ladder = gridlib.ScaleLadder(2.0, -1, 5, 2)

  def Signal(self, dilation=1.0, centre=0.0):
    return gridlib.SampledSignal(
        self.grid, np.exp(-(dilation * (self.x - centre)) ** 2))

  def Norm(self, signal, params, ladder=None):
    return funcnorms.Norm(signal, self.phi0, self.phi, params,
                          ladder or self.ladder)


class NormParamsTests(unittest.TestCase):
  """Validation of the norm parameters."""

  def testDefaults(self):
    """[NormParams] the reference variant is the default"""
    self.assertEqual(funcnorms.NormParams(0, 2, 2).variant, 5)
    self.assertEqual(funcnorms.NormParams(0, 2, 2, scale='B').variant, 4)

  def testFScaleNeedsFiniteP(self):
    """[NormParams] p = inf is refused on the F-scale"""
    self.assertRaises(funcnorms.ConfigurationError, funcnorms.NormParams, 0,
                      math.inf, 2)
    funcnorms.NormParams(0, math.inf, 2, scale='B')

  def testUnknownVariant(self):
    """[NormParams] the B-scale has no fifth variant"""
    self.assertRaises(funcnorms.ConfigurationError, funcnorms.NormParams, 0, 2,
                      2, scale='B', variant=5)
    self.assertRaises(funcnorms.ConfigurationError, funcnorms.NormParams, 0, 2,
                      2, scale='Q')

  def testPeetreBound(self):
    """[NormParams] a must exceed d/min(p, q) for F and d/p for B"""
    params = funcnorms.NormParams(0, 2, 1, a=1.5, variant=2)
    self.assertRaises(funcnorms.ConfigurationError, params.Validate, 1)
    funcnorms.NormParams(0, 2, 1, a=1.5, scale='B', variant=2).Validate(1)
    funcnorms.NormParams(0, 2, 1, a=1.5, variant=1).Validate(1)

  def testExponents(self):
    """[NormParams] non-positive exponents are configuration errors"""
    self.assertRaises(funcnorms.ConfigurationError, funcnorms.NormParams, 0, 0,
                      2)
    self.assertRaises(funcnorms.ConfigurationError, funcnorms.NormParams, 0, 2,
                      2, a=-1)


class LevelTests(unittest.TestCase):
  """Scale ranges of the continuous and discrete displays."""

  def testInhomogeneousLevels(self):
    """[DiscreteLevels] inhomogeneous levels start at zero"""
    ladder = gridlib.ScaleLadder(2.0, 0, 3, 8)
    self.assertEqual(funcnorms.DiscreteLevels(ladder, False), [0, 1, 2, 3])
    ladder = gridlib.ScaleLadder(2.0, 2, 4, 8)
    self.assertEqual(funcnorms.DiscreteLevels(ladder, False), [0, 1, 2, 3, 4])

  def testHomogeneousLevels(self):
    """[DiscreteLevels] homogeneous levels follow the ladder range"""
    ladder = gridlib.ScaleLadder(2.0, -2, 3, 8)
    self.assertEqual(funcnorms.DiscreteLevels(ladder, True),
                     [-2, -1, 0, 1, 2, 3])

  def testContinuousLadder(self):
    """[ContinuousLadder] inhomogeneous integrals stop at t = 1 and 2h"""
    box = gridlib.GridSpec(1, 32, 4096)
    ladder = funcnorms.ContinuousLadder(box, gridlib.ScaleLadder(2.0, -2, 6, 2),
                                        False)
    self.assertAlmostEqual(ladder.Scales().max(), 1.0)
    self.assertAlmostEqual(ladder.Scales().min(), 1 / 32)

  def testBallWeights(self):
    """[BallWeights] cell fractions add up to the ball volume"""
    box = gridlib.GridSpec(1, 32, 4096)
    for radius in (1 / 32, 0.1, 0.77):
      weights = funcnorms.BallWeights(box, radius)
      self.assertAlmostEqual(weights.sum() * box.spacing, 2 * radius)
    square = gridlib.GridSpec(2, 8, 64)
    weights = funcnorms.BallWeights(square, 1.0)
    self.assertAlmostEqual(weights.sum() * square.cell, math.pi, delta=0.1)


class FNormTests(NormTestCase):
  """The five Lizorkin-Triebel displays."""

  def testZero(self):
    """[FNorm] the zero signal has norm zero in every variant"""
    zero = gridlib.SampledSignal.Zero(self.grid)
    for variant in funcnorms.VARIANTS['F']:
      params = funcnorms.NormParams(1, 2, 2, a=2, variant=variant)
      self.assertEqual(self.Norm(zero, params), 0.0)
    for variant in funcnorms.VARIANTS['B']:
      params = funcnorms.NormParams(1, 2, 2, a=2, scale='B', variant=variant)
      self.assertEqual(self.Norm(zero, params), 0.0)

  def testMonotone(self):
    """[FNorm] Peetre variants dominate their plain counterparts"""
    signal = self.Signal()
    values = {variant: self.Norm(signal, funcnorms.NormParams(
        1, 2, 2, a=2, variant=variant)) for variant in (1, 2, 4, 5)}
    self.assertGreaterEqual(values[2], values[1])
    self.assertGreaterEqual(values[4], values[5])
    for value in values.values():
      self.assertTrue(0 < value < math.inf)

  def testFubini(self):
    """[BNorm] for p = q the fourth B display equals the fifth F display"""
    signal = self.Signal(centre=0.5)
    for exponent in (2.0, 1.5):
      f_value = funcnorms.FNorm(signal, self.phi0, self.phi,
                                funcnorms.NormParams(1, exponent, exponent),
                                self.ladder)
      b_value = funcnorms.BNorm(signal, self.phi0, self.phi,
                                funcnorms.NormParams(1, exponent, exponent,
                                                     scale='B'), self.ladder)
      self.assertAlmostEqual(b_value / f_value, 1.0, places=10)

  def testReferencePartition(self):
    """[ReferenceNorm] variant 5 with partition kernels is the same number"""
    partition = kernels.BuildInhomogeneousPartition(self.grid, 3)
    ladder = gridlib.ScaleLadder(2.0, 0, 3, 8)
    signal = self.Signal()
    for scale in ('F', 'B'):
      params = funcnorms.NormParams(0, 2, 2, scale=scale)
      direct = funcnorms.Norm(signal, partition.Kernel(0),
                              partition.Generator(), params, ladder,
                              guard=None)
      self.assertEqual(direct,
                       funcnorms.ReferenceNorm(signal, partition, params))

  def testPlancherel(self):
    """[ReferenceNorm] homogeneous s = 0, p = q = 2 matches the sum of
    ||phi_j Ff||^2"""
    partition = kernels.BuildHomogeneousPartition(self.grid, -2, 3)
    signal = self.Signal()
    params = funcnorms.NormParams(0, 2, 2, homogeneous=True)
    value = funcnorms.ReferenceNorm(signal, partition, params)
    spectrum = gridlib.Fourier(self.grid, signal.samples)
    step = 2 * math.pi / (2 * self.grid.extent)
    oracle = sum(np.sum(np.abs(partition.Member(index) * spectrum) ** 2) * step
                 for index in partition.Indices())
    self.assertAlmostEqual(value ** 2 / oracle, 1.0, delta=0.01)
    ladder = gridlib.ScaleLadder(2.0, -2, 3, 8)
    generator = partition.Generator()
    direct = funcnorms.FNorm(signal, generator, generator, params, ladder,
                             guard=None)
    self.assertEqual(direct, value)

  def testPartitionKind(self):
    """[ReferenceNorm] the partition must match the homogeneity"""
    partition = kernels.BuildHomogeneousPartition(self.grid, -2, 3)
    self.assertRaises(funcnorms.ConfigurationError, funcnorms.ReferenceNorm,
                      self.Signal(), partition, funcnorms.NormParams(0, 2, 2))

  def testKernelConditions(self):
    """[FNorm] kernel conditions are checked per variant"""
    signal = self.Signal()
    self.assertRaises(funcnorms.ConfigurationError, self.Norm, signal,
                      funcnorms.NormParams(2.5, 2, 2, variant=5))
    self.assertRaises(funcnorms.ConfigurationError, self.Norm, signal,
                      funcnorms.NormParams(1, 2, 2, a=0.4, variant=2))
    partition = kernels.BuildInhomogeneousPartition(self.grid, 3)
    ladder = gridlib.ScaleLadder(2.0, 0, 3, 8)
    self.assertRaises(funcnorms.ConfigurationError, funcnorms.FNorm, signal,
                      partition.Kernel(0), partition.Generator(),
                      funcnorms.NormParams(0, 2, 2, variant=1), ladder)

  def testWrongScale(self):
    """[FNorm] F and B entry points refuse the other scale"""
    signal = self.Signal()
    self.assertRaises(funcnorms.ConfigurationError, funcnorms.FNorm, signal,
                      self.phi0, self.phi,
                      funcnorms.NormParams(0, 2, 2, scale='B'), self.ladder)
    self.assertRaises(funcnorms.ConfigurationError, funcnorms.BNorm, signal,
                      self.phi0, self.phi, funcnorms.NormParams(0, 2, 2),
                      self.ladder)

  def testQuasiNorm(self):
    """[FNorm] p < 1 uses the same displays"""
    signal = self.Signal()
    plain = self.Norm(signal, funcnorms.NormParams(0.5, 0.5, 1))
    peetre = self.Norm(signal, funcnorms.NormParams(0.5, 0.5, 1, a=2.5,
                                                    variant=4))
    self.assertTrue(0 < plain < math.inf)
    self.assertGreaterEqual(peetre, plain)

  def testSupremum(self):
    """[FNorm] q = inf takes suprema over the scales"""
    signal = self.Signal()
    values = [self.Norm(signal, funcnorms.NormParams(1, 2, math.inf, a=1,
                                                     variant=variant))
              for variant in (1, 2, 3, 5)]
    for value in values:
      self.assertTrue(0 < value < math.inf)
    self.assertGreaterEqual(values[1], values[0])

  def testTranslation(self):
    """[FNorm] grid-multiple shifts leave every variant unchanged"""
    signal = self.Signal()
    shifted = gridlib.SampledSignal(self.grid, np.roll(signal.samples, 32))
    for variant in funcnorms.VARIANTS['F']:
      params = funcnorms.NormParams(1, 2, 2, a=6, variant=variant)
      original = self.Norm(signal, params)
      moved = self.Norm(shifted, params)
      self.assertLess(abs(moved - original) / original, 1e-8)

  def testTminSensitivity(self):
    """[TminSensitivity] doubling t_min barely moves a smooth input"""
    change = funcnorms.TminSensitivity(self.Signal(), self.phi0, self.phi,
                                       funcnorms.NormParams(1, 2, 2, variant=1),
                                       self.ladder)
    self.assertLess(change, 0.02)

  def testTwoDimensional(self):
    """[FNorm] the continuous displays run in d = 2"""
    box = gridlib.GridSpec(2, 8, 64)
    phi0, phi = LocalMeans(box)
    points = box.Points()
    signal = gridlib.SampledSignal(box, np.exp(-(points[0] ** 2 +
                                                  points[1] ** 2)))
    ladder = gridlib.ScaleLadder(2.0, 0, 1, 2)
    plain = funcnorms.FNorm(signal, phi0, phi,
                            funcnorms.NormParams(1, 2, 2, variant=1), ladder,
                            guard=None)
    peetre = funcnorms.FNorm(signal, phi0, phi,
                             funcnorms.NormParams(1, 2, 2, a=3, variant=2),
                             ladder, guard=None)
    self.assertGreater(plain, 0)
    self.assertGreaterEqual(peetre, plain)


class HomogeneousTests(NormTestCase):
  """Homogeneous displays."""

  def testDilationCovariance(self):
    """[FNorm] ||f(l .)|| = l^(s - d/p) ||f|| for l = 2, 4"""
    signal = self.Signal()
    cases = [funcnorms.NormParams(1, 2, 2, a=2, homogeneous=True,
                                  variant=variant)
             for variant in funcnorms.VARIANTS['F']]
    cases += [funcnorms.NormParams(1, 2, 2, a=2, scale='B', homogeneous=True,
                                   variant=variant) for variant in (1, 4)]
    for params in cases:
      base = self.Norm(signal, params, self.homogeneous_ladder)
      for dilation in (2.0, 4.0):
        value = self.Norm(self.Signal(dilation), params,
                          self.homogeneous_ladder)
        expected = dilation ** (params.s - 1 / params.p) * base
        self.assertAlmostEqual(value / expected, 1.0, delta=0.03,
                               msg='%r at %g' % (params, dilation))

  def testLusinStability(self):
    """[FNorm] the tent display over the Peetre display is stable"""
    tent = funcnorms.NormParams(1, 2, 2, a=2, homogeneous=True, variant=3)
    peetre = tent.WithVariant(2)
    ratios = []
    for dilation in (1.0, 2.0):
      for centre in (0.0, 1.0, -1.0):
        signal = self.Signal(dilation, centre)
        ratios.append(self.Norm(signal, tent, self.homogeneous_ladder) /
                      self.Norm(signal, peetre, self.homogeneous_ladder))
    for ratio in ratios:
      self.assertAlmostEqual(ratio / ratios[0], 1.0, delta=0.05)


class ReportTests(NormTestCase):
  """Variant reports and their ratios."""

  def testGaussianReport(self):
    """[NormReportFor] every ratio is finite and within [1/50, 50]"""
    report = funcnorms.NormReportFor(
        self.Signal(), [(self.phi0, self.phi)],
        funcnorms.NormParams(1, 2, 2, a=2), self.ladder)
    self.assertFalse(report.all_zero)
    self.assertEqual(sorted(report.values), [1, 2, 3, 4, 5])
    self.assertEqual(report.ratios[5], 1.0)
    for ratio in report.ratios.values():
      self.assertTrue(1 / 50 <= ratio <= 50)

  def testCrossKernel(self):
    """[NormReportFor] a second kernel pair yields cross-kernel ratios"""
    profile = kernels.GaussianKernel(self.grid, width=math.sqrt(2))
    second = kernels.BuildRadialKernel(profile, 1)
    report = funcnorms.NormReportFor(
        self.Signal(), [(self.phi0, self.phi), second],
        funcnorms.NormParams(1, 2, 2), self.ladder, variants=[1, 5])
    self.assertEqual(sorted(report.cross_kernel), [1, 5])
    for ratio in report.cross_kernel.values():
      self.assertTrue(0 < ratio < math.inf)
    self.assertEqual(len(report.kernel_ids), 2)

  def testPairGuards(self):
    """[NormReportFor] guards may be given per kernel pair"""
    profile = kernels.GaussianKernel(self.grid, width=math.sqrt(2))
    pairs = [(self.phi0, self.phi), kernels.BuildRadialKernel(profile, 1)]
    params = funcnorms.NormParams(1, 2, 2)
    shared = funcnorms.NormReportFor(self.Signal(), pairs, params, self.ladder,
                                     variants=[1, 5], guard=None)
    split = funcnorms.NormReportFor(self.Signal(), pairs, params, self.ladder,
                                    variants=[1, 5],
                                    guard=[transform.WRAP_GUARD, None])
    self.assertEqual(split.values, shared.values)
    self.assertEqual(split.cross_kernel, shared.cross_kernel)
    self.assertRaises(funcnorms.ConfigurationError, funcnorms.NormReportFor,
                      self.Signal(), pairs, params, self.ladder, [1, 5],
                      [None])

  def testDilatedPair(self):
    """[NormReportFor] homogeneous ratio vectors ignore dilations"""
    params = funcnorms.NormParams(1, 2, 2, a=2, homogeneous=True)
    first = funcnorms.NormReportFor(self.Signal(), [(self.phi0, self.phi)],
                                    params, self.homogeneous_ladder)
    second = funcnorms.NormReportFor(self.Signal(2.0), [(self.phi0, self.phi)],
                                     params, self.homogeneous_ladder)
    np.testing.assert_allclose(second.RatioVector(), first.RatioVector(),
                               rtol=0.05)

  def testZeroReport(self):
    """[NormReportFor] the zero signal is flagged and has no ratios"""
    report = funcnorms.NormReportFor(
        gridlib.SampledSignal.Zero(self.grid), [(self.phi0, self.phi)],
        funcnorms.NormParams(1, 2, 2), self.ladder, variants=[1, 5])
    self.assertTrue(report.all_zero)
    self.assertEqual(report.ratios, {})
    self.assertEqual(report.AsDict()['all_zero'], True)

  def testRows(self):
    """[NormReport] one row per variant and JSON-ready keys"""
    report = funcnorms.NormReportFor(
        self.Signal(), [(self.phi0, self.phi)],
        funcnorms.NormParams(1, 2, 2, scale='B'), self.ladder,
        variants=[1, 4])
    rows = list(report.Rows())
    self.assertEqual([row['variant'] for row in rows], [1, 4])
    self.assertEqual(sorted(report.AsDict()['values']), ['v1', 'v4'])

  def testInvalidVariant(self):
    """[NormReportFor] a Peetre variant with small a fails up front"""
    self.assertRaises(funcnorms.ConfigurationError, funcnorms.NormReportFor,
                      self.Signal(), [(self.phi0, self.phi)],
                      funcnorms.NormParams(1, 2, 2, a=0.1), self.ladder)


if __name__ == '__main__':
  unittest.main(testRunner=unittest.TextTestRunner(verbosity=2))
