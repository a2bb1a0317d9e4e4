#!/usr/bin/python3
"""Test suite for dilations, convolutions, the wavelet transform and the
maximal functions (transform)."""

# Too many public methods
# pylint: disable=R0904

# Standard modules
import math
import unittest

# Third-party modules
import numpy as np
from scipy import ndimage

# Unittest target
from ucoorbit import grid as gridlib
from ucoorbit import kernels
from ucoorbit import transform


class DilationTests(unittest.TestCase):
  """Scaled spectra and dilations."""

  def setUp(self):
    """Sets up a 1D grid on [-32, 32) with h = 1/64."""
    self.grid = gridlib.GridSpec(1, 32, 4096)
    self.x = self.grid.Axis()
    self.xi = self.grid.FrequencyAxis()

  def testScaledSpectrumFromSamples(self):
    """[ScaledSpectrum] sampled kernels are transformed at t xi"""
    kernel = kernels.Kernel(self.grid, space=np.exp(-self.x ** 2 / 2))
    spectrum = transform.ScaledSpectrum(kernel, 0.5)
    np.testing.assert_allclose(spectrum, np.exp(-(0.5 * self.xi) ** 2 / 2),
                               atol=1e-8)

  def testScaledSpectrumBand(self):
    """[ScaledSpectrum] frequencies beyond the band read zero"""
    kernel = kernels.Kernel(self.grid, space=np.exp(-self.x ** 2 / 2))
    spectrum = transform.ScaledSpectrum(kernel, 2.0)
    inside = np.abs(2 * self.xi) < self.grid.nyquist
    np.testing.assert_allclose(spectrum[inside],
                               np.exp(-(2 * self.xi[inside]) ** 2 / 2),
                               atol=1e-8)
    self.assertFalse(np.any(spectrum[~inside]))

  def testDilateKeepsMass(self):
    """[Dilate] the L1 dilation keeps the integral"""
    kernel = kernels.GaussianKernel(self.grid)
    dilated = transform.Dilate(kernel, 2.0)
    self.assertAlmostEqual(abs(dilated.Mass()), abs(kernel.Mass()), places=8)
    np.testing.assert_allclose(dilated.space,
                               np.exp(-(self.x / 2) ** 2 / 2) / 2, atol=1e-10)

  def testDilateKeepsEnergy(self):
    """[Dilate] the L2 dilation keeps the L2 norm"""
    kernel = kernels.MexicanHat(self.grid)
    dilated = transform.Dilate(kernel, 0.25, transform.L2)
    self.assertAlmostEqual(dilated.L2Norm(), kernel.L2Norm(), places=8)

  def testDilateRange(self):
    """[Dilate] scales outside [2h, X/2] are refused"""
    kernel = kernels.GaussianKernel(self.grid)
    self.assertRaises(transform.OutOfRangeError, transform.Dilate, kernel,
                      1 / 128)
    self.assertRaises(transform.OutOfRangeError, transform.Dilate, kernel, 32)
    self.assertRaises(transform.OutOfRangeError, transform.Dilate, kernel, -1)

  def testDilationTag(self):
    """[DilationTag] exponents of the three normalizations"""
    self.assertEqual(transform.L1.Exponent(2), 0)
    self.assertEqual(transform.L2.Exponent(2), 1)
    self.assertAlmostEqual(transform.DilationTag('Lp', 4).Exponent(1), 0.75)
    self.assertRaises(gridlib.InvalidInputError, transform.DilationTag, 'L3')


class ConvolutionTests(unittest.TestCase):
  """Convolutions and the wrap-around guard."""

  def setUp(self):
    self.grid = gridlib.GridSpec(1, 32, 4096)
    self.x = self.grid.Axis()

  def testGaussians(self):
    """[Convolve] two unit Gaussians give sqrt(pi) e^{-x^2/4}"""
    signal = gridlib.SampledSignal(self.grid, np.exp(-self.x ** 2 / 2))
    result = transform.Convolve(signal, kernels.GaussianKernel(self.grid))
    np.testing.assert_allclose(result.samples,
                               math.sqrt(math.pi) * np.exp(-self.x ** 2 / 4),
                               atol=1e-10)

  def testWrapAround(self):
    """[Convolve] slowly decaying results trip the wrap-around guard"""
    signal = gridlib.SampledSignal(self.grid, 1 / (1 + self.x ** 2))
    kernel = kernels.GaussianKernel(self.grid)
    self.assertRaises(transform.WrapAroundError, transform.Convolve, signal,
                      kernel)
    transform.Convolve(signal, kernel, guard=None)

  def testGridMismatch(self):
    """[Convolve] operands on different grids are refused"""
    signal = gridlib.SampledSignal(self.grid, np.exp(-self.x ** 2))
    other = kernels.GaussianKernel(gridlib.GridSpec(1, 16, 4096))
    self.assertRaises(gridlib.InvalidInputError, transform.Convolve, signal,
                      other)

  def testConvolutionField(self):
    """[ConvolutionField] columns equal single convolutions with dilates"""
    signal = gridlib.SampledSignal(self.grid, np.exp(-self.x ** 2))
    kernel = kernels.MexicanHat(self.grid)
    field = transform.ConvolutionField(signal, kernel, [0.5, 1.0, 2.0])
    self.assertEqual(field.shape, (4096, 3))
    single = transform.Convolve(signal, transform.Dilate(kernel, 2.0))
    np.testing.assert_allclose(field[:, 2], single.samples, atol=1e-12)


class CwtTests(unittest.TestCase):
  """The continuous wavelet transform."""

  def setUp(self):
    self.grid = gridlib.GridSpec(1, 32, 4096)
    self.x = self.grid.Axis()
    self.ladder = gridlib.ScaleLadder(2.0, -2, 5, 4)
    self.signal = gridlib.SampledSignal(self.grid, np.exp(-self.x ** 2))
    self.kernel = kernels.MexicanHat(self.grid)

  def testShape(self):
    """[Cwt] one column per ladder node"""
    result = transform.Cwt(self.signal, self.kernel, self.ladder)
    self.assertEqual(result.values.shape, (4096, len(self.ladder)))
    self.assertEqual(result.ladder, self.ladder)

  def testClosedForm(self):
    """[Cwt] W_g f of a Gaussian by a Mexican hat at t = 1"""
    ladder = gridlib.ScaleLadder(2.0, 0, 0, 1)
    result = transform.Cwt(self.signal, self.kernel, ladder)
    # -(d/dx)^2 of e^{-x^2/2} * e^{-x^2} is a Gaussian of variance 3/2
    variance = 1.5
    gaussian = math.sqrt(math.pi / 1.5) * np.exp(-self.x ** 2 / (2 * variance))
    expected = gaussian * (1 / variance - self.x ** 2 / variance ** 2)
    np.testing.assert_allclose(result.Column(0), expected, atol=1e-10)

  def testTranslation(self):
    """[Cwt] grid-multiple shifts roll every column"""
    shifted = gridlib.SampledSignal(self.grid, np.roll(self.signal.samples, 64))
    first = transform.Cwt(self.signal, self.kernel, self.ladder)
    second = transform.Cwt(shifted, self.kernel, self.ladder)
    np.testing.assert_allclose(second.values, np.roll(first.values, 64, axis=0),
                               atol=1e-12)

  def testDilationCovariance(self):
    """[Cwt] W_g(f(./2))(x, t) = 2^(1/2) W_g f(x/2, t/2)"""
    dilated = gridlib.SampledSignal(self.grid, np.exp(-self.x ** 2 / 4))
    coarse = transform.Cwt(dilated, self.kernel,
                           gridlib.ScaleLadder(2.0, -2, 1, 2))
    fine = transform.Cwt(self.signal, self.kernel,
                         gridlib.ScaleLadder(2.0, -1, 2, 2))
    np.testing.assert_allclose(coarse.Scales() / 2, fine.Scales())
    # x_i / 2 is the grid point 1024 + i/2 for even i
    np.testing.assert_allclose(coarse.values[::2],
                               math.sqrt(2) * fine.values[1024:3072], atol=1e-6)

  def testOutOfRange(self):
    """[Cwt] ladders leaving the resolvable window are refused"""
    ladder = gridlib.ScaleLadder(2.0, -6, 0, 1)
    self.assertRaises(transform.OutOfRangeError, transform.Cwt, self.signal,
                      self.kernel, ladder)

  def testWrapAround(self):
    """[Cwt] spread-out signals trip the guard"""
    spread = gridlib.SampledSignal(self.grid, 1 / (1 + self.x ** 2))
    self.assertRaises(transform.WrapAroundError, transform.Cwt, spread,
                      self.kernel, self.ladder)

  def testWorkers(self):
    """[Cwt] the threaded path returns the same columns"""
    serial = transform.Cwt(self.signal, self.kernel, self.ladder)
    threaded = transform.Cwt(self.signal, self.kernel, self.ladder, workers=3)
    np.testing.assert_array_equal(serial.values, threaded.values)

  def testGroupFunctionShape(self):
    """[GroupFunction] values must match grid and ladder"""
    self.assertRaises(gridlib.InvalidInputError, transform.GroupFunction,
                      self.grid, self.ladder, np.zeros((4096, 2)))

  def testReflection(self):
    """[ReflectionDefect] ||W_a b(., t)||^2 = t ||W_b a(., 1/t)||^2"""
    ladder = gridlib.ScaleLadder(2.0, -2, 2, 4)
    other = kernels.Kernel(self.grid, symbol=lambda xi: (
        1j * xi * np.exp(-xi ** 2)), name='odd')
    self.assertLess(transform.ReflectionDefect(self.kernel, other, ladder),
                    1e-8)


class TightFrameTests(unittest.TestCase):
  """The tight frame identity on a wide grid."""

  def setUp(self):
    """Sets up a 1D grid on [-1024, 1024) with 2^16 samples."""
    self.grid = gridlib.GridSpec(1, 1024, 65536)
    self.ladder = gridlib.ScaleLadder(2.0, -7, 4, 8)
    self.kernel = kernels.MexicanHat(self.grid)

  def testConstant(self):
    """[TightFrameConstant] pi in d = 1, 2 pi in d = 2"""
    self.assertAlmostEqual(transform.TightFrameConstant(1), math.pi)
    self.assertAlmostEqual(transform.TightFrameConstant(2), 2 * math.pi)

  def testGaussians(self):
    """[TightFrameRatio] energy over C c_g ||f||^2 is one within 2%"""
    x = self.grid.Axis()
    for width in (0.5, 1.0):
      signal = gridlib.SampledSignal(self.grid,
                                     np.exp(-x ** 2 / (2 * width ** 2)))
      ratio = transform.TightFrameRatio(signal, self.kernel, self.ladder)
      self.assertAlmostEqual(ratio, 1.0, delta=0.02)

  def testWideGaussian(self):
    """[TightFrameRatio] w = 4 needs the ladder to reach t = 1024"""
    box = gridlib.GridSpec(1, 8192, 524288)
    x = box.Axis()
    signal = gridlib.SampledSignal(box, np.exp(-x ** 2 / 32))
    ratio = transform.TightFrameRatio(signal, kernels.MexicanHat(box),
                                      gridlib.ScaleLadder(2.0, -10, 4, 8))
    self.assertAlmostEqual(ratio, 1.0, delta=0.02)

  def testNotAdmissible(self):
    """[TightFrameRatio] kernels with nonzero mean are refused"""
    x = self.grid.Axis()
    signal = gridlib.SampledSignal(self.grid, np.exp(-x ** 2))
    self.assertRaises(gridlib.InvalidInputError, transform.TightFrameRatio,
                      signal, kernels.GaussianKernel(self.grid), self.ladder)


class MaximalFunctionTests(unittest.TestCase):
  """Peetre and Hardy-Littlewood maximal functions."""

  def setUp(self):
    """Sets up a small grid so brute force is cheap."""
    self.grid = gridlib.GridSpec(1, 8, 64)
    self.x = self.grid.Axis()
    self.values = np.exp(-(self.x - 1) ** 2) * np.cos(3 * self.x)

  def testPeetreBruteForce(self):
    """[PeetreColumn] agrees with the direct supremum over grid offsets"""
    power, scale = 2.0, 0.5
    result = transform.PeetreColumn(self.values, self.grid, power, scale)
    offsets = self.x[None, :] - self.x[:, None]
    expected = np.max(np.abs(self.values)[None, :] /
                      (1 + np.abs(offsets) / scale) ** power, axis=1)
    np.testing.assert_allclose(result, expected, rtol=1e-10)

  def testPeetreDominates(self):
    """[PeetreColumn] the supremum is at least |G|"""
    result = transform.PeetreColumn(self.values, self.grid, 1.5, 1.0)
    self.assertTrue(np.all(result >= np.abs(self.values) * (1 - 1e-12)))

  def testPeetreDegenerate(self):
    """[PeetreColumn] a = 0 gives the maximum, zero columns stay zero"""
    result = transform.PeetreColumn(self.values, self.grid, 0.0, 1.0)
    np.testing.assert_allclose(result, np.max(np.abs(self.values)))
    zero = transform.PeetreColumn(np.zeros(64), self.grid, 2.0, 1.0)
    self.assertFalse(np.any(zero))

  def testPeetreMaximal(self):
    """[PeetreMaximal] maps every column, threaded or not"""
    ladder = gridlib.ScaleLadder(2.0, -1, 1, 2)
    stack = np.stack([self.values * k for k in range(1, 6)], axis=-1)
    function = transform.GroupFunction(self.grid, ladder, stack)
    serial = transform.PeetreMaximal(function, 2.0)
    threaded = transform.PeetreMaximal(function, 2.0, workers=2)
    np.testing.assert_array_equal(serial.values, threaded.values)
    np.testing.assert_allclose(serial.Column(1), transform.PeetreColumn(
        stack[:, 1], self.grid, 2.0, ladder.Scales()[1]))
    self.assertRaises(gridlib.InvalidInputError, transform.PeetreMaximal,
                      function, -1.0)

  def testHardyLittlewood(self):
    """[HardyLittlewood] a single spike gives 1/(2k+1) at distance k"""
    spike = np.zeros(64)
    spike[32] = 1.0
    result = transform.HardyLittlewood(gridlib.SampledSignal(self.grid, spike))
    for distance in (0, 1, 5, 20):
      self.assertAlmostEqual(result.samples[32 + distance].real,
                             1 / (2 * distance + 1))

  def testPeetreDecreasingInPower(self):
    """[PeetreColumn] the maximal function does not grow with a"""
    previous = None
    for power in (0.0, 0.5, 1.0, 2.0, 4.0):
      current = transform.PeetreColumn(self.values, self.grid, power, 0.5)
      if previous is not None:
        self.assertTrue(np.all(current <= previous * (1 + 1e-12)))
      previous = current

  def testPeetreBoxDefect(self):
    """[PeetreBoxDefect] doubling the box leaves a decaying member's maximal
    function unchanged"""
    box = gridlib.GridSpec(1, 16, 512)
    signal = gridlib.SampledSignal(box, np.exp(-box.Axis() ** 2))
    ladder = gridlib.ScaleLadder(2.0, -1, 1, 1)
    for power in (1.5, 2.0, 4.0):
      self.assertLess(transform.PeetreBoxDefect(
          signal, kernels.MexicanHat(box), ladder, power), 1e-6)

  def testHardyLittlewoodFilters(self):
    """[HardyLittlewood] agrees with the maximum over box filters"""
    rng = np.random.default_rng(7)
    for box in (self.grid, gridlib.GridSpec(2, 4, 16)):
      magnitude = rng.uniform(0, 1, box.shape) * (rng.uniform(0, 1, box.shape)
                                                  > 0.6)
      expected = magnitude.copy()
      for half in range(1, box.count):
        np.maximum(expected, ndimage.uniform_filter(
            magnitude, size=2 * half + 1, mode='constant', cval=0.0),
                   out=expected)
      result = transform.HardyLittlewood(gridlib.SampledSignal(box, magnitude))
      np.testing.assert_allclose(result.samples.real, expected, rtol=1e-10,
                                 atol=1e-12)

  def testFeffermanStein(self):
    """[FeffermanSteinRatio] the maximal sequence dominates"""
    members = [gridlib.SampledSignal(self.grid, np.exp(-(self.x - k) ** 2))
               for k in (-2, 0, 3)]
    ratio = transform.FeffermanSteinRatio(members,
                                          gridlib.MixedNormParams(2, 2))
    self.assertGreaterEqual(ratio, 1.0)
    self.assertEqual(transform.FeffermanSteinRatio(
        [gridlib.SampledSignal.Zero(self.grid)],
        gridlib.MixedNormParams(2, 2)), 0.0)


class DecayProfileTests(unittest.TestCase):
  """Fitted decay of wavelet transforms."""

  def testLocalMeansDecay(self):
    """[CwtDecayProfile] the Mexican hat against a wide Gaussian"""
    box = gridlib.GridSpec(1, 32, 4096)
    phi = kernels.MexicanHat(box).WithRole(kernels.PHI)
    phi0 = kernels.GaussianKernel(box, width=2.0)
    profile = transform.CwtDecayProfile(phi, phi0, gridlib.ScaleLadder())
    self.assertAlmostEqual(profile.expected, 2.5)
    self.assertAlmostEqual(profile.scale_slope, 2.5, delta=0.1)
    self.assertEqual(sorted(profile.AsDict()), [
        'expected', 'residual', 'scale_slope', 'spatial_order', 'window'])

  def testEnvelope(self):
    """[EnvelopeSlopes] the two decades mirror each other"""
    box = gridlib.GridSpec(1, 256, 32768)
    ladder = gridlib.ScaleLadder(2.0, -5, 5, 8)
    small, large = transform.EnvelopeSlopes(kernels.MexicanHat(box), ladder)
    self.assertAlmostEqual(small, 2.5, delta=0.15)
    self.assertAlmostEqual(large, -2.5, delta=0.15)
    self.assertLess(abs(small + large), 0.02)

  def testTooFewPoints(self):
    """[CwtDecayProfile] a coarse ladder cannot be fitted"""
    box = gridlib.GridSpec(1, 32, 4096)
    phi = kernels.MexicanHat(box).WithRole(kernels.PHI)
    phi0 = kernels.GaussianKernel(box, width=2.0)
    self.assertRaises(transform.FitError, transform.CwtDecayProfile, phi, phi0,
                      gridlib.ScaleLadder(2.0, -2, 3, 1))


class ChainTests(unittest.TestCase):
  """The weighted chain smoother."""

  def testDelta(self):
    """[WeightedChainSmoother] a delta spreads as 2^(-|k-l| delta)"""
    result = transform.WeightedChainSmoother([0.0, 1.0, 0.0, 0.0], 1.0)
    np.testing.assert_allclose(result, [0.5, 1.0, 0.5, 0.25])

  def testBound(self):
    """[ChainBound] the geometric series in closed form"""
    self.assertAlmostEqual(transform.ChainBound(1.0, 1.0), 3.0)
    sequence = np.random.default_rng(7).random(40)
    smoothed = transform.WeightedChainSmoother(sequence, 0.5)
    bound = transform.ChainBound(0.5, 1.0)
    self.assertLessEqual(np.sqrt(np.sum(smoothed ** 2)),
                         bound * np.sqrt(np.sum(sequence ** 2)))

  def testRejectsDecay(self):
    """[WeightedChainSmoother] delta must be positive"""
    self.assertRaises(gridlib.InvalidInputError,
                      transform.WeightedChainSmoother, [1.0], 0.0)


if __name__ == '__main__':
  unittest.main(testRunner=unittest.TextTestRunner(verbosity=2))
