#!/usr/bin/python3
"""Test suite for the on-disk archives of laboratory objects."""

# Too many public methods
# pylint: disable=R0904

# Standard modules
import os
import shutil
import tempfile
import unittest

# Third-party modules
import numpy as np

# Package modules
from ucoorbit import corpus
from ucoorbit import discretization
from ucoorbit import grid
from ucoorbit import kernels
from ucoorbit import splinewavelets
from ucoorbit import transform

# Unittest target
from ucoorbit import archives


class ArchiveTests(unittest.TestCase):
  """Writing and reading back every archive."""

  def setUp(self):
    self.directory = tempfile.mkdtemp()
    self.grid = grid.GridSpec(1, 8, 64)

  def tearDown(self):
    shutil.rmtree(self.directory)

  def Path(self, name):
    return os.path.join(self.directory, name)

  def testRegistry(self):
    """[ArchiveFor] archives are found by their lowercased class name"""
    self.assertIs(archives.ArchiveFor('signal'), archives.Signal)
    self.assertIs(archives.ArchiveFor('groupFunction'), archives.GroupFunction)
    self.assertRaises(archives.ArchiveError, archives.ArchiveFor, 'image')

  def testSignal(self):
    """[Signal] samples survive the round trip on the same grid"""
    signal = grid.SampledSignal.Evaluate(self.grid, corpus.Gaussian())
    path = archives.Signal.Write(signal, self.Path('gaussian.csv'))
    restored = archives.Signal.Read(path)
    self.assertEqual(restored.grid, self.grid)
    np.testing.assert_array_equal(restored.samples, signal.samples)

  def testSignalTwoDimensions(self):
    """[Signal] d = 2 archives keep the row-major layout"""
    square = grid.GridSpec(2, 8, 16)
    signal = grid.SampledSignal.Evaluate(square, lambda x, y: x + 2 * y)
    restored = archives.Signal.Read(archives.Signal.Write(
        signal, self.Path('plane.csv')))
    np.testing.assert_array_equal(restored.samples, signal.samples)

  def testMissingFile(self):
    """[Signal] missing files raise ArchiveError"""
    self.assertRaises(archives.ArchiveError, archives.Signal.Read,
                      self.Path('absent.csv'))

  def testWrongHeader(self):
    """[Signal] files of another archive are refused"""
    path = self.Path('other.csv')
    with open(path, 'w') as archive:
      archive.write('j,t,x,re,im\n0,1,0,0,0\n')
    self.assertRaises(archives.ArchiveError, archives.Signal.Read, path)

  def testKernel(self):
    """[Kernel] the kernel is rebuilt and its metadata re-verified"""
    kernel = kernels.MexicanHat(self.grid)
    path = archives.Kernel.Write(kernel, self.Path('hat.csv'))
    self.assertTrue(os.path.isfile(self.Path('hat.json')))
    restored = archives.Kernel.Read(path)
    self.assertEqual(restored.name, kernel.name)
    self.assertEqual(restored.meta.moment_order, kernel.meta.moment_order)
    np.testing.assert_allclose(restored.space, kernel.space, atol=1e-15)

  def testKernelTampered(self):
    """[Kernel] frequency samples that disagree are refused"""
    path = archives.Kernel.Write(kernels.MexicanHat(self.grid),
                                 self.Path('hat.csv'))
    frequency = self.Path('hat.frequency.csv')
    with open(frequency) as archive:
      lines = archive.readlines()
    fields = lines[1].strip().split(',')
    fields[1] = '5'
    lines[1] = ','.join(fields) + '\n'
    with open(frequency, 'w') as archive:
      archive.writelines(lines)
    self.assertRaises(archives.ArchiveError, archives.Kernel.Read, path)

  def testGroupFunction(self):
    """[GroupFunction] the ladder is recovered from the node indices"""
    ladder = grid.ScaleLadder(2.0, 0, 2, 2)
    shape = self.grid.shape + (len(ladder),)
    values = np.arange(np.prod(shape)).reshape(shape) * (1 + 0.5j)
    function = transform.GroupFunction(self.grid, ladder, values)
    restored = archives.GroupFunction.Read(archives.GroupFunction.Write(
        function, self.Path('group.csv')))
    self.assertEqual(restored.ladder, ladder)
    np.testing.assert_array_equal(restored.values, function.values)

  def testSplineSystem(self):
    """[SplineSystem] both kernels and the coefficients are re-verified"""
    system = splinewavelets.SplineSystem(2, grid.GridSpec(1, 16, 1024))
    path = archives.SplineSystem.Write(system, self.Path('spline.json'))
    self.assertIs(archives.ArchiveFor('splineSystem'), archives.SplineSystem)
    for name in ('phi', 'psi'):
      self.assertTrue(os.path.isfile(self.Path('spline.%s.csv' % name)))
      self.assertTrue(os.path.isfile(self.Path('spline.%s.json' % name)))
    restored = archives.SplineSystem.Read(path)
    self.assertEqual(restored.order, 2)
    self.assertEqual(restored.grid, system.grid)
    np.testing.assert_allclose(restored.psi.space, system.psi.space,
                               atol=1e-15)
    self.assertEqual(restored.AsDict()['connection_offset'],
                     system.AsDict()['connection_offset'])

  def testSplineSystemTampered(self):
    """[SplineSystem] a kernel from another order is refused"""
    box = grid.GridSpec(1, 16, 1024)
    path = archives.SplineSystem.Write(splinewavelets.SplineSystem(2, box),
                                       self.Path('spline.json'))
    archives.Kernel.Write(splinewavelets.SplineSystem(3, box).psi,
                          self.Path('spline.psi.csv'))
    self.assertRaises(archives.ArchiveError, archives.SplineSystem.Read, path)
    self.assertRaises(archives.ArchiveError, archives.SplineSystem.Read,
                      self.Path('absent.json'))

  def testCoefficients(self):
    """[Coefficients] fields are rebuilt on the given lattice"""
    lattice = discretization.LatticeSpec(jmin=0, jmax=2)
    field = discretization.CoeffField(lattice)
    field[(1,), 0, (-3,)] = 0.25
    field[(0,), 2, (5,)] = 1 - 2j
    path = archives.Coefficients.Write(field, self.Path('field.csv'))
    restored = archives.Coefficients.Read(path, lattice)
    self.assertEqual(sorted(restored.Items()), sorted(field.Items()))

  def testCoefficientsHeader(self):
    """[Coefficients] files without the c,j,k,re,im header are refused"""
    path = self.Path('field.csv')
    with open(path, 'w') as archive:
      archive.write('1,0,0,1,0\n')
    self.assertRaises(archives.ArchiveError, archives.Coefficients.Read, path)


if __name__ == '__main__':
  unittest.main(testRunner=unittest.TextTestRunner(verbosity=2))
