#!/usr/bin/python3
"""This file contains the archive for sampled signals: CSV `x[,y],re,im`."""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Third-party modules
import numpy as np

# Package modules
from .. import grid as gridlib
from . import Archive, ArchiveError, GridFromAxis, ReadRows, WriteRows

HEADERS = (['x', 're', 'im'], ['x', 'y', 're', 'im'])


def WriteSamples(path, grid, samples, names=('x', 'y')):
  """Samples in row-major order after their coordinates."""
  coordinates = list(grid.Points())
  samples = np.asarray(samples)
  WriteRows(path, list(names[:grid.dimension]) + ['re', 'im'],
            coordinates + [samples.real, samples.imag])


def ReadSamples(path, headers=HEADERS):
  """Returns (grid, complex samples of the grid shape)."""
  header, rows = ReadRows(path, headers)
  dimension = len(header) - 2
  grid = GridFromAxis(rows[:, 0], dimension, path)
  if rows.shape[0] != grid.count ** dimension:
    raise ArchiveError('archive %s has %d rows, its grid needs %d' % (
        path, rows.shape[0], grid.count ** dimension))
  expected = np.column_stack([c.ravel() for c in grid.Points()])
  if np.max(np.abs(rows[:, :dimension] - expected)) > 1e-9 * grid.extent:
    raise ArchiveError('archive %s is not in row-major grid order' % path)
  samples = (rows[:, -2] + 1j * rows[:, -1]).reshape(grid.shape)
  return grid, samples


class Signal(Archive):
  """Sampled signals."""

  @classmethod
  def Write(cls, item, path):
    WriteSamples(path, item.grid, item.samples)
    return path

  @classmethod
  def Read(cls, path, **context):
    grid, samples = ReadSamples(path)
    try:
      return gridlib.SampledSignal(grid, samples)
    except gridlib.InvalidInputError as error:
      raise ArchiveError('archive %s: %s' % (path, error))
