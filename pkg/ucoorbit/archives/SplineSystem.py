#!/usr/bin/python3
"""This file contains the archive for orthonormal spline systems.

A system is stored as a JSON file with the order, grid, periodization terms
and the coefficient metadata of SplineSystem.AsDict, next to the kernel
archives of phi_m (`<name>.phi.csv`) and psi_m (`<name>.psi.csv`). Loading
rebuilds the system from its order and grid and re-verifies both kernels and
the connection coefficients against the stored files.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import json
import os

# Third-party modules
import numpy as np

# Package modules
from .. import grid as gridlib
from .. import splinewavelets
from ..libs import table
from . import Archive, ArchiveError, Sibling
from .Kernel import Kernel, CONSISTENCY_TOLERANCE

KERNELS = ('phi', 'psi')


def KernelPath(path, name):
  return Sibling(path, '.%s.csv' % name)


class SplineSystem(Archive):
  """Battle-Lemarie systems with their coefficient metadata."""
  EXTENSION = '.json'

  @classmethod
  def Write(cls, item, path):
    for name in KERNELS:
      Kernel.Write(getattr(item, name), KernelPath(path, name))
    record = item.AsDict()
    record.update(terms=item.terms,
                  grid={'extent': item.grid.extent, 'count': item.grid.count})
    with open(path, 'w') as archive:
      archive.write(table.Dumps(record))
    return path

  @classmethod
  def Read(cls, path, **context):
    """Raises ArchiveError when the stored kernels or coefficients differ from
    the system rebuilt from its order and grid."""
    if not os.path.isfile(path):
      raise ArchiveError('spline system archive %s does not exist' % path)
    with open(path) as archive:
      try:
        record = json.load(archive)
      except ValueError as error:
        raise ArchiveError('spline system archive %s is malformed: %s' % (
            path, error))
    try:
      box = gridlib.GridSpec(1, record['grid']['extent'],
                             record['grid']['count'])
      system = splinewavelets.SplineSystem(
          record['m'], box, record.get('terms',
                                       splinewavelets.PERIODIZATION_TERMS))
    except (KeyError, TypeError, gridlib.Error) as error:
      raise ArchiveError('spline system archive %s cannot be rebuilt: %s' % (
          path, error))
    for name in KERNELS:
      stored = Kernel.Read(KernelPath(path, name))
      rebuilt = getattr(system, name)
      if stored.grid != box:
        raise ArchiveError('spline system archive %s: %s lives on %r, the '
                           'system on %r' % (path, name, stored.grid, box))
      scale = np.max(np.abs(rebuilt.space)) or 1.0
      if np.max(np.abs(stored.space - rebuilt.space)) > (
          CONSISTENCY_TOLERANCE * scale):
        raise ArchiveError('spline system archive %s: stored %s samples differ '
                           'from the rebuilt m=%d system' % (
                               path, name, system.order))
    expected = system.AsDict()
    connection = np.asarray(record.get('connection', []), dtype=float)
    if (connection.shape != (len(expected['connection']),) or
        record.get('connection_offset') != expected['connection_offset'] or
        np.max(np.abs(connection - expected['connection'])) >
        CONSISTENCY_TOLERANCE):
      raise ArchiveError('spline system archive %s: connection coefficients '
                         'differ from the rebuilt m=%d system' % (
                             path, system.order))
    return system
