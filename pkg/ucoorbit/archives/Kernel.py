#!/usr/bin/python3
"""This file contains the archive for kernels.

A kernel is stored as its space samples (CSV `x[,y],re,im`), its frequency
samples (CSV `xi[,eta],re,im`, FFT order) and a JSON sidecar with the name,
role and measured metadata. Loading rebuilds the kernel from the space samples
and re-verifies the frequency samples and the metadata.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import json
import os

# Third-party modules
import numpy as np

# Package modules
from .. import kernels
from ..libs import table
from . import Archive, ArchiveError, ReadRows, Sibling, WriteRows
from .Signal import ReadSamples, WriteSamples

CONSISTENCY_TOLERANCE = 1e-8


class Kernel(Archive):
  """Kernels with their verified metadata."""

  @classmethod
  def Write(cls, item, path):
    WriteSamples(path, item.grid, item.space)
    frequencies = list(item.grid.Frequencies())
    WriteRows(Sibling(path, '.frequency.csv'),
              ['xi', 'eta'][:item.grid.dimension] + ['re', 'im'],
              frequencies + [item.frequency.real, item.frequency.imag])
    sidecar = {'name': item.name, 'role': item.role,
               'moment_order': item.meta.moment_order,
               'meta': item.meta.AsDict(),
               'grid': {'dimension': item.grid.dimension,
                        'extent': item.grid.extent, 'count': item.grid.count}}
    with open(Sibling(path, '.json'), 'w') as archive:
      archive.write(table.Dumps(sidecar))
    return path

  @classmethod
  def Read(cls, path, **context):
    """Raises ArchiveError when the files disagree with each other."""
    sidecar_path = Sibling(path, '.json')
    if not os.path.isfile(sidecar_path):
      raise ArchiveError('kernel archive %s has no sidecar' % path)
    with open(sidecar_path) as archive:
      sidecar = json.load(archive)
    grid, space = ReadSamples(path)
    _header, rows = ReadRows(Sibling(path, '.frequency.csv'),
                             (['xi', 're', 'im'], ['xi', 'eta', 're', 'im']))
    if rows.shape[0] != space.size:
      raise ArchiveError('kernel archive %s: %d frequency rows for %d samples'
                         % (path, rows.shape[0], space.size))
    frequency = (rows[:, -2] + 1j * rows[:, -1]).reshape(grid.shape)
    try:
      kernel = kernels.Kernel(grid, space=space, name=sidecar['name'],
                              role=sidecar['role'],
                              moment_order=sidecar['moment_order'])
      meta = kernel.meta
    except (KeyError, kernels.Error) as error:
      raise ArchiveError('kernel archive %s does not verify: %s' % (
          path, error))
    scale = np.max(np.abs(kernel.frequency)) or 1.0
    if np.max(np.abs(kernel.frequency - frequency)) > (
        CONSISTENCY_TOLERANCE * scale):
      raise ArchiveError('kernel archive %s: frequency samples disagree with '
                         'the space samples' % path)
    stored = sidecar.get('meta', {})
    for key in ('L', 'K'):
      if stored.get(key) != meta.AsDict()[key]:
        raise ArchiveError('kernel archive %s: stored %s = %r, measured %r' % (
            path, key, stored.get(key), meta.AsDict()[key]))
    return kernel
