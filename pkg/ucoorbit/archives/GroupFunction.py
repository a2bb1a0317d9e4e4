#!/usr/bin/python3
"""This file contains the archive for group functions: CSV `j,t,x[,y],re,im`.

j is the ladder node index u of t = beta^(-u/nu); rows run over the nodes,
then over the grid in row-major order.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import math

# Third-party modules
import numpy as np

# Package modules
from .. import grid as gridlib
from .. import transform
from . import Archive, ArchiveError, GridFromAxis, ReadRows, WriteRows

HEADERS = (['j', 't', 'x', 're', 'im'], ['j', 't', 'x', 'y', 're', 'im'])


class GroupFunction(Archive):
  """Samples F(x, t) over a grid and a ladder."""

  @classmethod
  def Write(cls, item, path):
    grid, ladder = item.grid, item.ladder
    points = [c.ravel() for c in grid.Points()]
    size = points[0].size
    nodes = np.repeat(ladder.Indices(), size)
    scales = np.repeat(ladder.Scales(), size)
    coordinates = [np.tile(c, len(ladder)) for c in points]
    values = np.moveaxis(item.values, -1, 0).reshape(len(ladder), size).ravel()
    WriteRows(path, ['j', 't'] + ['x', 'y'][:grid.dimension] + ['re', 'im'],
              [nodes, scales] + coordinates + [values.real, values.imag])
    return path

  @classmethod
  def Read(cls, path, base=2.0, **context):
    """Rebuilds the function; `base` is the ladder base beta.

    Raises:
      ArchiveError: the nodes do not form a geometric ladder in `base`.
    """
    header, rows = ReadRows(path, HEADERS)
    dimension = len(header) - 4
    nodes = np.unique(rows[:, 0]).astype(int)
    if nodes.size < 2:
      raise ArchiveError('group archive %s needs at least two ladder nodes' % (
          path,))
    first_scale = rows[rows[:, 0] == nodes[0], 1][0]
    second_scale = rows[rows[:, 0] == nodes[1], 1][0]
    steps = nodes[1] - nodes[0]
    oversampling = int(round(steps * math.log(base) /
                             math.log(first_scale / second_scale)))
    try:
      ladder = gridlib.ScaleLadder.FromNodes(base, nodes[0], nodes[-1],
                                             max(oversampling, 1))
    except gridlib.InvalidInputError as error:
      raise ArchiveError('group archive %s: %s' % (path, error))
    if len(ladder) != nodes.size or not np.allclose(
        ladder.Scales(), [rows[rows[:, 0] == u, 1][0] for u in nodes],
        rtol=1e-12):
      raise ArchiveError('group archive %s is not a ladder in base %g' % (
          path, base))
    grid = GridFromAxis(rows[:, 2], dimension, path)
    size = grid.count ** dimension
    if rows.shape[0] != size * len(ladder):
      raise ArchiveError('group archive %s has %d rows, expected %d' % (
          path, rows.shape[0], size * len(ladder)))
    values = (rows[:, -2] + 1j * rows[:, -1]).reshape((len(ladder),) +
                                                       grid.shape)
    return transform.GroupFunction(grid, ladder, np.moveaxis(values, 0, -1))
