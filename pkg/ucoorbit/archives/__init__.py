#!/usr/bin/python3
"""This package contains the base Archive and imports all available archives.

An archive writes one laboratory object to disk and reads it back, checking
that what it reads is consistent. Archives are looked up by their Name().
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import os

# Third-party modules
import numpy as np

# Package modules
from .. import grid as gridlib

NUMBER_FORMAT = '%.17g'


class Error(gridlib.Error):
  """Superclass used for inheritance and external exception handling."""


class ArchiveError(Error, ValueError):
  """A file cannot be read back into a consistent object."""


class Archive(object):
  """Base archive; subclasses implement Write and Read.

  The class name with its first letter lowercased is the archive name unless
  `_NAME` says otherwise.
  """
  _NAME = None
  EXTENSION = '.csv'

  @classmethod
  def Name(cls):
    if cls._NAME:
      return cls._NAME
    name = cls.__name__
    return name[0].lower() + name[1:]

  @classmethod
  def Write(cls, item, path):
    raise NotImplementedError

  @classmethod
  def Read(cls, path, **context):
    raise NotImplementedError


def Sibling(path, suffix):
  """`path` with its extension replaced by `suffix`."""
  return os.path.splitext(path)[0] + suffix


def WriteRows(path, header, columns):
  """Writes equally long numeric columns under a header line."""
  table = np.column_stack([np.asarray(column, dtype=float).ravel()
                           for column in columns])
  np.savetxt(path, table, delimiter=',', fmt=NUMBER_FORMAT,
             header=','.join(header), comments='')


def ReadRows(path, expected=None):
  """Returns (header, 2-d float array) of a file written by WriteRows.

  Raises:
    ArchiveError: missing file, unexpected header or malformed rows.
  """
  if not os.path.isfile(path):
    raise ArchiveError('archive %s does not exist' % path)
  with open(path) as archive:
    header = archive.readline().strip().split(',')
  if expected is not None and header not in expected:
    raise ArchiveError('archive %s has header %s, expected one of %s' % (
        path, ','.join(header), ' | '.join(','.join(h) for h in expected)))
  try:
    rows = np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
  except ValueError as error:
    raise ArchiveError('archive %s is malformed: %s' % (path, error))
  if rows.size and rows.shape[1] != len(header):
    raise ArchiveError('archive %s has %d columns for %d header fields' % (
        path, rows.shape[1], len(header)))
  return header, rows


def GridFromAxis(values, dimension, path):
  """Recovers the GridSpec from the coordinates of the first axis."""
  axis = np.unique(values)
  if axis.size < 2:
    raise ArchiveError('archive %s has fewer than two sample positions' % path)
  spacing = axis[1] - axis[0]
  extent = -axis[0]
  try:
    grid = gridlib.GridSpec(dimension, extent, axis.size)
  except gridlib.InvalidInputError as error:
    raise ArchiveError('archive %s does not hold a grid: %s' % (path, error))
  if abs(grid.spacing - spacing) > 1e-9 * spacing:
    raise ArchiveError('archive %s has spacing %g, its grid needs %g' % (
        path, spacing, grid.spacing))
  return grid


from .Signal import Signal
from .Kernel import Kernel
from .GroupFunction import GroupFunction
from .Coefficients import Coefficients
from .SplineSystem import SplineSystem

ARCHIVES = {archive.Name(): archive
            for archive in (Signal, Kernel, GroupFunction, Coefficients,
                            SplineSystem)}


def ArchiveFor(name):
  """Returns the archive class registered under `name`.

  Raises:
    ArchiveError: no archive has that name.
  """
  try:
    return ARCHIVES[name]
  except KeyError:
    raise ArchiveError('no archive named %r, available: %s' % (
        name, ', '.join(sorted(ARCHIVES))))
