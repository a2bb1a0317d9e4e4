#!/usr/bin/python3
"""This file contains the archive for coefficient fields: CSV `c,j,k,re,im`.

In d = 2 the species and shift columns hold the two entries separated by a
space, e.g. `1 0` and `3 -2`.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import csv

# Package modules
from .. import discretization
from .. import grid as gridlib
from . import Archive, ArchiveError, NUMBER_FORMAT

HEADER = ['c', 'j', 'k', 're', 'im']


def _Join(values):
  return ' '.join(str(value) for value in values)


def _Split(text, dimension, path):
  values = tuple(int(value) for value in text.split())
  if len(values) != dimension:
    raise ArchiveError('coefficient archive %s: %r has not %d entries' % (
        path, text, dimension))
  return values


class Coefficients(Archive):
  """Coefficient fields on a lattice."""

  @classmethod
  def Write(cls, item, path):
    with open(path, 'w', newline='') as archive:
      writer = csv.writer(archive, lineterminator='\n')
      writer.writerow(HEADER)
      for (species, level, shift), value in item.Items():
        writer.writerow([_Join(species), level, _Join(shift),
                         NUMBER_FORMAT % value.real,
                         NUMBER_FORMAT % value.imag])
    return path

  @classmethod
  def Read(cls, path, lattice=None, **context):
    """Rebuilds the field on `lattice` (the dyadic 1-d lattice by default)."""
    lattice = lattice or discretization.LatticeSpec()
    field = discretization.CoeffField(lattice)
    try:
      with open(path, newline='') as archive:
        reader = csv.reader(archive)
        if next(reader, None) != HEADER:
          raise ArchiveError('coefficient archive %s lacks the header %s' % (
              path, ','.join(HEADER)))
        for row in reader:
          species, level, shift, real, imaginary = row
          field[_Split(species, lattice.dimension, path), int(level),
                _Split(shift, lattice.dimension, path)] = complex(
                    float(real), float(imaginary))
    except (OSError, ValueError, gridlib.InvalidInputError) as error:
      if isinstance(error, ArchiveError):
        raise
      raise ArchiveError('coefficient archive %s is unreadable: %s' % (
          path, error))
    return field
