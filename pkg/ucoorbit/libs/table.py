#!/usr/bin/python3
"""Ordered report tables rendered as CSV or JSON.

Reports must be byte-identical for identical runs, so floats are written with
a fixed format and JSON keys keep their insertion order.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import csv
import io
import json
import math

# Third-party modules
import numpy as np

FLOAT_FORMAT = '%.12g'


def Plain(value):
  """Converts numpy scalars, arrays and report objects into JSON-safe values.

  Non-finite floats become the strings 'inf', '-inf' and 'nan'.
  """
  if hasattr(value, 'AsDict'):
    return Plain(value.AsDict())
  if isinstance(value, dict):
    return {str(key): Plain(item) for key, item in value.items()}
  if isinstance(value, (list, tuple, np.ndarray)):
    return [Plain(item) for item in value]
  if isinstance(value, (bool, np.bool_)):
    return bool(value)
  if isinstance(value, (int, np.integer)):
    return int(value)
  if isinstance(value, (complex, np.complexfloating)):
    return [Plain(value.real), Plain(value.imag)]
  if isinstance(value, (float, np.floating)):
    value = float(value)
    if math.isnan(value):
      return 'nan'
    if math.isinf(value):
      return 'inf' if value > 0 else '-inf'
    return value
  return value


class JsonEncoder(json.JSONEncoder):
  """Falls back to str() for anything Plain left untouched."""

  def default(self, o):
    try:
      return super().default(o)
    except TypeError:
      return str(o)


def Dumps(value):
  return json.dumps(Plain(value), cls=JsonEncoder, indent=2) + '\n'


def FormatCell(value):
  if value is None:
    return ''
  if isinstance(value, (bool, np.bool_)):
    return 'true' if value else 'false'
  if isinstance(value, (float, np.floating)):
    return FLOAT_FORMAT % value
  return str(value)


class Table(object):
  """Rows with a fixed column order.

  Members:
    @ name: str
    @ columns: list of str
      Set by the constructor or by the first row.
    @ rows: list of dict
  """

  def __init__(self, name, columns=None):
    self.name = name
    self.columns = list(columns) if columns else None
    self.rows = []

  def __repr__(self):
    return 'Table(%r, %d rows)' % (self.name, len(self.rows))

  def __len__(self):
    return len(self.rows)

  def __iter__(self):
    return iter(self.rows)

  def AddRow(self, row=None, **values):
    """Appends a row; columns unknown to the table are added at the end."""
    row = dict(row or {}, **values)
    if self.columns is None:
      self.columns = list(row)
    else:
      self.columns.extend(key for key in row if key not in self.columns)
    self.rows.append(row)
    return row

  def Extend(self, rows):
    for row in rows:
      self.AddRow(row)

  def Column(self, name):
    return [row.get(name) for row in self.rows]

  def ToCsv(self):
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(self.columns or [])
    for row in self.rows:
      writer.writerow([FormatCell(row.get(column)) for column in self.columns])
    return stream.getvalue()

  def AsDict(self):
    return {'name': self.name, 'columns': self.columns or [],
            'rows': [[Plain(row.get(column)) for column in self.columns]
                     for row in self.rows]}

  def ToJson(self):
    return Dumps(self)
