#!/usr/bin/python3
"""INI settings of the laboratory.

The settings file holds the run-wide options: the [log] section with the run
and exception log files, and the [lab] section with the thread count and the
default report directory. Experiment parameters live in JSON configs instead.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import configparser
import os

DEFAULT_NAME = 'ucoorbit'
DEFAULTS = {
    'log': {'run_log': 'ucoorbit_runs.log',
            'run_log_delay': 'True',
            'run_log_encoding': 'utf-8',
            'exception_log': 'ucoorbit_exceptions.log'},
    'lab': {'workers': '1',
            'outdir': 'reports'}}


class SettingsManager(object):
  """An INI file whose sections are exposed as the `options` dict."""

  def __init__(self, filename=None, path=None):
    """Opens the settings file; a missing file leaves the defaults in place.

    Arguments:
      % filename: str ~~ 'ucoorbit'
        Name of the file, the .ini extension may be left out.
      % path: str ~~ None
        Directory of the file when the filename is relative.
    """
    filename = filename or DEFAULT_NAME
    extension = '' if filename.endswith(('.ini', '.conf')) else '.ini'
    self.filename = filename + extension
    if path and not os.path.isabs(self.filename):
      self.file_location = os.path.join(path, self.filename)
    else:
      self.file_location = self.filename
    self.mtime = None
    self.config = configparser.ConfigParser()
    self.config.read_dict(DEFAULTS)
    self.options = {}
    self._CheckPermissions()
    self.Read()

  def _CheckPermissions(self):
    """Checks that an existing file can be read."""
    if not os.path.isfile(self.file_location):
      return True
    if not os.access(self.file_location, os.R_OK):
      raise PermissionError(
          'SettingsManager cannot read %s' % self.file_location)
    return True

  def Read(self):
    """Reads the file if it changed since the last read.

    Returns:
      bool: True when the options were refreshed.
    """
    if not os.path.isfile(self.file_location):
      self.options = {section: dict(self.config[section])
                      for section in self.config.sections()}
      return False
    current = os.path.getmtime(self.file_location)
    if self.mtime is not None and self.mtime == current:
      return False
    self.config.read(self.file_location)
    self.options = {section: dict(self.config[section])
                    for section in self.config.sections()}
    self.mtime = current
    return True

  def Get(self, section, key, default=None):
    return self.options.get(section, {}).get(key, default)

  def GetInt(self, section, key, default=0):
    value = self.Get(section, key)
    return default if value in (None, '') else int(value)

  def GetBool(self, section, key, default=False):
    value = self.Get(section, key)
    if value in (None, ''):
      return default
    return value.strip().lower() in ('true', 'yes', '1', 'on')
