#!/usr/bin/python3
# -*- coding: utf-8 -*-
"""µCoorbit numerical laboratory

Smoothness norms of Besov and Triebel-Lizorkin type, their ax+b group
(coorbit) counterparts, and orthonormal spline wavelet frames, computed on
sampled signals and checked against their known identities.

Classes:
  Lab: Settings, run logging and the execution of experiment configs.

Error Classes:
  Error: Superclass of every exception the library raises.
"""

__version__ = '0.1.0'

# Standard modules
import logging
import os


class Error(Exception):
  """Superclass used for inheritance and external exception handling."""


# Package modules
from . import harness
from . import settings as settingslib

MODULE_LOGGERS = ('ucoorbit_grid', 'ucoorbit_kernels', 'ucoorbit_transform',
                  'ucoorbit_funcnorms', 'ucoorbit_group',
                  'ucoorbit_discretization', 'ucoorbit_splinewavelets',
                  'ucoorbit_corpus', 'ucoorbit_harness')


class Lab(object):
  """Runs experiment configs and keeps the run and exception logs.

  The [log] section of the settings file names the log files, the [lab]
  section supplies the worker count and report directory that configs do not
  set themselves.
  """

  def __init__(self, settings=None, executing_path=None, debug=False):
    """Opens the settings file.

    Arguments:
      % settings: str ~~ 'ucoorbit'
        Settings file name, relative to the executing path.
      % executing_path: str ~~ current directory
      % debug: bool ~~ False
        Module loggers at DEBUG instead of WARNING.
    """
    self.executing_path = executing_path or os.getcwd()
    self.config = settingslib.SettingsManager(filename=settings,
                                              path=self.executing_path)
    self._runlogger = None
    self._errorlogger = None
    self._handlers = []
    level = logging.DEBUG if debug else logging.WARNING
    for name in MODULE_LOGGERS:
      logging.getLogger(name).setLevel(level)

  def _FileLogger(self, name, option, default):
    """The named logger, writing only to its log file.

    A handler for the same file is attached once, however many labs ask.
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging.INFO)
    logger.propagate = False
    logpath = os.path.abspath(os.path.join(
        self.executing_path, self.config.Get('log', option, default)))
    for handler in logger.handlers:
      if getattr(handler, 'baseFilename', None) == logpath:
        return logger
    delay = self.config.GetBool('log', option + '_delay', True)
    encoding = self.config.Get('log', option + '_encoding', None)
    handler = logging.FileHandler(logpath, encoding=encoding, delay=delay)
    handler.setLevel(logging.INFO)
    handler.setFormatter(logging.Formatter(
        '%(asctime)s %(levelname)s %(message)s'))
    logger.addHandler(handler)
    self._handlers.append((logger, handler))
    return logger

  def Close(self):
    """Detaches and closes the log file handlers this lab attached."""
    for logger, handler in self._handlers:
      logger.removeHandler(handler)
      handler.close()
    self._handlers = []
    self._runlogger = self._errorlogger = None

  @property
  def logger(self):
    if not self._runlogger:
      self._runlogger = self._FileLogger('ucoorbit_logger', 'run_log',
                                         'ucoorbit_runs.log')
    return self._runlogger

  @property
  def errorlogger(self):
    if not self._errorlogger:
      self._errorlogger = self._FileLogger(
          'ucoorbit_exception_logger', 'exception_log',
          'ucoorbit_exceptions.log')
    return self._errorlogger

  def Defaults(self):
    """Config values supplied by the [lab] settings."""
    return {'workers': self.config.GetInt('lab', 'workers', 1),
            'output': self.config.Get('lab', 'outdir', 'reports')}

  def Configs(self, experiment, path=None, **overrides):
    """The configs of one run of the command line.

    Arguments:
      @ experiment: str
        An experiment name, or 'all' for every config found under `path`.
      % path: str ~~ None
        A JSON config file, or a directory of them.
      % overrides: keyword values for ExperimentConfig.WithOverrides.

    Raises:
      harness.ConfigurationError: a config is invalid, or names another
        experiment than the one requested.

    Returns:
      list of ExperimentConfig
    """
    defaults = self.Defaults()
    if path is None:
      if experiment == 'all':
        raise harness.ConfigurationError('config', "'all' needs a config file "
                                         'or directory')
      configs = [harness.ExperimentConfig.FromDict({'experiment': experiment},
                                                   defaults)]
    else:
      configs = [harness.ExperimentConfig.FromFile(name, defaults)
                 for name in harness.ConfigFiles(path)]
      if not configs:
        raise harness.ConfigurationError('config', 'no JSON configs in %s' % (
            path,))
    for config in configs:
      if experiment != 'all' and config.experiment != experiment:
        raise harness.ConfigurationError('experiment', 'config runs %r, not %r'
                                         % (config.experiment, experiment))
    return [config.WithOverrides(**overrides) for config in configs]

  def Execute(self, configs, outdir=None):
    """Runs the configs in order and writes their reports.

    An experiment that raises is logged to the exception log and recorded as a
    refused result; the remaining configs still run.

    Returns:
      list of (ExperimentResult, list of written paths)
    """
    outcomes = []
    for config in configs:
      try:
        result = harness.Run(config)
      except Error as error:
        self.errorlogger.exception('%s (%s) raised', config.name,
                                   config.experiment)
        result = harness.ExperimentResult.Refused(config, error)
      paths = harness.Write(result, outdir)
      if result.refusal:
        state = 'refused (%s)' % result.refusal
      else:
        state = 'passed' if result.passed else 'failed'
      self.logger.info('%s %s: %d checks, %s, reports %s', config.name,
                       config.experiment, len(result.checks), state,
                       ', '.join(paths))
      outcomes.append((result, paths))
    return outcomes
