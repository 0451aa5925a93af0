##
# File:    RunConfigUtil.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Read and write run-config files (``key = value`` lines; blank and # lines ignored).
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging
import os
import typing
from dataclasses import fields

from rcsb.utils.io.MarshalUtil import MarshalUtil

from rcsb.utils.ner.NerErrors import ConfigurationError
from rcsb.utils.ner.NerTrainer import TrainConfig

logger = logging.getLogger(__name__)

KEY_ALIASES = {"lambda": "fusion_lambda", "max_memory": "t_max", "T_max": "t_max", "attn-kernel": "attn_kernel"}
TRUE_VALUES = ("true", "yes", "on", "1")
FALSE_VALUES = ("false", "no", "off", "0")


class RunConfigUtil(object):
    def __init__(self, **kwargs):
        self.__mU = MarshalUtil(workPath=kwargs.get("workPath", "."))
        self.__typeD = {f.name: f.type for f in fields(TrainConfig)}

    def coerce(self, key, text):
        """Convert a text value to the type of the TrainConfig field."""
        name = KEY_ALIASES.get(key, key)
        if name not in self.__typeD:
            raise ConfigurationError("unknown configuration key %r" % key)
        fType = self.__typeD[name]
        text = str(text).strip()
        try:
            if fType is bool:
                if text.lower() in TRUE_VALUES:
                    return name, True
                if text.lower() in FALSE_VALUES:
                    return name, False
                raise ValueError("not a boolean")
            if fType is int:
                return name, int(text)
            if fType is float:
                return name, float(text)
            if typing.get_origin(fType) is tuple:
                return name, tuple(int(v) for v in text.replace(",", " ").split())
        except ValueError as e:
            raise ConfigurationError("bad value %r for %s: %s" % (text, key, str(e)))
        return name, text

    def parseLines(self, lineL):
        rD = {}
        for line in lineL:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise ConfigurationError("run-config line %r is not key = value" % line)
            name, value = self.coerce(key.strip(), val)
            rD[name] = value
        return rD

    def readConfig(self, filePath, base=None, overrides=None):
        """TrainConfig from a run-config file, optional base config and override mapping.

        Args:
            filePath (str): run-config path (None for defaults only)
            base (TrainConfig, optional): starting configuration. Defaults to TrainConfig().
            overrides (dict, optional): field values applied after the file (e.g. command-line flags)

        Raises:
            ConfigurationError: unknown key, bad value or invalid resulting configuration

        Returns:
            (TrainConfig): validated configuration
        """
        dD = (base or TrainConfig()).toDict()
        if filePath:
            if not os.access(filePath, os.R_OK):
                raise ConfigurationError("cannot read run-config %r" % filePath)
            lineL = self.__mU.doImport(filePath, fmt="list")
            if lineL is None:
                raise ConfigurationError("cannot read run-config %r" % filePath)
            dD.update(self.parseLines(lineL))
        for key, val in (overrides or {}).items():
            if val is None:
                continue
            name = KEY_ALIASES.get(key, key)
            dD[name] = self.coerce(name, val)[1] if isinstance(val, str) else val
        config = TrainConfig.fromDict(dD)
        config.validate()
        return config

    def configLines(self, config):
        lineL = []
        for ky, val in config.toDict().items():
            if isinstance(val, bool):
                val = "true" if val else "false"
            elif isinstance(val, (list, tuple)):
                val = ",".join(str(v) for v in val)
            lineL.append("%s = %s" % (ky, val))
        return lineL

    def writeConfig(self, config, filePath):
        return self.__mU.doExport(filePath, self.configLines(config), fmt="list")
