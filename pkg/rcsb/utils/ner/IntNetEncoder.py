##
# File:    IntNetEncoder.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Funnel-shaped dense character CNN producing a fixed-size vector per word.

Layer 1 is the initial convolution over character embeddings.  Each of the (L - 1) / 2 blocks
applies a width-1 convolution to the concatenation of all earlier outputs followed by parallel
convolutions with the configured kernel sizes whose outputs are concatenated.  The word vector
is the position-wise max over the concatenation of the initial output and every block output.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging
import math
from dataclasses import dataclass, field, asdict
from typing import Tuple

import numpy as np
import autograd.numpy as anp

from rcsb.utils.ner.NerErrors import ConfigurationError, DataError
from rcsb.utils.ner.NnCore import conv1d, relu, concat

logger = logging.getLogger(__name__)


@dataclass
class IntNetConfig:
    charDim: int = 32
    initFilters: int = 32
    initKernel: int = 3
    blockFilters: int = 16
    kernelSizes: Tuple[int, ...] = field(default_factory=lambda: (3, 5))
    layers: int = 7

    def validate(self):
        if self.layers < 1 or self.layers % 2 == 0:
            raise ConfigurationError("IntNet layer count must be odd (got %r)" % self.layers)
        for kSize in (self.initKernel,) + tuple(self.kernelSizes):
            if kSize % 2 == 0:
                raise ConfigurationError("IntNet kernel sizes must be odd (got %r)" % kSize)
        if min(self.charDim, self.initFilters, self.blockFilters) <= 0:
            raise ConfigurationError("IntNet dimensions must be positive")
        return True

    @property
    def numBlocks(self):
        return (self.layers - 1) // 2

    @property
    def outputDim(self):
        return self.initFilters + self.numBlocks * len(self.kernelSizes) * self.blockFilters

    def toDict(self):
        dD = asdict(self)
        dD["kernelSizes"] = list(self.kernelSizes)
        return dD


class IntNetEncoder(object):
    def __init__(self, config, charVocab, prefix="char"):
        config.validate()
        self.__cfg = config
        self.__charVocab = charVocab
        self.__prefix = prefix

    @property
    def config(self):
        return self.__cfg

    @property
    def outputDim(self):
        return self.__cfg.outputDim

    def addParams(self, registry):
        cfg = self.__cfg
        pf = self.__prefix
        scale = math.sqrt(3.0 / cfg.charDim)
        emb = registry.rng.uniform(-scale, scale, size=(len(self.__charVocab), cfg.charDim))
        emb[self.__charVocab.padIndex] = 0.0
        registry.add(pf + ".embedding", emb)
        registry.addGlorot(pf + ".init.weight", (cfg.initKernel, cfg.charDim, cfg.initFilters))
        registry.addZeros(pf + ".init.bias", (cfg.initFilters,))
        inDim = cfg.initFilters
        for bN in range(cfg.numBlocks):
            bp = "%s.block%d" % (pf, bN)
            registry.addGlorot(bp + ".reduce.weight", (1, inDim, cfg.blockFilters))
            registry.addZeros(bp + ".reduce.bias", (cfg.blockFilters,))
            for kSize in cfg.kernelSizes:
                registry.addGlorot("%s.conv%d.weight" % (bp, kSize), (kSize, cfg.blockFilters, cfg.blockFilters))
                registry.addZeros("%s.conv%d.bias" % (bp, kSize), (cfg.blockFilters,))
            inDim += len(cfg.kernelSizes) * cfg.blockFilters

    def charIds(self, surfaces):
        """Padded (W, L) character id matrix and (W, L, 1) position mask."""
        if any(len(s) == 0 for s in surfaces):
            raise DataError("cannot encode an empty word")
        maxLen = max(len(s) for s in surfaces)
        ids = np.full((len(surfaces), maxLen), self.__charVocab.padIndex, dtype=np.int64)
        mask = np.zeros((len(surfaces), maxLen, 1))
        for ii, surface in enumerate(surfaces):
            ids[ii, : len(surface)] = [self.__charVocab.lookup(ch) for ch in surface]
            mask[ii, : len(surface)] = 1.0
        return ids, mask

    def encodeWords(self, surfaces, params):
        """Encode a list of words.

        Args:
            surfaces (list): word surfaces (raw, non-empty)
            params (dict): parameter dictionary

        Returns:
            (array): (W, outputDim) word vectors
        """
        cfg = self.__cfg
        pf = self.__prefix
        ids, mask = self.charIds(surfaces)
        emb = params[pf + ".embedding"]
        mask = mask.astype(emb.dtype)
        x = emb[ids] * mask
        featL = [relu(conv1d(x, params[pf + ".init.weight"], params[pf + ".init.bias"])) * mask]
        for bN in range(cfg.numBlocks):
            bp = "%s.block%d" % (pf, bN)
            inp = concat(featL, axis=-1) if len(featL) > 1 else featL[0]
            red = relu(conv1d(inp, params[bp + ".reduce.weight"], params[bp + ".reduce.bias"])) * mask
            outL = [relu(conv1d(red, params["%s.conv%d.weight" % (bp, kSize)], params["%s.conv%d.bias" % (bp, kSize)])) * mask for kSize in cfg.kernelSizes]
            featL.append(concat(outL, axis=-1))
        full = concat(featL, axis=-1) if len(featL) > 1 else featL[0]
        return anp.max(full, axis=1)

    def intnetEncode(self, chars, params):
        """Fixed-size vector for one word given as a character sequence."""
        if not chars:
            raise DataError("cannot encode an empty word")
        return self.encodeWords(["".join(chars)], params)[0]
