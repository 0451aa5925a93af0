##
#
# File:    testIntNetEncoder.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for the funnel-shaped character encoder.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging
import os
import platform
import resource
import time
import unittest

import numpy as np
import autograd.numpy as anp

from rcsb.utils.ner import __version__
from rcsb.utils.ner.GradCheck import gradCheck
from rcsb.utils.ner.IntNetEncoder import IntNetConfig, IntNetEncoder
from rcsb.utils.ner.NerErrors import ConfigurationError, DataError
from rcsb.utils.ner.NnCore import ParamRegistry
from rcsb.utils.ner.VocabUtils import Vocab

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


class IntNetEncoderTests(unittest.TestCase):
    def setUp(self):
        self.__charVocab = Vocab(words=list("abcdefghijklmnopqrstuvwxyzIR"), lowercase=False, zeroDigits=False)
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def __encoder(self, config, dtype="float64"):
        encoder = IntNetEncoder(config, self.__charVocab)
        registry = ParamRegistry(dtype=dtype, seed=2)
        encoder.addParams(registry)
        return encoder, registry

    def testConfig(self):
        """Test case:  default funnel output size and validation"""
        config = IntNetConfig()
        self.assertEqual(config.numBlocks, 3)
        self.assertEqual(config.outputDim, 32 + 3 * 2 * 16)
        self.assertEqual(config.toDict()["kernelSizes"], [3, 5])
        with self.assertRaises(ConfigurationError):
            IntNetConfig(layers=4).validate()
        with self.assertRaises(ConfigurationError):
            IntNetConfig(kernelSizes=(3, 4)).validate()

    def testParams(self):
        """Test case:  dense block input sizes grow by the block output"""
        encoder, registry = self.__encoder(IntNetConfig())
        self.assertEqual(registry["char.embedding"].shape, (len(self.__charVocab), 32))
        self.assertFalse(np.any(registry["char.embedding"][0]))
        self.assertEqual(registry["char.block0.reduce.weight"].shape, (1, 32, 16))
        self.assertEqual(registry["char.block1.reduce.weight"].shape, (1, 64, 16))
        self.assertEqual(registry["char.block2.reduce.weight"].shape, (1, 96, 16))
        self.assertEqual(registry["char.block2.conv5.weight"].shape, (5, 16, 16))
        self.assertEqual(encoder.outputDim, 128)

    def testEncode(self):
        """Test case:  fixed-size output for short and repeated words"""
        encoder, registry = self.__encoder(IntNetConfig())
        params = registry.asDict()
        single = encoder.intnetEncode(["a"], params)
        self.assertEqual(single.shape, (encoder.outputDim,))
        self.assertTrue(np.all(np.isfinite(single)))
        self.assertTrue(np.all(single >= 0.0))
        batch = encoder.encodeWords(["Italy", "Rome", "Italy", "a"], params)
        self.assertEqual(batch.shape, (4, encoder.outputDim))
        self.assertTrue(np.array_equal(batch[0], batch[2]))
        self.assertTrue(np.allclose(batch[3], single))
        alone = encoder.encodeWords(["Italy"], params)
        self.assertTrue(np.allclose(alone[0], batch[0]))
        with self.assertRaises(DataError):
            encoder.intnetEncode([], params)
        with self.assertRaises(DataError):
            encoder.encodeWords(["ok", ""], params)

    def testCharacterOrder(self):
        """Test case:  swapping two distinct characters changes the word encoding"""
        encoder, registry = self.__encoder(IntNetConfig(charDim=8, initFilters=8, blockFilters=4, kernelSizes=(3,), layers=3))
        params = registry.asDict()
        outA, outB, outC = encoder.encodeWords(["Rome", "Roem", "Rome"], params)
        self.assertFalse(np.allclose(outA, outB))
        self.assertTrue(np.array_equal(outA, outC))

    def testCharIds(self):
        encoder, _ = self.__encoder(IntNetConfig())
        ids, mask = encoder.charIds(["ab", "Rxq?"])
        self.assertEqual(ids.shape, (2, 4))
        self.assertEqual(ids[0].tolist(), [2, 3, 0, 0])
        self.assertEqual(ids[1, 3], self.__charVocab.unkIndex)
        self.assertEqual(mask[:, :, 0].tolist(), [[1.0, 1.0, 0.0, 0.0], [1.0, 1.0, 1.0, 1.0]])

    def testGradient(self):
        """Test case:  encoder gradients against finite differences"""
        config = IntNetConfig(charDim=4, initFilters=4, blockFilters=2, kernelSizes=(3,), layers=3)
        encoder, registry = self.__encoder(config)
        target = np.linspace(-0.5, 0.5, encoder.outputDim)

        def lossFn(pD):
            out = encoder.encodeWords(["Italy", "ab"], pD)
            return anp.sum(anp.tanh(out) * target)

        self.assertLess(gradCheck(lossFn, registry), 1.0e-4)


def suiteIntNetTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(IntNetEncoderTests("testParams"))
    suiteSelect.addTest(IntNetEncoderTests("testEncode"))
    suiteSelect.addTest(IntNetEncoderTests("testGradient"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteIntNetTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
