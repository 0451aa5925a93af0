##
#
# File:    testNnCore.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for the differentiable primitives, the parameter registry and gradient checking.
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
from rcsb.utils.ner.GradCheck import GradCheck, gradCheck
from rcsb.utils.ner.NerErrors import ConfigurationError, DataError, NumericError
from rcsb.utils.ner.NnCore import (
    MASKED_SCORE,
    ParamRegistry,
    addLstmParams,
    assertFinite,
    bilstmEncode,
    conv1d,
    cosineMatrix,
    dropout,
    linear,
    lstmCell,
    lstmEncode,
    maskScores,
    paddingMask,
    softmax,
)

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


class NnCoreTests(unittest.TestCase):
    def setUp(self):
        self.__rng = np.random.default_rng(7)
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def testRegistry(self):
        """Test case:  registration, gradient accumulation and precision copies"""
        reg = ParamRegistry(dtype="float32", seed=1)
        reg.addZeros("a", (2, 3))
        reg.addGlorot("b", (3, 4))
        self.assertEqual(reg.names(), ["a", "b"])
        self.assertEqual(reg.numParams(), 18)
        self.assertEqual(reg["a"].dtype, np.float32)
        with self.assertRaises(ConfigurationError):
            reg.addZeros("a", (1,))
        with self.assertRaises(ConfigurationError):
            reg.set("a", np.zeros((3, 2)))
        reg.accumulate({"a": np.ones((2, 3))})
        reg.accumulate({"a": np.ones((2, 3))})
        self.assertTrue(np.all(reg.grad("a") == 2.0))
        with self.assertRaises(NumericError):
            reg.accumulate({"b": np.ones((2, 2))})
        reg.zeroGrad()
        self.assertFalse(np.any(reg.grad("a")))
        reg64 = reg.astype("float64")
        self.assertEqual(reg64["b"].dtype, np.float64)
        self.assertTrue(np.allclose(reg64["b"], reg["b"]))
        limit = np.sqrt(6.0 / 7.0)
        self.assertTrue(np.all(np.abs(reg["b"]) <= limit))

    def testConvIdentity(self):
        """Test case:  k=1 identity kernel and zero input"""
        x = self.__rng.standard_normal((5, 3))
        self.assertTrue(np.allclose(conv1d(x, np.eye(3)[None, :, :]), x))
        bias = np.array([0.5, -1.0])
        out = conv1d(np.zeros((4, 3)), self.__rng.standard_normal((3, 3, 2)), bias)
        self.assertTrue(np.allclose(out, np.tile(bias, (4, 1))))
        with self.assertRaises(ConfigurationError):
            conv1d(x, np.zeros((2, 3, 3)))

    def testConvOracle(self):
        """Test case:  same-padded convolution against a sliding window loop"""
        x = self.__rng.standard_normal((5, 3))
        weight = self.__rng.standard_normal((3, 3, 2))
        bias = self.__rng.standard_normal(2)
        expected = np.zeros((5, 2))
        for ii in range(5):
            expected[ii] = bias
            for jj in range(3):
                src = ii + jj - 1
                if 0 <= src < 5:
                    expected[ii] += x[src] @ weight[jj]
        self.assertLess(float(np.max(np.abs(conv1d(x, weight, bias) - expected))), 1.0e-10)
        batched = conv1d(np.stack([x, 2.0 * x]), weight)
        self.assertTrue(np.allclose(batched[1], 2.0 * batched[0]))

    def testDropout(self):
        """Test case:  identity outside training and unbiased in expectation"""
        x = self.__rng.standard_normal((3, 4))
        rng = np.random.default_rng(0)
        self.assertIs(dropout(x, 0.0, True, rng), x)
        self.assertIs(dropout(x, 0.9, False, rng), x)
        with self.assertRaises(ConfigurationError):
            dropout(x, 1.0, True, rng)
        ones = np.ones((200, 500))
        out = dropout(ones, 0.5, True, rng)
        self.assertAlmostEqual(float(np.mean(out)), 1.0, delta=0.02)
        self.assertTrue(set(np.unique(out).tolist()) <= {0.0, 2.0})

    def testLstm(self):
        """Test case:  single step sequences and the cell recurrence"""
        reg = ParamRegistry(dtype="float64", seed=3)
        addLstmParams(reg, "enc", 4, 6)
        params = reg.asDict()
        out = bilstmEncode(self.__rng.standard_normal((1, 4)), params, "enc")
        self.assertEqual(out.shape, (1, 6))
        self.assertTrue(np.all(np.isfinite(out)))
        x = self.__rng.standard_normal((3, 4))
        fw = lstmEncode(x, params["enc.fw.w_input"], params["enc.fw.w_hidden"], params["enc.fw.bias"])
        hT = np.zeros(3)
        cT = np.zeros(3)
        for ii in range(3):
            hT, cT = lstmCell(x[ii], hT, cT, params["enc.fw.w_input"], params["enc.fw.w_hidden"], params["enc.fw.bias"])
            self.assertTrue(np.allclose(fw[ii], hT))
        full = bilstmEncode(x, params, "enc")
        self.assertTrue(np.allclose(full[:, :3], fw))
        with self.assertRaises(DataError):
            bilstmEncode(np.zeros((0, 4)), params, "enc")
        with self.assertRaises(ConfigurationError):
            addLstmParams(reg, "odd", 4, 5)

    def testBilstmReversal(self):
        """Test case:  reversed input with swapped directions gives the reversed, half-swapped states"""
        reg = ParamRegistry(dtype="float64", seed=5)
        addLstmParams(reg, "enc", 4, 6)
        params = reg.asDict()
        swapped = {}
        for name, arr in params.items():
            swapped[name.replace(".fw.", ".tmp.").replace(".bw.", ".fw.").replace(".tmp.", ".bw.")] = arr
        x = self.__rng.standard_normal((5, 4))
        out = bilstmEncode(x, params, "enc")
        rev = bilstmEncode(x[::-1], swapped, "enc")
        self.assertTrue(np.allclose(rev, np.concatenate([out[:, 3:], out[:, :3]], axis=1)[::-1], atol=1.0e-12))

    def testMaskedBatch(self):
        """Test case:  a right-padded batch reproduces the states and cosines of each sequence"""
        reg = ParamRegistry(dtype="float64", seed=6)
        addLstmParams(reg, "enc", 4, 6)
        params = reg.asDict()
        lengths = [3, 5, 1]
        seqL = [self.__rng.standard_normal((length, 4)) for length in lengths]
        batch = self.__rng.standard_normal((3, 5, 4))
        for bN, seq in enumerate(seqL):
            batch[bN, : lengths[bN]] = seq
        mask = paddingMask(lengths, dtype="float64")
        out = bilstmEncode(batch, params, "enc", mask=mask)
        self.assertEqual(out.shape, (3, 5, 6))
        b = self.__rng.standard_normal((2, 4))
        cos = cosineMatrix(batch * mask[..., None], b, mask=mask)
        for bN, seq in enumerate(seqL):
            self.assertTrue(np.allclose(out[bN, : lengths[bN]], bilstmEncode(seq, params, "enc"), atol=1.0e-12))
            self.assertTrue(np.allclose(cos[bN, : lengths[bN]], cosineMatrix(seq, b), atol=1.0e-12))
            self.assertFalse(np.any(cos[bN, lengths[bN] :]))
        self.assertEqual(float(maskScores(np.array([2.0, 1.0]), np.array([1.0, 0.0]))[1]), MASKED_SCORE)

    def testCosineSoftmax(self):
        a = np.array([[1.0, 0.0], [0.0, 2.0]])
        b = np.array([[1.0, 1.0], [3.0, 0.0]])
        cos = cosineMatrix(a, b)
        self.assertAlmostEqual(float(cos[0, 0]), 1.0 / np.sqrt(2.0))
        self.assertAlmostEqual(float(cos[0, 1]), 1.0)
        self.assertAlmostEqual(float(cos[1, 1]), 0.0)
        with self.assertRaises(NumericError):
            cosineMatrix(np.zeros((1, 2)), b)
        prob = softmax(np.array([np.log(2.0), 0.0]))
        self.assertTrue(np.allclose(prob, [2.0 / 3.0, 1.0 / 3.0]))
        with self.assertRaises(NumericError):
            assertFinite(np.array([1.0, np.nan]), name="scores")

    def testGradCheckQuadratic(self):
        """Test case:  exact gradient of 0.5 |p|^2"""
        params = {"p": np.array([[1.0, -2.0], [0.5, 3.0], [-1.5, 2.5]])}
        err = gradCheck(lambda pD: 0.5 * anp.sum(pD["p"] ** 2), params, eps=1.0e-3)
        self.assertLess(err, 1.0e-9)
        gC = GradCheck(eps=1.0e-3, mode="element")
        self.assertLess(gC.check(lambda pD: 0.5 * anp.sum(pD["p"] ** 2), params), 1.0e-9)
        self.assertEqual(list(gC.report().keys()), ["p"])

    def testGradCheckLinearSoftmax(self):
        """Test case:  composed linear + softmax loss"""
        x = self.__rng.standard_normal((4, 3))
        target = np.array([0, 2, 1, 1])
        params = {"w": self.__rng.standard_normal((3, 3)), "b": self.__rng.standard_normal(3)}

        def lossFn(pD):
            prob = softmax(linear(x, pD["w"], pD["b"]), axis=1)
            return -anp.sum(anp.log(prob[np.arange(4), target]))

        self.assertLess(gradCheck(lossFn, params), 1.0e-6)

    def testGradCheckPrimitives(self):
        """Test case:  BiLSTM and convolution gradients"""
        reg = ParamRegistry(dtype="float64", seed=5)
        addLstmParams(reg, "enc", 4, 6)
        reg.add("conv.weight", self.__rng.standard_normal((3, 4, 2)))
        reg.add("conv.bias", self.__rng.standard_normal(2))
        x = self.__rng.standard_normal((3, 4))

        def lossFn(pD):
            return anp.sum(bilstmEncode(x, pD, "enc") ** 2) + anp.sum(anp.tanh(conv1d(x, pD["conv.weight"], pD["conv.bias"])))

        self.assertLess(gradCheck(lossFn, reg), 1.0e-6)

    def testGradCheckNonFinite(self):
        with self.assertRaises(NumericError):
            gradCheck(lambda pD: anp.sum(anp.log(pD["p"])), {"p": -np.ones(2)})


def suiteNnCoreTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(NnCoreTests("testRegistry"))
    suiteSelect.addTest(NnCoreTests("testConvOracle"))
    suiteSelect.addTest(NnCoreTests("testLstm"))
    suiteSelect.addTest(NnCoreTests("testMaskedBatch"))
    suiteSelect.addTest(NnCoreTests("testGradCheckLinearSoftmax"))
    suiteSelect.addTest(NnCoreTests("testGradCheckPrimitives"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteNnCoreTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
