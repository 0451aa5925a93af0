##
#
# File:    testCrfDecoder.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for linear-chain CRF scoring, the forward algorithm and Viterbi decoding
against brute-force enumeration.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import itertools
import logging
import math
import os
import platform
import resource
import time
import unittest

import numpy as np
from autograd import grad

from rcsb.utils.ner import __version__
from rcsb.utils.ner.CrfDecoder import IMPOSSIBLE, CrfDecoder, allowedTransition, batchNllLoss, logPartition, nllLoss, scoreSequence, viterbi
from rcsb.utils.ner.GradCheck import gradCheck
from rcsb.utils.ner.NerErrors import ConfigurationError, DataError
from rcsb.utils.ner.NnCore import ParamRegistry, paddingMask

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


def bruteForce(emissions, transitions):
    """(log partition, best path, best score) by enumerating every tag path."""
    num, numTags = emissions.shape
    best = None
    scoreL = []
    for path in itertools.product(range(numTags), repeat=num):
        score = emissions[0, path[0]] + transitions[numTags, path[0]] + transitions[path[-1], numTags + 1]
        for ii in range(num):
            if ii > 0:
                score += emissions[ii, path[ii]] + transitions[path[ii - 1], path[ii]]
        scoreL.append(score)
        if best is None or score > best[1]:
            best = (list(path), score)
    top = max(scoreL)
    return top + math.log(sum(math.exp(s - top) for s in scoreL)), best[0], best[1]


class CrfDecoderTests(unittest.TestCase):
    def setUp(self):
        self.__rng = np.random.default_rng(23)
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def __random(self, num, numTags):
        return self.__rng.standard_normal((num, numTags)), self.__rng.standard_normal((numTags + 2, numTags + 2))

    def testScoreSequence(self):
        """Test case:  emission plus transition chain sums"""
        emissions = np.array([[0.5, -1.0, 2.0]])
        self.assertAlmostEqual(float(scoreSequence(emissions, np.zeros((5, 5)), [2])), 2.0)
        emissions, transitions = self.__random(3, 4)
        tags = [1, 3, 0]
        expected = transitions[4, 1] + emissions[0, 1] + transitions[1, 3] + emissions[1, 3] + transitions[3, 0] + emissions[2, 0] + transitions[0, 5]
        self.assertLess(abs(float(scoreSequence(emissions, transitions, tags)) - expected), 1.0e-12)
        chain = transitions[4, 1] + transitions[1, 3] + transitions[3, 0] + transitions[0, 5]
        self.assertLess(abs(float(scoreSequence(np.zeros((3, 4)), transitions, tags)) - chain), 1.0e-12)
        with self.assertRaises(DataError):
            scoreSequence(emissions, transitions, [0, 1])

    def testLogPartition(self):
        """Test case:  forward algorithm identities"""
        row = np.array([[0.2, -0.4, 1.3]])
        expected = math.log(sum(math.exp(v) for v in row[0]))
        self.assertLess(abs(float(logPartition(row, np.zeros((5, 5)))) - expected), 1.0e-12)
        emissions, transitions = self.__random(2, 2)
        self.assertLess(abs(float(logPartition(emissions, transitions)) - bruteForce(emissions, transitions)[0]), 1.0e-10)
        emissions, transitions = self.__random(4, 3)
        shifted = emissions.copy()
        shifted[2] += 1.75
        self.assertLess(abs(float(logPartition(shifted, transitions)) - float(logPartition(emissions, transitions)) - 1.75), 1.0e-10)
        with self.assertRaises(DataError):
            logPartition(np.zeros((0, 3)), np.zeros((5, 5)))

    def testNllLoss(self):
        """Test case:  negative log-likelihood limits and enumeration"""
        self.assertAlmostEqual(float(nllLoss(np.zeros((1, 4)), np.zeros((6, 6)), [2])), math.log(4.0))
        emissions = np.full((3, 3), -50.0)
        emissions[[0, 1, 2], [1, 0, 2]] = 50.0
        loss = float(nllLoss(emissions, np.zeros((5, 5)), [1, 0, 2]))
        self.assertGreaterEqual(loss, 0.0)
        self.assertLess(loss, 1.0e-12)
        emissions, transitions = self.__random(3, 3)
        logZ = bruteForce(emissions, transitions)[0]
        gold = [2, 0, 1]
        self.assertLess(abs(float(nllLoss(emissions, transitions, gold)) - (logZ - float(scoreSequence(emissions, transitions, gold)))), 1.0e-10)

    def testEnumerationOracle(self):
        """Test case:  100 random instances against brute force"""
        startTime = time.time()
        for _ in range(100):
            num = int(self.__rng.integers(1, 7))
            numTags = int(self.__rng.integers(1, 6))
            emissions, transitions = self.__random(num, numTags)
            logZ, bestPath, bestScore = bruteForce(emissions, transitions)
            self.assertLess(abs(float(logPartition(emissions, transitions)) - logZ), 1.0e-8)
            path, score = viterbi(emissions, transitions)
            self.assertEqual(path, bestPath)
            self.assertLess(abs(score - bestScore), 1.0e-9)
        self.assertLess(time.time() - startTime, 60.0)

    def testViterbiSimple(self):
        emissions = np.eye(4)[[2, 0, 3, 1]] * 5.0
        path, _ = viterbi(emissions, np.zeros((6, 6)))
        self.assertEqual(path, [2, 0, 3, 1])
        path, score = viterbi(np.array([[0.1, 0.9, 0.3]]), np.zeros((5, 5)))
        self.assertEqual(path, [1])
        self.assertAlmostEqual(score, 0.9)

    def testConstraints(self):
        """Test case:  invalid tag bigrams start impossible and are never decoded"""
        self.assertFalse(allowedTransition("B-PER", "I-LOC", "BIOES"))
        self.assertFalse(allowedTransition("B-PER", "O", "BIOES"))
        self.assertFalse(allowedTransition(None, "E-PER", "BIOES"))
        self.assertFalse(allowedTransition("I-PER", None, "BIOES"))
        self.assertTrue(allowedTransition("E-PER", "S-LOC", "BIOES"))
        self.assertTrue(allowedTransition("B-PER", "I-PER", "BIO"))
        self.assertFalse(allowedTransition("O", "I-PER", "BIO"))
        self.assertTrue(allowedTransition("B-PER", None, "BIO"))
        tags = ["O", "B-LOC", "E-LOC", "I-LOC", "S-LOC"]
        crf = CrfDecoder(tags, scheme="BIOES")
        registry = ParamRegistry(dtype="float64", seed=1)
        crf.addParams(registry, 3)
        trans = registry["crf.transitions"]
        self.assertEqual(trans.shape, (7, 7))
        self.assertEqual(trans[1, 0], IMPOSSIBLE)
        self.assertEqual(trans[2, 4], 0.0)
        self.assertTrue(np.all(trans[:, 5] == IMPOSSIBLE))
        self.assertTrue(np.all(trans[6, :] == IMPOSSIBLE))
        params = registry.asDict()
        for _ in range(20):
            emissions = self.__rng.standard_normal((5, 5)) * 3.0
            decoded, _ = crf.decode(emissions, params)
            self.assertTrue(all(allowedTransition(a, b, "BIOES") for a, b in zip([None] + decoded, decoded + [None])))
        with self.assertRaises(DataError):
            crf.tagIds(["B-PER"])
        with self.assertRaises(ConfigurationError):
            CrfDecoder(tags, scheme="IOB1")
        self.assertEqual(CrfDecoder(tags, constrain=False).initialTransitions()[1, 0], 0.0)

    def testGradient(self):
        """Test case:  CRF loss gradients with respect to projection and transitions"""
        crf = CrfDecoder(["O", "B-PER", "I-PER"], scheme="BIO", constrain=False)
        registry = ParamRegistry(dtype="float64", seed=9)
        crf.addParams(registry, 4)
        registry.set("crf.transitions", self.__rng.standard_normal((5, 5)) * 0.5)
        states = self.__rng.standard_normal((3, 4))

        def lossFn(pD):
            return crf.loss(crf.emissions(states, pD), pD, ["B-PER", "I-PER", "O"])

        self.assertLess(gradCheck(lossFn, registry), 1.0e-6)

    def testLargeEmissions(self):
        """Test case:  log partition stays finite and bounds every path score for emissions near 1e4"""
        emissions, transitions = self.__random(4, 3)
        emissions = emissions * 1.0e4
        logZ = float(logPartition(emissions, transitions))
        self.assertTrue(math.isfinite(logZ))
        self.assertLess(abs(logZ - bruteForce(emissions, transitions)[0]), 1.0e-6)
        for path in itertools.product(range(3), repeat=4):
            self.assertGreaterEqual(logZ + 1.0e-6, float(scoreSequence(emissions, transitions, list(path))))
        self.assertTrue(math.isfinite(float(nllLoss(-emissions, transitions, [0, 1, 2, 0]))))

    def testMarginalGradient(self):
        """Test case:  emission gradient of the loss is the tag marginals minus the gold one-hot"""
        num, numTags = 3, 3
        emissions, transitions = self.__random(num, numTags)
        gold = [1, 0, 2]
        logZ = bruteForce(emissions, transitions)[0]
        marginals = np.zeros((num, numTags))
        for path in itertools.product(range(numTags), repeat=num):
            prob = math.exp(float(scoreSequence(emissions, transitions, list(path))) - logZ)
            marginals[np.arange(num), list(path)] += prob
        self.assertTrue(np.allclose(marginals.sum(axis=1), 1.0))
        oneHot = np.zeros((num, numTags))
        oneHot[np.arange(num), gold] = 1.0
        gradE = grad(lambda em: nllLoss(em, transitions, gold))(emissions)
        self.assertLess(float(np.max(np.abs(gradE - (marginals - oneHot)))), 1.0e-8)

    def testBatchLoss(self):
        """Test case:  loss of a right-padded batch equals the summed per-sentence losses"""
        numTags = 3
        transitions = self.__rng.standard_normal((numTags + 2, numTags + 2))
        lengths = [2, 4, 1]
        emL = [self.__rng.standard_normal((length, numTags)) for length in lengths]
        tagsL = [[int(t) for t in self.__rng.integers(0, numTags, size=length)] for length in lengths]
        padded = self.__rng.standard_normal((3, 4, numTags)) * 100.0
        for bN, em in enumerate(emL):
            padded[bN, : lengths[bN]] = em
        mask = paddingMask(lengths, dtype="float64")
        expected = sum(float(nllLoss(em, transitions, tags)) for em, tags in zip(emL, tagsL))
        self.assertLess(abs(float(batchNllLoss(padded, transitions, tagsL, mask)) - expected), 1.0e-9)
        logZ = logPartition(padded, transitions, mask=mask)
        for bN, em in enumerate(emL):
            self.assertLess(abs(float(logZ[bN]) - float(logPartition(em, transitions))), 1.0e-10)
        with self.assertRaises(DataError):
            batchNllLoss(padded, transitions, [tags[:1] for tags in tagsL], mask)


def suiteCrfTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(CrfDecoderTests("testLogPartition"))
    suiteSelect.addTest(CrfDecoderTests("testEnumerationOracle"))
    suiteSelect.addTest(CrfDecoderTests("testConstraints"))
    suiteSelect.addTest(CrfDecoderTests("testGradient"))
    suiteSelect.addTest(CrfDecoderTests("testBatchLoss"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteCrfTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
