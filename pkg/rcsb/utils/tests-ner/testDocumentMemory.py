##
#
# File:    testDocumentMemory.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for the key-value memory store, its inverted index and the memory read/fusion.
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

from rcsb.utils.ner import __version__
from rcsb.utils.ner.ConllCorpus import ConllCorpus
from rcsb.utils.ner.DocumentMemory import DocumentMemory, MemoryStore, compatibility, fuse, memoryResponse
from rcsb.utils.ner.NerErrors import ConfigurationError, MemoryIndexError, NumericError
from rcsb.utils.ner.VocabUtils import VocabUtils

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


class DocumentMemoryTests(unittest.TestCase):
    def setUp(self):
        self.__dataPath = os.path.join(HERE, "test-data")
        self.__corpus = ConllCorpus().readConll(os.path.join(self.__dataPath, "italy.conll"))
        self.__vocab = VocabUtils().buildVocab(self.__corpus)
        self.__rng = np.random.default_rng(17)
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def __store(self, keyDim=3, valueDim=4):
        return MemoryStore.fromCorpus(self.__corpus, self.__vocab, keyDim, valueDim, dtype="float64")

    def testInvertedIndex(self):
        """Test case:  one slot per training token, Italy at slots 1, 7 and 11"""
        store = self.__store()
        self.assertEqual(store.numSlots, 13)
        self.assertEqual(store.numInitialized(), 0)
        self.assertEqual(store.slotsForWord(self.__vocab.lookup("Italy")).tolist(), [1, 7, 11])
        self.assertEqual([store.slotOffset(sN) for sN in range(3)], [0, 3, 8])
        self.assertEqual(store.sentences[1], "Rohrabacher had recently visited Italy")
        for word in self.__vocab.words():
            self.assertLessEqual(len(store.slotsForWord(self.__vocab.index(word))), 3)
        self.assertEqual(len(store.slotsForWord(self.__vocab.unkIndex)), 0)

    def testUpdate(self):
        """Test case:  writes are exact and the last write wins"""
        store = self.__store()
        key = self.__rng.standard_normal(3)
        val = self.__rng.standard_normal(4)
        store.memoryUpdate(7, key, val)
        slot = store.slot(7)
        self.assertTrue(slot.initialized)
        self.assertTrue(np.array_equal(slot.key, key))
        self.assertTrue(np.array_equal(slot.value, val))
        self.assertEqual(slot.wordId, self.__vocab.lookup("Italy"))
        store.memoryUpdate(7, 2.0 * key, -val)
        self.assertTrue(np.array_equal(store.slot(7).key, 2.0 * key))
        self.assertTrue(np.array_equal(store.slot(7).value, -val))
        with self.assertRaises(MemoryIndexError):
            store.memoryUpdate(13, key, val)
        with self.assertRaises(MemoryIndexError):
            store.memoryUpdate(0, np.zeros(2), val)
        with self.assertRaises(NumericError):
            store.memoryUpdate(0, np.array([np.nan, 0.0, 0.0]), val)

    def testEpochWrite(self):
        """Test case:  after writing every sentence all slots are initialized"""
        store = self.__store()
        for sN, sent in enumerate(self.__corpus.sentences):
            store.writeSentence(sN, self.__rng.standard_normal((len(sent), 3)), self.__rng.standard_normal((len(sent), 4)))
        self.assertEqual(store.numInitialized(), 13)
        italyL = [store.slot(pos).value for pos in (1, 7, 11)]
        self.assertFalse(np.array_equal(italyL[0], italyL[1]))
        self.assertFalse(np.array_equal(italyL[1], italyL[2]))
        restored = MemoryStore.fromArrays(store.toArrays(), sentences=store.sentences)
        self.assertTrue(np.array_equal(restored.values, store.values))
        self.assertEqual(restored.slotsForWord(self.__vocab.lookup("Italy")).tolist(), [1, 7, 11])

    def testQuery(self):
        """Test case:  initialized subsets, exclusion and the size cap"""
        store = self.__store()
        italy = self.__vocab.lookup("Italy")
        self.assertEqual(store.memoryQuery(italy, 500, self.__rng).tolist(), [])
        for pos in (1, 7, 11):
            store.memoryUpdate(pos, np.ones(3), np.ones(4))
        self.assertEqual(store.memoryQuery(italy, 500, self.__rng).tolist(), [1, 7, 11])
        self.assertEqual(store.memoryQuery(italy, 500, self.__rng, excludeSlot=7).tolist(), [1, 11])
        self.assertEqual(store.memoryQuery(self.__vocab.lookup("Madrid"), 500, self.__rng).tolist(), [])
        with self.assertRaises(ConfigurationError):
            store.memoryQuery(italy, 0, self.__rng)
        #
        num = 1000
        large = MemoryStore([5] * num, list(range(num)), 2, 2, dtype="float64")
        large.initialized[...] = True
        pickA = large.memoryQuery(5, 500, np.random.default_rng(3))
        self.assertEqual(len(pickA), 500)
        self.assertEqual(len(set(pickA.tolist())), 500)
        self.assertTrue(np.all(np.diff(pickA) > 0))
        self.assertTrue(np.array_equal(pickA, large.memoryQuery(5, 500, np.random.default_rng(3))))

    def testCompatibility(self):
        q = np.array([0.6, 0.8])
        self.assertAlmostEqual(float(compatibility(q, q, kind="cosine")), 1.0)
        self.assertAlmostEqual(float(compatibility(q, q, kind="dot")), 1.0)
        self.assertAlmostEqual(float(compatibility(np.array([3.0, 4.0]), np.array([1.0, 1.0]), kind="scaled_dot")), 7.0 / np.sqrt(2.0))
        for kind in ("dot", "scaled_dot", "cosine"):
            self.assertAlmostEqual(float(compatibility(np.array([1.0, 0.0]), np.array([0.0, 2.0]), kind=kind)), 0.0)
        with self.assertRaises(NumericError):
            compatibility(np.zeros(2), q, kind="cosine")
        with self.assertRaises(ConfigurationError):
            compatibility(q, q, kind="general")

    def testResponse(self):
        """Test case:  softmax-weighted value sums"""
        vals = self.__rng.standard_normal((3, 4))
        resp, alpha = memoryResponse(np.array([1.0, 2.0]), np.array([[0.5, 0.5]]), vals[:1])
        self.assertTrue(np.array_equal(resp, vals[0]))
        self.assertTrue(np.allclose(alpha, [1.0]))
        resp, _ = memoryResponse(np.array([1.0, 2.0]), np.array([[0.5, 0.5], [0.5, 0.5]]), vals[:2], kind="dot")
        self.assertTrue(np.allclose(resp, np.mean(vals[:2], axis=0)))
        query = self.__rng.standard_normal(2)
        keys = self.__rng.standard_normal((3, 2))
        for kind in ("dot", "scaled_dot", "cosine"):
            scores = []
            for jj in range(3):
                dot = float(np.sum(query * keys[jj]))
                if kind == "scaled_dot":
                    dot = dot / np.sqrt(2.0)
                elif kind == "cosine":
                    dot = dot / (np.linalg.norm(query) * np.linalg.norm(keys[jj]))
                scores.append(dot)
            weights = np.exp(np.array(scores) - max(scores))
            weights = weights / np.sum(weights)
            expected = sum(weights[jj] * vals[jj] for jj in range(3))
            resp, alpha = memoryResponse(query, keys, vals, kind=kind)
            self.assertLess(float(np.max(np.abs(resp - expected))), 1.0e-10)
            self.assertLess(abs(float(np.sum(alpha)) - 1.0), 1.0e-6)
        self.assertEqual(memoryResponse(query, np.zeros((0, 2)), np.zeros((0, 4))), (None, None))

    def testAlphaNormalization(self):
        """Test case:  memory attention weights sum to one"""
        for _ in range(1000):
            num = int(self.__rng.integers(1, 20))
            query = self.__rng.standard_normal(3)
            _, alpha = memoryResponse(query, self.__rng.standard_normal((num, 3)) * 5.0, self.__rng.standard_normal((num, 2)), kind="dot")
            self.assertLess(abs(float(np.sum(alpha)) - 1.0), 1.0e-6)

    def testFuse(self):
        h = np.array([1.0, 0.0])
        r = np.array([0.0, 1.0])
        self.assertTrue(np.allclose(fuse(h, r, 0.3), [0.3, 0.7]))
        self.assertTrue(np.array_equal(fuse(h, r, 1.0), h))
        self.assertTrue(np.array_equal(fuse(h, r, 0.0), r))
        self.assertIs(fuse(h, None, 0.3), h)
        with self.assertRaises(ConfigurationError):
            fuse(h, r, 1.5)

    def testRead(self):
        """Test case:  per-token reads fuse hits and pass misses through"""
        store = self.__store(keyDim=2, valueDim=2)
        for pos in (1, 7, 11):
            store.memoryUpdate(pos, np.array([1.0, 0.0]), np.array([0.0, 1.0]))
        memory = DocumentMemory(store, compat="cosine", lam=0.3, tMax=500, excludeSelf=True, seed=1)
        wordIds = [self.__vocab.lookup("Italy"), self.__vocab.lookup("Madrid")]
        hidden = np.array([[1.0, 0.0], [1.0, 0.0]])
        queries = np.array([[2.0, 0.0], [0.0, 1.0]])
        fused, diagD = memory.read(queries, hidden, wordIds)
        self.assertTrue(np.allclose(fused[0], [0.3, 0.7]))
        self.assertTrue(np.array_equal(fused[1], hidden[1]))
        self.assertEqual(diagD["hits"], 1)
        self.assertEqual(diagD["subsets"][0].tolist(), [1, 7, 11])
        self.assertIsNone(diagD["alphas"][1])
        _, diagD = memory.read(queries, hidden, wordIds, slotOffset=7)
        self.assertEqual(diagD["subsets"][0].tolist(), [1, 11])
        with self.assertRaises(ConfigurationError):
            DocumentMemory(store, compat="general")

    def testCosineScaleInvariance(self):
        """Test case:  cosine compatibility and attention do not depend on the query scale"""
        query = self.__rng.standard_normal(3)
        keys = self.__rng.standard_normal((4, 3))
        vals = self.__rng.standard_normal((4, 2))
        base = compatibility(query, keys, kind="cosine")
        respA, alphaA = memoryResponse(query, keys, vals, kind="cosine")
        for scale in (1.0e-3, 0.5, 7.0, 1.0e4):
            self.assertTrue(np.allclose(compatibility(scale * query, keys, kind="cosine"), base, atol=1.0e-12))
            respB, alphaB = memoryResponse(scale * query, keys, vals, kind="cosine")
            self.assertTrue(np.allclose(alphaB, alphaA, atol=1.0e-12))
            self.assertTrue(np.allclose(respB, respA, atol=1.0e-12))
        self.assertTrue(np.allclose(compatibility(2.0 * query, keys, kind="dot"), 2.0 * compatibility(query, keys, kind="dot")))

    def testReadBatch(self):
        """Test case:  a padded batch read matches reading each sentence on its own"""
        store = self.__store(keyDim=3, valueDim=4)
        for sN, sent in enumerate(self.__corpus.sentences):
            store.writeSentence(sN, self.__rng.standard_normal((len(sent), 3)), self.__rng.standard_normal((len(sent), 4)))
        memory = DocumentMemory(store, compat="cosine", lam=0.3, tMax=2, excludeSelf=True, seed=1)
        wordIdL = [[self.__vocab.lookup(s) for s in sent.surfaces] for sent in self.__corpus.sentences]
        queries = self.__rng.standard_normal((3, 5, 3))
        hidden = self.__rng.standard_normal((3, 5, 4))
        fused, diagL = memory.readBatch(queries, hidden, wordIdL, slotOffsets=[0, 3, 8], rng=[np.random.default_rng(4) for _ in range(3)])
        self.assertEqual(fused.shape, (3, 5, 4))
        self.assertTrue(np.array_equal(fused[0, 3:], hidden[0, 3:]))
        for bN, wordIds in enumerate(wordIdL):
            num = len(wordIds)
            single, diagD = memory.read(queries[bN, :num], hidden[bN, :num], wordIds, slotOffset=[0, 3, 8][bN], rng=np.random.default_rng(4))
            self.assertTrue(np.allclose(fused[bN, :num], single, atol=1.0e-12))
            self.assertEqual(diagL[bN]["hits"], diagD["hits"])
            self.assertEqual([posA.tolist() for posA in diagL[bN]["subsets"]], [posA.tolist() for posA in diagD["subsets"]])
            for alphaA, alphaB in zip(diagL[bN]["alphas"], diagD["alphas"]):
                self.assertEqual(alphaA is None, alphaB is None)
                if alphaA is not None:
                    self.assertTrue(np.allclose(alphaA, alphaB, atol=1.0e-12))
        self.assertEqual(sum(diagD["hits"] for diagD in diagL), 3)


def suiteDocumentMemoryTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(DocumentMemoryTests("testInvertedIndex"))
    suiteSelect.addTest(DocumentMemoryTests("testUpdate"))
    suiteSelect.addTest(DocumentMemoryTests("testQuery"))
    suiteSelect.addTest(DocumentMemoryTests("testResponse"))
    suiteSelect.addTest(DocumentMemoryTests("testRead"))
    suiteSelect.addTest(DocumentMemoryTests("testReadBatch"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteDocumentMemoryTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
