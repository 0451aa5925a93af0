##
#
# File:    testSentenceRepresentation.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for label embeddings, label confidence, window pooling and sentence attention.
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
from rcsb.utils.ner.ConllCorpus import Corpus, Sentence, Token
from rcsb.utils.ner.GradCheck import gradCheck
from rcsb.utils.ner.NerErrors import ConfigurationError, LabelEmbeddingError, NumericError
from rcsb.utils.ner.NnCore import ParamRegistry, bilstmEncode, paddingMask
from rcsb.utils.ner.SentenceRepresentation import (
    LabelEmbeddings,
    SentenceRepresentation,
    initLabelEmbeddings,
    labelAuxLoss,
    labelConfidence,
    labelTypes,
    sentenceAttention,
    sentenceRepr,
    windowPool,
)
from rcsb.utils.ner.VocabUtils import Vocab

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


def taggedSentence(pairs):
    return Sentence(tokens=[Token(word, tag) for word, tag in pairs])


class SentenceRepresentationTests(unittest.TestCase):
    def setUp(self):
        self.__rng = np.random.default_rng(13)
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def __embeddingFn(self, vocab, matrix):
        def vectorFn(sent):
            return matrix[[vocab.lookup(s) for s in sent.surfaces]]

        return vectorFn

    def testInitLabelEmbeddings(self):
        """Test case:  label rows are means of the sampled token vectors"""
        vocab = Vocab(words=["rome", "paris", "in", "to"])
        matrix = np.zeros((len(vocab), 2))
        matrix[vocab.index("rome")] = [1.0, 0.0]
        matrix[vocab.index("paris")] = [0.0, 2.0]
        matrix[vocab.index("in")] = [1.0, 1.0]
        matrix[vocab.index("to")] = [3.0, 1.0]
        corpus = Corpus(sentences=[taggedSentence([("in", "O"), ("Rome", "B-LOC")])])
        labelEmb = initLabelEmbeddings(corpus, self.__embeddingFn(vocab, matrix), 200, np.random.default_rng(0))
        self.assertEqual(labelEmb.labels, ["O", "LOC"])
        self.assertTrue(np.array_equal(labelEmb.matrix[1], [1.0, 0.0]))
        corpus.sentences.append(taggedSentence([("to", "O"), ("Paris", "B-LOC")]))
        labelEmb = initLabelEmbeddings(corpus, self.__embeddingFn(vocab, matrix), 200, np.random.default_rng(0))
        self.assertTrue(np.allclose(labelEmb.matrix[1], [0.5, 1.0]))
        self.assertTrue(np.allclose(labelEmb.matrix[0], [2.0, 1.0]))
        self.assertEqual(labelEmb.counts, [2, 2])
        with self.assertRaises(LabelEmbeddingError) as cm:
            initLabelEmbeddings(corpus, self.__embeddingFn(vocab, matrix), 5, np.random.default_rng(0), labels=["O", "LOC", "PER"])
        self.assertEqual(cm.exception.labelType, "PER")
        with self.assertRaises(ConfigurationError):
            initLabelEmbeddings(corpus, self.__embeddingFn(vocab, matrix), 0, np.random.default_rng(0))

    def testLabelSampling(self):
        """Test case:  sampling caps at the population and is seeded"""
        words = ["loc%d" % ii for ii in range(50)]
        vocab = Vocab(words=words + ["the"])
        matrix = self.__rng.standard_normal((len(vocab), 3))
        sentL = [taggedSentence([("the", "O"), (word, "B-LOC")]) for word in words]
        corpus = Corpus(sentences=sentL)
        labelEmb = initLabelEmbeddings(corpus, self.__embeddingFn(vocab, matrix), 200, np.random.default_rng(1))
        expected = np.mean(matrix[[vocab.lookup(w) for w in words]], axis=0)
        self.assertTrue(np.allclose(labelEmb.matrix[1], expected, atol=1.0e-12))
        rowA = initLabelEmbeddings(corpus, self.__embeddingFn(vocab, matrix), 10, np.random.default_rng(1)).matrix
        rowB = initLabelEmbeddings(corpus, self.__embeddingFn(vocab, matrix), 10, np.random.default_rng(1)).matrix
        self.assertTrue(np.array_equal(rowA, rowB))
        self.assertEqual(labelTypes(corpus), ["O", "LOC"])

    def testLabelConfidence(self):
        conf = labelConfidence(np.array([[1.0, 0.0], [0.0, 1.0]]), np.array([[1.0, 0.0], [1.0, 1.0]]))
        self.assertAlmostEqual(float(conf[0, 0]), 1.0)
        self.assertAlmostEqual(float(conf[1, 0]), 0.0)
        self.assertAlmostEqual(float(conf[0, 1]), 0.70710678, places=7)
        with self.assertRaises(NumericError):
            labelConfidence(np.array([[0.0, 0.0]]), np.array([[1.0, 0.0]]))

    def testWindowPool(self):
        """Test case:  windowed confidence with max over label channels"""
        conf = self.__rng.standard_normal((4, 3))
        self.assertTrue(np.allclose(windowPool(conf, np.array([1.0]), np.zeros(3)), np.max(conf, axis=1)))
        self.assertTrue(np.allclose(windowPool(np.zeros((5, 2)), np.array([0.2, 0.4, 0.1]), np.array([0.3, -1.0])), 0.3))
        weight = self.__rng.standard_normal(3)
        bias = self.__rng.standard_normal(3)
        expected = np.zeros(4)
        for ii in range(4):
            uRow = bias.copy()
            for jj in range(3):
                src = ii + jj - 1
                if 0 <= src < 4:
                    uRow = uRow + weight[jj] * conf[src]
            expected[ii] = np.max(uRow)
        self.assertLess(float(np.max(np.abs(windowPool(conf, weight, bias) - expected))), 1.0e-10)
        with self.assertRaises(ConfigurationError):
            windowPool(conf, np.ones(2), bias)
        with self.assertRaises(ConfigurationError):
            windowPool(conf, weight, np.zeros(2))

    def testAttention(self):
        """Test case:  normalized attention weights and weighted sums"""
        self.assertTrue(np.allclose(sentenceAttention(np.full(4, 0.7)), 0.25))
        self.assertTrue(np.allclose(sentenceAttention(np.array([np.log(2.0), 0.0])), [2.0 / 3.0, 1.0 / 3.0]))
        scores = self.__rng.standard_normal(6)
        self.assertTrue(np.allclose(sentenceAttention(scores + 5.0), sentenceAttention(scores)))
        for _ in range(1000):
            num = int(self.__rng.integers(1, 30))
            beta = sentenceAttention(self.__rng.standard_normal(num) * 10.0)
            self.assertLess(abs(float(np.sum(beta)) - 1.0), 1.0e-6)
            self.assertTrue(np.all(beta >= 0.0))
        with self.assertRaises(NumericError):
            sentenceAttention(np.array([0.0, np.inf]))
        states = np.array([[1.0, 2.0], [3.0, 4.0]])
        self.assertTrue(np.allclose(sentenceRepr(np.array([1.0, 0.0]), states), [1.0, 2.0]))
        self.assertTrue(np.allclose(sentenceRepr(np.array([0.25, 0.75]), states), [2.5, 3.5]))
        self.assertTrue(np.allclose(sentenceRepr(np.array([0.5, 0.5]), states), np.mean(states, axis=0)))

    def testPermutation(self):
        """Test case:  permuting tokens permutes the attention weights and keeps the sentence vector"""
        wordEmbs = self.__rng.standard_normal((6, 3))
        labelMatrix = self.__rng.standard_normal((3, 3))
        states = self.__rng.standard_normal((6, 4))
        weight = np.array([1.3])
        bias = self.__rng.standard_normal(3)
        perm = self.__rng.permutation(6)
        beta = sentenceAttention(windowPool(labelConfidence(wordEmbs, labelMatrix), weight, bias))
        betaP = sentenceAttention(windowPool(labelConfidence(wordEmbs[perm], labelMatrix), weight, bias))
        self.assertTrue(np.allclose(betaP, beta[perm], atol=1.0e-12))
        self.assertTrue(np.allclose(sentenceRepr(betaP, states[perm]), sentenceRepr(beta, states), atol=1.0e-12))

    def testEncodeBatch(self):
        """Test case:  a padded batch gives the sentence vectors and weights of each sentence"""
        labelEmb = LabelEmbeddings(matrix=self.__rng.standard_normal((3, 3)), labels=["O", "LOC", "PER"])
        lengths = [2, 5, 4]
        inputs = self.__rng.standard_normal((3, 5, 4))
        labelInputs = self.__rng.standard_normal((3, 5, 3))
        mask = paddingMask(lengths, dtype="float64")
        for mode in ("mean", "label-attn"):
            sentRep = SentenceRepresentation(mode=mode, kernel=3, hidden=6)
            registry = ParamRegistry(dtype="float64", seed=4)
            sentRep.addParams(registry, 4, labelEmbeddings=labelEmb)
            params = registry.asDict()
            sV, diagD = sentRep.encode(inputs, labelInputs, params, mask=mask)
            self.assertEqual(sV.shape, (3, 6))
            for bN, num in enumerate(lengths):
                single, singleD = sentRep.encode(inputs[bN, :num], labelInputs[bN, :num], params)
                self.assertTrue(np.allclose(sV[bN], single, atol=1.0e-12))
                self.assertTrue(np.allclose(diagD["beta"][bN, :num], singleD["beta"], atol=1.0e-12))
                self.assertFalse(np.any(diagD["beta"][bN, num:]))

    def testEncodeModes(self):
        """Test case:  mean pooling and label attention sentence vectors"""
        inputs = self.__rng.standard_normal((5, 4))
        labelInputs = self.__rng.standard_normal((5, 3))
        labelEmb = LabelEmbeddings(matrix=self.__rng.standard_normal((3, 3)), labels=["O", "LOC", "PER"])
        sentRep = SentenceRepresentation(mode="mean", kernel=3, hidden=6)
        registry = ParamRegistry(dtype="float64", seed=4)
        sentRep.addParams(registry, 4)
        params = registry.asDict()
        sV, diagD = sentRep.encode(inputs, labelInputs, params)
        self.assertTrue(np.allclose(sV, np.mean(bilstmEncode(inputs, params, "sent.lstm"), axis=0)))
        self.assertTrue(np.allclose(diagD["beta"], 0.2))
        self.assertNotIn("sent.label_embedding", registry)
        #
        sentRep = SentenceRepresentation(mode="label-attn", kernel=3, hidden=6)
        registry = ParamRegistry(dtype="float64", seed=4)
        sentRep.addParams(registry, 4, labelEmbeddings=labelEmb)
        params = registry.asDict()
        self.assertEqual(sentRep.attnParams(params).kernel, 3)
        self.assertEqual(registry["sent.attn.bias"].shape, (3,))
        sV, diagD = sentRep.encode(inputs, labelInputs, params)
        self.assertEqual(sV.shape, (6,))
        self.assertAlmostEqual(float(np.sum(diagD["beta"])), 1.0)
        self.assertTrue(np.allclose(sV, diagD["beta"] @ bilstmEncode(inputs, params, "sent.lstm")))
        self.assertEqual(SentenceRepresentation(mode="off").outputDim, 0)
        with self.assertRaises(ConfigurationError):
            SentenceRepresentation(mode="label-attn").addParams(ParamRegistry(), 4)
        with self.assertRaises(ConfigurationError):
            SentenceRepresentation(mode="max")

    def testGradient(self):
        """Test case:  label attention gradients including the auxiliary loss"""
        inputs = self.__rng.standard_normal((4, 4))
        labelInputs = self.__rng.standard_normal((4, 3))
        labelEmb = LabelEmbeddings(matrix=self.__rng.standard_normal((3, 3)), labels=["O", "LOC", "PER"])
        sentRep = SentenceRepresentation(mode="label-attn", kernel=3, hidden=4)
        registry = ParamRegistry(dtype="float64", seed=6)
        sentRep.addParams(registry, 4, labelEmbeddings=labelEmb)

        def lossFn(pD):
            sV, diagD = sentRep.encode(inputs, labelInputs, pD)
            return anp.sum(anp.sin(sV)) + labelAuxLoss(diagD["conf"], [0, 1, 1, 2])

        self.assertLess(gradCheck(lossFn, registry), 1.0e-6)


def suiteSentenceRepresentationTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(SentenceRepresentationTests("testInitLabelEmbeddings"))
    suiteSelect.addTest(SentenceRepresentationTests("testWindowPool"))
    suiteSelect.addTest(SentenceRepresentationTests("testAttention"))
    suiteSelect.addTest(SentenceRepresentationTests("testEncodeBatch"))
    suiteSelect.addTest(SentenceRepresentationTests("testGradient"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteSentenceRepresentationTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
