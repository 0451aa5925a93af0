##
#
# File:    testVocabEmbedding.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for vocabulary construction and pre-trained embedding loading.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging
import math
import os
import platform
import resource
import time
import unittest

import numpy as np

from rcsb.utils.ner import __version__
from rcsb.utils.ner.ConllCorpus import ConllCorpus, Corpus, Sentence, Token
from rcsb.utils.ner.EmbeddingUtils import EmbeddingUtils
from rcsb.utils.ner.NerErrors import ConfigurationError, EmbeddingFormatError
from rcsb.utils.ner.VocabUtils import PAD, UNK, Vocab, VocabUtils, normalizeWord

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


def corpusOf(*sentences):
    return Corpus(sentences=[Sentence(tokens=[Token(w, "O") for w in words.split()]) for words in sentences])


class VocabEmbeddingTests(unittest.TestCase):
    def setUp(self):
        self.__workPath = os.path.join(HERE, "test-output")
        self.__dataPath = os.path.join(HERE, "test-data")
        self.__glovePath = os.path.join(self.__dataPath, "mini-glove.txt")
        if not os.path.isdir(self.__workPath):
            os.makedirs(self.__workPath)
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def __writeText(self, fileName, text):
        filePath = os.path.join(self.__workPath, fileName)
        with open(filePath, "w", encoding="utf-8") as ofh:
            ofh.write(text)
        return filePath

    def testNormalize(self):
        self.assertEqual(normalizeWord("Italy"), "italy")
        self.assertEqual(normalizeWord("1996-08-24"), "0000-00-00")
        self.assertEqual(normalizeWord("A1", lowercase=False, zeroDigits=False), "A1")

    def testBuildVocab(self):
        """Test case:  frequency threshold and special entries"""
        vU = VocabUtils()
        vocab = vU.buildVocab(corpusOf("a a b"), minFreq=2)
        self.assertEqual(vocab.words(), ["a"])
        self.assertEqual(vocab.word(vocab.padIndex), PAD)
        self.assertEqual(vocab.word(vocab.unkIndex), UNK)
        self.assertEqual(vocab.lookup("b"), vocab.unkIndex)
        vocab = vU.buildVocab(corpusOf("a a b", "c"), minFreq=1)
        self.assertEqual(vocab.words(), ["a", "b", "c"])
        self.assertIn("c", vocab)
        self.assertNotIn(UNK, vocab)
        with self.assertRaises(ConfigurationError):
            vU.buildVocab(corpusOf("a"), minFreq=0)

    def testVocabItaly(self):
        """Test case:  one shared id for the three Italy occurrences"""
        corpus = ConllCorpus().readConll(os.path.join(self.__dataPath, "italy.conll"))
        vocab = VocabUtils().buildVocab(corpus)
        idL = [vocab.lookup(tok.surface) for sent in corpus.sentences for tok in sent.tokens if tok.surface == "Italy"]
        self.assertEqual(len(idL), 3)
        self.assertEqual(len(set(idL)), 1)
        self.assertEqual(vocab.words()[0], "italy")
        self.assertEqual(Vocab.fromDict(vocab.toDict()), vocab)
        extended = Vocab.fromDict(vocab.toDict())
        self.assertEqual(extended.extend(["rome", "italy"]), 1)
        self.assertEqual(extended.lookup("Rome"), len(vocab))

    def testCharVocab(self):
        charVocab = VocabUtils().buildCharVocab(corpusOf("aab Ab"))
        self.assertEqual(charVocab.words(), ["a", "b", "A"])
        self.assertEqual(charVocab.lookup("z"), charVocab.unkIndex)
        self.assertEqual(charVocab.lookup("A"), 4)

    def testLoadEmbeddings(self):
        """Test case:  found rows copied, missing rows drawn uniformly"""
        filePath = self.__writeText("two-dim.txt", "a 0.1 0.2\n")
        eU = EmbeddingUtils(seed=3, dtype="float64")
        table = eU.loadEmbeddings(filePath, Vocab(words=["a", "b"]), 2)
        self.assertTrue(np.array_equal(table.matrix[2], np.array([0.1, 0.2])))
        self.assertTrue(np.array_equal(table.matrix[0], np.zeros(2)))
        self.assertEqual(table.found, 1)
        self.assertAlmostEqual(table.coverage, 0.5)
        bound = math.sqrt(3.0 / 2)
        self.assertTrue(np.all(np.abs(table.matrix[3]) <= bound))
        again = EmbeddingUtils(seed=3, dtype="float64").loadEmbeddings(filePath, Vocab(words=["a", "b"]), 2)
        self.assertTrue(np.array_equal(again.matrix, table.matrix))

    def testRandomRowBounds(self):
        """Test case:  uniform(-sqrt(3/d), sqrt(3/d)) statistics over many draws"""
        dim = 50
        rows = EmbeddingUtils(seed=5, dtype="float64").randomRows(2000, dim)
        bound = math.sqrt(3.0 / dim)
        self.assertLessEqual(float(np.max(np.abs(rows))), bound)
        self.assertLess(abs(float(np.mean(rows))), 0.01)
        self.assertAlmostEqual(float(np.var(rows)), bound * bound / 3.0, delta=0.005)

    def testEmbeddingErrors(self):
        """Test case:  dimension mismatch names the line"""
        filePath = self.__writeText("mismatch.txt", "a 0.1 0.2\nb 0.1\n")
        with self.assertRaises(EmbeddingFormatError) as cm:
            EmbeddingUtils().loadEmbeddings(filePath, Vocab(words=["a"]), 2)
        self.assertEqual(cm.exception.lineNumber, 2)
        filePath = self.__writeText("nan.txt", "a nan 0.2\n")
        with self.assertRaises(EmbeddingFormatError):
            EmbeddingUtils().loadEmbeddings(filePath, Vocab(words=["a"]), 2)
        with self.assertRaises(ConfigurationError):
            EmbeddingUtils().embeddingDim(os.path.join(self.__workPath, "missing-embeddings.txt"))
        with self.assertRaises(EmbeddingFormatError):
            EmbeddingUtils().embeddingDim(self.__writeText("blank-embeddings.txt", "\n\n"))

    def testEmbeddingFile(self):
        eU = EmbeddingUtils(dtype="float64")
        self.assertEqual(eU.embeddingDim(self.__glovePath), 4)
        self.assertEqual(eU.embeddingDim(self.__writeText("w2v.txt", "2 3\na 1 2 3\nb 4 5 6\n")), 3)
        embVocab = eU.loadEmbeddingVocab(self.__glovePath, 4)
        self.assertIn("italy", embVocab)
        self.assertIn("0000-00-00", embVocab)
        self.assertNotIn("ferrigato", embVocab)
        table = eU.loadEmbeddings(self.__glovePath, Vocab(words=["italy", "ferrigato"]), 4)
        self.assertTrue(np.allclose(table.matrix[2], [0.52, 0.18, -0.27, 0.09]))
        self.assertEqual(table.found, 1)

    def testWriteEmbeddings(self):
        """Test case:  written vectors (non-ASCII words, new directory) load back unchanged"""
        eU = EmbeddingUtils(dtype="float64")
        filePath = os.path.join(self.__workPath, "written", "vectors.txt")
        matrix = np.array([[0.25, -0.5, 1.0], [2.0, 0.125, -4.0]])
        self.assertTrue(eU.writeEmbeddings(filePath, ["münchen", "rome"], matrix))
        self.assertEqual(eU.embeddingDim(filePath), 3)
        table = eU.loadEmbeddings(filePath, Vocab(words=["münchen", "rome"]), 3)
        self.assertEqual(table.found, 2)
        self.assertTrue(np.allclose(table.matrix[2:4], matrix))


def suiteVocabEmbeddingTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(VocabEmbeddingTests("testBuildVocab"))
    suiteSelect.addTest(VocabEmbeddingTests("testVocabItaly"))
    suiteSelect.addTest(VocabEmbeddingTests("testLoadEmbeddings"))
    suiteSelect.addTest(VocabEmbeddingTests("testEmbeddingErrors"))
    suiteSelect.addTest(VocabEmbeddingTests("testWriteEmbeddings"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteVocabEmbeddingTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
