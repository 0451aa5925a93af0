##
#
# File:    testConllCorpus.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for CoNLL corpus reading and writing.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging
import os
import platform
import resource
import time
import unittest

from rcsb.utils.ner import __version__
from rcsb.utils.ner.ConllCorpus import ConllCorpus, Corpus, Sentence, Token
from rcsb.utils.ner.NerErrors import ConllParseError, DataError

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


class ConllCorpusTests(unittest.TestCase):
    def setUp(self):
        self.__workPath = os.path.join(HERE, "test-output")
        self.__dataPath = os.path.join(HERE, "test-data")
        self.__italyPath = os.path.join(self.__dataPath, "italy.conll")
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

    def testReadMinimal(self):
        """Test case:  minimal well-formed file"""
        corpus = ConllCorpus().readConll(self.__writeText("minimal.conll", "Italy B-LOC\n\n"))
        self.assertEqual(len(corpus), 1)
        self.assertEqual(corpus.sentences[0].surfaces, ["Italy"])
        self.assertEqual(corpus.sentences[0].tags, ["B-LOC"])
        self.assertEqual(corpus.tokenCount(), 1)

    def testReadEmpty(self):
        corpus = ConllCorpus().readConll(self.__writeText("empty.conll", ""))
        self.assertEqual(len(corpus), 0)

    def testReadErrors(self):
        """Test case:  malformed lines and tag sequences name the line number"""
        with self.assertRaises(ConllParseError) as cm:
            ConllCorpus().readConll(self.__writeText("one-column.conll", "Rome B-LOC\nItaly\n"))
        self.assertEqual(cm.exception.lineNumber, 2)
        with self.assertRaises(ConllParseError) as cm:
            ConllCorpus().readConll(self.__writeText("bad-tags.conll", "Rome B-LOC\n\nin O\nItaly I-LOC\n"))
        self.assertEqual(cm.exception.lineNumber, 4)
        with self.assertRaises(ConllParseError) as cm:
            ConllCorpus().readConll(os.path.join(self.__workPath, "does-not-exist.conll"))
        self.assertEqual(cm.exception.lineNumber, 0)
        with self.assertRaises(DataError):
            Token(surface="", tag="O")

    def testReadItaly(self):
        """Test case:  three training sentences with one Italy each"""
        corpus = ConllCorpus().readConll(self.__italyPath)
        self.assertEqual(len(corpus), 3)
        self.assertEqual([sent.surfaces.count("Italy") for sent in corpus.sentences], [1, 1, 1])
        self.assertEqual(corpus.tokenCount(), 13)
        self.assertEqual([sent.sentenceId for sent in corpus.sentences], [0, 1, 2])
        self.assertEqual(corpus.sentences[1].lineNumber, 7)

    def testColumnMap(self):
        filePath = self.__writeText("four-column.conll", "EU NNP B-NP B-ORG\nrejects VBZ B-VP O\n")
        corpus = ConllCorpus(columnMap={"token": 0, "tag": 3}).readConll(filePath)
        self.assertEqual(corpus.sentences[0].tags, ["B-ORG", "O"])

    def testWriteRead(self):
        """Test case:  writer output reads back to the same sentences"""
        corpus = ConllCorpus().readConll(self.__italyPath)
        outPath = os.path.join(self.__workPath, "italy-copy.conll")
        ok = ConllCorpus().writeConll(corpus, outPath)
        self.assertTrue(ok)
        copy = ConllCorpus().readConll(outPath)
        self.assertEqual([s.surfaces for s in copy.sentences], [s.surfaces for s in corpus.sentences])
        self.assertEqual(copy.tagSequences(), corpus.tagSequences())
        predL = [["O"] * len(sent) for sent in corpus.sentences]
        ConllCorpus().writeConll(corpus, outPath, extraColumns=predL)
        with open(outPath, "r", encoding="utf-8") as ifh:
            firstLine = ifh.readline().split()
        self.assertEqual(firstLine, ["ORVIETO", "B-LOC", "O"])
        accented = Corpus(sentences=[Sentence(tokens=[Token("Café", "B-LOC"), Token("Müller", "B-PER")])])
        nestedPath = os.path.join(self.__workPath, "nested", "accented.conll")
        self.assertTrue(ConllCorpus().writeConll(accented, nestedPath))
        self.assertEqual(ConllCorpus().readConll(nestedPath).sentences[0].surfaces, ["Café", "Müller"])

    def testToScheme(self):
        corpus = Corpus(sentences=[Sentence(tokens=[Token("Peter", "B-PER"), Token("Blackburn", "I-PER"), Token("spoke", "O")])])
        bioes = corpus.toScheme("BIOES")
        self.assertEqual(bioes.sentences[0].tags, ["B-PER", "E-PER", "O"])
        self.assertEqual(bioes.sentences[0].scheme, "BIOES")
        self.assertEqual(corpus.sentences[0].tags, ["B-PER", "I-PER", "O"])


def suiteConllCorpusTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(ConllCorpusTests("testReadMinimal"))
    suiteSelect.addTest(ConllCorpusTests("testReadErrors"))
    suiteSelect.addTest(ConllCorpusTests("testReadItaly"))
    suiteSelect.addTest(ConllCorpusTests("testWriteRead"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteConllCorpusTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
