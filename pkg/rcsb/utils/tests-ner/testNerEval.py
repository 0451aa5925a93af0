##
#
# File:    testNerEval.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for entity-level scoring, conlleval report fidelity and the vocabulary breakdown.
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
from rcsb.utils.ner.ConllCorpus import Corpus, Sentence, Token
from rcsb.utils.ner.NerErrors import DataError
from rcsb.utils.ner.NerEval import EntitySpan, NerEval, errorRateReduction, prf
from rcsb.utils.ner.VocabUtils import Vocab

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


class NerEvalTests(unittest.TestCase):
    def setUp(self):
        self.__workPath = os.path.join(HERE, "test-output")
        self.__dataPath = os.path.join(HERE, "test-data")
        if not os.path.isdir(self.__workPath):
            os.makedirs(self.__workPath)
        self.__eval = NerEval(workPath=self.__workPath)
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def testEntitySpans(self):
        self.assertEqual(self.__eval.entitySpans(["B-LOC", "O"]), {EntitySpan("LOC", 0, 0)})
        self.assertEqual(self.__eval.entitySpans(["B-PER", "I-PER", "B-PER"]), {EntitySpan("PER", 0, 1), EntitySpan("PER", 2, 2)})
        self.assertEqual(self.__eval.entitySpans(["O", "I-ORG", "I-ORG"]), {EntitySpan("ORG", 1, 2)})
        with self.assertRaises(DataError):
            EntitySpan("LOC", 3, 2)

    def testF1Score(self):
        """Test case:  exact-match precision, recall and F1"""
        gold = [{EntitySpan("PER", ii, ii) for ii in range(4)}, {EntitySpan("LOC", ii, ii) for ii in range(4)}]
        pred = [{EntitySpan("PER", ii, ii) for ii in range(3)}, {EntitySpan("LOC", 0, 0), EntitySpan("LOC", 1, 1), EntitySpan("ORG", 2, 2)}]
        scoreD = self.__eval.f1Score(gold, pred)
        self.assertEqual((scoreD["gold"], scoreD["predicted"], scoreD["correct"]), (8, 6, 5))
        self.assertEqual("%.2f" % scoreD["precision"], "83.33")
        self.assertEqual("%.2f" % scoreD["recall"], "62.50")
        self.assertEqual("%.2f" % scoreD["f1"], "71.43")
        self.assertEqual(scoreD["types"]["ORG"]["predicted"], 1)
        self.assertEqual(scoreD["types"]["ORG"]["f1"], 0.0)
        same = self.__eval.f1Score(gold, gold)
        self.assertEqual((same["precision"], same["recall"], same["f1"]), (100.0, 100.0, 100.0))
        empty = self.__eval.f1Score(gold, [set(), set()])
        self.assertEqual((empty["precision"], empty["recall"], empty["f1"]), (0.0, 0.0, 0.0))
        with self.assertRaises(DataError):
            self.__eval.f1Score(gold, [set()])
        self.assertEqual(prf(0, 0, 0), (0.0, 0.0, 0.0))

    def testErrorRateReduction(self):
        self.assertAlmostEqual(errorRateReduction(92.0, 90.0), 20.0)
        self.assertAlmostEqual(errorRateReduction(90.0, 90.0), 0.0)
        self.assertEqual(errorRateReduction(100.0, 100.0), 0.0)

    def testConllevalReports(self):
        """Test case:  reports match the committed conlleval outputs"""
        for stem in ("conlleval-1", "conlleval-2", "conlleval-3"):
            _, goldL, predL = self.__eval.readPredictions(os.path.join(self.__dataPath, stem + ".txt"))
            with open(os.path.join(self.__dataPath, stem + ".ref"), "r", encoding="utf-8") as ifh:
                expected = ifh.read()
            report = self.__eval.conllevalReport(goldL, predL)
            logger.info("%s report:\n%s", stem, report)
            self.assertEqual(report, expected)

    def testReadPredictionsError(self):
        filePath = os.path.join(self.__workPath, "two-columns.txt")
        with open(filePath, "w", encoding="utf-8") as ofh:
            ofh.write("Italy B-LOC\n")
        with self.assertRaises(DataError):
            self.__eval.readPredictions(filePath)

    def testOovBreakdown(self):
        """Test case:  one entity per vocabulary category"""
        trainVocab = Vocab(words=["italy", "ferrigato", "visited", "and"])
        embVocab = Vocab(words=["italy", "rome", "visited", "and"])
        sent = Sentence(tokens=[Token(w, "O") for w in ["Italy", "and", "Rome", "and", "Ferrigato", "and", "Xq", "visited"]])
        gold = [["B-LOC", "O", "B-LOC", "O", "B-PER", "O", "B-ORG", "O"]]
        pred = [["B-LOC", "O", "O", "O", "B-PER", "O", "B-LOC", "O"]]
        corpus = Corpus(sentences=[sent])
        self.assertEqual(self.__eval.tokenCategory("Italy", trainVocab, embVocab), "IV")
        self.assertEqual(self.__eval.tokenCategory("Rome", trainVocab, embVocab), "OOTV")
        self.assertEqual(self.__eval.tokenCategory("Ferrigato", trainVocab, embVocab), "OOEV")
        self.assertEqual(self.__eval.tokenCategory("Xq", trainVocab, embVocab), "OOBV")
        breakD = self.__eval.oovBreakdown(corpus, trainVocab, embVocab, gold, pred)
        self.assertEqual([breakD[cat]["gold"] for cat in ("IV", "OOTV", "OOEV", "OOBV")], [1, 1, 1, 1])
        self.assertEqual(breakD["IV"]["f1"], 100.0)
        self.assertEqual(breakD["OOTV"]["recall"], 0.0)
        self.assertEqual(breakD["OOEV"]["f1"], 100.0)
        self.assertEqual((breakD["OOBV"]["correct"], breakD["OOBV"]["predicted"]), (0, 1))
        entity = EntitySpan("LOC", 0, 2)
        self.assertEqual(self.__eval.entityCategory(["Italy", "Rome", "Xq"], entity, trainVocab, embVocab), "OOBV")
        #
        known = [["B-LOC", "O", "O", "O", "O", "O", "O", "B-MISC"]]
        breakD = self.__eval.oovBreakdown(corpus, trainVocab, embVocab, known, known)
        self.assertEqual(breakD["IV"]["f1"], 100.0)
        self.assertEqual(sum(breakD[cat]["gold"] for cat in ("OOTV", "OOEV", "OOBV")), 0)

    def testMetricsFile(self):
        """Test case:  sorted key=value metric lines round trip"""
        scoreD = self.__eval.f1Score([{EntitySpan("PER", 0, 0)}], [{EntitySpan("PER", 0, 0), EntitySpan("LOC", 1, 1)}])
        lineL = self.__eval.metricLines(scoreD, prefix="test.")
        self.assertEqual(lineL, sorted(lineL))
        self.assertIn("test.precision=50.00", lineL)
        self.assertIn("test.type.PER.f1=100.00", lineL)
        filePath = os.path.join(self.__workPath, "metrics-test.txt")
        self.assertTrue(self.__eval.writeMetrics(filePath, lineL))
        metricD = self.__eval.readMetrics(filePath)
        self.assertEqual(metricD["test.recall"], "100.00")
        self.assertEqual(metricD["test.predicted"], "2")


def suiteNerEvalTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(NerEvalTests("testEntitySpans"))
    suiteSelect.addTest(NerEvalTests("testF1Score"))
    suiteSelect.addTest(NerEvalTests("testConllevalReports"))
    suiteSelect.addTest(NerEvalTests("testOovBreakdown"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteNerEvalTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
