##
#
# File:    testNerExec.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for the command-line wrapper: end-to-end commands, output files and exit codes.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging
import os
import platform
import resource
import time
import unittest

from rcsb.utils.io.MarshalUtil import MarshalUtil

from rcsb.utils.ner import __version__
from rcsb.utils.ner.NerCheckpoint import NerCheckpoint
from rcsb.utils.ner.NerEval import NerEval
from rcsb.utils.ner.NerExec import ablationTable, hashArtifacts, inspectMemory, main

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


class NerExecTests(unittest.TestCase):
    def setUp(self):
        self.__dataPath = os.path.join(HERE, "test-data")
        self.__outDir = os.path.join(HERE, "test-output", "cli")
        self.__conllPath = os.path.join(self.__dataPath, "italy.conll")
        self.__embPath = os.path.join(self.__dataPath, "mini-glove.txt")
        self.__configPath = os.path.join(self.__dataPath, "run-config.txt")
        self.__mU = MarshalUtil(workPath=self.__outDir)
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def __train(self, outDir, *extra):
        argv = ["train", "--config", self.__configPath, "--train", self.__conllPath, "--dev", self.__conllPath, "--test", self.__conllPath]
        argv += ["--embeddings", self.__embPath, "--out-dir", outDir] + list(extra)
        return main(argv)

    def testTrainEvalPredict(self):
        """Test case:  train, then evaluate, predict and inspect the saved model"""
        self.assertEqual(self.__train(self.__outDir, "--seed", "5"), 0)
        for fileName in ("model.ckpt", "run-config.txt", "train-metrics.txt", "test-metrics.txt", "run-manifest-train.json"):
            self.assertTrue(os.access(os.path.join(self.__outDir, fileName), os.R_OK), fileName)
        nE = NerEval()
        metricD = nE.readMetrics(os.path.join(self.__outDir, "train-metrics.txt"))
        self.assertIn("epoch.001.loss", metricD)
        self.assertIn("epoch.002.dev_f1", metricD)
        self.assertEqual(metricD["epoch.001.memory_initialized"], "13")
        self.assertNotIn("epoch.001.seconds", metricD)
        self.assertIn(metricD["best_epoch"], ("1", "2"))
        manifestD = self.__mU.doImport(os.path.join(self.__outDir, "run-manifest-train.json"), fmt="json")
        self.assertEqual(manifestD["command"], "train")
        self.assertEqual(manifestD["seed"], 5)
        self.assertEqual(manifestD["config"]["word_dim"], 4)
        self.assertEqual(len(manifestD["artifactHash"]), 64)
        self.assertEqual(len(manifestD["epochSeconds"]), 2)
        #
        ckptPath = os.path.join(self.__outDir, "model.ckpt")
        self.assertEqual(main(["eval", "--checkpoint", ckptPath, "--test", self.__conllPath, "--embeddings", self.__embPath, "--out-dir", self.__outDir]), 0)
        evalD = nE.readMetrics(os.path.join(self.__outDir, "eval-metrics.txt"))
        self.assertEqual(evalD["gold"], "6")
        self.assertIn("IV.f1", evalD)
        self.assertEqual(evalD, nE.readMetrics(os.path.join(self.__outDir, "test-metrics.txt")))
        #
        tokenPath = os.path.join(self.__dataPath, "predict-tokens.txt")
        self.assertEqual(main(["predict", "--checkpoint", ckptPath, "--input", tokenPath, "--input-format", "tokens", "--out-dir", self.__outDir]), 0)
        with open(os.path.join(self.__outDir, "predictions.txt"), "r", encoding="utf-8") as ifh:
            blockL = [block for block in ifh.read().split("\n\n") if block.strip()]
        self.assertEqual(len(blockL), 2)
        self.assertEqual([line.split()[0] for line in blockL[0].splitlines()], ["Andrea", "visited", "Italy"])
        self.assertEqual(main(["predict", "--checkpoint", ckptPath, "--input", self.__conllPath, "--out-dir", self.__outDir]), 0)
        tokL, goldL, predL = nE.readPredictions(os.path.join(self.__outDir, "predictions.txt"))
        self.assertEqual([len(tags) for tags in predL], [3, 5, 5])
        self.assertEqual(goldL[0], ["B-LOC", "B-LOC", "O"])
        self.assertEqual(tokL[1][4], "Italy")
        #
        model, extraD = NerCheckpoint().load(ckptPath)
        self.assertIn(extraD["best_epoch"], (1, 2))
        lineL = inspectMemory(model, "Italy")
        self.assertEqual(lineL[0], "Italy: [1, 7, 11]")
        self.assertEqual(len(lineL), 4)
        self.assertEqual(lineL[2], "7\tinitialized\tRohrabacher had recently visited Italy")
        self.assertEqual(inspectMemory(model, "Madrid"), ["no slots for 'Madrid'"])
        self.assertEqual(main(["inspect-memory", "--checkpoint", ckptPath, "--word", "italy", "--out-dir", self.__outDir]), 0)
        self.assertEqual(main(["inspect-memory", "--checkpoint", ckptPath, "--out-dir", self.__outDir]), 1)

    def testDocumentOff(self):
        outDir = os.path.join(self.__outDir, "document-off")
        self.assertEqual(self.__train(outDir, "--document", "off", "--sentence", "mean", "--epochs", "1"), 0)
        model, _ = NerCheckpoint().load(os.path.join(outDir, "model.ckpt"))
        self.assertEqual(model.config.sentence, "mean")
        self.assertEqual(inspectMemory(model, "Italy"), ["model has no document memory"])

    def testAblate(self):
        """Test case:  ablation outputs on a tiny corpus"""
        outDir = os.path.join(self.__outDir, "ablate")
        argv = ["ablate", "--config", self.__configPath, "--train", self.__conllPath, "--dev", self.__conllPath, "--test", self.__conllPath]
        argv += ["--embeddings", self.__embPath, "--out-dir", outDir, "--epochs", "1", "--grid", "components,memory", "--grid-max-memory", "1,2"]
        self.assertEqual(main(argv), 0)
        rowL = self.__mU.doImport(os.path.join(outDir, "ablation.csv"), fmt="csv")
        self.assertEqual([row["name"] for row in rowL], ["base", "+sentence", "+document", "+both", "max-memory-1", "max-memory-2"])
        memL = self.__mU.doImport(os.path.join(outDir, "memory-size.csv"), fmt="csv")
        self.assertEqual([row["t_max"] for row in memL], ["1", "2"])
        with open(os.path.join(outDir, "ablation.txt"), "r", encoding="utf-8") as ifh:
            self.assertEqual(len(ifh.read().splitlines()), 7)

    def testSynthesize(self):
        outDir = os.path.join(self.__outDir, "synthetic")
        self.assertEqual(main(["synthesize", "--out-dir", outDir, "--seed", "3", "--num-train", "10", "--num-dev", "2", "--num-test", "2"]), 0)
        for fileName in ("train.txt", "dev.txt", "test.txt", "embeddings.txt", "ambiguous.txt", "run-manifest-synthesize.json"):
            self.assertTrue(os.access(os.path.join(outDir, fileName), os.R_OK), fileName)
        manifestD = self.__mU.doImport(os.path.join(outDir, "run-manifest-synthesize.json"), fmt="json")
        pathL = [manifestD["artifacts"][ky] for ky in ("train", "dev", "test", "embeddings", "ambiguous")]
        self.assertEqual(manifestD["artifactHash"], hashArtifacts(pathL))

    def testExitCodes(self):
        """Test case:  configuration errors exit 1, data and checkpoint errors exit 2"""
        outDir = os.path.join(self.__outDir, "errors")
        self.assertEqual(main(["train", "--train", self.__conllPath, "--embeddings", os.path.join(self.__dataPath, "no-such-vectors.txt"), "--out-dir", outDir]), 1)
        self.assertEqual(main(["train", "--embeddings", self.__embPath, "--out-dir", outDir]), 2)
        self.assertEqual(main(["train", "--train", os.path.join(self.__dataPath, "no-such-corpus.conll"), "--embeddings", self.__embPath, "--out-dir", outDir]), 2)
        self.assertEqual(main(["train", "--config", self.__configPath, "--lambda", "1.5", "--train", self.__conllPath, "--embeddings", self.__embPath]), 1)
        self.assertEqual(main(["eval", "--checkpoint", os.path.join(outDir, "no-such-model.ckpt"), "--test", self.__conllPath, "--out-dir", outDir]), 2)
        self.assertEqual(main(["eval", "--out-dir", outDir]), 2)

    def testAblationTable(self):
        rowL = [{"name": "base", "precision": 90.0, "recall": 80.0, "f1": 84.71, "err": 0.0, "time_ratio": 1.0}]
        lineL = ablationTable(rowL)
        self.assertEqual(len(lineL), 2)
        self.assertTrue(lineL[1].startswith("base "))
        self.assertIn("84.71", lineL[1])


def suiteNerExecTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(NerExecTests("testTrainEvalPredict"))
    suiteSelect.addTest(NerExecTests("testSynthesize"))
    suiteSelect.addTest(NerExecTests("testExitCodes"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteNerExecTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
