##
#
# File:    testNerAblationMp.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for ablation grid construction and grid runs (sequential and multiprocess).
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
from rcsb.utils.ner.NerAblationMp import COMPONENT_POINTS, STRATEGY_POINTS, NerAblationMp, ablationGrid
from rcsb.utils.ner.NerDataset import NerDataset
from rcsb.utils.ner.NerTrainer import TrainConfig
from rcsb.utils.ner.SyntheticCorpus import SyntheticCorpus

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


class NerAblationMpTests(unittest.TestCase):
    def setUp(self):
        self.__workPath = os.path.join(HERE, "test-output", "ablation")
        self.__synth = SyntheticCorpus(seed=6, namesPerType=4, numAmbiguous=4)
        self.__pathD = self.__synth.writeCorpora(self.__workPath, self.__synth.generate(numTrain=8, numDev=3, numTest=3), embeddingDim=6)
        self.__config = TrainConfig().replace(
            batch_size=4, hidden_main=8, hidden_sent=6, char_dim=4, init_filters=4, block_filters=2, kernel_sizes=(3,), intnet_layers=3, samples_per_type=5, epochs=1
        )
        self.__grid = ablationGrid(kinds=("components",))
        for name in ("+sentence", "+both"):
            del self.__grid[name]
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def testGrid(self):
        """Test case:  grid point names, order and overrides"""
        gridD = ablationGrid()
        self.assertEqual(list(gridD)[:4], ["base", "+sentence", "+document", "+both"])
        self.assertEqual(len(gridD), len(COMPONENT_POINTS) + len(STRATEGY_POINTS))
        self.assertEqual(gridD["document-scaled_dot"]["compat"], "scaled_dot")
        gridD = ablationGrid(kinds=("components", "memory"), maxMemoryList=[10, 50], lambdaList=[0.5])
        self.assertEqual(list(gridD)[4:], ["lambda-0.5", "max-memory-10", "max-memory-50"])
        self.assertEqual(gridD["max-memory-50"]["t_max"], 50)
        self.assertEqual(gridD["lambda-0.5"]["fusion_lambda"], 0.5)
        self.assertEqual(len(ablationGrid(kinds=("memory",))), 8)

    def testAddRatios(self):
        rowL = [
            {"name": "base", "document": "off", "f1": 90.0, "epoch_seconds": 2.0},
            {"name": "+document", "document": "on", "f1": 92.0, "epoch_seconds": 2.5},
        ]
        rowL = NerAblationMp().addRatios(rowL)
        self.assertEqual([row["err"] for row in rowL], [0.0, 20.0])
        self.assertEqual([row["time_ratio"] for row in rowL], [1.0, 1.25])
        self.assertEqual(NerAblationMp().addRatios([]), [])

    def testSequentialGrid(self):
        """Test case:  in-process grid run returns one row per point"""
        ds, config = NerDataset.load(self.__config, self.__pathD["train"], self.__pathD["dev"], self.__pathD["test"], self.__pathD["embeddings"])
        rowL = NerAblationMp().runGrid(self.__grid, config, dataset=ds, forms=self.__synth.ambiguousWords())
        self.assertEqual([row["name"] for row in rowL], ["base", "+document"])
        self.assertEqual(rowL[0]["err"], 0.0)
        self.assertEqual(rowL[1]["document"], "on")
        for row in rowL:
            self.assertTrue(0.0 <= row["f1"] <= 100.0)
            self.assertIn("ambiguous_f1", row)
            self.assertIn("time_ratio", row)
            self.assertEqual(row["best_epoch"], 1)

    def testMultiProcGrid(self):
        """Test case:  worker processes load the data themselves"""
        paths = {"trainPath": self.__pathD["train"], "devPath": self.__pathD["dev"], "testPath": self.__pathD["test"], "embeddingPath": self.__pathD["embeddings"]}
        rowL = NerAblationMp().runGrid(self.__grid, self.__config, paths=paths, numProc=2)
        self.assertEqual([row["name"] for row in rowL], ["base", "+document"])
        self.assertNotIn("ambiguous_f1", rowL[0])


def suiteNerAblationTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(NerAblationMpTests("testGrid"))
    suiteSelect.addTest(NerAblationMpTests("testSequentialGrid"))
    suiteSelect.addTest(NerAblationMpTests("testMultiProcGrid"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteNerAblationTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
