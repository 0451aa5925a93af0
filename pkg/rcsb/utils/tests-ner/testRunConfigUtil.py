##
#
# File:    testRunConfigUtil.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for run-config parsing, key aliases and override precedence.
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
from rcsb.utils.ner.NerErrors import ConfigurationError
from rcsb.utils.ner.NerTrainer import TrainConfig
from rcsb.utils.ner.RunConfigUtil import RunConfigUtil

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


class RunConfigUtilTests(unittest.TestCase):
    def setUp(self):
        self.__dataPath = os.path.join(HERE, "test-data")
        self.__workPath = os.path.join(HERE, "test-output")
        if not os.path.isdir(self.__workPath):
            os.makedirs(self.__workPath)
        self.__rcU = RunConfigUtil(workPath=self.__workPath)
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def testReadConfig(self):
        """Test case:  file values and aliases over the defaults"""
        config = self.__rcU.readConfig(os.path.join(self.__dataPath, "run-config.txt"))
        self.assertEqual(config.epochs, 2)
        self.assertEqual(config.hidden_main, 8)
        self.assertEqual(config.kernel_sizes, (3,))
        self.assertEqual(config.fusion_lambda, 0.3)
        self.assertEqual(config.t_max, 500)
        self.assertEqual(config.attn_kernel, 3)
        self.assertIs(config.exclude_self, False)
        self.assertEqual(config.lr0, 0.015)
        self.assertEqual(self.__rcU.readConfig(None), TrainConfig())

    def testOverrides(self):
        """Test case:  overrides win over the file and None leaves values alone"""
        overD = {"lambda": 0.7, "epochs": None, "compat": "dot", "max_memory": "50", "exclude_self": "true"}
        config = self.__rcU.readConfig(os.path.join(self.__dataPath, "run-config.txt"), overrides=overD)
        self.assertEqual(config.fusion_lambda, 0.7)
        self.assertEqual(config.epochs, 2)
        self.assertEqual(config.compat, "dot")
        self.assertEqual(config.t_max, 50)
        self.assertIs(config.exclude_self, True)
        base = TrainConfig().replace(seed=9)
        self.assertEqual(self.__rcU.readConfig(None, base=base).seed, 9)

    def testParseLines(self):
        rD = self.__rcU.parseLines(["# comment", "", "T_max = 20", "kernel_sizes = 3, 5", "dtype = float64", "aux_label_loss = yes"])
        self.assertEqual(rD, {"t_max": 20, "kernel_sizes": (3, 5), "dtype": "float64", "aux_label_loss": True})

    def testErrors(self):
        """Test case:  unknown keys, bad values and invalid results are configuration errors"""
        for lineL in (["learning_rate = 0.1"], ["epochs = many"], ["exclude_self = maybe"], ["epochs 10"]):
            with self.assertRaises(ConfigurationError):
                self.__rcU.parseLines(lineL)
        with self.assertRaises(ConfigurationError):
            self.__rcU.readConfig(None, overrides={"lambda": 1.5})
        with self.assertRaises(ConfigurationError):
            self.__rcU.readConfig(os.path.join(self.__dataPath, "no-such-config.txt"))

    def testWriteConfig(self):
        config = TrainConfig().replace(kernel_sizes=(3, 5, 7), exclude_self=True, epochs=4)
        filePath = os.path.join(self.__workPath, "run-config-test.txt")
        self.assertTrue(self.__rcU.writeConfig(config, filePath))
        self.assertIn("kernel_sizes = 3,5,7", self.__rcU.configLines(config))
        self.assertEqual(self.__rcU.readConfig(filePath), config)


def suiteRunConfigTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(RunConfigUtilTests("testReadConfig"))
    suiteSelect.addTest(RunConfigUtilTests("testOverrides"))
    suiteSelect.addTest(RunConfigUtilTests("testWriteConfig"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteRunConfigTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
