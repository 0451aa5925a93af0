##
#
# File:    testNerTrainer.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for the training configuration, SGD utilities and the epoch loop.
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
from rcsb.utils.ner.NerDataset import NerDataset
from rcsb.utils.ner.NerErrors import ConfigurationError, NumericError
from rcsb.utils.ner.NerTrainer import NerTrainer, TrainConfig, clipGradients, learningRate, sgdStep
from rcsb.utils.ner.NnCore import ParamRegistry
from rcsb.utils.ner.SyntheticCorpus import SyntheticCorpus

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


class NerTrainerTests(unittest.TestCase):
    def setUp(self):
        self.__dataPath = os.path.join(HERE, "test-data")
        self.__config = TrainConfig().replace(
            batch_size=2,
            hidden_main=8,
            hidden_sent=6,
            char_dim=4,
            init_filters=4,
            block_filters=2,
            kernel_sizes=(3,),
            intnet_layers=3,
            samples_per_type=5,
            dropout=0.0,
            epochs=1,
        )
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def __train(self, config):
        ds, config = NerDataset.load(config, os.path.join(self.__dataPath, "italy.conll"), embeddingPath=os.path.join(self.__dataPath, "mini-glove.txt"))
        trainer = NerTrainer(config, timeFn=lambda: 0.0)
        return trainer.train(ds.train, ds.train, ds.embTable, ds.wordVocab, ds.trainVocab, ds.charVocab)

    def testConfig(self):
        """Test case:  defaults, validation and dictionary round trip"""
        config = TrainConfig()
        self.assertTrue(config.validate())
        self.assertEqual((config.batch_size, config.lr0, config.lr_decay, config.fusion_lambda, config.t_max), (10, 0.015, 0.05, 0.3, 500))
        self.assertEqual(TrainConfig.fromDict(config.toDict()), config)
        self.assertEqual(config.replace(epochs=3).epochs, 3)
        self.assertEqual(config.epochs, 100)
        for kwD in ({"fusion_lambda": 1.5}, {"t_max": 0}, {"hidden_main": 7}, {"attn_kernel": 4}, {"compat": "general"}, {"dropout": 1.0}, {"lr_decay": 0.0}, {"lr_decay": -0.1}):
            with self.assertRaises(ConfigurationError):
                config.replace(**kwD).validate()
        with self.assertRaises(ConfigurationError):
            TrainConfig.fromDict({"learning_rate": 0.1})

    def testLearningRate(self):
        self.assertAlmostEqual(learningRate(0.015, 0), 0.015)
        self.assertAlmostEqual(learningRate(0.015, 1), 0.01425)
        self.assertAlmostEqual(learningRate(0.015, 2), 0.015 * 0.95 ** 2)
        self.assertAlmostEqual(learningRate(0.015, 2, mode="inverse"), 0.015 / 1.1)
        with self.assertRaises(ConfigurationError):
            learningRate(0.015, 1, mode="cosine")

    def testClipGradients(self):
        gradD = {"a": np.array([3.0, 0.0]), "b": np.array([[4.0]])}
        self.assertAlmostEqual(clipGradients(gradD, 1.0), 5.0)
        self.assertTrue(np.allclose(gradD["a"], [0.6, 0.0]))
        self.assertTrue(np.allclose(gradD["b"], [[0.8]]))
        gradD = {"a": np.array([0.3, 0.4])}
        self.assertAlmostEqual(clipGradients(gradD, 5.0), 0.5)
        self.assertTrue(np.array_equal(gradD["a"], [0.3, 0.4]))

    def testSgdStep(self):
        """Test case:  zero gradients leave parameters unchanged, non-finite ones raise"""
        registry = ParamRegistry(dtype="float64", seed=3)
        registry.addGlorot("w", (3, 2))
        before = registry["w"].copy()
        sgdStep(registry, 0.1)
        self.assertTrue(np.array_equal(registry["w"], before))
        registry.accumulate({"w": np.ones((3, 2))})
        sgdStep(registry, 0.1)
        self.assertTrue(np.allclose(registry["w"], before - 0.1))
        self.assertFalse(np.any(registry.grad("w")))
        grad = np.zeros((3, 2))
        grad[1, 1] = np.nan
        registry.accumulate({"w": grad})
        with self.assertRaises(NumericError) as cm:
            sgdStep(registry, 0.1)
        self.assertEqual(cm.exception.name, "w")

    def testBatches(self):
        ds, config = NerDataset.load(self.__config, os.path.join(self.__dataPath, "italy.conll"), embeddingPath=os.path.join(self.__dataPath, "mini-glove.txt"))
        trainer = NerTrainer(config)
        batchL = trainer.batches(ds.train, np.random.default_rng(1))
        self.assertEqual(sorted(ii for batch in batchL for ii in batch), [0, 1, 2])
        self.assertTrue(all(len(batch) <= 2 for batch in batchL))
        self.assertEqual(batchL, trainer.batches(ds.train, np.random.default_rng(1)))

    def testNoEpochs(self):
        result = self.__train(self.__config.replace(epochs=0))
        self.assertEqual(result.metrics, [])
        self.assertEqual(result.bestEpoch, 0)

    def testTrainOneEpoch(self):
        """Test case:  one epoch initializes every memory slot"""
        result = self.__train(self.__config)
        self.assertEqual(len(result.metrics), 1)
        row = result.metrics[0]
        self.assertEqual(row.epoch, 1)
        self.assertAlmostEqual(row.lr, 0.015)
        self.assertTrue(np.isfinite(row.loss))
        self.assertGreater(row.loss, 0.0)
        self.assertEqual(row.memory_initialized, 13)
        self.assertEqual(result.model.store.numInitialized(), 13)
        self.assertEqual(result.bestEpoch, 1)
        self.assertTrue(0.0 <= row.dev_f1 <= 100.0)

    def testDeterminism(self):
        """Test case:  two runs with the same seed give identical metrics"""
        config = self.__config.replace(epochs=2, dropout=0.5)
        rowA = [row.toDict() for row in self.__train(config).metrics]
        rowB = [row.toDict() for row in self.__train(config).metrics]
        self.assertEqual(len(rowA), 2)
        self.assertEqual(rowA, rowB)
        self.assertAlmostEqual(rowA[1]["lr"], 0.01425)

    def testNoDevKeepsLastEpoch(self):
        """Test case:  without development data the parameters of the last epoch are returned"""
        ds, config = NerDataset.load(self.__config, os.path.join(self.__dataPath, "italy.conll"), embeddingPath=os.path.join(self.__dataPath, "mini-glove.txt"))
        resultA = NerTrainer(config, timeFn=lambda: 0.0).train(ds.train, None, ds.embTable, ds.wordVocab, ds.trainVocab, ds.charVocab)
        resultB = NerTrainer(config.replace(epochs=2), timeFn=lambda: 0.0).train(ds.train, None, ds.embTable, ds.wordVocab, ds.trainVocab, ds.charVocab)
        self.assertEqual(resultA.bestEpoch, 1)
        self.assertEqual(resultB.bestEpoch, 2)
        self.assertEqual(resultB.bestDevF1, 0.0)
        self.assertEqual([row.dev_f1 for row in resultB.metrics], [0.0, 0.0])
        self.assertFalse(np.array_equal(resultA.model.registry["crf.emission.weight"], resultB.model.registry["crf.emission.weight"]))

    def testFusionOffMatchesDocumentOff(self):
        """Test case:  a model trained with lambda 1 tags exactly like one trained without document memory"""
        sC = SyntheticCorpus(seed=2, namesPerType=4, numAmbiguous=4)
        pathD = sC.writeCorpora(os.path.join(HERE, "test-output", "trainer"), sC.generate(numTrain=50, numDev=5, numTest=5), embeddingDim=6)
        ds, config = NerDataset.load(self.__config.replace(batch_size=5, epochs=2, dropout=0.5), pathD["train"], pathD["dev"], pathD["test"], pathD["embeddings"])
        self.assertEqual(len(ds.train), 50)
        resultA = NerTrainer(config.replace(fusion_lambda=1.0), timeFn=lambda: 0.0).train(ds.train, ds.dev, ds.embTable, ds.wordVocab, ds.trainVocab, ds.charVocab)
        resultB = NerTrainer(config.replace(document="off"), timeFn=lambda: 0.0).train(ds.train, ds.dev, ds.embTable, ds.wordVocab, ds.trainVocab, ds.charVocab)
        self.assertIsNone(resultA.model.memory)
        self.assertIsNone(resultB.model.store)
        self.assertEqual(resultA.bestEpoch, resultB.bestEpoch)
        self.assertEqual(resultA.model.predictCorpus(ds.train), resultB.model.predictCorpus(ds.train))
        self.assertEqual(resultA.model.predictCorpus(ds.test), resultB.model.predictCorpus(ds.test))


def suiteNerTrainerTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(NerTrainerTests("testConfig"))
    suiteSelect.addTest(NerTrainerTests("testSgdStep"))
    suiteSelect.addTest(NerTrainerTests("testTrainOneEpoch"))
    suiteSelect.addTest(NerTrainerTests("testDeterminism"))
    suiteSelect.addTest(NerTrainerTests("testNoDevKeepsLastEpoch"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteNerTrainerTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
