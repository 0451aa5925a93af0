##
#
# File:    testContextNerModel.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for the assembled tagger: forward pass, memory fusion switches and decoding.
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
from rcsb.utils.ner.ConllCorpus import Sentence, Token
from rcsb.utils.ner.GradCheck import gradCheck
from rcsb.utils.ner.ContextNerModel import ContextNerModel, buildTags
from rcsb.utils.ner.NerDataset import NerDataset
from rcsb.utils.ner.NerErrors import DataError
from rcsb.utils.ner.NerTrainer import TrainConfig
from rcsb.utils.ner.TagSchemeUtils import TagSchemeUtils

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


class ContextNerModelTests(unittest.TestCase):
    def setUp(self):
        self.__dataPath = os.path.join(HERE, "test-data")
        config = TrainConfig().replace(
            hidden_main=8,
            hidden_sent=6,
            char_dim=4,
            init_filters=4,
            block_filters=2,
            kernel_sizes=(3,),
            intnet_layers=3,
            samples_per_type=5,
            dropout=0.0,
            dtype="float64",
            epochs=1,
        )
        self.__dataset, self.__config = NerDataset.load(
            config, os.path.join(self.__dataPath, "italy.conll"), embeddingPath=os.path.join(self.__dataPath, "mini-glove.txt")
        )
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def __build(self, **kwargs):
        ds = self.__dataset
        config = self.__config.replace(**kwargs)
        return ContextNerModel.build(config, ds.train.toScheme(config.tag_scheme), ds.embTable, ds.wordVocab, ds.trainVocab, ds.charVocab)

    def __writeAll(self, model):
        for sN, sent in enumerate(self.__dataset.train.sentences):
            _, diagD = model.forward(sent)
            model.writeMemory(sN, diagD["wordIds"], diagD["hidden"])

    def testBuildTags(self):
        self.assertEqual(buildTags(["LOC", "PER"], scheme="BIO"), ["O", "B-LOC", "B-PER", "I-LOC", "I-PER"])
        tags = buildTags(["LOC", "PER"])
        self.assertEqual(len(tags), 9)
        self.assertEqual(tags[0], "O")
        self.assertIn("S-PER", tags)

    def testForward(self):
        """Test case:  emission shapes and model wiring"""
        self.assertEqual(self.__config.word_dim, 4)
        model = self.__build()
        self.assertEqual(model.labels, ["O", "LOC", "PER"])
        self.assertEqual(len(model.tags), 9)
        self.assertTrue(model.memoryEnabled)
        self.assertEqual(model.store.numSlots, 13)
        sent = self.__dataset.train.sentences[1]
        emissions, diagD = model.forward(sent)
        self.assertEqual(emissions.shape, (5, 9))
        self.assertTrue(np.all(np.isfinite(emissions)))
        self.assertEqual(diagD["hidden"].shape, (5, 8))
        self.assertEqual(diagD["sentence"].shape, (6,))
        self.assertAlmostEqual(float(np.sum(diagD["beta"])), 1.0)
        self.assertEqual(diagD["hits"], 0)
        labelEmb = model.labelEmbeddings()
        self.assertEqual(labelEmb.labels, ["O", "LOC", "PER"])
        self.assertEqual(labelEmb.matrix.shape, (3, 4))
        with self.assertRaises(DataError):
            model.forward(Sentence(tokens=[]))

    def testMemoryHits(self):
        """Test case:  written memory is read back for training words"""
        model = self.__build()
        self.__writeAll(model)
        self.assertEqual(model.store.numInitialized(), 13)
        _, diagD = model.forward(self.__dataset.train.sentences[0])
        self.assertEqual(diagD["hits"], 3)
        self.assertEqual(diagD["subsets"][1].tolist(), [1, 7, 11])
        self.assertAlmostEqual(float(np.sum(diagD["alphas"][1])), 1.0)

    def testEvalDeterminism(self):
        """Test case:  repeated inference gives identical outputs"""
        model = self.__build()
        self.__writeAll(model)
        for sent in self.__dataset.train.sentences:
            emA, _ = model.forward(sent, rng=model.evalRng())
            emB, _ = model.forward(sent, rng=model.evalRng())
            self.assertTrue(np.array_equal(emA, emB))
            self.assertEqual(model.decode(sent), model.decode(sent))

    def testFusionOffEquivalence(self):
        """Test case:  lambda = 1 matches the model without document memory"""
        modelA = self.__build(fusion_lambda=1.0)
        modelB = self.__build(document="off")
        self.assertIsNotNone(modelA.store)
        self.assertIsNone(modelA.memory)
        self.assertIsNone(modelB.store)
        self.__writeAll(modelA)
        for sent in self.__dataset.train.sentences:
            emA, _ = modelA.forward(sent)
            emB, _ = modelB.forward(sent)
            self.assertTrue(np.array_equal(emA, emB))

    def testMeanMode(self):
        model = self.__build(sentence="mean")
        self.assertIsNone(model.labelEmbeddings())
        _, diagD = model.forward(self.__dataset.train.sentences[2])
        self.assertTrue(np.allclose(diagD["beta"], 0.2))
        self.assertNotIn("conf", diagD)
        model = self.__build(sentence="off", document="off")
        emissions, diagD = model.forward(self.__dataset.train.sentences[2])
        self.assertEqual(emissions.shape, (5, 9))
        self.assertNotIn("sentence", diagD)

    def testPredict(self):
        """Test case:  predictions are valid BIO sequences"""
        tsU = TagSchemeUtils()
        model = self.__build()
        self.__writeAll(model)
        predL = model.predictCorpus(self.__dataset.train)
        self.assertEqual([len(tags) for tags in predL], [3, 5, 5])
        for tags in predL:
            self.assertTrue(tsU.validateTags(tags, scheme="BIO"))
        unseen = Sentence(tokens=[Token("Madrid", "O")])
        self.assertEqual(len(model.predict(unseen)), 1)

    def testGradient(self):
        """Test case:  full model gradients with memory and label attention"""
        model = self.__build()
        self.__writeAll(model)
        sent = self.__dataset.train.toScheme("BIOES").sentences[2]

        def lossFn(pD):
            nll, _ = model.loss(sent, pD, training=False)
            return nll

        smoothL = [name for name in model.registry.names() if not name.startswith("char.")]
        charL = [name for name in model.registry.names() if name.startswith("char.")]
        self.assertLess(gradCheck(lossFn, model.registry, mode="element", names=smoothL, floor=1.0e-6), 1.0e-4)
        # relu and max pooling kinks in the character encoder
        self.assertLess(gradCheck(lossFn, model.registry, names=charL), 1.0e-4)

    def testBatchConsistency(self):
        """Test case:  padded batches reproduce the single sentence emissions, losses and predictions"""
        model = self.__build()
        self.__writeAll(model)
        sentL = self.__dataset.train.toScheme("BIOES").sentences
        emissions, mask, diagL = model.forwardBatch(sentL, rng=[model.evalRng() for _ in sentL])
        self.assertEqual(emissions.shape, (3, 5, 9))
        self.assertEqual(mask.sum(axis=1).tolist(), [3.0, 5.0, 5.0])
        for bN, sent in enumerate(sentL):
            single, diagD = model.forward(sent, rng=model.evalRng())
            self.assertTrue(np.allclose(emissions[bN, : len(sent)], single, atol=1.0e-10))
            self.assertEqual(diagL[bN]["hits"], diagD["hits"])
            self.assertTrue(np.allclose(diagL[bN]["beta"], diagD["beta"], atol=1.0e-12))
            self.assertTrue(np.allclose(diagL[bN]["hidden"], diagD["hidden"], atol=1.0e-10))
        params = model.registry.asDict()
        total, _ = model.lossBatch(sentL, params, training=False)
        expected = sum(float(model.loss(sent, params, training=False)[0]) for sent in sentL)
        self.assertLess(abs(float(total) - expected), 1.0e-8)
        self.assertEqual(model.predictCorpus(self.__dataset.train, batchSize=1), model.predictCorpus(self.__dataset.train))
        with self.assertRaises(DataError):
            model.forwardBatch([])


def suiteContextNerModelTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(ContextNerModelTests("testForward"))
    suiteSelect.addTest(ContextNerModelTests("testFusionOffEquivalence"))
    suiteSelect.addTest(ContextNerModelTests("testPredict"))
    suiteSelect.addTest(ContextNerModelTests("testBatchConsistency"))
    suiteSelect.addTest(ContextNerModelTests("testGradient"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteContextNerModelTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
