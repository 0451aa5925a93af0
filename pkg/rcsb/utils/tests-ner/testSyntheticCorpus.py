##
#
# File:    testSyntheticCorpus.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for the synthetic corpus generator and the end-to-end training checks built on it.

The full-scale checks train for many epochs and run only when NER_ACCEPTANCE_TESTS=1.
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
from rcsb.utils.ner.ConllCorpus import ConllCorpus
from rcsb.utils.ner.EmbeddingUtils import EmbeddingUtils
from rcsb.utils.ner.NerAblationMp import NerAblationMp, ablationGrid
from rcsb.utils.ner.NerDataset import NerDataset
from rcsb.utils.ner.NerErrors import ConfigurationError
from rcsb.utils.ner.NerEval import NerEval
from rcsb.utils.ner.NerTrainer import NerTrainer, TrainConfig
from rcsb.utils.ner.SyntheticCorpus import ENTITY_TYPES, SyntheticCorpus
from rcsb.utils.ner.TagSchemeUtils import TagSchemeUtils

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)

ACCEPTANCE = os.environ.get("NER_ACCEPTANCE_TESTS", "0") == "1"


class SyntheticCorpusTests(unittest.TestCase):
    def setUp(self):
        self.__workPath = os.path.join(HERE, "test-output", "synthetic")
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def testGenerate(self):
        """Test case:  split sizes, valid BIO tags and seeded output"""
        tsU = TagSchemeUtils()
        corporaD = SyntheticCorpus(seed=3, namesPerType=5, numAmbiguous=4).generate(numTrain=40, numDev=10, numTest=10)
        self.assertEqual([len(corporaD[split]) for split in ("train", "dev", "test")], [40, 10, 10])
        for corpus in corporaD.values():
            for sent in corpus.sentences:
                self.assertTrue(tsU.validateTags(sent.tags, scheme="BIO"))
        self.assertTrue(set(tsU.entityTypes(corporaD["train"].tagSequences())) <= set(ENTITY_TYPES))
        again = SyntheticCorpus(seed=3, namesPerType=5, numAmbiguous=4).generate(numTrain=40, numDev=10, numTest=10)
        self.assertEqual(corporaD["test"].tagSequences(), again["test"].tagSequences())
        self.assertEqual([s.surfaces for s in corporaD["train"].sentences], [s.surfaces for s in again["train"].sentences])
        other = SyntheticCorpus(seed=4, namesPerType=5, numAmbiguous=4).generate(numTrain=40, numDev=10, numTest=10)
        self.assertNotEqual([s.surfaces for s in corporaD["train"].sentences], [s.surfaces for s in other["train"].sentences])
        with self.assertRaises(ConfigurationError):
            SyntheticCorpus(namesPerType=0)

    def testAmbiguousForms(self):
        """Test case:  ambiguous forms keep one type everywhere"""
        sC = SyntheticCorpus(seed=5, namesPerType=5, numAmbiguous=8, ambiguousRate=0.5)
        self.assertEqual(len(sC.ambiguousForms), 8)
        self.assertEqual(sorted(sC.ambiguous.values()), sorted(ENTITY_TYPES * 2))
        corporaD = sC.generate(numTrain=60, numDev=20, numTest=20)
        nE = NerEval()
        numSeen = 0
        for corpus in corporaD.values():
            spanL = sC.ambiguousSpans(corpus, corpus.tagSequences())
            for sent, spanS in zip(corpus.sentences, spanL):
                for span in spanS:
                    form = " ".join(sent.surfaces[span.start : span.end + 1])
                    self.assertEqual(span.type, sC.ambiguous[form])
                    numSeen += 1
            self.assertEqual(len(spanL), len(corpus))
        self.assertGreater(numSeen, 0)
        self.assertEqual(nE.restrictSpans(corporaD["dev"], nE.corpusSpans(corporaD["dev"].tagSequences()), set()), [set()] * 20)

    def testWriteCorpora(self):
        """Test case:  written files read back as CoNLL corpora and embeddings"""
        sC = SyntheticCorpus(seed=2, namesPerType=5, numAmbiguous=4)
        corporaD = sC.generate(numTrain=20, numDev=5, numTest=5)
        pathD = sC.writeCorpora(self.__workPath, corporaD, embeddingDim=8)
        for ky in ("train", "dev", "test", "embeddings", "ambiguous"):
            self.assertTrue(os.access(pathD[ky], os.R_OK))
        train = ConllCorpus().readConll(pathD["train"])
        self.assertEqual(train.tagSequences(), corporaD["train"].tagSequences())
        self.assertEqual(EmbeddingUtils().embeddingDim(pathD["embeddings"]), 8)
        with open(pathD["ambiguous"], "r", encoding="utf-8") as ifh:
            self.assertEqual(len(ifh.read().splitlines()), 4)

    def testReducedTraining(self):
        """Test case:  a short run on a small generated corpus"""
        sC = SyntheticCorpus(seed=1, namesPerType=4, numAmbiguous=4)
        pathD = sC.writeCorpora(self.__workPath, sC.generate(numTrain=16, numDev=4, numTest=4), embeddingDim=6)
        config = TrainConfig().replace(
            batch_size=4, hidden_main=8, hidden_sent=6, char_dim=4, init_filters=4, block_filters=2, kernel_sizes=(3,), intnet_layers=3, samples_per_type=5, epochs=2
        )
        ds, config = NerDataset.load(config, pathD["train"], pathD["dev"], pathD["test"], pathD["embeddings"])
        self.assertEqual(config.word_dim, 6)
        result = NerTrainer(config).train(ds.train, ds.dev, ds.embTable, ds.wordVocab, ds.trainVocab, ds.charVocab)
        self.assertEqual(len(result.metrics), 2)
        self.assertTrue(all(row.loss > 0.0 for row in result.metrics))
        self.assertEqual(result.model.store.numInitialized(), ds.train.tokenCount())
        self.assertLess(result.metrics[1].lr, result.metrics[0].lr)

    @unittest.skipUnless(ACCEPTANCE, "set NER_ACCEPTANCE_TESTS=1 to run full synthetic training")
    def testAcceptance(self):
        """Test case:  full model quality, ambiguous-form gain, memory overhead and determinism"""
        sC = SyntheticCorpus(seed=1)
        pathD = sC.writeCorpora(self.__workPath, sC.generate(numTrain=2000, numDev=200, numTest=200), embeddingDim=50)
        config = TrainConfig().replace(
            hidden_main=32, hidden_sent=16, char_dim=8, init_filters=8, block_filters=4, kernel_sizes=(3,), intnet_layers=3, samples_per_type=50, dropout=0.2, epochs=30
        )
        ds, config = NerDataset.load(config, pathD["train"], pathD["dev"], pathD["test"], pathD["embeddings"])
        rowL = NerAblationMp().runGrid(ablationGrid(kinds=("components",)), config, dataset=ds, forms=sC.ambiguousWords())
        rowD = {row["name"]: row for row in rowL}
        logger.info("Acceptance rows %r", rowL)
        self.assertGreaterEqual(rowD["+both"]["f1"], 95.0)
        self.assertGreaterEqual(rowD["+both"]["ambiguous_f1"] - rowD["base"]["ambiguous_f1"], 1.0)
        self.assertLessEqual(rowD["+document"]["time_ratio"], 1.5)
        self.assertLess(rowD["+both"]["train_seconds"], 300.0)
        #
        short = config.replace(epochs=3)
        rowA = [row.toDict() for row in NerTrainer(short, timeFn=lambda: 0.0).train(ds.train, ds.dev, ds.embTable, ds.wordVocab, ds.trainVocab, ds.charVocab).metrics]
        rowB = [row.toDict() for row in NerTrainer(short, timeFn=lambda: 0.0).train(ds.train, ds.dev, ds.embTable, ds.wordVocab, ds.trainVocab, ds.charVocab).metrics]
        self.assertEqual(rowA, rowB)


def suiteSyntheticTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(SyntheticCorpusTests("testGenerate"))
    suiteSelect.addTest(SyntheticCorpusTests("testWriteCorpora"))
    suiteSelect.addTest(SyntheticCorpusTests("testReducedTraining"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteSyntheticTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
