##
#
# File:    testNerCheckpoint.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for the checkpoint container: reload fidelity, version gate and corruption checks.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import json
import logging
import os
import platform
import resource
import struct
import time
import unittest

import numpy as np

from rcsb.utils.ner import __version__
from rcsb.utils.ner.ContextNerModel import ContextNerModel
from rcsb.utils.ner.NerCheckpoint import MAGIC, NerCheckpoint
from rcsb.utils.ner.NerDataset import NerDataset
from rcsb.utils.ner.NerErrors import CheckpointCorruptionError, CheckpointError, CheckpointVersionError
from rcsb.utils.ner.NerTrainer import TrainConfig

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


class NerCheckpointTests(unittest.TestCase):
    def setUp(self):
        self.__dataPath = os.path.join(HERE, "test-data")
        self.__workPath = os.path.join(HERE, "test-output")
        config = TrainConfig().replace(
            hidden_main=8, hidden_sent=6, char_dim=4, init_filters=4, block_filters=2, kernel_sizes=(3,), intnet_layers=3, samples_per_type=5, dropout=0.0
        )
        ds, config = NerDataset.load(config, os.path.join(self.__dataPath, "italy.conll"), embeddingPath=os.path.join(self.__dataPath, "mini-glove.txt"))
        self.__corpus = ds.train
        self.__model = ContextNerModel.build(config, ds.train.toScheme(config.tag_scheme), ds.embTable, ds.wordVocab, ds.trainVocab, ds.charVocab)
        for sN, sent in enumerate(ds.train.sentences):
            _, diagD = self.__model.forward(sent)
            self.__model.writeMemory(sN, diagD["wordIds"], diagD["hidden"])
        self.__ckpt = NerCheckpoint(workPath=self.__workPath)
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def testSaveLoad(self):
        """Test case:  a reloaded model predicts identically"""
        filePath = os.path.join(self.__workPath, "model-test.ckpt")
        ok = self.__ckpt.save(self.__model, filePath, extra={"best_epoch": 1})
        self.assertTrue(ok)
        model, extraD = self.__ckpt.load(filePath)
        self.assertEqual(extraD, {"best_epoch": 1})
        self.assertEqual(model.config, self.__model.config)
        self.assertEqual(model.tags, self.__model.tags)
        self.assertEqual(model.labels, self.__model.labels)
        self.assertEqual(model.wordVocab, self.__model.wordVocab)
        self.assertEqual(model.registry.names(), self.__model.registry.names())
        for name, arr in self.__model.registry.items():
            self.assertEqual(model.registry[name].dtype, np.float32)
            self.assertTrue(np.array_equal(model.registry[name], arr))
        self.assertEqual(model.store.numInitialized(), 13)
        self.assertEqual(model.store.sentences, self.__model.store.sentences)
        for sent in self.__corpus.sentences:
            emA, _ = self.__model.forward(sent, rng=self.__model.evalRng())
            emB, _ = model.forward(sent, rng=model.evalRng())
            self.assertTrue(np.array_equal(emA, emB))
        self.assertEqual(model.predictCorpus(self.__corpus), self.__model.predictCorpus(self.__corpus))

    def testStableBytes(self):
        """Test case:  save, load and save again gives identical bytes"""
        data = self.__ckpt.encode(self.__model, extra={"best_dev_f1": 12.5})
        self.assertTrue(data.startswith(MAGIC))
        model, extraD = self.__ckpt.decode(data)
        self.assertEqual(self.__ckpt.encode(model, extra=extraD), data)

    def testVersionGate(self):
        data = self.__ckpt.encode(self.__model)
        start = len(MAGIC) + 4
        (mLen,) = struct.unpack("<I", data[len(MAGIC) : start])
        manifest = json.loads(data[start : start + mLen].decode("utf-8"))
        self.assertEqual(manifest["format_version"], 1)
        manifest["format_version"] = 99
        mBytes = json.dumps(manifest, sort_keys=True).encode("utf-8")
        bumped = MAGIC + struct.pack("<I", len(mBytes)) + mBytes + data[start + mLen :]
        with self.assertRaises(CheckpointVersionError):
            self.__ckpt.decode(bumped)

    def testCorruption(self):
        """Test case:  truncation, bad magic and flipped payload bytes are detected"""
        data = self.__ckpt.encode(self.__model)
        for bad in (data[:6], data[:40], data[:-10], b"NOTACKPT" + data[8:], data[:-1] + bytes([data[-1] ^ 0xFF])):
            with self.assertRaises(CheckpointCorruptionError):
                self.__ckpt.decode(bad)
        with self.assertRaises(CheckpointError):
            self.__ckpt.load(os.path.join(self.__workPath, "no-such-model.ckpt"))


def suiteNerCheckpointTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(NerCheckpointTests("testSaveLoad"))
    suiteSelect.addTest(NerCheckpointTests("testStableBytes"))
    suiteSelect.addTest(NerCheckpointTests("testCorruption"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteNerCheckpointTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
