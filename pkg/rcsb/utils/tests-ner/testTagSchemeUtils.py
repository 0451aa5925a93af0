##
#
# File:    testTagSchemeUtils.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Test cases for BIO/BIOES validation, span extraction and scheme conversion.
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
from rcsb.utils.ner.NerErrors import ConfigurationError, TagSchemeError
from rcsb.utils.ner.TagSchemeUtils import TagSchemeUtils, splitTag

HERE = os.path.abspath(os.path.dirname(__file__))
TOPDIR = os.path.dirname(os.path.dirname(os.path.dirname(HERE)))

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()
logger.setLevel(logging.INFO)


def randomBioSequence(rng, maxLen=12, types=("PER", "LOC", "ORG", "MISC")):
    """Random valid BIO sequence built from non-overlapping spans."""
    num = int(rng.integers(1, maxLen + 1))
    tags = []
    while len(tags) < num:
        if rng.random() < 0.5:
            tags.append("O")
            continue
        tp = types[int(rng.integers(0, len(types)))]
        width = int(rng.integers(1, 4))
        tags.append("B-" + tp)
        tags.extend(["I-" + tp] * (width - 1))
    return tags[:num]


class TagSchemeUtilsTests(unittest.TestCase):
    def setUp(self):
        self.__tsU = TagSchemeUtils()
        self.__startTime = time.time()
        logger.info("Starting %s (%s) at %s", self.id(), __version__, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))

    def tearDown(self):
        unitS = "MB" if platform.system() == "Darwin" else "GB"
        rusageMax = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum resident memory size %.4f %s", rusageMax / 10 ** 6, unitS)
        endTime = time.time()
        logger.info("Completed %s at %s (%.4f seconds)", self.id(), time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - self.__startTime)

    def testSplitTag(self):
        self.assertEqual(splitTag("B-PER"), ("B", "PER"))
        self.assertEqual(splitTag("O"), ("O", None))
        self.assertEqual(splitTag("I-B-X"), ("I", "B-X"))
        self.assertEqual(splitTag("junk"), (None, None))

    def testConvertSimple(self):
        """Test case:  single and multi-token entities BIO -> BIOES"""
        self.assertEqual(self.__tsU.convertTags(["B-LOC"], "BIO", "BIOES"), ["S-LOC"])
        self.assertEqual(self.__tsU.convertTags(["B-PER", "I-PER", "I-PER"], "BIO", "BIOES"), ["B-PER", "I-PER", "E-PER"])
        self.assertEqual(self.__tsU.convertTags(["B-PER", "B-PER", "O"], "BIO", "BIOES"), ["S-PER", "S-PER", "O"])
        self.assertEqual(self.__tsU.convertTags(["S-LOC", "O", "B-ORG", "E-ORG"], "BIOES", "BIO"), ["B-LOC", "O", "B-ORG", "I-ORG"])

    def testValidation(self):
        """Test case:  invalid sequences name the first offending index"""
        self.assertTrue(self.__tsU.validateTags(["O", "B-PER", "I-PER"], scheme="BIO"))
        with self.assertRaises(TagSchemeError) as cm:
            self.__tsU.validateTags(["O", "O", "I-PER"], scheme="BIO")
        self.assertEqual(cm.exception.index, 2)
        with self.assertRaises(TagSchemeError) as cm:
            self.__tsU.validateTags(["B-PER", "I-LOC"], scheme="BIO")
        self.assertEqual(cm.exception.index, 1)
        with self.assertRaises(TagSchemeError) as cm:
            self.__tsU.validateTags(["B-PER", "O"], scheme="BIOES")
        self.assertEqual(cm.exception.index, 1)
        with self.assertRaises(TagSchemeError) as cm:
            self.__tsU.validateTags(["O", "B-LOC", "I-LOC"], scheme="BIOES")
        self.assertEqual(cm.exception.index, 2)
        with self.assertRaises(TagSchemeError):
            self.__tsU.validateTags(["S-LOC"], scheme="BIO")
        with self.assertRaises(TagSchemeError):
            self.__tsU.convertTags(["I-LOC"], "BIO", "BIOES")
        with self.assertRaises(ConfigurationError):
            self.__tsU.checkScheme("IOB1")

    def testRoundTrip(self):
        """Test case:  BIO -> BIOES -> BIO identity with preserved spans"""
        rng = np.random.default_rng(11)
        for _ in range(10000):
            tags = randomBioSequence(rng)
            bioes = self.__tsU.convertTags(tags, "BIO", "BIOES")
            self.assertTrue(self.__tsU.validateTags(bioes, scheme="BIOES"))
            self.assertEqual(self.__tsU.getSpans(bioes, scheme="BIOES"), self.__tsU.getSpans(tags, scheme="BIO"))
            self.assertEqual(self.__tsU.convertTags(bioes, "BIOES", "BIO"), tags)

    def testRepairSpans(self):
        """Test case:  lenient span extraction for arbitrary sequences"""
        self.assertEqual(self.__tsU.repairSpans(["O", "I-ORG", "I-ORG"]), [("ORG", 1, 2)])
        self.assertEqual(self.__tsU.repairSpans(["B-PER", "I-LOC"]), [("PER", 0, 0), ("LOC", 1, 1)])
        self.assertEqual(self.__tsU.repairSpans(["E-PER", "S-LOC", "I-LOC", "E-LOC"]), [("PER", 0, 0), ("LOC", 1, 1), ("LOC", 2, 3)])
        self.assertEqual(self.__tsU.repairSpans(["B-PER", "junk", "I-PER"]), [("PER", 0, 0), ("PER", 2, 2)])
        self.assertEqual(self.__tsU.repairSpans([]), [])

    def testTagSet(self):
        tagL = self.__tsU.buildTagSet([["B-PER", "O"], ["S-LOC", "E-PER"]])
        self.assertEqual(tagL, ["O", "B-PER", "E-PER", "S-LOC"])
        self.assertEqual(self.__tsU.entityTypes([["B-PER", "O"], ["S-LOC"]]), ["LOC", "PER"])


def suiteTagSchemeTests():
    suiteSelect = unittest.TestSuite()
    suiteSelect.addTest(TagSchemeUtilsTests("testConvertSimple"))
    suiteSelect.addTest(TagSchemeUtilsTests("testValidation"))
    suiteSelect.addTest(TagSchemeUtilsTests("testRoundTrip"))
    suiteSelect.addTest(TagSchemeUtilsTests("testRepairSpans"))
    return suiteSelect


if __name__ == "__main__":
    mySuite = suiteTagSchemeTests()
    unittest.TextTestRunner(verbosity=2).run(mySuite)
