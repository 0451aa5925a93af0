##
# File:    EmbeddingUtils.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Pre-trained word embeddings in the GloVe text format (word followed by d floats per line).

"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging
import math
import os
from dataclasses import dataclass

import numpy as np

from rcsb.utils.io.MarshalUtil import MarshalUtil
from rcsb.utils.ner.NerErrors import EmbeddingFormatError, ConfigurationError
from rcsb.utils.ner.VocabUtils import Vocab

logger = logging.getLogger(__name__)


@dataclass
class EmbeddingTable:
    matrix: np.ndarray
    dim: int
    coverage: float = 0.0
    found: int = 0


class EmbeddingUtils(object):
    def __init__(self, seed=1, dtype="float32"):
        self.__seed = seed
        self.__dtype = np.dtype(dtype)

    def randomRows(self, numRows, dim, rng=None):
        """Rows drawn from uniform(-sqrt(3/d), +sqrt(3/d))."""
        rng = rng if rng is not None else np.random.default_rng(self.__seed)
        scale = math.sqrt(3.0 / dim)
        return rng.uniform(-scale, scale, size=(numRows, dim)).astype(self.__dtype)

    def randomEmbeddings(self, vocab, dim):
        if dim <= 0:
            raise ConfigurationError("embedding dimension must be positive (got %r)" % dim)
        matrix = self.randomRows(len(vocab), dim)
        matrix[vocab.padIndex] = 0.0
        return EmbeddingTable(matrix=matrix, dim=dim, coverage=0.0, found=0)

    def embeddingDim(self, filePath):
        """Vector size of the first record of an embedding file (a word2vec header is skipped)."""
        if not os.access(filePath, os.R_OK):
            raise ConfigurationError("embedding file %r is not readable" % filePath)
        with open(filePath, "r", encoding="utf-8") as ifh:
            for lineNo, line in enumerate(ifh, 1):
                fields = line.split()
                if not fields:
                    continue
                if lineNo == 1 and len(fields) == 2 and fields[0].isdigit() and fields[1].isdigit():
                    continue
                return len(fields) - 1
        raise EmbeddingFormatError("no embedding records", filePath=filePath, lineNumber=0)

    def __iterRecords(self, filePath, dim):
        with open(filePath, "r", encoding="utf-8") as ifh:
            for lineNo, line in enumerate(ifh, 1):
                fields = line.rstrip("\n").rstrip().split(" ")
                if not fields or not fields[0]:
                    continue
                if lineNo == 1 and len(fields) == 2 and dim != 1 and fields[0].isdigit() and fields[1].isdigit():
                    # word2vec-style header
                    continue
                if len(fields) - 1 != dim:
                    raise EmbeddingFormatError("expected %d values, found %d" % (dim, len(fields) - 1), filePath=filePath, lineNumber=lineNo)
                yield lineNo, fields[0], fields[1:]

    def loadEmbeddings(self, filePath, vocab, dim):
        """Load pre-trained vectors for the words of the input vocabulary.

        Words found in the file (after the vocabulary normalization) are copied; the remaining rows
        are drawn from uniform(-sqrt(3/d), +sqrt(3/d)) with the configured seed.

        Args:
            filePath (str): embedding text file
            vocab (Vocab): word vocabulary
            dim (int): embedding dimension

        Raises:
            EmbeddingFormatError: dimension mismatch or non-finite value (names the line number)

        Returns:
            (EmbeddingTable): embedding matrix and vocabulary coverage
        """
        table = self.randomEmbeddings(vocab, dim)
        matrix = table.matrix
        exactD = {}
        for lineNo, word, values in self.__iterRecords(filePath, dim):
            key = vocab.normalize(word)
            if key not in vocab:
                continue
            isExact = word == key
            if key in exactD and (exactD[key] or not isExact):
                continue
            try:
                row = np.asarray([float(v) for v in values], dtype=np.float64)
            except ValueError:
                raise EmbeddingFormatError("non-numeric value", filePath=filePath, lineNumber=lineNo)
            if not np.all(np.isfinite(row)):
                raise EmbeddingFormatError("non-finite value", filePath=filePath, lineNumber=lineNo)
            matrix[vocab.index(key)] = row.astype(matrix.dtype)
            exactD[key] = isExact
        numWords = max(len(vocab) - 2, 1)
        table.found = len(exactD)
        table.coverage = len(exactD) / float(numWords)
        logger.info("Loaded %d pre-trained vectors (dim %d) from %s coverage %.4f", table.found, dim, os.path.basename(filePath), table.coverage)
        return table

    def loadEmbeddingVocab(self, filePath, dim, lowercase=True, zeroDigits=True):
        """Vocabulary of the (normalized) words present in an embedding file."""
        vocab = Vocab(lowercase=lowercase, zeroDigits=zeroDigits)
        for _, word, _ in self.__iterRecords(filePath, dim):
            vocab.add(vocab.normalize(word))
        return vocab

    def writeEmbeddings(self, filePath, words, matrix):
        """Write one "word v1 ... vd" line per word."""
        dirPath = os.path.dirname(filePath)
        mU = MarshalUtil(workPath=dirPath or ".")
        if dirPath:
            mU.mkdir(dirPath)
        lineL = [word + " " + " ".join("%.6f" % v for v in row) for word, row in zip(words, matrix)]
        with open(filePath, "w", encoding="utf-8") as ofh:
            ofh.write("".join(line + "\n" for line in lineL))
        return True
