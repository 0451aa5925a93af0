##
# File:    NerDataset.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Corpora, vocabularies and initial word embeddings of one training run.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging
from dataclasses import dataclass

from rcsb.utils.ner.ConllCorpus import ConllCorpus, Corpus
from rcsb.utils.ner.EmbeddingUtils import EmbeddingTable, EmbeddingUtils
from rcsb.utils.ner.NerErrors import ConfigurationError, DataError
from rcsb.utils.ner.VocabUtils import Vocab, VocabUtils

logger = logging.getLogger(__name__)


@dataclass
class NerDataset:
    train: Corpus
    dev: Corpus
    test: Corpus
    trainVocab: Vocab
    wordVocab: Vocab
    embVocab: Vocab
    charVocab: Vocab
    embTable: EmbeddingTable

    @classmethod
    def load(cls, config, trainPath, devPath=None, testPath=None, embeddingPath=None):
        """Read the corpora and build vocabularies and embeddings.

        The word embedding vocabulary is the training vocabulary extended with the development
        and test words found in the embedding file.  The embedding file decides the word vector
        size; the returned configuration carries it.

        Args:
            config (TrainConfig): run configuration
            trainPath (str): training CoNLL file
            devPath (str, optional): development CoNLL file
            testPath (str, optional): test CoNLL file
            embeddingPath (str): pre-trained embedding file

        Raises:
            ConfigurationError: missing embedding file
            DataError: missing or empty training corpus

        Returns:
            (NerDataset, TrainConfig): dataset and the configuration with word_dim resolved
        """
        if not trainPath:
            raise DataError("no training corpus given")
        if not embeddingPath:
            raise ConfigurationError("no embedding file given")
        cC = ConllCorpus(scheme="BIO")
        train = cC.readConll(trainPath)
        if not train.sentences:
            raise DataError("training corpus %s is empty" % trainPath)
        dev = cC.readConll(devPath) if devPath else Corpus()
        test = cC.readConll(testPath) if testPath else Corpus()
        eU = EmbeddingUtils(seed=config.seed, dtype=config.dtype)
        dim = eU.embeddingDim(embeddingPath)
        if dim != config.word_dim:
            logger.info("Using embedding dimension %d from %s (configured %d)", dim, embeddingPath, config.word_dim)
            config = config.replace(word_dim=dim)
        vU = VocabUtils(lowercase=config.lowercase, zeroDigits=config.zero_digits)
        trainVocab = vU.buildVocab(train, minFreq=config.min_freq)
        embVocab = eU.loadEmbeddingVocab(embeddingPath, dim, lowercase=config.lowercase, zeroDigits=config.zero_digits)
        wordVocab = Vocab.fromDict(trainVocab.toDict())
        extraL = [trainVocab.normalize(tok.surface) for corpus in (dev, test) for sent in corpus.sentences for tok in sent.tokens]
        numExtra = wordVocab.extend([word for word in extraL if word in embVocab])
        charVocab = vU.buildCharVocab(train)
        embTable = eU.loadEmbeddings(embeddingPath, wordVocab, dim)
        logger.info("Vocabulary train %d word %d (+%d from dev/test) char %d embedding coverage %.4f", len(trainVocab), len(wordVocab), numExtra, len(charVocab), embTable.coverage)
        return cls(train=train, dev=dev, test=test, trainVocab=trainVocab, wordVocab=wordVocab, embVocab=embVocab, charVocab=charVocab, embTable=embTable), config
