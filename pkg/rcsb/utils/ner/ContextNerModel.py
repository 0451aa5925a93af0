##
# File:    ContextNerModel.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Hierarchically contextualized sequence labeling model.

Token path for one sentence:

    w = word embedding, c = character encoder output, x = [w; c]
    s = sentence vector (optional), x' = [x; s]
    h = main BiLSTM(x')
    g = lam h + (1 - lam) r   with r the memory response for w (optional)
    emissions = linear(g), decoded by the CRF
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging

import numpy as np
import autograd.numpy as anp

from rcsb.utils.ner.CrfDecoder import CrfDecoder
from rcsb.utils.ner.DocumentMemory import DocumentMemory, MemoryStore
from rcsb.utils.ner.IntNetEncoder import IntNetConfig, IntNetEncoder
from rcsb.utils.ner.NerErrors import ConfigurationError, DataError
from rcsb.utils.ner.NnCore import ParamRegistry, addLstmParams, bilstmEncode, concat, dropout, paddingMask, value
from rcsb.utils.ner.SentenceRepresentation import LabelEmbeddings, SentenceRepresentation, initLabelEmbeddings, labelAuxLoss, labelTypes
from rcsb.utils.ner.TagSchemeUtils import OUTSIDE, TagSchemeUtils, splitTag

logger = logging.getLogger(__name__)

EVAL_BATCH_SIZE = 32


def buildTags(entityTypes, scheme="BIOES"):
    """Complete tag inventory for the entity types, "O" first."""
    prefixes = ("B", "I") if scheme == "BIO" else ("B", "E", "I", "S")
    return [OUTSIDE] + sorted("%s-%s" % (prefix, eType) for eType in entityTypes for prefix in prefixes)


class ContextNerModel(object):
    """Parameters, memory store and forward computation of the tagger.

    Args:
        config (TrainConfig): model and training configuration
        wordVocab (Vocab): word embedding vocabulary
        trainVocab (Vocab): training word vocabulary (memory index and OOV categories)
        charVocab (Vocab): character vocabulary
        tags (list): model tag set in the training scheme
        labels (list): label embedding names (outside class first)
        registry (ParamRegistry): trainable parameters
        store (MemoryStore, optional): document memory
    """

    def __init__(self, config, wordVocab, trainVocab, charVocab, tags, labels, registry, store=None):
        self.config = config
        self.wordVocab = wordVocab
        self.trainVocab = trainVocab
        self.charVocab = charVocab
        self.labels = list(labels)
        self.registry = registry
        self.store = store
        self.__tsU = TagSchemeUtils()
        self.intnet = IntNetEncoder(self.intnetConfig(config), charVocab)
        self.sentRep = SentenceRepresentation(mode=config.sentence, kernel=config.attn_kernel, hidden=config.hidden_sent, labelSpace=config.label_space)
        self.crf = CrfDecoder(tags, scheme=config.tag_scheme)
        self.memory = None
        if self.memoryEnabled:
            if store is None:
                raise ConfigurationError("document memory is enabled but the model has no memory store")
            self.memory = DocumentMemory(store, compat=config.compat, lam=config.fusion_lambda, tMax=config.t_max, excludeSelf=config.exclude_self, seed=config.seed + 2)
        self.rng = np.random.default_rng(config.seed + 1)

    @staticmethod
    def intnetConfig(config):
        return IntNetConfig(
            charDim=config.char_dim,
            initFilters=config.init_filters,
            blockFilters=config.block_filters,
            kernelSizes=tuple(config.kernel_sizes),
            layers=config.intnet_layers,
        )

    @classmethod
    def build(cls, config, trainCorpus, embTable, wordVocab, trainVocab, charVocab):
        """Initialize a model for a training corpus in the training tag scheme.

        Args:
            config (TrainConfig): configuration
            trainCorpus (Corpus): training corpus, tags in config.tag_scheme
            embTable (EmbeddingTable): initial word embeddings over wordVocab
            wordVocab (Vocab): word embedding vocabulary
            trainVocab (Vocab): training word vocabulary
            charVocab (Vocab): character vocabulary

        Returns:
            (ContextNerModel): initialized model
        """
        if not trainCorpus.sentences:
            raise DataError("training corpus is empty")
        if embTable.matrix.shape != (len(wordVocab), config.word_dim):
            raise ConfigurationError("embedding matrix shape %r does not match vocabulary (%d, %d)" % (embTable.matrix.shape, len(wordVocab), config.word_dim))
        registry = ParamRegistry(dtype=config.dtype, seed=config.seed)
        labels = labelTypes(trainCorpus)
        tags = buildTags(labels[1:], scheme=config.tag_scheme)
        registry.add("word.embedding", embTable.matrix)
        intnet = IntNetEncoder(cls.intnetConfig(config), charVocab)
        intnet.addParams(registry)
        xDim = config.word_dim + intnet.outputDim
        sentRep = SentenceRepresentation(mode=config.sentence, kernel=config.attn_kernel, hidden=config.hidden_sent, labelSpace=config.label_space)
        labelEmb = None
        if config.sentence == "label-attn":
            paramD = registry.asDict()

            def vectorFn(sent):
                wV = paramD["word.embedding"][[wordVocab.lookup(s) for s in sent.surfaces]]
                if config.label_space == "word":
                    return wV
                return np.concatenate([wV, value(intnet.encodeWords(sent.surfaces, paramD))], axis=1)

            labelEmb = initLabelEmbeddings(trainCorpus, vectorFn, config.samples_per_type, np.random.default_rng(config.seed + 3), labels=labels)
        sentRep.addParams(registry, xDim, labelEmbeddings=labelEmb)
        addLstmParams(registry, "main.lstm", xDim + sentRep.outputDim, config.hidden_main)
        CrfDecoder(tags, scheme=config.tag_scheme).addParams(registry, config.hidden_main)
        store = None
        if config.document == "on":
            store = MemoryStore.fromCorpus(trainCorpus, trainVocab, config.word_dim, config.hidden_main, dtype=config.dtype)
        model = cls(config, wordVocab, trainVocab, charVocab, tags, labels, registry, store=store)
        logger.info("Model with %d parameter arrays (%d values) tags %d sentence %s document %s", len(registry), registry.numParams(), len(tags), config.sentence, config.document)
        return model

    @property
    def tags(self):
        return self.crf.tags

    @property
    def memoryEnabled(self):
        return self.config.document == "on" and self.config.fusion_lambda < 1.0

    def labelEmbeddings(self):
        if "sent.label_embedding" not in self.registry:
            return None
        return LabelEmbeddings(matrix=self.registry["sent.label_embedding"].copy(), labels=self.labels)

    def forward(self, sentence, params=None, training=False, sentenceId=None, rng=None):
        """Emission scores for one sentence.

        Args:
            sentence (Sentence): input sentence
            params (dict, optional): parameter dictionary. Defaults to the registry values.
            training (bool, optional): apply dropout. Defaults to False.
            sentenceId (int, optional): training corpus position of the sentence
            rng (numpy.random.Generator, optional): memory sampling generator

        Returns:
            (array, dict): N x P emissions and diagnostics
        """
        sentenceIds = [sentenceId] if sentenceId is not None else None
        emissions, _, diagL = self.forwardBatch([sentence], params=params, training=training, sentenceIds=sentenceIds, rng=rng)
        return emissions[0], diagL[0]

    def __charInputs(self, sentences, num, params):
        """Character encodings gathered into B x N; each distinct surface is encoded once."""
        surfIndex = {}
        surfL = []
        idxA = np.full((len(sentences), num), -1, dtype=np.int64)
        for bN, sent in enumerate(sentences):
            for ii, surface in enumerate(sent.surfaces):
                if surface not in surfIndex:
                    surfIndex[surface] = len(surfL)
                    surfL.append(surface)
                idxA[bN, ii] = surfIndex[surface]
        cU = self.intnet.encodeWords(surfL, params)
        # padded positions read the zero row
        idxA[idxA < 0] = len(surfL)
        return concat([cU, anp.zeros((1, cU.shape[1]), dtype=cU.dtype)], axis=0)[idxA]

    def forwardBatch(self, sentences, params=None, training=False, sentenceIds=None, rng=None):
        """Emission scores for a batch of sentences padded on the right to the longest one.

        Args:
            sentences (list): Sentence objects
            params (dict, optional): parameter dictionary. Defaults to the registry values.
            training (bool, optional): apply dropout. Defaults to False.
            sentenceIds (list, optional): training corpus positions of the sentences
            rng (numpy.random.Generator or list, optional): memory sampling generator, shared or one per sentence

        Returns:
            (array, array, list): B x N x P emissions, B x N padding mask and per-sentence diagnostics
        """
        cfg = self.config
        params = params if params is not None else self.registry.asDict()
        if not sentences:
            raise DataError("cannot tag an empty batch")
        if any(len(sent) == 0 for sent in sentences):
            raise DataError("cannot tag an empty sentence")
        lengths = [len(sent) for sent in sentences]
        numB, num = len(sentences), max(lengths)
        emb = params["word.embedding"]
        mask = paddingMask(lengths, dtype=value(emb).dtype)
        wordIdL = [[self.wordVocab.lookup(s) for s in sent.surfaces] for sent in sentences]
        idA = np.full((numB, num), self.wordVocab.padIndex, dtype=np.int64)
        for bN, ids in enumerate(wordIdL):
            idA[bN, : len(ids)] = ids
        wV = emb[idA]
        xV = concat([wV, self.__charInputs(sentences, num, params)], axis=-1)
        xD = dropout(xV, cfg.dropout, training, self.rng)
        diagL = [{"wordIds": ids} for ids in wordIdL]
        if self.sentRep.enabled:
            labelInputs = wV if cfg.label_space == "word" else xV
            sV, sentD = self.sentRep.encode(xD, labelInputs, params, mask=mask)
            sVal = value(sV)
            for bN, diagD in enumerate(diagL):
                diagD["beta"] = sentD["beta"][bN, : lengths[bN]]
                if "conf" in sentD:
                    diagD["conf"] = sentD["conf"][bN, : lengths[bN]]
                diagD["sentence"] = sVal[bN]
            xD = concat([xD, sV[:, None, :] * anp.ones((numB, num, 1), dtype=xD.dtype)], axis=-1)
        hV = bilstmEncode(xD, params, "main.lstm", mask=mask)
        hVal = value(hV)
        for bN, diagD in enumerate(diagL):
            diagD["hidden"] = hVal[bN, : lengths[bN]]
        gV = dropout(hV, cfg.dropout, training, self.rng)
        if self.memory is not None:
            trainIdL = [[self.trainVocab.lookup(s) for s in sent.surfaces] for sent in sentences]
            offsets = [self.store.slotOffset(sN) for sN in sentenceIds] if sentenceIds is not None else None
            gV, memL = self.memory.readBatch(wV, gV, trainIdL, slotOffsets=offsets, rng=rng)
            for diagD, memD in zip(diagL, memL):
                diagD.update(memD)
        return self.crf.emissions(gV, params), mask, diagL

    def loss(self, sentence, params, training=True, sentenceId=None):
        """CRF negative log-likelihood (plus the optional label affinity loss) and diagnostics."""
        sentenceIds = [sentenceId] if sentenceId is not None else None
        nll, diagL = self.lossBatch([sentence], params, training=training, sentenceIds=sentenceIds)
        return nll, diagL[0]

    def lossBatch(self, sentences, params, training=True, sentenceIds=None):
        """Summed loss of a batch and the per-sentence diagnostics."""
        emissions, mask, diagL = self.forwardBatch(sentences, params=params, training=training, sentenceIds=sentenceIds)
        nll = self.crf.batchLoss(emissions, params, [sent.tags for sent in sentences], mask)
        if self.config.aux_label_loss and "conf" in diagL[0]:
            labelIndex = {label: ii for ii, label in enumerate(self.labels)}
            for sent, diagD in zip(sentences, diagL):
                goldL = [labelIndex[splitTag(tag)[1] or OUTSIDE] for tag in sent.tags]
                nll = nll + labelAuxLoss(diagD["conf"], goldL)
        return nll, diagL

    def writeMemory(self, sentenceId, wordIds, hidden):
        """Record one training sentence: keys are the current embeddings, values the given states."""
        if self.store is None:
            return
        keys = self.registry["word.embedding"][wordIds]
        self.store.writeSentence(sentenceId, keys, hidden)

    def evalRng(self):
        return np.random.default_rng(self.config.seed + 2)

    def decodeBatch(self, sentences, rng=None):
        """Viterbi tags in the training scheme for a batch; rng defaults to one evaluation generator per sentence."""
        rng = rng if rng is not None else [self.evalRng() for _ in sentences]
        emissions, _, _ = self.forwardBatch(sentences, training=False, rng=rng)
        emV = value(emissions)
        params = self.registry.asDict()
        return [self.crf.decode(emV[bN, : len(sent)], params)[0] for bN, sent in enumerate(sentences)]

    def decode(self, sentence):
        """Viterbi tags for one sentence in the training scheme."""
        return self.decodeBatch([sentence])[0]

    def __toBio(self, tags):
        return self.__tsU.tagsFromSpans(self.__tsU.repairSpans(tags), len(tags), scheme="BIO")

    def predict(self, sentence):
        """Predicted tags in the BIO scheme (always a valid BIO sequence)."""
        return self.__toBio(self.decode(sentence))

    def predictCorpus(self, corpus, batchSize=EVAL_BATCH_SIZE):
        """BIO predictions for every sentence, decoded in batches of similar length.

        Each sentence samples memory with its own evaluation generator, so the result does not
        depend on the batch composition.
        """
        sentL = corpus.sentences
        order = sorted(range(len(sentL)), key=lambda ii: len(sentL[ii]))
        predL = [None] * len(sentL)
        for start in range(0, len(order), batchSize):
            idxL = order[start : start + batchSize]
            tagsL = self.decodeBatch([sentL[ii] for ii in idxL])
            for ii, tags in zip(idxL, tagsL):
                predL[ii] = self.__toBio(tags)
        return predL
