##
# File:    SentenceRepresentation.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Sentence-level representation by label-embedding attention over an independent BiLSTM.

For a sentence with token inputs x (N x d_x) and word embeddings w (N x d_w):

    e  = cosine(w, l)                      N x P word/label confidence
    u  = windowed sum of e with W (k) + b  N x P
    m  = max over the P label channels     N
    beta = softmax(m)                      N
    s  = sum_i beta_i v_i                  v = BiLSTM(x), d_s

The sentence vector s is concatenated to every token input of the main encoder.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
import autograd.numpy as anp

from rcsb.utils.ner.NerErrors import ConfigurationError, LabelEmbeddingError, NumericError
from rcsb.utils.ner.NnCore import addLstmParams, bilstmEncode, cosineMatrix, maskScores, softmax, value
from rcsb.utils.ner.TagSchemeUtils import OUTSIDE, splitTag

logger = logging.getLogger(__name__)

SENTENCE_MODES = ("off", "mean", "label-attn")
LABEL_SPACES = ("word", "joint")


@dataclass
class LabelEmbeddings:
    matrix: np.ndarray
    labels: List[str] = field(default_factory=list)
    counts: List[int] = field(default_factory=list)

    @property
    def numLabels(self):
        return len(self.labels)


@dataclass
class SentenceAttnParams:
    weight: np.ndarray
    bias: np.ndarray

    @property
    def kernel(self):
        return int(self.weight.shape[0])


def labelTypes(corpus):
    """Outside class first, then the entity types in sorted order."""
    typeS = set()
    for sent in corpus.sentences:
        for tag in sent.tags:
            _, eType = splitTag(tag)
            if eType:
                typeS.add(eType)
    return [OUTSIDE] + sorted(typeS)


def initLabelEmbeddings(corpus, vectorFn, samplesPerType, rng, labels=None):
    """Label embeddings as the mean vector of sampled tokens of each type.

    Args:
        corpus (Corpus): annotated training corpus
        vectorFn (callable): Sentence -> (N, d) token vectors (word embeddings or joint vectors)
        samplesPerType (int): maximum number of sampled tokens per type (sampling without replacement)
        rng (numpy.random.Generator): seeded generator
        labels (list, optional): label names. Defaults to labelTypes(corpus).

    Raises:
        ConfigurationError: samplesPerType < 1
        LabelEmbeddingError: a label with no occurrence or a zero mean vector

    Returns:
        (LabelEmbeddings): P x d matrix with label names and sample counts
    """
    if samplesPerType < 1:
        raise ConfigurationError("samples_per_type must be >= 1 (got %r)" % samplesPerType)
    labels = labels if labels is not None else labelTypes(corpus)
    occD = {label: [] for label in labels}
    for sN, sent in enumerate(corpus.sentences):
        for tN, tag in enumerate(sent.tags):
            prefix, eType = splitTag(tag)
            label = OUTSIDE if prefix == OUTSIDE else eType
            if label in occD:
                occD[label].append((sN, tN))
    vecCache = {}
    rowL = []
    countL = []
    for label in labels:
        occL = occD[label]
        if not occL:
            raise LabelEmbeddingError("no occurrences in the training corpus", labelType=label)
        num = min(samplesPerType, len(occL))
        pickL = sorted(rng.choice(len(occL), size=num, replace=False).tolist())
        vecL = []
        for ii in pickL:
            sN, tN = occL[ii]
            if sN not in vecCache:
                vecCache[sN] = np.asarray(value(vectorFn(corpus.sentences[sN])), dtype=np.float64)
            vecL.append(vecCache[sN][tN])
        row = np.mean(np.stack(vecL, axis=0), axis=0)
        if not np.all(np.isfinite(row)) or not np.any(row):
            raise LabelEmbeddingError("mean embedding is zero or non-finite", labelType=label)
        rowL.append(row)
        countL.append(num)
    logger.info("Initialized %d label embeddings (%s) sample counts %r", len(labels), ",".join(labels), countL)
    return LabelEmbeddings(matrix=np.stack(rowL, axis=0), labels=list(labels), counts=countL)


def labelConfidence(wordEmbs, labelMatrix, mask=None):
    """e(i, j) = cosine(w_i, l_j); padded positions score 0."""
    return cosineMatrix(wordEmbs, labelMatrix, name="label_confidence", mask=mask)


def windowPool(conf, weight, bias):
    """Windowed label confidence followed by a max over label channels.

    Args:
        conf (array): N x P (or B x N x P) confidence scores
        weight (array): (k,) window weights, k odd
        bias (array): (P,) bias

    Returns:
        (array): length-N scores m (B x N for a batch)
    """
    kSize = weight.shape[0]
    if kSize % 2 == 0:
        raise ConfigurationError("attention kernel size must be odd (got %d)" % kSize)
    if bias.shape[0] != conf.shape[-1]:
        raise ConfigurationError("attention bias size %d does not match %d labels" % (bias.shape[0], conf.shape[-1]))
    num = conf.shape[-2]
    half = (kSize - 1) // 2
    if half:
        pad = anp.zeros(conf.shape[:-2] + (half, conf.shape[-1]), dtype=conf.dtype)
        confP = anp.concatenate([pad, conf, pad], axis=-2)
    else:
        confP = conf
    uV = bias
    for jj in range(kSize):
        uV = uV + weight[jj] * confP[..., jj : jj + num, :]
    return anp.max(uV, axis=-1)


def sentenceAttention(scores, mask=None):
    if not np.all(np.isfinite(value(scores))):
        raise NumericError("non-finite attention scores", name="sentence_attention")
    return softmax(maskScores(scores, mask), axis=-1)


def sentenceRepr(beta, states):
    return anp.sum(beta[..., None] * states, axis=-2)


def labelAuxLoss(conf, goldLabels):
    """Cross-entropy of softmax(e_i) against the gold coarse label of each token."""
    logP = conf - anp.log(anp.sum(anp.exp(conf), axis=1, keepdims=True))
    return -anp.sum(logP[np.arange(conf.shape[0]), np.asarray(goldLabels)])


class SentenceRepresentation(object):
    """Sentence vector s in one of the modes off / mean / label-attn."""

    def __init__(self, mode="label-attn", kernel=3, hidden=128, labelSpace="word", prefix="sent"):
        if mode not in SENTENCE_MODES:
            raise ConfigurationError("unknown sentence mode %r" % mode)
        if labelSpace not in LABEL_SPACES:
            raise ConfigurationError("unknown label space %r" % labelSpace)
        if kernel < 1 or kernel % 2 == 0:
            raise ConfigurationError("attention kernel size must be odd (got %r)" % kernel)
        self.mode = mode
        self.kernel = kernel
        self.hidden = hidden
        self.labelSpace = labelSpace
        self.__prefix = prefix

    @property
    def enabled(self):
        return self.mode != "off"

    @property
    def outputDim(self):
        return self.hidden if self.enabled else 0

    def addParams(self, registry, inputDim, labelEmbeddings=None):
        if not self.enabled:
            return
        pf = self.__prefix
        addLstmParams(registry, pf + ".lstm", inputDim, self.hidden)
        if self.mode == "label-attn":
            if labelEmbeddings is None:
                raise ConfigurationError("label-attn mode requires label embeddings")
            registry.add(pf + ".label_embedding", labelEmbeddings.matrix)
            registry.addUniform(pf + ".attn.weight", (self.kernel,), math.sqrt(6.0 / (self.kernel + 1)))
            registry.addZeros(pf + ".attn.bias", (labelEmbeddings.numLabels,))

    def attnParams(self, params):
        return SentenceAttnParams(weight=value(params[self.__prefix + ".attn.weight"]), bias=value(params[self.__prefix + ".attn.bias"]))

    def encode(self, inputs, labelInputs, params, mask=None):
        """Sentence vector for one sentence or for a right-padded batch.

        Args:
            inputs (array): N x d_x (or B x N x d_x) token inputs of the sentence BiLSTM
            labelInputs (array): N x d_l (or B x N x d_l) vectors compared against the label embeddings
            params (dict): parameter dictionary
            mask (array, optional): B x N padding mask of a batch

        Returns:
            (array, dict): sentence vector (d_s,) or (B, d_s) and diagnostics (beta, conf)
        """
        pf = self.__prefix
        states = bilstmEncode(inputs, params, pf + ".lstm", mask=mask)
        if self.mode == "mean":
            if mask is None:
                num = states.shape[0]
                return anp.mean(states, axis=0), {"beta": np.full(num, 1.0 / num)}
            beta = np.asarray(mask) / np.sum(mask, axis=-1, keepdims=True)
            return sentenceRepr(beta, states), {"beta": beta}
        conf = labelConfidence(labelInputs, params[pf + ".label_embedding"], mask=mask)
        scores = windowPool(conf, params[pf + ".attn.weight"], params[pf + ".attn.bias"])
        beta = sentenceAttention(scores, mask=mask)
        return sentenceRepr(beta, states), {"beta": value(beta), "conf": conf}
