##
# File:    DocumentMemory.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Document-level key-value memory over the token occurrences of the training corpus.

There is one slot per training-token occurrence, numbered by its position in the corpus.  A slot
key is the word embedding and a slot value the encoder hidden state recorded for the occurrence
when its training batch was last processed.  An inverted index maps each training word id to
its slots.  Keys and values are stored detached; gradients reach the loss only through the query
and the attention weights.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import collections
import logging
from dataclasses import dataclass

import numpy as np
import autograd.numpy as anp

from rcsb.utils.ner.NerErrors import ConfigurationError, DataError, MemoryIndexError, NumericError
from rcsb.utils.ner.NnCore import maskScores, softmax, value

logger = logging.getLogger(__name__)

COMPAT_KINDS = ("dot", "scaled_dot", "cosine")


@dataclass
class MemorySlot:
    key: np.ndarray
    value: np.ndarray
    wordId: int
    position: int
    initialized: bool = False


class MemoryStore(object):
    """Slot arrays, per-slot initialization flags and the word id -> slot inverted index."""

    def __init__(self, wordIds, sentenceIds, keyDim, valueDim, dtype="float32", sentences=None, unkIndex=1):
        self.__dtype = np.dtype(dtype)
        self.wordIds = np.asarray(wordIds, dtype=np.int64)
        self.sentenceIds = np.asarray(sentenceIds, dtype=np.int64)
        if self.wordIds.shape != self.sentenceIds.shape:
            raise DataError("memory word and sentence id arrays differ in length")
        num = self.wordIds.shape[0]
        self.keyDim = keyDim
        self.valueDim = valueDim
        self.keys = np.zeros((num, keyDim), dtype=self.__dtype)
        self.values = np.zeros((num, valueDim), dtype=self.__dtype)
        self.initialized = np.zeros(num, dtype=bool)
        self.sentences = list(sentences) if sentences is not None else []
        self.__unkIndex = unkIndex
        self.offsets = self.__buildOffsets()
        self.index = self.__buildIndex()

    @classmethod
    def fromCorpus(cls, corpus, vocab, keyDim, valueDim, dtype="float32"):
        """Empty store with one slot per token occurrence of the training corpus.

        Args:
            corpus (Corpus): training corpus
            vocab (Vocab): training word vocabulary (slot word ids)
            keyDim (int): key size (word embedding dimension)
            valueDim (int): value size (main encoder hidden size)
            dtype (str, optional): storage precision. Defaults to "float32".

        Returns:
            (MemoryStore): store with every slot uninitialized
        """
        wordIdL = []
        sentIdL = []
        for sN, sent in enumerate(corpus.sentences):
            for tok in sent.tokens:
                wordIdL.append(vocab.lookup(tok.surface))
                sentIdL.append(sN)
        sentL = [" ".join(sent.surfaces) for sent in corpus.sentences]
        store = cls(wordIdL, sentIdL, keyDim, valueDim, dtype=dtype, sentences=sentL, unkIndex=vocab.unkIndex)
        logger.info("Memory with %d slots over %d indexed words", store.numSlots, len(store.index))
        return store

    def __buildOffsets(self):
        offsets = {}
        for pos, sN in enumerate(self.sentenceIds.tolist()):
            offsets.setdefault(sN, pos)
        return offsets

    def __buildIndex(self):
        indexD = collections.OrderedDict()
        for pos, wId in enumerate(self.wordIds.tolist()):
            if wId == self.__unkIndex:
                continue
            indexD.setdefault(wId, []).append(pos)
        return collections.OrderedDict((wId, np.asarray(posL, dtype=np.int64)) for wId, posL in indexD.items())

    @property
    def numSlots(self):
        return int(self.wordIds.shape[0])

    def numInitialized(self):
        return int(np.sum(self.initialized))

    def slotOffset(self, sentenceId):
        return self.offsets[sentenceId]

    def slot(self, position):
        self.__checkPosition(position)
        return MemorySlot(
            key=self.keys[position].copy(),
            value=self.values[position].copy(),
            wordId=int(self.wordIds[position]),
            position=int(position),
            initialized=bool(self.initialized[position]),
        )

    def slotsForWord(self, wordId):
        return self.index.get(wordId, np.zeros(0, dtype=np.int64))

    def __checkPosition(self, position):
        if position < 0 or position >= self.numSlots:
            raise MemoryIndexError("slot %r out of range [0, %d)" % (position, self.numSlots), position=position)

    def memoryUpdate(self, position, key, val):
        """Overwrite one slot and mark it initialized."""
        self.__checkPosition(position)
        key = np.asarray(key)
        val = np.asarray(val)
        if key.shape != (self.keyDim,) or val.shape != (self.valueDim,):
            raise MemoryIndexError("slot %d update shapes %r/%r do not match (%d,)/(%d,)" % (position, key.shape, val.shape, self.keyDim, self.valueDim))
        if not (np.all(np.isfinite(key)) and np.all(np.isfinite(val))):
            raise NumericError("non-finite memory write at slot %d" % position, name="memory")
        self.keys[position] = key
        self.values[position] = val
        self.initialized[position] = True
        return self

    def writeSentence(self, sentenceId, keys, vals):
        start = self.slotOffset(sentenceId)
        for ii in range(len(keys)):
            self.memoryUpdate(start + ii, keys[ii], vals[ii])

    def memoryQuery(self, wordId, tMax, rng, excludeSlot=None):
        """Initialized slots of a word, randomly capped at tMax.

        Args:
            wordId (int): training vocabulary id
            tMax (int): maximum subset size
            rng (numpy.random.Generator): seeded generator used when sampling
            excludeSlot (int, optional): slot removed from the result (the querying occurrence)

        Returns:
            (numpy.ndarray): ascending slot positions, possibly empty
        """
        if tMax < 1:
            raise ConfigurationError("max memory size must be >= 1 (got %r)" % tMax)
        posA = self.slotsForWord(wordId)
        if posA.size == 0:
            return posA
        posA = posA[self.initialized[posA]]
        if excludeSlot is not None:
            posA = posA[posA != excludeSlot]
        if posA.size > tMax:
            pick = rng.choice(posA.size, size=tMax, replace=False)
            posA = np.sort(posA[pick])
        return posA

    def toArrays(self, prefix="memory"):
        return collections.OrderedDict(
            [
                (prefix + ".keys", self.keys),
                (prefix + ".values", self.values),
                (prefix + ".word_ids", self.wordIds),
                (prefix + ".sentence_ids", self.sentenceIds),
                (prefix + ".initialized", self.initialized.astype(np.uint8)),
            ]
        )

    @classmethod
    def fromArrays(cls, arrD, sentences=None, unkIndex=1, prefix="memory"):
        keys = arrD[prefix + ".keys"]
        vals = arrD[prefix + ".values"]
        store = cls(arrD[prefix + ".word_ids"], arrD[prefix + ".sentence_ids"], keys.shape[1], vals.shape[1], dtype=keys.dtype, sentences=sentences, unkIndex=unkIndex)
        store.keys[...] = keys
        store.values[...] = vals
        store.initialized[...] = arrD[prefix + ".initialized"].astype(bool)
        return store


def compatibility(query, keys, kind="cosine", mask=None):
    """Compatibility of queries (..., d) with one key (d,) or key sets (..., T, d).

    dot = q.k, scaled_dot = q.k / sqrt(d), cosine = q.k / (|q| |k|).  Keys under a zero entry
    of the (..., T) mask are padding and are left out of the zero-norm check.
    """
    if kind not in COMPAT_KINDS:
        raise ConfigurationError("unknown compatibility %r" % kind)
    single = keys.ndim == query.ndim
    dots = anp.sum(keys * query, axis=-1) if single else anp.sum(keys * query[..., None, :], axis=-1)
    if kind == "dot":
        return dots
    if kind == "scaled_dot":
        return dots / np.sqrt(float(query.shape[-1]))
    qNorm = anp.sqrt(anp.sum(query * query, axis=-1))
    kNorm = anp.sqrt(anp.sum(keys * keys, axis=-1))
    liveK = value(kNorm) if mask is None else value(kNorm)[np.asarray(mask) > 0]
    if np.any(value(qNorm) == 0.0) or np.any(liveK == 0.0):
        raise NumericError("zero-norm vector in cosine compatibility", name="memory")
    if mask is not None:
        kNorm = kNorm + (1.0 - mask)
    return dots / (qNorm * kNorm if single else qNorm[..., None] * kNorm)


def memoryResponse(query, keys, vals, kind="cosine", mask=None):
    """Attention response r = sum_j alpha_j v_j with alpha = softmax(compatibility).

    Args:
        query (array): (d_w,) query or (M, d_w) queries
        keys (array): (T, d_w) or (M, T, d_w) keys
        vals (array): (T, d_h) or (M, T, d_h) values
        kind (str, optional): compatibility function. Defaults to "cosine".
        mask (array, optional): (M, T) 1/0 marks of the keys in use when subsets are padded to T

    Returns:
        (array, array): response (d_h,) and alpha (T,) (leading M axis for stacked queries),
                        or (None, None) for an empty subset
    """
    if keys.shape[-2] == 0:
        return None, None
    alpha = softmax(maskScores(compatibility(query, keys, kind=kind, mask=mask), mask), axis=-1)
    return anp.sum(alpha[..., None] * vals, axis=-2), alpha


def fuse(hidden, response, lam):
    """g = lam * h + (1 - lam) * r, or h when there is no response."""
    if lam < 0.0 or lam > 1.0:
        raise ConfigurationError("lambda must be in [0, 1] (got %r)" % lam)
    if response is None:
        return hidden
    return lam * hidden + (1.0 - lam) * response


class DocumentMemory(object):
    """Memory read and fusion for the main encoder states of a sentence or a padded batch."""

    def __init__(self, store, compat="cosine", lam=0.3, tMax=500, excludeSelf=False, seed=1):
        if compat not in COMPAT_KINDS:
            raise ConfigurationError("unknown compatibility %r" % compat)
        if lam < 0.0 or lam > 1.0:
            raise ConfigurationError("lambda must be in [0, 1] (got %r)" % lam)
        if tMax < 1:
            raise ConfigurationError("max memory size must be >= 1 (got %r)" % tMax)
        self.store = store
        self.compat = compat
        self.lam = lam
        self.tMax = tMax
        self.excludeSelf = excludeSelf
        self.rng = np.random.default_rng(seed)

    def reseed(self, seed):
        self.rng = np.random.default_rng(seed)

    def read(self, queries, hidden, wordIds, slotOffset=None, rng=None):
        """Fuse the hidden states of one sentence with their memory responses.

        Args:
            queries (array): N x d_w query embeddings
            hidden (array): N x d_h encoder states
            wordIds (list): training vocabulary ids of the tokens
            slotOffset (int, optional): first slot of the sentence when it is a training sentence
            rng (numpy.random.Generator, optional): sampling generator. Defaults to the memory generator.

        Returns:
            (array, dict): N x d_h fused states and diagnostics (subsets, alphas, hits)
        """
        fused, diagL = self.readBatch(queries[None], hidden[None], [wordIds], slotOffsets=[slotOffset], rng=rng)
        return fused[0], diagL[0]

    def readBatch(self, queries, hidden, wordIdL, slotOffsets=None, rng=None):
        """Fuse the hidden states of a right-padded batch with their memory responses.

        Subsets are drawn token by token in batch order.  Every token with a non-empty subset
        is answered in one stacked attention over subsets padded to the largest size.

        Args:
            queries (array): B x N x d_w query embeddings
            hidden (array): B x N x d_h encoder states
            wordIdL (list): per-sentence lists of training vocabulary ids (unpadded)
            slotOffsets (list, optional): first slot of each training sentence, None otherwise
            rng (numpy.random.Generator or list, optional): one generator shared by the batch or one
                per sentence. Defaults to the memory generator.

        Returns:
            (array, list): B x N x d_h fused states and one diagnostics dict per sentence
        """
        numB, num = hidden.shape[0], hidden.shape[1]
        if isinstance(rng, (list, tuple)):
            rngL = list(rng)
        else:
            rngL = [rng if rng is not None else self.rng] * numB
        slotOffsets = list(slotOffsets) if slotOffsets is not None else [None] * numB
        diagL = []
        flatL = []
        posL = []
        for bN, wordIds in enumerate(wordIdL):
            offset = slotOffsets[bN]
            subsetL = []
            for ii, wId in enumerate(wordIds):
                exclude = offset + ii if (self.excludeSelf and offset is not None) else None
                posA = self.store.memoryQuery(wId, self.tMax, rngL[bN], excludeSlot=exclude)
                subsetL.append(posA)
                if posA.size:
                    flatL.append(bN * num + ii)
                    posL.append(posA)
            diagL.append({"subsets": subsetL, "alphas": [None] * len(wordIds), "hits": 0})
        if not flatL:
            return hidden, diagL
        numHit = len(flatL)
        width = max(posA.size for posA in posL)
        dtype = value(hidden).dtype
        slotA = np.zeros((numHit, width), dtype=np.int64)
        mask = np.zeros((numHit, width), dtype=dtype)
        for mN, posA in enumerate(posL):
            slotA[mN, : posA.size] = posA
            mask[mN, : posA.size] = 1.0
        keys = self.store.keys[slotA].astype(dtype) * mask[..., None]
        vals = self.store.values[slotA].astype(dtype)
        flatA = np.asarray(flatL, dtype=np.int64)
        qFlat = anp.reshape(queries, (numB * num, queries.shape[-1]))
        hFlat = anp.reshape(hidden, (numB * num, hidden.shape[-1]))
        resp, alpha = memoryResponse(qFlat[flatA], keys, vals, kind=self.compat, mask=mask)
        fused = fuse(hFlat[flatA], resp, self.lam)
        selector = np.arange(numB * num)
        selector[flatA] = numB * num + np.arange(numHit)
        out = anp.concatenate([hFlat, fused], axis=0)[selector]
        alphaA = value(alpha)
        for mN, (flat, posA) in enumerate(zip(flatL, posL)):
            bN, ii = divmod(flat, num)
            diagL[bN]["alphas"][ii] = alphaA[mN, : posA.size]
            diagL[bN]["hits"] += 1
        return anp.reshape(out, (numB, num, hidden.shape[-1])), diagL
