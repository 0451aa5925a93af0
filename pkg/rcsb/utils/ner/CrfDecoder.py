##
# File:    CrfDecoder.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Linear-chain CRF over a tag set of size P with virtual START and END states.

The transition matrix is (P + 2) x (P + 2); entry [a, b] scores the move from tag a to tag b,
index P is START and index P + 1 is END.  Scores, partition function and loss are autograd
differentiable; Viterbi decoding runs on plain values.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging

import numpy as np
import autograd.numpy as anp
from autograd.scipy.special import logsumexp

from rcsb.utils.ner.NerErrors import ConfigurationError, DataError
from rcsb.utils.ner.NnCore import linear, value
from rcsb.utils.ner.TagSchemeUtils import SCHEMES, splitTag

logger = logging.getLogger(__name__)

IMPOSSIBLE = -10000.0


def allowedTransition(fromTag, toTag, scheme="BIOES"):
    """Whether a tag bigram can occur in a valid sequence (None stands for START / END)."""
    fromPrefix, fromType = splitTag(fromTag) if fromTag is not None else ("START", None)
    toPrefix, toType = splitTag(toTag) if toTag is not None else ("END", None)
    if scheme == "BIOES":
        openFrom = fromPrefix in ("B", "I")
        if toPrefix in ("I", "E"):
            return openFrom and fromType == toType
        return not openFrom
    if toPrefix == "I":
        return fromPrefix in ("B", "I") and fromType == toType
    return True


def scoreSequence(emissions, transitions, tags):
    """Sum of the N emission scores and the N + 1 transition scores of a tag path."""
    num = emissions.shape[0]
    if len(tags) != num:
        raise DataError("tag sequence length %d does not match %d positions" % (len(tags), num))
    numTags = emissions.shape[1]
    tagA = np.asarray(tags, dtype=np.int64)
    score = anp.sum(emissions[np.arange(num), tagA])
    score = score + transitions[numTags, tagA[0]] + transitions[tagA[-1], numTags + 1]
    if num > 1:
        score = score + anp.sum(transitions[tagA[:-1], tagA[1:]])
    return score


def logPartition(emissions, transitions, mask=None):
    """Forward algorithm in log space over N x P emissions or a right-padded B x N x P batch.

    With a B x N mask alpha is carried unchanged across padded positions.
    """
    num, numTags = emissions.shape[-2:]
    if num < 1:
        raise DataError("cannot score an empty sequence")
    trans = transitions[:numTags, :numTags]
    alpha = transitions[numTags, :numTags] + emissions[..., 0, :]
    for ii in range(1, num):
        nxt = logsumexp(alpha[..., :, None] + trans, axis=-2) + emissions[..., ii, :]
        if mask is not None:
            keep = mask[..., ii, None]
            nxt = keep * nxt + (1.0 - keep) * alpha
        alpha = nxt
    return logsumexp(alpha + transitions[:numTags, numTags + 1], axis=-1)


def nllLoss(emissions, transitions, tags):
    return logPartition(emissions, transitions) - scoreSequence(emissions, transitions, tags)


def batchScore(emissions, transitions, tagsL):
    """Summed gold path scores of a right-padded B x N x P batch; tagsL holds the B unpadded paths."""
    numTags = emissions.shape[-1]
    bI, iI, tI, fromL, toL = [], [], [], [], []
    for bN, tags in enumerate(tagsL):
        if not tags:
            raise DataError("cannot score an empty sequence")
        bI.extend([bN] * len(tags))
        iI.extend(range(len(tags)))
        tI.extend(tags)
        fromL.extend([numTags] + list(tags))
        toL.extend(list(tags) + [numTags + 1])
    score = anp.sum(emissions[np.asarray(bI, dtype=np.int64), np.asarray(iI, dtype=np.int64), np.asarray(tI, dtype=np.int64)])
    return score + anp.sum(transitions[np.asarray(fromL, dtype=np.int64), np.asarray(toL, dtype=np.int64)])


def batchNllLoss(emissions, transitions, tagsL, mask):
    """Summed negative log-likelihood of a right-padded batch."""
    if emissions.shape[-2] != mask.shape[-1] or max(len(tags) for tags in tagsL) != emissions.shape[-2]:
        raise DataError("tag sequence lengths do not match the padded batch")
    return anp.sum(logPartition(emissions, transitions, mask=mask)) - batchScore(emissions, transitions, tagsL)


def viterbi(emissions, transitions):
    """Best tag path and its score; among equal scores the lowest tag index wins.

    Args:
        emissions (array): N x P emission scores
        transitions (array): (P + 2) x (P + 2) transition scores

    Returns:
        (list, float): best path as tag indices and its score
    """
    em = np.asarray(value(emissions), dtype=np.float64)
    tr = np.asarray(value(transitions), dtype=np.float64)
    num, numTags = em.shape
    if num < 1:
        raise DataError("cannot decode an empty sequence")
    trans = tr[:numTags, :numTags]
    delta = tr[numTags, :numTags] + em[0]
    backL = []
    for ii in range(1, num):
        cand = delta[:, None] + trans
        back = np.argmax(cand, axis=0)
        delta = cand[back, np.arange(numTags)] + em[ii]
        backL.append(back)
    best = int(np.argmax(delta + tr[:numTags, numTags + 1]))
    path = [best]
    for back in reversed(backL):
        best = int(back[best])
        path.append(best)
    path.reverse()
    return path, float(scoreSequence(em, tr, path))


class CrfDecoder(object):
    """Emission projection plus transition parameters over a fixed tag set."""

    def __init__(self, tags, scheme="BIOES", constrain=True, prefix="crf"):
        if scheme not in SCHEMES:
            raise ConfigurationError("unknown tag scheme %r" % scheme)
        if not tags:
            raise ConfigurationError("empty tag set")
        self.tags = list(tags)
        self.scheme = scheme
        self.constrain = constrain
        self.__prefix = prefix
        self.__tagIndex = {tag: ii for ii, tag in enumerate(self.tags)}

    @property
    def numTags(self):
        return len(self.tags)

    def tagIds(self, tags):
        try:
            return [self.__tagIndex[tag] for tag in tags]
        except KeyError as e:
            raise DataError("tag %s is not in the model tag set" % str(e))

    def tagNames(self, ids):
        return [self.tags[ii] for ii in ids]

    def initialTransitions(self):
        """Zero transitions with IMPOSSIBLE scores for bigrams no valid sequence contains."""
        numTags = self.numTags
        trans = np.zeros((numTags + 2, numTags + 2))
        trans[:, numTags] = IMPOSSIBLE
        trans[numTags + 1, :] = IMPOSSIBLE
        if not self.constrain:
            return trans
        stateL = self.tags + [None]
        for ii, fromTag in enumerate(stateL):
            fromIdx = ii if fromTag is not None else numTags
            for jj, toTag in enumerate(stateL):
                toIdx = jj if toTag is not None else numTags + 1
                if not allowedTransition(fromTag, toTag, self.scheme):
                    trans[fromIdx, toIdx] = IMPOSSIBLE
        return trans

    def addParams(self, registry, inputDim):
        pf = self.__prefix
        registry.addGlorot(pf + ".emission.weight", (inputDim, self.numTags))
        registry.addZeros(pf + ".emission.bias", (self.numTags,))
        registry.add(pf + ".transitions", self.initialTransitions())

    def emissions(self, states, params):
        pf = self.__prefix
        return linear(states, params[pf + ".emission.weight"], params[pf + ".emission.bias"])

    def transitions(self, params):
        return params[self.__prefix + ".transitions"]

    def loss(self, emissions, params, tags):
        return nllLoss(emissions, self.transitions(params), self.tagIds(tags))

    def decode(self, emissions, params):
        path, score = viterbi(emissions, self.transitions(params))
        return self.tagNames(path), score

    def batchLoss(self, emissions, params, tagsL, mask):
        return batchNllLoss(emissions, self.transitions(params), [self.tagIds(tags) for tags in tagsL], mask)
