##
# File:    NerTrainer.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Training configuration and the SGD training loop.

Each epoch shuffles the training sentences into length buckets, runs minibatch SGD with gradient
clipping, writes the document memory slots of every processed sentence after its parameter
update and scores the development corpus.  The model of the best development epoch is kept.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import copy
import logging
import math
import time
from dataclasses import dataclass, field, fields, asdict
from typing import Tuple

import numpy as np
from autograd import value_and_grad

from rcsb.utils.ner.ConllCorpus import Corpus
from rcsb.utils.ner.DocumentMemory import COMPAT_KINDS
from rcsb.utils.ner.ContextNerModel import ContextNerModel
from rcsb.utils.ner.NerErrors import ConfigurationError, DataError, NumericError
from rcsb.utils.ner.NerEval import NerEval
from rcsb.utils.ner.SentenceRepresentation import LABEL_SPACES, SENTENCE_MODES
from rcsb.utils.ner.TagSchemeUtils import SCHEMES

logger = logging.getLogger(__name__)

DECAY_MODES = ("multiplicative", "inverse")


@dataclass
class TrainConfig:
    batch_size: int = 10
    lr0: float = 0.015
    lr_decay: float = 0.05
    decay_mode: str = "multiplicative"
    hidden_main: int = 256
    hidden_sent: int = 128
    dropout: float = 0.5
    fusion_lambda: float = 0.3
    t_max: int = 500
    epochs: int = 100
    seed: int = 1
    word_dim: int = 100
    char_dim: int = 32
    init_filters: int = 32
    block_filters: int = 16
    kernel_sizes: Tuple[int, ...] = field(default_factory=lambda: (3, 5))
    intnet_layers: int = 7
    sentence: str = "label-attn"
    attn_kernel: int = 3
    samples_per_type: int = 200
    label_space: str = "word"
    aux_label_loss: bool = False
    document: str = "on"
    compat: str = "cosine"
    exclude_self: bool = False
    clip: float = 5.0
    dtype: str = "float32"
    tag_scheme: str = "BIOES"
    min_freq: int = 1
    lowercase: bool = True
    zero_digits: bool = True

    def validate(self):
        for name in ("batch_size", "hidden_main", "hidden_sent", "t_max", "word_dim", "char_dim", "init_filters", "block_filters", "intnet_layers", "samples_per_type", "min_freq"):
            if getattr(self, name) < 1:
                raise ConfigurationError("%s must be positive (got %r)" % (name, getattr(self, name)))
        if self.epochs < 0:
            raise ConfigurationError("epochs must be >= 0 (got %r)" % self.epochs)
        if self.lr0 <= 0.0 or self.lr_decay <= 0.0 or self.clip <= 0.0:
            raise ConfigurationError("lr0, lr_decay and clip must be positive")
        if not 0.0 <= self.dropout < 1.0:
            raise ConfigurationError("dropout must be in [0, 1) (got %r)" % self.dropout)
        if not 0.0 <= self.fusion_lambda <= 1.0:
            raise ConfigurationError("lambda must be in [0, 1] (got %r)" % self.fusion_lambda)
        if self.hidden_main % 2 or self.hidden_sent % 2:
            raise ConfigurationError("BiLSTM hidden sizes must be even")
        if self.attn_kernel % 2 == 0 or self.intnet_layers % 2 == 0:
            raise ConfigurationError("attention kernel and IntNet layer count must be odd")
        choiceL = [
            ("decay_mode", DECAY_MODES),
            ("sentence", SENTENCE_MODES),
            ("label_space", LABEL_SPACES),
            ("document", ("on", "off")),
            ("compat", COMPAT_KINDS),
            ("tag_scheme", SCHEMES),
            ("dtype", ("float32", "float64")),
        ]
        for name, choices in choiceL:
            if getattr(self, name) not in choices:
                raise ConfigurationError("%s must be one of %s (got %r)" % (name, ",".join(choices), getattr(self, name)))
        return True

    def toDict(self):
        dD = asdict(self)
        dD["kernel_sizes"] = list(self.kernel_sizes)
        return dD

    @classmethod
    def fromDict(cls, dD):
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(dD) - known)
        if unknown:
            raise ConfigurationError("unknown configuration keys %s" % ",".join(unknown))
        kwD = dict(dD)
        if "kernel_sizes" in kwD:
            kwD["kernel_sizes"] = tuple(kwD["kernel_sizes"])
        return cls(**kwD)

    def replace(self, **kwargs):
        dD = self.toDict()
        dD.update(kwargs)
        return TrainConfig.fromDict(dD)


@dataclass
class EpochMetrics:
    epoch: int
    lr: float
    loss: float
    dev_precision: float
    dev_recall: float
    dev_f1: float
    seconds: float
    memory_initialized: int = 0
    memory_hits: int = 0

    def toDict(self):
        return asdict(self)


@dataclass
class TrainResult:
    model: ContextNerModel
    metrics: list
    bestEpoch: int
    bestDevF1: float
    totalSeconds: float


def learningRate(lr0, epoch, decay=0.05, mode="multiplicative"):
    """lr0 * (1 - decay)^e (multiplicative) or lr0 / (1 + decay * e) (inverse)."""
    if mode == "multiplicative":
        return lr0 * (1.0 - decay) ** epoch
    if mode == "inverse":
        return lr0 / (1.0 + decay * epoch)
    raise ConfigurationError("unknown decay mode %r" % mode)


def clipGradients(gradD, maxNorm):
    """Scale the gradients in place so that their joint L2 norm is at most maxNorm; returns the norm."""
    total = math.sqrt(sum(float(np.sum(np.square(g, dtype=np.float64))) for g in gradD.values()))
    if maxNorm is not None and total > maxNorm:
        scale = maxNorm / total
        for name in gradD:
            gradD[name] = gradD[name] * scale
    return total


def sgdStep(registry, lr):
    """p <- p - lr * grad for every parameter, then clear the accumulated gradients."""
    for name, grad in registry.grads().items():
        if not np.all(np.isfinite(grad)):
            raise NumericError("non-finite gradient", name=name)
    for name, param in registry.items():
        registry.set(name, param - lr * registry.grad(name))
    registry.zeroGrad()


class NerTrainer(object):
    def __init__(self, config, **kwargs):
        config.validate()
        self.__cfg = config
        self.__eval = NerEval()
        self.__timeFn = kwargs.get("timeFn", time.time)

    @property
    def config(self):
        return self.__cfg

    def batches(self, corpus, rng):
        """Seeded shuffle grouped by sentence length into batches of batch_size."""
        order = rng.permutation(len(corpus.sentences))
        order = sorted(order.tolist(), key=lambda ii: len(corpus.sentences[ii]))
        bs = self.__cfg.batch_size
        batchL = [order[ii : ii + bs] for ii in range(0, len(order), bs)]
        perm = rng.permutation(len(batchL))
        return [batchL[ii] for ii in perm.tolist()]

    def trainBatch(self, model, corpus, batch, lr):
        """One SGD step over a padded batch followed by the memory writes of its sentences."""
        sentL = [corpus.sentences[sN] for sN in batch]
        diagL = []

        def lossFn(paramD):
            nll, batchDiagL = model.lossBatch(sentL, paramD, training=True, sentenceIds=batch)
            diagL[:] = batchDiagL
            return nll

        loss, gradD = value_and_grad(lossFn)(model.registry.asDict())
        loss = float(loss)
        if not np.isfinite(loss):
            raise NumericError("non-finite training loss", name="loss")
        for name, grad in gradD.items():
            if not np.all(np.isfinite(grad)):
                raise NumericError("non-finite gradient", name=name)
        gradD = {name: np.asarray(grad) for name, grad in gradD.items()}
        clipGradients(gradD, self.__cfg.clip)
        model.registry.accumulate(gradD)
        sgdStep(model.registry, lr)
        hits = 0
        for sN, diagD in zip(batch, diagL):
            model.writeMemory(sN, diagD["wordIds"], diagD["hidden"])
            hits += diagD.get("hits", 0)
        return loss, hits

    def evaluate(self, model, corpus):
        """Entity-level scores of the model on a corpus with BIO gold tags."""
        predL = model.predictCorpus(corpus)
        return self.__eval.f1Score(self.__eval.corpusSpans(corpus.tagSequences()), self.__eval.corpusSpans(predL))

    def train(self, trainCorpus, devCorpus, embTable, wordVocab, trainVocab, charVocab):
        """Train a model and keep the parameters of the best development epoch.

        Args:
            trainCorpus (Corpus): training corpus (BIO)
            devCorpus (Corpus): development corpus (BIO); without one the last epoch is kept
            embTable (EmbeddingTable): initial word embeddings over wordVocab
            wordVocab (Vocab): word embedding vocabulary
            trainVocab (Vocab): training word vocabulary
            charVocab (Vocab): character vocabulary

        Raises:
            DataError: empty training corpus
            NumericError: non-finite loss or gradient

        Returns:
            (TrainResult): best model, per-epoch metrics and timing
        """
        cfg = self.__cfg
        if not trainCorpus.sentences:
            raise DataError("training corpus is empty")
        schemeCorpus = trainCorpus.toScheme(cfg.tag_scheme)
        model = ContextNerModel.build(cfg, schemeCorpus, embTable, wordVocab, trainVocab, charVocab)
        rng = np.random.default_rng(cfg.seed)
        devCorpus = devCorpus if devCorpus is not None else Corpus()
        if not devCorpus.sentences:
            logger.warning("No development sentences, keeping the parameters of the last epoch")
        metricL = []
        best = None
        startAll = self.__timeFn()
        for epoch in range(cfg.epochs):
            startEp = self.__timeFn()
            lr = learningRate(cfg.lr0, epoch, decay=cfg.lr_decay, mode=cfg.decay_mode)
            totalLoss = 0.0
            totalHits = 0
            for bN, batch in enumerate(self.batches(schemeCorpus, rng)):
                loss, hits = self.trainBatch(model, schemeCorpus, batch, lr)
                totalLoss += loss
                totalHits += hits
                logger.debug("Epoch %d batch %d loss %.4f", epoch, bN, loss)
            seconds = self.__timeFn() - startEp
            scoreD = self.evaluate(model, devCorpus) if devCorpus.sentences else {"precision": 0.0, "recall": 0.0, "f1": 0.0}
            numInit = model.store.numInitialized() if model.store is not None else 0
            row = EpochMetrics(
                epoch=epoch + 1,
                lr=lr,
                loss=totalLoss,
                dev_precision=scoreD["precision"],
                dev_recall=scoreD["recall"],
                dev_f1=scoreD["f1"],
                seconds=seconds,
                memory_initialized=numInit,
                memory_hits=totalHits,
            )
            metricL.append(row)
            logger.info("Epoch %d lr %.6f loss %.4f dev F1 %.2f (%.2f s)", epoch + 1, lr, totalLoss, scoreD["f1"], seconds)
            if model.store is not None:
                logger.info("Memory slots initialized %d of %d hits %d", numInit, model.store.numSlots, totalHits)
            # without development data the last epoch is kept
            if best is None or scoreD["f1"] > best[1] or not devCorpus.sentences:
                best = (epoch + 1, scoreD["f1"], self.snapshot(model))
        totalSeconds = self.__timeFn() - startAll
        if best is not None:
            self.restore(model, best[2])
        return TrainResult(model=model, metrics=metricL, bestEpoch=best[0] if best else 0, bestDevF1=best[1] if best else 0.0, totalSeconds=totalSeconds)

    def snapshot(self, model):
        arrD = {name: arr.copy() for name, arr in model.registry.items()}
        memD = copy.deepcopy(model.store.toArrays()) if model.store is not None else None
        return arrD, memD

    def restore(self, model, snap):
        arrD, memD = snap
        for name, arr in arrD.items():
            model.registry.set(name, arr)
        if memD is not None:
            model.store.keys[...] = memD["memory.keys"]
            model.store.values[...] = memD["memory.values"]
            model.store.initialized[...] = memD["memory.initialized"].astype(bool)
