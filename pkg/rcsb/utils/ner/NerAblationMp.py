##
#
# File:    NerAblationMp.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Ablation grid runs, sequential or as independent worker processes.

Every grid point trains from the same seed and data order with a few configuration fields
overridden and is scored on the test corpus.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

# pylint: disable=redefined-outer-name

import collections
import logging
import time

from rcsb.utils.multiproc.MultiProcUtil import MultiProcUtil

from rcsb.utils.ner.NerDataset import NerDataset
from rcsb.utils.ner.NerEval import NerEval, errorRateReduction
from rcsb.utils.ner.NerTrainer import NerTrainer, TrainConfig

logger = logging.getLogger(__name__)

COMPONENT_POINTS = collections.OrderedDict(
    [
        ("base", {"sentence": "off", "document": "off"}),
        ("+sentence", {"sentence": "label-attn", "document": "off"}),
        ("+document", {"sentence": "off", "document": "on"}),
        ("+both", {"sentence": "label-attn", "document": "on"}),
    ]
)
STRATEGY_POINTS = collections.OrderedDict(
    [
        ("sentence-mean", {"sentence": "mean", "document": "off"}),
        ("sentence-label-attn", {"sentence": "label-attn", "document": "off"}),
        ("document-dot", {"sentence": "off", "document": "on", "compat": "dot"}),
        ("document-scaled_dot", {"sentence": "off", "document": "on", "compat": "scaled_dot"}),
        ("document-cosine", {"sentence": "off", "document": "on", "compat": "cosine"}),
    ]
)


def ablationGrid(kinds=("components", "strategies"), maxMemoryList=None, lambdaList=None):
    """Ordered point name -> configuration overrides; the first point is the comparison baseline."""
    gridD = collections.OrderedDict(COMPONENT_POINTS)
    if "strategies" in kinds:
        gridD.update(STRATEGY_POINTS)
    for lam in lambdaList or []:
        gridD["lambda-%g" % lam] = {"sentence": "off", "document": "on", "fusion_lambda": lam}
    if "memory" in kinds:
        for tMax in maxMemoryList or [10, 50, 100, 500]:
            gridD["max-memory-%d" % tMax] = {"sentence": "off", "document": "on", "t_max": tMax}
    return gridD


class NerAblationWorker(object):
    """Train and score grid points on one dataset."""

    def __init__(self, dataset=None, forms=None, verbose=True):
        self.__dataset = dataset
        self.__forms = set(forms or [])
        self.__verbose = verbose
        self.__eval = NerEval()

    def runPoint(self, name, baseConfig, overrides):
        """Result row for one grid point."""
        ds = self.__dataset
        config = baseConfig.replace(**overrides)
        trainer = NerTrainer(config)
        result = trainer.train(ds.train, ds.dev, ds.embTable, ds.wordVocab, ds.trainVocab, ds.charVocab)
        predL = result.model.predictCorpus(ds.test)
        goldS = self.__eval.corpusSpans(ds.test.tagSequences())
        predS = self.__eval.corpusSpans(predL)
        scoreD = self.__eval.f1Score(goldS, predS)
        epochSeconds = [row.seconds for row in result.metrics]
        row = collections.OrderedDict(
            [
                ("name", name),
                ("sentence", config.sentence),
                ("document", config.document),
                ("compat", config.compat),
                ("lambda", config.fusion_lambda),
                ("t_max", config.t_max),
                ("precision", round(scoreD["precision"], 2)),
                ("recall", round(scoreD["recall"], 2)),
                ("f1", round(scoreD["f1"], 2)),
                ("best_epoch", result.bestEpoch),
                ("epoch_seconds", sum(epochSeconds) / len(epochSeconds) if epochSeconds else 0.0),
                ("train_seconds", result.totalSeconds),
            ]
        )
        if self.__forms:
            ambD = self.__eval.f1Score(self.__eval.restrictSpans(ds.test, goldS, self.__forms), self.__eval.restrictSpans(ds.test, predS, self.__forms))
            row["ambiguous_f1"] = round(ambD["f1"], 2)
        logger.info("Grid point %s test F1 %.2f", name, scoreD["f1"])
        return row

    def run(self, dataList, procName, optionsD, workingDir):
        """MultiProcUtil worker method: dataList holds grid point names."""
        _ = workingDir
        startTime = time.time()
        logger.info("starting %s at %s", procName, time.strftime("%Y %m %d %H:%M:%S", time.localtime()))
        successList = []
        resultList = []
        try:
            baseConfig = TrainConfig.fromDict(optionsD["config"])
            if self.__dataset is None:
                self.__dataset, baseConfig = NerDataset.load(baseConfig, optionsD["trainPath"], optionsD.get("devPath"), optionsD.get("testPath"), optionsD["embeddingPath"])
            for name in dataList:
                try:
                    resultList.append(self.runPoint(name, baseConfig, optionsD["grid"][name]))
                    successList.append(name)
                except Exception as e:
                    logger.exception("Failing for %r with %s", name, str(e))
        except Exception as e:
            logger.exception("Failing with %s", str(e))
        endTime = time.time()
        logger.info(" %s completed at %s (%.2f seconds)", procName, time.strftime("%Y %m %d %H:%M:%S", time.localtime()), endTime - startTime)
        return successList, resultList, []


class NerAblationMp(object):
    def __init__(self, verbose=True):
        self.__verbose = verbose

    def runGrid(self, gridD, baseConfig, dataset=None, paths=None, forms=None, numProc=1):
        """Run every grid point and return result rows in grid order with the ERR column.

        Args:
            gridD (OrderedDict): point name -> configuration overrides (first point is the baseline)
            baseConfig (TrainConfig): shared configuration
            dataset (NerDataset, optional): loaded data for sequential runs
            paths (dict, optional): trainPath/devPath/testPath/embeddingPath for worker processes
            forms (set, optional): ambiguous surface forms scored separately
            numProc (int, optional): worker processes (1 runs in process). Defaults to 1.

        Returns:
            (list): result rows
        """
        optionsD = {"config": baseConfig.toDict(), "grid": dict(gridD)}
        optionsD.update(paths or {})
        nameL = list(gridD.keys())
        if numProc <= 1:
            worker = NerAblationWorker(dataset=dataset, forms=forms, verbose=self.__verbose)
            _, rowL, _ = worker.run(nameL, "sequential", optionsD, None)
        else:
            worker = NerAblationWorker(forms=forms, verbose=self.__verbose)
            mpu = MultiProcUtil(verbose=True)
            mpu.setOptions(optionsD=optionsD)
            mpu.set(workerObj=worker, workerMethod="run")
            ok, failList, resultList, _ = mpu.runMulti(dataList=nameL, numProc=numProc, numResults=1, chunkSize=1)
            logger.info("run ended status %r success count %d failures %r", ok, len(resultList[0]), len(failList))
            rowD = {row["name"]: row for row in resultList[0]}
            rowL = [rowD[name] for name in nameL if name in rowD]
        return self.addRatios(rowL)

    def addRatios(self, rowL):
        """ERR against the first row and per-epoch time ratio against the first memory-off row."""
        if not rowL:
            return rowL
        baseF1 = rowL[0]["f1"]
        offL = [row for row in rowL if row["document"] == "off"]
        baseTime = offL[0]["epoch_seconds"] if offL else 0.0
        for row in rowL:
            row["err"] = round(errorRateReduction(row["f1"], baseF1), 2)
            row["time_ratio"] = round(row["epoch_seconds"] / baseTime, 3) if baseTime > 0 else 0.0
        return rowL
