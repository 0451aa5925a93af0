##
# File:    NerEval.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Entity-level scoring with conlleval chunk semantics and the vocabulary category breakdown.

Scores are percentages.  An entity is correct only when its (type, start, end) matches a gold
entity exactly.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import collections
import logging
from dataclasses import dataclass

from rcsb.utils.io.MarshalUtil import MarshalUtil

from rcsb.utils.ner.NerErrors import DataError
from rcsb.utils.ner.TagSchemeUtils import TagSchemeUtils

logger = logging.getLogger(__name__)

VOCAB_CATEGORIES = ("IV", "OOTV", "OOEV", "OOBV")


@dataclass(frozen=True, order=True)
class EntitySpan:
    type: str
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise DataError("entity span start %d is after end %d" % (self.start, self.end))


def prf(correct, predicted, gold):
    """Precision, recall and F1 in percent (0 where undefined)."""
    precision = 100.0 * correct / predicted if predicted else 0.0
    recall = 100.0 * correct / gold if gold else 0.0
    f1 = 2.0 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def errorRateReduction(f1, baseF1):
    """Relative error reduction of f1 over a baseline, in percent."""
    if baseF1 >= 100.0:
        return 0.0
    return 100.0 * (f1 - baseF1) / (100.0 - baseF1)


class NerEval(object):
    def __init__(self, **kwargs):
        self.__tsU = TagSchemeUtils()
        self.__mU = MarshalUtil(workPath=kwargs.get("workPath", "."))

    def entitySpans(self, tags):
        """Entity spans of a BIO sequence; a stray I- starts a new entity."""
        return {EntitySpan(tp, start, end) for tp, start, end in self.__tsU.repairSpans(tags)}

    def corpusSpans(self, tagSequences):
        return [self.entitySpans(tags) for tags in tagSequences]

    def restrictSpans(self, corpus, spanSets, forms):
        """Keep the spans whose tokens all belong to the input surface forms."""
        spanL = []
        for sent, spanS in zip(corpus.sentences, spanSets):
            surfaces = sent.surfaces
            spanL.append({sp for sp in spanS if all(surfaces[ii] in forms for ii in range(sp.start, sp.end + 1))})
        return spanL

    def f1Score(self, goldSpans, predSpans):
        """Micro precision/recall/F1 over aligned sentence span sets plus a per-type breakdown.

        Args:
            goldSpans (list): gold span set per sentence
            predSpans (list): predicted span set per sentence

        Raises:
            DataError: the sentence lists differ in length

        Returns:
            (dict): precision, recall, f1, counts and "types" (type -> same fields)
        """
        if len(goldSpans) != len(predSpans):
            raise DataError("gold and predicted sentence counts differ (%d != %d)" % (len(goldSpans), len(predSpans)))
        countD = collections.defaultdict(lambda: [0, 0, 0])
        for gS, pS in zip(goldSpans, predSpans):
            for span in gS:
                countD[span.type][2] += 1
            for span in pS:
                countD[span.type][1] += 1
            for span in gS & pS:
                countD[span.type][0] += 1
        correct = sum(v[0] for v in countD.values())
        predicted = sum(v[1] for v in countD.values())
        gold = sum(v[2] for v in countD.values())
        rD = self.__scoreDict(correct, predicted, gold)
        rD["types"] = {tp: self.__scoreDict(*countD[tp]) for tp in sorted(countD)}
        return rD

    def __scoreDict(self, correct, predicted, gold):
        precision, recall, f1 = prf(correct, predicted, gold)
        return {"precision": precision, "recall": recall, "f1": f1, "correct": correct, "predicted": predicted, "gold": gold}

    def tokenCategory(self, surface, trainVocab, embVocab):
        inTrain = trainVocab.normalize(surface) in trainVocab
        inEmb = embVocab.normalize(surface) in embVocab
        if inTrain and inEmb:
            return "IV"
        if inEmb:
            return "OOTV"
        if inTrain:
            return "OOEV"
        return "OOBV"

    def entityCategory(self, surfaces, span, trainVocab, embVocab):
        """Worst token category of the entity (OOBV > OOEV > OOTV > IV)."""
        catL = [self.tokenCategory(surfaces[ii], trainVocab, embVocab) for ii in range(span.start, span.end + 1)]
        return max(catL, key=VOCAB_CATEGORIES.index)

    def oovBreakdown(self, corpus, trainVocab, embVocab, goldTags, predTags):
        """Scores per vocabulary category (IV, OOTV, OOEV, OOBV).

        Args:
            corpus (Corpus): evaluated corpus (token surfaces)
            trainVocab (Vocab): training vocabulary
            embVocab (Vocab): pre-trained embedding vocabulary
            goldTags (list): gold BIO tag sequences
            predTags (list): predicted BIO tag sequences

        Returns:
            (dict): category -> score dict as in f1Score()
        """
        if not len(corpus.sentences) == len(goldTags) == len(predTags):
            raise DataError("corpus, gold and predicted sentence counts differ")
        goldD = {cat: [] for cat in VOCAB_CATEGORIES}
        predD = {cat: [] for cat in VOCAB_CATEGORIES}
        for sent, gT, pT in zip(corpus.sentences, goldTags, predTags):
            surfaces = sent.surfaces
            for catD, tags in ((goldD, gT), (predD, pT)):
                spanD = {cat: set() for cat in VOCAB_CATEGORIES}
                for span in self.entitySpans(tags):
                    spanD[self.entityCategory(surfaces, span, trainVocab, embVocab)].add(span)
                for cat in VOCAB_CATEGORIES:
                    catD[cat].append(spanD[cat])
        return {cat: self.f1Score(goldD[cat], predD[cat]) for cat in VOCAB_CATEGORIES}

    def tokenAccuracy(self, goldTags, predTags):
        total = sum(len(tags) for tags in goldTags)
        same = sum(1 for gT, pT in zip(goldTags, predTags) for g, p in zip(gT, pT) if g == p)
        return 100.0 * same / total if total else 0.0

    def conllevalReport(self, goldTags, predTags):
        """Report text in the conlleval layout."""
        scoreD = self.f1Score(self.corpusSpans(goldTags), self.corpusSpans(predTags))
        numTokens = sum(len(tags) for tags in goldTags)
        lineL = [
            "processed %d tokens with %d phrases; found: %d phrases; correct: %d." % (numTokens, scoreD["gold"], scoreD["predicted"], scoreD["correct"]),
            "accuracy: %6.2f%%; precision: %6.2f%%; recall: %6.2f%%; FB1: %6.2f"
            % (self.tokenAccuracy(goldTags, predTags), scoreD["precision"], scoreD["recall"], scoreD["f1"]),
        ]
        for tp, tD in scoreD["types"].items():
            lineL.append("%17s: precision: %6.2f%%; recall: %6.2f%%; FB1: %6.2f  %d" % (tp, tD["precision"], tD["recall"], tD["f1"], tD["predicted"]))
        return "\n".join(lineL) + "\n"

    def metricLines(self, scoreD, prefix="", breakdownD=None):
        """Flatten scores into sorted key=value lines."""
        rowD = {}
        for ky in ("precision", "recall", "f1"):
            rowD[prefix + ky] = "%.2f" % scoreD[ky]
        for ky in ("correct", "predicted", "gold"):
            rowD[prefix + ky] = "%d" % scoreD[ky]
        for tp, tD in scoreD.get("types", {}).items():
            for ky in ("precision", "recall", "f1"):
                rowD["%stype.%s.%s" % (prefix, tp, ky)] = "%.2f" % tD[ky]
        for cat, cD in (breakdownD or {}).items():
            for ky in ("precision", "recall", "f1"):
                rowD["%s%s.%s" % (prefix, cat, ky)] = "%.2f" % cD[ky]
            rowD["%s%s.gold" % (prefix, cat)] = "%d" % cD["gold"]
        return ["%s=%s" % (ky, rowD[ky]) for ky in sorted(rowD)]

    def writeMetrics(self, filePath, lineL):
        ok = self.__mU.doExport(filePath, lineL, fmt="list")
        logger.info("Wrote %d metric lines (%r) to %s", len(lineL), ok, filePath)
        return ok

    def readMetrics(self, filePath):
        rD = collections.OrderedDict()
        for line in self.__mU.doImport(filePath, fmt="list") or []:
            ky, sep, val = line.partition("=")
            if sep:
                rD[ky.strip()] = val.strip()
        return rD

    def readPredictions(self, filePath):
        """Read a token/gold/prediction column file (gold second to last, prediction last column).

        Returns:
            (list, list, list): token, gold tag and predicted tag sequences per sentence
        """
        tokL, goldL, predL = [], [], []
        cur = ([], [], [])
        with open(filePath, "r", encoding="utf-8") as ifh:
            lineL = ifh.read().splitlines()
        for lineNo, line in enumerate(lineL, 1):
            fields = line.split()
            if not fields or fields[0] == "-DOCSTART-":
                if cur[0]:
                    tokL.append(cur[0])
                    goldL.append(cur[1])
                    predL.append(cur[2])
                cur = ([], [], [])
                continue
            if len(fields) < 3:
                raise DataError("%s:%d: expected token, gold and predicted columns" % (filePath, lineNo))
            cur[0].append(fields[0])
            cur[1].append(fields[-2])
            cur[2].append(fields[-1])
        if cur[0]:
            tokL.append(cur[0])
            goldL.append(cur[1])
            predL.append(cur[2])
        return tokL, goldL, predL
