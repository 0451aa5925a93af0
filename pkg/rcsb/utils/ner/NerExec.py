##
# File: NerExec.py
# Date: 18-Oct-2026
#
#  Execution wrapper  --  train / eval / predict / inspect-memory / ablate / synthesize
#
#  Updates:
#
##
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import argparse
import hashlib
import logging
import os
import sys
import time
from dataclasses import dataclass, field, asdict

from rcsb.utils.io.MarshalUtil import MarshalUtil

from rcsb.utils.ner import __version__
from rcsb.utils.ner.ConllCorpus import ConllCorpus, Corpus, Sentence, Token
from rcsb.utils.ner.EmbeddingUtils import EmbeddingUtils
from rcsb.utils.ner.NerAblationMp import NerAblationMp, ablationGrid
from rcsb.utils.ner.NerCheckpoint import NerCheckpoint
from rcsb.utils.ner.NerDataset import NerDataset
from rcsb.utils.ner.NerErrors import ConfigurationError, DataError, NerError
from rcsb.utils.ner.NerEval import NerEval
from rcsb.utils.ner.NerTrainer import NerTrainer
from rcsb.utils.ner.RunConfigUtil import RunConfigUtil
from rcsb.utils.ner.SyntheticCorpus import SyntheticCorpus
from rcsb.utils.ner.TagSchemeUtils import TagSchemeUtils

logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s]-%(module)s.%(funcName)s: %(message)s")
logger = logging.getLogger()

COMMANDS = ("train", "eval", "predict", "inspect-memory", "ablate", "synthesize")


@dataclass
class RunManifest:
    command: str
    argv: list
    config: dict
    seed: int
    version: str = __version__
    artifactHash: str = ""
    artifacts: dict = field(default_factory=dict)
    totalSeconds: float = 0.0
    epochSeconds: list = field(default_factory=list)

    def toDict(self):
        return asdict(self)


def hashArtifacts(pathL):
    """SHA-256 over the bytes of the listed files, in order."""
    hObj = hashlib.sha256()
    for path in pathL:
        with open(path, "rb") as ifh:
            for chunk in iter(lambda: ifh.read(1 << 20), b""):
                hObj.update(chunk)
    return hObj.hexdigest()


def buildParser():
    parser = argparse.ArgumentParser(prog="ner_context_cli")
    parser.add_argument("command", choices=COMMANDS, help="Operation")
    parser.add_argument("--config", default=None, help="Run-config file (key = value lines)")
    parser.add_argument("--seed", default=None, type=int, help="Random seed")
    parser.add_argument("--train", default=None, help="Training corpus (CoNLL)")
    parser.add_argument("--dev", default=None, help="Development corpus (CoNLL)")
    parser.add_argument("--test", default=None, help="Test or evaluation corpus (CoNLL)")
    parser.add_argument("--embeddings", default=None, help="Pre-trained word embedding file")
    parser.add_argument("--out-dir", default=".", help="Output directory")
    parser.add_argument("--checkpoint", default=None, help="Checkpoint path (default <out-dir>/model.ckpt)")
    parser.add_argument("--input", default=None, help="Prediction input file")
    parser.add_argument("--input-format", default="conll", choices=("conll", "tokens"), help="Prediction input format")
    parser.add_argument("--word", default=None, help="Word for inspect-memory")
    parser.add_argument("--epochs", default=None, type=int, help="Training epochs")
    parser.add_argument("--sentence", default=None, choices=("off", "mean", "label-attn"), help="Sentence-level representation")
    parser.add_argument("--attn-kernel", default=None, type=int, help="Label attention window size")
    parser.add_argument("--document", default=None, choices=("off", "on"), help="Document-level memory")
    parser.add_argument("--compat", default=None, choices=("dot", "scaled", "scaled_dot", "cosine"), help="Memory compatibility function")
    parser.add_argument("--lambda", dest="fusion_lambda", default=None, type=float, help="Fusion weight of the encoder state")
    parser.add_argument("--max-memory", default=None, type=int, help="Maximum memory subset size")
    parser.add_argument("--exclude-self", default=None, choices=("true", "false"), help="Exclude the querying occurrence from its memory subset")
    parser.add_argument("--grid", default="components,strategies", help="Ablation grids (components,strategies,memory)")
    parser.add_argument("--grid-max-memory", default="10,50,100,500", help="Memory sizes of the memory grid")
    parser.add_argument("--grid-lambda", default=None, help="Fusion weights added to the ablation grid")
    parser.add_argument("--ambiguous", default=None, help="Ambiguous form list scored separately in ablations")
    parser.add_argument("--num-proc", default=1, type=int, help="Worker processes for ablation grid points")
    parser.add_argument("--num-train", default=2000, type=int, help="Synthetic training sentences")
    parser.add_argument("--num-dev", default=200, type=int, help="Synthetic development sentences")
    parser.add_argument("--num-test", default=200, type=int, help="Synthetic test sentences")
    return parser


class NerExec(object):
    def __init__(self, args, argv=None):
        self.__args = args
        self.__argv = list(argv) if argv is not None else []
        self.__outDir = args.out_dir
        self.__mU = MarshalUtil(workPath=self.__outDir)
        self.__eval = NerEval()
        self.__tsU = TagSchemeUtils()

    def __overrides(self):
        args = self.__args
        compat = "scaled_dot" if args.compat == "scaled" else args.compat
        return {
            "seed": args.seed,
            "epochs": args.epochs,
            "sentence": args.sentence,
            "attn_kernel": args.attn_kernel,
            "document": args.document,
            "compat": compat,
            "fusion_lambda": args.fusion_lambda,
            "t_max": args.max_memory,
            "exclude_self": None if args.exclude_self is None else args.exclude_self == "true",
        }

    def __checkpointPath(self):
        return self.__args.checkpoint or os.path.join(self.__outDir, "model.ckpt")

    def __path(self, fileName):
        return os.path.join(self.__outDir, fileName)

    def __writeManifest(self, manifest):
        ok = self.__mU.doExport(self.__path("run-manifest-%s.json" % manifest.command), manifest.toDict(), fmt="json", indent=3)
        logger.info("Wrote run manifest (%r)", ok)
        return ok

    def loadConfig(self):
        config = RunConfigUtil().readConfig(self.__args.config, overrides=self.__overrides())
        if self.__args.embeddings and not os.access(self.__args.embeddings, os.R_OK):
            raise ConfigurationError("embedding file %r is not readable" % self.__args.embeddings)
        return config

    def cmdTrain(self):
        """Train, save the checkpoint and write per-epoch metrics and the run manifest."""
        args = self.__args
        config = self.loadConfig()
        dataset, config = NerDataset.load(config, args.train, args.dev, args.test, args.embeddings)
        self.__mU.mkdir(self.__outDir)
        RunConfigUtil().writeConfig(config, self.__path("run-config.txt"))
        trainer = NerTrainer(config)
        result = trainer.train(dataset.train, dataset.dev, dataset.embTable, dataset.wordVocab, dataset.trainVocab, dataset.charVocab)
        ckptPath = self.__checkpointPath()
        NerCheckpoint().save(result.model, ckptPath, extra={"best_epoch": result.bestEpoch, "best_dev_f1": result.bestDevF1})
        lineL = []
        for row in result.metrics:
            for ky, val in row.toDict().items():
                if ky in ("epoch", "seconds"):
                    continue
                lineL.append("epoch.%03d.%s=%s" % (row.epoch, ky, ("%.6f" % val) if isinstance(val, float) else val))
        lineL.append("best_epoch=%d" % result.bestEpoch)
        lineL.append("best_dev_f1=%.2f" % result.bestDevF1)
        metricsPath = self.__path("train-metrics.txt")
        self.__eval.writeMetrics(metricsPath, lineL)
        artifactL = [ckptPath, metricsPath]
        if dataset.test.sentences:
            artifactL.append(self.evaluate(result.model, dataset.test, dataset.embVocab, "test-metrics.txt"))
        manifest = RunManifest(
            command="train",
            argv=self.__argv,
            config=config.toDict(),
            seed=config.seed,
            artifactHash=hashArtifacts(artifactL),
            artifacts={os.path.basename(p): p for p in artifactL},
            totalSeconds=result.totalSeconds,
            epochSeconds=[row.seconds for row in result.metrics],
        )
        self.__writeManifest(manifest)
        return result

    def evaluate(self, model, corpus, embVocab, fileName):
        predL = model.predictCorpus(corpus)
        goldL = corpus.tagSequences()
        scoreD = self.__eval.f1Score(self.__eval.corpusSpans(goldL), self.__eval.corpusSpans(predL))
        breakdownD = self.__eval.oovBreakdown(corpus, model.trainVocab, embVocab, goldL, predL) if embVocab is not None else None
        report = self.__eval.conllevalReport(goldL, predL)
        sys.stdout.write(report)
        metricsPath = self.__path(fileName)
        self.__eval.writeMetrics(metricsPath, self.__eval.metricLines(scoreD, breakdownD=breakdownD))
        return metricsPath

    def cmdEval(self):
        """Score a checkpoint on a corpus (overall, per type and per vocabulary category)."""
        args = self.__args
        if not args.test:
            raise DataError("no evaluation corpus given (--test)")
        model, _ = NerCheckpoint().load(self.__checkpointPath())
        corpus = ConllCorpus(scheme="BIO").readConll(args.test)
        embVocab = None
        if args.embeddings:
            eU = EmbeddingUtils()
            embVocab = eU.loadEmbeddingVocab(args.embeddings, eU.embeddingDim(args.embeddings), lowercase=model.config.lowercase, zeroDigits=model.config.zero_digits)
        self.__mU.mkdir(self.__outDir)
        metricsPath = self.evaluate(model, corpus, embVocab, "eval-metrics.txt")
        self.__writeManifest(RunManifest(command="eval", argv=self.__argv, config=model.config.toDict(), seed=model.config.seed, artifactHash=hashArtifacts([metricsPath])))
        return metricsPath

    def readTokens(self, filePath):
        """Plain token input: one whitespace-tokenized sentence per line."""
        sentL = []
        with open(filePath, "r", encoding="utf-8") as ifh:
            for line in ifh:
                words = line.split()
                if words:
                    sentL.append(Sentence(tokens=[Token(surface=w, tag="O") for w in words], sentenceId=len(sentL)))
        return Corpus(sentences=sentL, filePath=filePath)

    def cmdPredict(self):
        """Tag an input file and write BIO predictions in CoNLL columns."""
        args = self.__args
        inPath = args.input or args.test
        if not inPath or not os.access(inPath, os.R_OK):
            raise DataError("prediction input %r is not readable" % inPath)
        model, _ = NerCheckpoint().load(self.__checkpointPath())
        if args.input_format == "tokens":
            corpus = self.readTokens(inPath)
        else:
            corpus = ConllCorpus(scheme="BIO").readConll(inPath)
        predL = model.predictCorpus(corpus)
        for tags in predL:
            self.__tsU.validateTags(tags, scheme="BIO")
        self.__mU.mkdir(self.__outDir)
        outPath = self.__path("predictions.txt")
        if args.input_format == "tokens":
            outCorpus = Corpus(sentences=[sent.withTags(tags) for sent, tags in zip(corpus.sentences, predL)])
            ConllCorpus().writeConll(outCorpus, outPath)
        else:
            ConllCorpus().writeConll(corpus, outPath, extraColumns=predL)
        self.__writeManifest(RunManifest(command="predict", argv=self.__argv, config=model.config.toDict(), seed=model.config.seed, artifactHash=hashArtifacts([outPath])))
        logger.info("Wrote %d tagged sentences to %s", len(predL), outPath)
        return outPath

    def cmdInspectMemory(self):
        """Inverted-index entry of a word with the source sentence of every slot."""
        word = self.__args.word
        if not word:
            raise ConfigurationError("inspect-memory needs --word")
        model, _ = NerCheckpoint().load(self.__checkpointPath())
        lineL = inspectMemory(model, word)
        for line in lineL:
            sys.stdout.write(line + "\n")
        return lineL

    def cmdAblate(self):
        """Run the ablation grid and write the text table, the CSV and the memory size CSV."""
        args = self.__args
        config = self.loadConfig()
        dataset, config = NerDataset.load(config, args.train, args.dev, args.test, args.embeddings)
        if not dataset.test.sentences:
            raise DataError("ablation needs a test corpus (--test)")
        kinds = [k.strip() for k in args.grid.split(",") if k.strip()]
        memL = [int(v) for v in args.grid_max_memory.split(",") if v.strip()]
        lamL = [float(v) for v in args.grid_lambda.split(",") if v.strip()] if args.grid_lambda else None
        gridD = ablationGrid(kinds=kinds, maxMemoryList=memL, lambdaList=lamL)
        forms = None
        if args.ambiguous:
            forms = {word for line in self.__mU.doImport(args.ambiguous, fmt="list") or [] for word in line.split("\t")[0].split()}
        paths = {"trainPath": args.train, "devPath": args.dev, "testPath": args.test, "embeddingPath": args.embeddings}
        startTime = time.time()
        rowL = NerAblationMp().runGrid(gridD, config, dataset=dataset, paths=paths, forms=forms, numProc=args.num_proc)
        self.__mU.mkdir(self.__outDir)
        csvPath = self.__path("ablation.csv")
        self.__mU.doExport(csvPath, rowL, fmt="csv")
        tablePath = self.__path("ablation.txt")
        self.__mU.doExport(tablePath, ablationTable(rowL), fmt="list")
        artifactL = [csvPath, tablePath]
        memRowL = [{"t_max": row["t_max"], "f1": row["f1"], "time_ratio": row["time_ratio"]} for row in rowL if row["name"].startswith("max-memory-")]
        if memRowL:
            memPath = self.__path("memory-size.csv")
            self.__mU.doExport(memPath, memRowL, fmt="csv")
            artifactL.append(memPath)
        self.__writeManifest(
            RunManifest(command="ablate", argv=self.__argv, config=config.toDict(), seed=config.seed, artifactHash=hashArtifacts(artifactL), totalSeconds=time.time() - startTime)
        )
        return rowL

    def cmdSynthesize(self):
        """Write the synthetic train/dev/test corpora and embedding file."""
        args = self.__args
        seed = args.seed if args.seed is not None else 1
        sC = SyntheticCorpus(seed=seed)
        pathD = sC.writeCorpora(self.__outDir, sC.generate(numTrain=args.num_train, numDev=args.num_dev, numTest=args.num_test))
        self.__writeManifest(RunManifest(command="synthesize", argv=self.__argv, config={}, seed=seed, artifactHash=hashArtifacts(list(pathD.values())), artifacts=pathD))
        return pathD

    def run(self):
        dispatchD = {
            "train": self.cmdTrain,
            "eval": self.cmdEval,
            "predict": self.cmdPredict,
            "inspect-memory": self.cmdInspectMemory,
            "ablate": self.cmdAblate,
            "synthesize": self.cmdSynthesize,
        }
        return dispatchD[self.__args.command]()


def inspectMemory(model, word):
    """Report lines for the memory slots of a word (the surface form is normalized first)."""
    store = model.store
    if store is None:
        return ["model has no document memory"]
    wordId = model.trainVocab.lookup(word)
    posA = store.slotsForWord(wordId) if wordId != model.trainVocab.unkIndex else []
    if len(posA) == 0:
        return ["no slots for %r" % word]
    lineL = ["%s: [%s]" % (word, ", ".join(str(int(p)) for p in posA))]
    for pos in posA:
        sN = int(store.sentenceIds[pos])
        text = store.sentences[sN] if sN < len(store.sentences) else ""
        lineL.append("%d\t%s\t%s" % (int(pos), "initialized" if store.initialized[pos] else "empty", text))
    return lineL


def ablationTable(rowL):
    lineL = ["%-22s %9s %9s %9s %8s %8s" % ("configuration", "precision", "recall", "F1", "ERR", "time")]
    for row in rowL:
        lineL.append("%-22s %9.2f %9.2f %9.2f %8.2f %8.3f" % (row["name"], row["precision"], row["recall"], row["f1"], row["err"], row["time_ratio"]))
    return lineL


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = buildParser()
    args = parser.parse_args(argv)
    #
    try:
        NerExec(args, argv=argv).run()
    except NerError as e:
        logger.error("Failing with %s (%s)", str(e), e.errorCode)
        return e.exitCode
    except Exception as e:
        logger.exception("Failing with %s", str(e))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
