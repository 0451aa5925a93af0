##
# File:    ConllCorpus.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Annotated corpus types and CoNLL column-format reader/writer.

The token is taken from the first column and the tag from the last column unless a column map
is provided.  Blank lines separate sentences and -DOCSTART- lines are skipped.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging
import os
from dataclasses import dataclass, field
from typing import List, Tuple

from rcsb.utils.io.MarshalUtil import MarshalUtil
from rcsb.utils.ner.NerErrors import ConllParseError, DataError, TagSchemeError
from rcsb.utils.ner.TagSchemeUtils import TagSchemeUtils

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Token:
    surface: str
    tag: str
    chars: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.surface:
            raise DataError("empty token surface")
        if not self.chars:
            object.__setattr__(self, "chars", tuple(self.surface))


@dataclass
class Sentence:
    tokens: List[Token]
    scheme: str = "BIO"
    sentenceId: int = 0
    lineNumber: int = 0

    @property
    def surfaces(self):
        return [tok.surface for tok in self.tokens]

    @property
    def tags(self):
        return [tok.tag for tok in self.tokens]

    def __len__(self):
        return len(self.tokens)

    def withTags(self, tags, scheme=None):
        tokL = [Token(surface=tok.surface, tag=tag, chars=tok.chars) for tok, tag in zip(self.tokens, tags)]
        return Sentence(tokens=tokL, scheme=scheme or self.scheme, sentenceId=self.sentenceId, lineNumber=self.lineNumber)


@dataclass
class Corpus:
    sentences: List[Sentence] = field(default_factory=list)
    filePath: str = None

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def tokenCount(self):
        return sum(len(sent) for sent in self.sentences)

    def tagSequences(self):
        return [sent.tags for sent in self.sentences]

    def toScheme(self, scheme):
        """Return a copy of the corpus with every tag sequence converted to the input scheme."""
        tsU = TagSchemeUtils()
        sL = []
        for sent in self.sentences:
            if sent.scheme == scheme:
                sL.append(sent)
            else:
                sL.append(sent.withTags(tsU.convertTags(sent.tags, sent.scheme, scheme), scheme=scheme))
        return Corpus(sentences=sL, filePath=self.filePath)


class ConllCorpus(object):
    """Read and write CoNLL column files."""

    def __init__(self, columnMap=None, scheme="BIO", validate=True):
        self.__columnMap = columnMap if columnMap else {"token": 0, "tag": -1}
        self.__scheme = scheme
        self.__validate = validate

    def readConll(self, filePath):
        """Read a CoNLL column file.

        Args:
            filePath (str): input file path

        Raises:
            ConllParseError: for malformed lines or tag sequences (names the line number)

        Returns:
            (Corpus): sentences in document order
        """
        if not os.access(filePath, os.R_OK):
            raise ConllParseError("file not readable", filePath=filePath, lineNumber=0)
        tsU = TagSchemeUtils()
        tokCol = self.__columnMap["token"]
        tagCol = self.__columnMap["tag"]
        sL = []
        tokL = []
        lineL = []
        startLine = 0

        def flush():
            if not tokL:
                return
            if self.__validate:
                try:
                    tsU.validateTags([tok.tag for tok in tokL], scheme=self.__scheme)
                except TagSchemeError as e:
                    raise ConllParseError(str(e), filePath=filePath, lineNumber=lineL[e.index])
            sL.append(Sentence(tokens=list(tokL), scheme=self.__scheme, sentenceId=len(sL), lineNumber=startLine))
            del tokL[:]
            del lineL[:]

        with open(filePath, "r", encoding="utf-8") as ifh:
            for lineNo, line in enumerate(ifh, 1):
                fields = line.split()
                if not fields:
                    flush()
                    continue
                if fields[0] == "-DOCSTART-":
                    flush()
                    continue
                if len(fields) < 2:
                    raise ConllParseError("expected at least two columns, got %r" % line.rstrip("\n"), filePath=filePath, lineNumber=lineNo)
                try:
                    surface = fields[tokCol]
                    tag = fields[tagCol]
                except IndexError:
                    raise ConllParseError("column map %r does not fit line %r" % (self.__columnMap, line.rstrip("\n")), filePath=filePath, lineNumber=lineNo)
                if not tokL:
                    startLine = lineNo
                tokL.append(Token(surface=surface, tag=tag))
                lineL.append(lineNo)
        flush()
        logger.debug("Read %d sentences (%d tokens) from %s", len(sL), sum(len(s) for s in sL), filePath)
        return Corpus(sentences=sL, filePath=filePath)

    def writeConll(self, corpus, filePath, extraColumns=None):
        """Write token and tag columns, optionally followed by extra per-token columns (e.g. predictions).

        Args:
            corpus (Corpus): sentences to write
            filePath (str): output path
            extraColumns (list, optional): per sentence list of per token values. Defaults to None.

        Returns:
            (bool): True for success
        """
        dirPath = os.path.dirname(filePath)
        mU = MarshalUtil(workPath=dirPath or ".")
        if dirPath:
            mU.mkdir(dirPath)
        lineL = []
        for ii, sent in enumerate(corpus.sentences):
            for jj, tok in enumerate(sent.tokens):
                row = [tok.surface, tok.tag]
                if extraColumns is not None:
                    row.append(extraColumns[ii][jj])
                lineL.append(" ".join(row))
            lineL.append("")
        # MarshalUtil list export escapes non-ASCII text
        with open(filePath, "w", encoding="utf-8") as ofh:
            ofh.write("\n".join(lineL) + "\n")
        logger.debug("Wrote %d sentences to %s", len(corpus.sentences), filePath)
        return True
