##
# File:    SyntheticCorpus.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Seeded generator of a small annotated corpus for end-to-end training checks.

Four entity types (PER, LOC, ORG, MISC) are signalled by local context templates.  A set of
ambiguous surface forms keeps one fixed type across the whole dataset but mostly appears in
neutral templates, so only other occurrences of the same word reveal its type.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging
import os

import numpy as np
from rcsb.utils.io.MarshalUtil import MarshalUtil

from rcsb.utils.ner.ConllCorpus import ConllCorpus, Corpus, Sentence, Token
from rcsb.utils.ner.EmbeddingUtils import EmbeddingUtils
from rcsb.utils.ner.NerErrors import ConfigurationError
from rcsb.utils.ner.NerEval import NerEval

logger = logging.getLogger(__name__)

ENTITY_TYPES = ("PER", "LOC", "ORG", "MISC")

TEMPLATES = {
    "PER": [
        "mr. {E} said on {D} that the plan would work",
        "spokesman {E} told reporters the talks went well",
        "{E} scored twice for the team on {D}",
        "the minister met {E} at the summit",
        "coach {E} praised the players after the match",
    ],
    "LOC": [
        "flights to {E} were cancelled on {D}",
        "the storm hit {E} late in the evening",
        "troops arrived in {E} after the talks",
        "prices in {E} rose sharply this year",
        "the embassy in {E} issued a warning",
    ],
    "ORG": [
        "shares of {E} rose {N} percent on {D}",
        "{E} corp reported a quarterly profit",
        "analysts expect {E} to cut jobs",
        "the board of {E} approved the merger",
        "{E} said its sales fell last quarter",
    ],
    "MISC": [
        "the {E} championship starts on {D}",
        "fans of {E} music gathered in the square",
        "the {E} language is spoken by many people",
        "he won the {E} award for his film",
        "the {E} festival drew large crowds",
    ],
}

NEUTRAL_TEMPLATES = [
    "{E} was mentioned again in the report",
    "reports about {E} continued on {D}",
    "many people talked about {E} this week",
    "the news on {E} came as a surprise",
]

SYLLABLES = ["ka", "lo", "mi", "ren", "to", "va", "sel", "dor", "an", "bri", "cu", "fen", "gar", "hil", "jo", "mar", "nel", "pol", "quin", "sor"]
DATES = ["monday", "tuesday", "friday", "1996-08-24", "22/10/97", "june"]
NUMBERS = ["2", "4.5", "10", "17"]


class SyntheticCorpus(object):
    """Generate train/dev/test corpora with context-typed and ambiguous entities.

    Args:
        seed (int): generator seed
        namesPerType (int): distinct context-typed names per entity type
        numAmbiguous (int): distinct ambiguous forms (types assigned round robin)
        ambiguousRate (float): fraction of sentences built around an ambiguous form
        typedAmbiguousRate (float): fraction of ambiguous training sentences that use a typed template
    """

    def __init__(self, seed=1, namesPerType=40, numAmbiguous=20, ambiguousRate=0.25, typedAmbiguousRate=0.5):
        if namesPerType < 1 or numAmbiguous < 0 or not 0.0 <= ambiguousRate <= 1.0:
            raise ConfigurationError("invalid synthetic corpus settings")
        self.__seed = seed
        self.__rng = np.random.default_rng(seed)
        self.__ambiguousRate = ambiguousRate
        self.__typedAmbiguousRate = typedAmbiguousRate
        usedS = set()
        self.names = {tp: [self.__newName(usedS, tp) for _ in range(namesPerType)] for tp in ENTITY_TYPES}
        self.ambiguous = {}
        for ii in range(numAmbiguous):
            self.ambiguous[self.__newName(usedS, None)] = ENTITY_TYPES[ii % len(ENTITY_TYPES)]

    def __newName(self, usedS, tp):
        while True:
            num = 2 + int(self.__rng.integers(0, 2))
            word = "".join(SYLLABLES[int(ii)] for ii in self.__rng.integers(0, len(SYLLABLES), size=num)).capitalize()
            if tp == "PER" and self.__rng.random() < 0.3:
                word = word + " " + "".join(SYLLABLES[int(ii)] for ii in self.__rng.integers(0, len(SYLLABLES), size=2)).capitalize()
            if word not in usedS:
                usedS.add(word)
                return word

    @property
    def ambiguousForms(self):
        return sorted(self.ambiguous)

    def ambiguousWords(self):
        return {word for form in self.ambiguous for word in form.split()}

    def __fill(self, template, entity, eType):
        tokL = []
        for part in template.split():
            if part == "{E}":
                words = entity.split()
                for jj, word in enumerate(words):
                    tokL.append(Token(surface=word, tag=("B-" if jj == 0 else "I-") + eType))
            elif part == "{D}":
                tokL.append(Token(surface=DATES[int(self.__rng.integers(0, len(DATES)))], tag="O"))
            elif part == "{N}":
                tokL.append(Token(surface=NUMBERS[int(self.__rng.integers(0, len(NUMBERS)))], tag="O"))
            else:
                tokL.append(Token(surface=part, tag="O"))
        return tokL

    def sentence(self, split):
        """One sentence; ambiguous forms use typed templates only in training."""
        if self.ambiguous and self.__rng.random() < self.__ambiguousRate:
            forms = self.ambiguousForms
            entity = forms[int(self.__rng.integers(0, len(forms)))]
            eType = self.ambiguous[entity]
            if split == "train" and self.__rng.random() < self.__typedAmbiguousRate:
                templates = TEMPLATES[eType]
            else:
                templates = NEUTRAL_TEMPLATES
        else:
            eType = ENTITY_TYPES[int(self.__rng.integers(0, len(ENTITY_TYPES)))]
            names = self.names[eType]
            entity = names[int(self.__rng.integers(0, len(names)))]
            templates = TEMPLATES[eType]
        return self.__fill(templates[int(self.__rng.integers(0, len(templates)))], entity, eType)

    def generate(self, numTrain=2000, numDev=200, numTest=200):
        """Corpora keyed by split name (BIO tags)."""
        corporaD = {}
        for split, num in (("train", numTrain), ("dev", numDev), ("test", numTest)):
            corporaD[split] = Corpus(sentences=[Sentence(tokens=self.sentence(split), sentenceId=ii) for ii in range(num)])
        vocabS = {tok.surface.lower() for corpus in corporaD.values() for sent in corpus.sentences for tok in sent.tokens}
        logger.info("Synthetic corpus train %d dev %d test %d sentences vocabulary %d", numTrain, numDev, numTest, len(vocabS))
        return corporaD

    def ambiguousSpans(self, corpus, tagSequences):
        """Entity spans (per sentence) whose tokens are all ambiguous forms."""
        nE = NerEval()
        return nE.restrictSpans(corpus, nE.corpusSpans(tagSequences), self.ambiguousWords())

    def writeCorpora(self, dirPath, corporaD, embeddingDim=50):
        """Write <split>.txt CoNLL files, embeddings.txt and ambiguous.txt; returns the path dictionary."""
        mU = MarshalUtil(workPath=dirPath)
        mU.mkdir(dirPath)
        cC = ConllCorpus()
        pathD = {}
        for split, corpus in corporaD.items():
            pathD[split] = os.path.join(dirPath, "%s.txt" % split)
            cC.writeConll(corpus, pathD[split])
        words = sorted({tok.surface.lower() for corpus in corporaD.values() for sent in corpus.sentences for tok in sent.tokens})
        eU = EmbeddingUtils(seed=self.__seed + 7, dtype="float64")
        pathD["embeddings"] = os.path.join(dirPath, "embeddings.txt")
        eU.writeEmbeddings(pathD["embeddings"], words, eU.randomRows(len(words), embeddingDim))
        pathD["ambiguous"] = os.path.join(dirPath, "ambiguous.txt")
        mU.doExport(pathD["ambiguous"], ["%s\t%s" % (form, self.ambiguous[form]) for form in self.ambiguousForms], fmt="list")
        return pathD
