##
# File:    VocabUtils.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Word and character vocabularies.

Word lookup uses a normalized form (lowercased, digits mapped to '0'); the character encoder
always sees the raw surface.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import collections
import logging
import re

from rcsb.utils.ner.NerErrors import ConfigurationError

logger = logging.getLogger(__name__)

PAD = "<PAD>"
UNK = "<UNK>"
DIGIT_RE = re.compile(r"\d")


def normalizeWord(surface, lowercase=True, zeroDigits=True):
    word = surface.lower() if lowercase else surface
    if zeroDigits:
        word = DIGIT_RE.sub("0", word)
    return word


class Vocab(object):
    """Bijective word <-> index map with PAD (0) and UNK (1) specials."""

    def __init__(self, words=None, lowercase=True, zeroDigits=True):
        self.lowercase = lowercase
        self.zeroDigits = zeroDigits
        self.__itos = [PAD, UNK]
        self.__stoi = {PAD: 0, UNK: 1}
        for word in words or []:
            self.add(word)

    @property
    def padIndex(self):
        return 0

    @property
    def unkIndex(self):
        return 1

    def add(self, word):
        if word not in self.__stoi:
            self.__stoi[word] = len(self.__itos)
            self.__itos.append(word)
        return self.__stoi[word]

    def extend(self, words):
        num = len(self)
        for word in words:
            self.add(word)
        return len(self) - num

    def normalize(self, surface):
        return normalizeWord(surface, lowercase=self.lowercase, zeroDigits=self.zeroDigits)

    def index(self, word):
        return self.__stoi.get(word, 1)

    def lookup(self, surface):
        """Index of the normalized surface form (UNK when absent)."""
        return self.index(self.normalize(surface))

    def word(self, idx):
        return self.__itos[idx]

    def words(self):
        """Non-special entries in index order."""
        return self.__itos[2:]

    def __contains__(self, word):
        return word in self.__stoi and self.__stoi[word] > 1

    def __len__(self):
        return len(self.__itos)

    def __eq__(self, other):
        return isinstance(other, Vocab) and self.toDict() == other.toDict()

    def toDict(self):
        return {"lowercase": self.lowercase, "zero_digits": self.zeroDigits, "words": self.words()}

    @classmethod
    def fromDict(cls, dD):
        return cls(words=dD["words"], lowercase=dD["lowercase"], zeroDigits=dD["zero_digits"])


class VocabUtils(object):
    def __init__(self, lowercase=True, zeroDigits=True):
        self.__lowercase = lowercase
        self.__zeroDigits = zeroDigits

    def buildVocab(self, corpus, minFreq=1):
        """Build the word vocabulary of normalized forms with frequency >= minFreq.

        Entries are ordered by descending frequency, ties broken lexicographically.

        Args:
            corpus (Corpus): annotated corpus
            minFreq (int, optional): minimum occurrence count. Defaults to 1.

        Returns:
            (Vocab): vocabulary with PAD/UNK specials
        """
        if minFreq < 1:
            raise ConfigurationError("min_freq must be >= 1 (got %r)" % minFreq)
        counter = collections.Counter()
        for sent in corpus.sentences:
            counter.update(normalizeWord(tok.surface, lowercase=self.__lowercase, zeroDigits=self.__zeroDigits) for tok in sent.tokens)
        words = [word for word, cnt in sorted(counter.items(), key=lambda t: (-t[1], t[0])) if cnt >= minFreq]
        logger.debug("Vocabulary with %d of %d word types (min_freq %d)", len(words), len(counter), minFreq)
        return Vocab(words=words, lowercase=self.__lowercase, zeroDigits=self.__zeroDigits)

    def buildCharVocab(self, corpus):
        """Character vocabulary over raw surfaces (PAD 0, UNK 1), ordered like buildVocab()."""
        counter = collections.Counter()
        for sent in corpus.sentences:
            for tok in sent.tokens:
                counter.update(tok.chars)
        chars = [ch for ch, _ in sorted(counter.items(), key=lambda t: (-t[1], t[0]))]
        return Vocab(words=chars, lowercase=False, zeroDigits=False)
