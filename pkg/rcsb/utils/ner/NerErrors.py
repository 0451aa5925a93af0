##
# File:    NerErrors.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Exception hierarchy for the sequence labeling toolkit.

Each class carries a stable ``errorCode`` string and the process ``exitCode`` used by the CLI
(1 configuration, 2 data, 3 numeric abort).
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"


class NerError(Exception):
    errorCode = "NER_ERROR"
    exitCode = 1

    def __init__(self, msg, **kwargs):
        super(NerError, self).__init__(msg)
        self.details = kwargs


class ConfigurationError(NerError):
    errorCode = "CONFIG_ERROR"
    exitCode = 1


class DataError(NerError):
    errorCode = "DATA_ERROR"
    exitCode = 2


class ConllParseError(DataError):
    errorCode = "CONLL_PARSE_ERROR"

    def __init__(self, msg, filePath=None, lineNumber=None):
        super(ConllParseError, self).__init__("%s:%r: %s" % (filePath, lineNumber, msg), filePath=filePath, lineNumber=lineNumber)
        self.filePath = filePath
        self.lineNumber = lineNumber


class TagSchemeError(DataError):
    errorCode = "TAG_SCHEME_ERROR"

    def __init__(self, msg, index=None):
        super(TagSchemeError, self).__init__("invalid tag at index %r: %s" % (index, msg), index=index)
        self.index = index


class EmbeddingFormatError(DataError):
    errorCode = "EMBEDDING_FORMAT_ERROR"

    def __init__(self, msg, filePath=None, lineNumber=None):
        super(EmbeddingFormatError, self).__init__("%s:%r: %s" % (filePath, lineNumber, msg), filePath=filePath, lineNumber=lineNumber)
        self.filePath = filePath
        self.lineNumber = lineNumber


class LabelEmbeddingError(DataError):
    errorCode = "LABEL_EMBEDDING_ERROR"

    def __init__(self, msg, labelType=None):
        super(LabelEmbeddingError, self).__init__("label type %r: %s" % (labelType, msg), labelType=labelType)
        self.labelType = labelType


class NumericError(NerError):
    errorCode = "NUMERIC_ERROR"
    exitCode = 3

    def __init__(self, msg, name=None):
        super(NumericError, self).__init__("%s (%s)" % (msg, name) if name else msg, name=name)
        self.name = name


class MemoryIndexError(NerError):
    errorCode = "MEMORY_INDEX_ERROR"
    exitCode = 2


class CheckpointError(NerError):
    errorCode = "CHECKPOINT_ERROR"
    exitCode = 2


class CheckpointVersionError(CheckpointError):
    errorCode = "CHECKPOINT_VERSION_ERROR"


class CheckpointCorruptionError(CheckpointError):
    errorCode = "CHECKPOINT_CORRUPTION_ERROR"
