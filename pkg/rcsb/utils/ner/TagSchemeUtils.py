##
# File:    TagSchemeUtils.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Span-encoding tag schemes (BIO and BIOES): validation, conversion and tag-set construction.

"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import logging

from rcsb.utils.ner.NerErrors import TagSchemeError, ConfigurationError

logger = logging.getLogger(__name__)

SCHEMES = ("BIO", "BIOES")
OUTSIDE = "O"


def splitTag(tag):
    """Split a tag into (prefix, type), e.g. B-PER -> ("B", "PER"), O -> ("O", None)."""
    if tag == OUTSIDE:
        return OUTSIDE, None
    prefix, sep, tagType = tag.partition("-")
    if not sep or not tagType:
        return None, None
    return prefix, tagType


class TagSchemeUtils(object):
    def __init__(self, **kwargs):
        _ = kwargs

    def checkScheme(self, scheme):
        if scheme not in SCHEMES:
            raise ConfigurationError("unsupported tag scheme %r" % scheme)
        return scheme

    def validateTags(self, tags, scheme="BIO"):
        """Validate a tag sequence under the input scheme.

        Args:
            tags (list): tag strings
            scheme (str, optional): BIO or BIOES. Defaults to "BIO".

        Raises:
            TagSchemeError: naming the first offending index

        Returns:
            (bool): True for valid sequences
        """
        self.checkScheme(scheme)
        allowed = ("B", "I") if scheme == "BIO" else ("B", "I", "E", "S")
        openType = None
        for ii, tag in enumerate(tags):
            prefix, tagType = splitTag(tag)
            if prefix is None or (prefix != OUTSIDE and prefix not in allowed):
                raise TagSchemeError("%r is not a %s tag" % (tag, scheme), index=ii)
            if scheme == "BIO":
                if prefix == "I" and openType != tagType:
                    raise TagSchemeError("%r does not continue an entity of the same type" % tag, index=ii)
                openType = tagType if prefix in ("B", "I") else None
            else:
                if openType is not None:
                    if prefix not in ("I", "E") or tagType != openType:
                        raise TagSchemeError("%r cannot follow an open %s entity" % (tag, openType), index=ii)
                elif prefix in ("I", "E"):
                    raise TagSchemeError("%r does not continue an entity" % tag, index=ii)
                openType = tagType if prefix in ("B", "I") else None
        if scheme == "BIOES" and openType is not None:
            raise TagSchemeError("entity of type %s is not closed" % openType, index=len(tags) - 1)
        return True

    def getSpans(self, tags, scheme="BIO"):
        """Return (type, start, end) spans, end inclusive, for a valid tag sequence."""
        self.validateTags(tags, scheme=scheme)
        spans = []
        start = None
        curType = None
        for ii, tag in enumerate(tags):
            prefix, tagType = splitTag(tag)
            if prefix in ("B", "S", OUTSIDE) and curType is not None:
                spans.append((curType, start, ii - 1))
                curType = None
            if prefix in ("B", "S"):
                start, curType = ii, tagType
            if prefix in ("S", "E"):
                spans.append((curType, start, ii))
                curType = None
        if curType is not None:
            spans.append((curType, start, len(tags) - 1))
        return spans

    def repairSpans(self, tags):
        """Spans of an arbitrary BIO/BIOES sequence with conlleval chunk semantics.

        An I- or E- tag that does not continue an open entity of the same type starts a new
        entity; unknown tags are read as O.
        """
        spans = []
        start = None
        curType = None
        for ii, tag in enumerate(tags):
            prefix, tagType = splitTag(tag)
            if prefix is None:
                prefix, tagType = OUTSIDE, None
            if curType is not None and (prefix in ("B", "S", OUTSIDE) or tagType != curType):
                spans.append((curType, start, ii - 1))
                curType = None
            if prefix != OUTSIDE and curType is None:
                start, curType = ii, tagType
            if prefix in ("E", "S"):
                spans.append((curType, start, ii))
                curType = None
        if curType is not None:
            spans.append((curType, start, len(tags) - 1))
        return spans

    def tagsFromSpans(self, spans, length, scheme="BIO"):
        tags = [OUTSIDE] * length
        for tagType, start, end in spans:
            if scheme == "BIOES" and start == end:
                tags[start] = "S-" + tagType
                continue
            tags[start] = "B-" + tagType
            for jj in range(start + 1, end + 1):
                tags[jj] = "I-" + tagType
            if scheme == "BIOES":
                tags[end] = "E-" + tagType
        return tags

    def convertTags(self, tags, fromScheme, toScheme):
        """Convert a valid tag sequence between schemes preserving every (type, start, end) span.

        Args:
            tags (list): tag strings valid under fromScheme
            fromScheme (str): BIO or BIOES
            toScheme (str): BIO or BIOES

        Returns:
            (list): tag strings valid under toScheme
        """
        self.checkScheme(toScheme)
        spans = self.getSpans(tags, scheme=fromScheme)
        return self.tagsFromSpans(spans, len(tags), scheme=toScheme)

    def buildTagSet(self, tagSequences):
        """Return the tag inventory with "O" first and the remaining tags sorted."""
        tS = set()
        for tags in tagSequences:
            tS.update(tags)
        tS.discard(OUTSIDE)
        return [OUTSIDE] + sorted(tS)

    def entityTypes(self, tagSequences):
        tS = set()
        for tags in tagSequences:
            for tag in tags:
                _, tagType = splitTag(tag)
                if tagType:
                    tS.add(tagType)
        return sorted(tS)
