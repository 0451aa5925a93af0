##
# File:    NerCheckpoint.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Versioned checkpoint container.

Layout (all integers little-endian):

    8 bytes   magic b"CTXNER\\0\\0"
    4 bytes   uint32 manifest length M
    M bytes   manifest, UTF-8 JSON with sorted keys
    payload   raw little-endian arrays in manifest order

The manifest holds format_version, config, vocabs, tags, labels, memory_sentences, extra,
arrays (name, dtype, shape, offset, nbytes, sha256 per array) and payload_sha256.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import hashlib
import json
import logging
import os
import struct

import numpy as np
from rcsb.utils.io.MarshalUtil import MarshalUtil

from rcsb.utils.ner.DocumentMemory import MemoryStore
from rcsb.utils.ner.ContextNerModel import ContextNerModel
from rcsb.utils.ner.NerErrors import CheckpointCorruptionError, CheckpointError, CheckpointVersionError
from rcsb.utils.ner.NerTrainer import TrainConfig
from rcsb.utils.ner.NnCore import ParamRegistry
from rcsb.utils.ner.VocabUtils import Vocab

logger = logging.getLogger(__name__)

MAGIC = b"CTXNER\0\0"
FORMAT_VERSION = 1
SUPPORTED_VERSIONS = (1,)
MEMORY_PREFIX = "memory"


def _sha256(data):
    return hashlib.sha256(data).hexdigest()


def _leBytes(arr):
    arr = np.ascontiguousarray(arr)
    if arr.dtype == np.bool_:
        arr = arr.astype(np.uint8)
    return arr.astype(arr.dtype.newbyteorder("<"), copy=False).tobytes(), arr.dtype.newbyteorder("<").str


class NerCheckpoint(object):
    def __init__(self, **kwargs):
        self.__workPath = kwargs.get("workPath", ".")

    def encode(self, model, extra=None):
        """Serialize a model to container bytes."""
        arrayL = list(model.registry.items())
        if model.store is not None:
            arrayL.extend(model.store.toArrays(prefix=MEMORY_PREFIX).items())
        entryL = []
        chunkL = []
        offset = 0
        for name, arr in arrayL:
            data, dtypeStr = _leBytes(arr)
            entryL.append({"name": name, "dtype": dtypeStr, "shape": list(arr.shape), "offset": offset, "nbytes": len(data), "sha256": _sha256(data)})
            chunkL.append(data)
            offset += len(data)
        payload = b"".join(chunkL)
        manifest = {
            "format_version": FORMAT_VERSION,
            "config": model.config.toDict(),
            "vocabs": {"word": model.wordVocab.toDict(), "train": model.trainVocab.toDict(), "char": model.charVocab.toDict()},
            "tags": list(model.tags),
            "labels": list(model.labels),
            "memory_sentences": list(model.store.sentences) if model.store is not None else [],
            "extra": extra or {},
            "arrays": entryL,
            "payload_sha256": _sha256(payload),
        }
        mBytes = json.dumps(manifest, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode("utf-8")
        return MAGIC + struct.pack("<I", len(mBytes)) + mBytes + payload

    def save(self, model, filePath, extra=None):
        data = self.encode(model, extra=extra)
        dirPath = os.path.dirname(os.path.abspath(filePath))
        MarshalUtil(workPath=self.__workPath).mkdir(dirPath)
        with open(filePath, "wb") as ofh:
            ofh.write(data)
        logger.info("Saved checkpoint (%d bytes) to %s", len(data), filePath)
        return True

    def decodeManifest(self, data):
        """Validate the header and return (manifest, payload bytes)."""
        if len(data) < len(MAGIC) + 4:
            raise CheckpointCorruptionError("checkpoint is truncated (%d bytes)" % len(data))
        if data[: len(MAGIC)] != MAGIC:
            raise CheckpointCorruptionError("bad checkpoint magic")
        (mLen,) = struct.unpack("<I", data[len(MAGIC) : len(MAGIC) + 4])
        start = len(MAGIC) + 4
        if start + mLen > len(data):
            raise CheckpointCorruptionError("checkpoint manifest is truncated")
        try:
            manifest = json.loads(data[start : start + mLen].decode("utf-8"))
        except (ValueError, UnicodeDecodeError) as e:
            raise CheckpointCorruptionError("unreadable checkpoint manifest: %s" % str(e))
        if not isinstance(manifest, dict) or "format_version" not in manifest:
            raise CheckpointCorruptionError("checkpoint manifest has no format_version")
        if manifest["format_version"] not in SUPPORTED_VERSIONS:
            raise CheckpointVersionError("unsupported checkpoint format version %r" % manifest["format_version"], version=manifest["format_version"])
        payload = data[start + mLen :]
        if _sha256(payload) != manifest.get("payload_sha256"):
            raise CheckpointCorruptionError("checkpoint payload checksum mismatch")
        return manifest, payload

    def decode(self, data):
        """Rebuild a model from container bytes.

        Raises:
            CheckpointVersionError: unknown format version
            CheckpointCorruptionError: truncated data, bad magic, unreadable manifest or checksum mismatch

        Returns:
            (ContextNerModel, dict): model and the extra metadata stored with it
        """
        manifest, payload = self.decodeManifest(data)
        arrD = {}
        try:
            for entry in manifest["arrays"]:
                chunk = payload[entry["offset"] : entry["offset"] + entry["nbytes"]]
                if len(chunk) != entry["nbytes"] or _sha256(chunk) != entry["sha256"]:
                    raise CheckpointCorruptionError("checksum mismatch for array %r" % entry["name"])
                arr = np.frombuffer(chunk, dtype=np.dtype(entry["dtype"])).reshape(entry["shape"])
                arrD[entry["name"]] = arr.astype(arr.dtype.newbyteorder("="))
            config = TrainConfig.fromDict(manifest["config"])
            vD = manifest["vocabs"]
            wordVocab = Vocab.fromDict(vD["word"])
            trainVocab = Vocab.fromDict(vD["train"])
            charVocab = Vocab.fromDict(vD["char"])
        except (KeyError, TypeError, ValueError) as e:
            raise CheckpointCorruptionError("malformed checkpoint manifest: %s" % str(e))
        registry = ParamRegistry(dtype=config.dtype, seed=config.seed)
        for entry in manifest["arrays"]:
            if not entry["name"].startswith(MEMORY_PREFIX + "."):
                registry.add(entry["name"], arrD[entry["name"]])
        store = None
        if MEMORY_PREFIX + ".keys" in arrD:
            store = MemoryStore.fromArrays(arrD, sentences=manifest.get("memory_sentences"), unkIndex=trainVocab.unkIndex, prefix=MEMORY_PREFIX)
        model = ContextNerModel(config, wordVocab, trainVocab, charVocab, manifest["tags"], manifest["labels"], registry, store=store)
        return model, manifest.get("extra", {})

    def load(self, filePath):
        if not filePath or not os.access(filePath, os.R_OK):
            raise CheckpointError("checkpoint %r is not readable" % filePath)
        with open(filePath, "rb") as ifh:
            data = ifh.read()
        model, extra = self.decode(data)
        logger.info("Loaded checkpoint %s (%d parameter arrays)", filePath, len(model.registry))
        return model, extra
