##
# File:    NnCore.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Differentiable numeric primitives and the named parameter registry.

All primitives are written against autograd.numpy so that any composition of them can be
differentiated in reverse mode.  Arrays are float32 for training and float64 for gradient checks.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import collections
import logging
import math

import numpy as np
import autograd.numpy as anp
from autograd.scipy.special import logsumexp
from autograd.tracer import getval

from rcsb.utils.ner.NerErrors import ConfigurationError, DataError, NumericError

logger = logging.getLogger(__name__)

MASKED_SCORE = -1.0e9


def value(x):
    """Plain (detached) numpy value of a possibly traced array."""
    return np.asarray(getval(x))


def assertFinite(x, name="tensor"):
    if not np.all(np.isfinite(value(x))):
        raise NumericError("non-finite values", name=name)
    return x


class ParamRegistry(object):
    """Ordered collection of named trainable arrays with accumulated gradients."""

    def __init__(self, dtype="float32", seed=1):
        self.__dtype = np.dtype(dtype)
        self.__params = collections.OrderedDict()
        self.__grads = collections.OrderedDict()
        self.rng = np.random.default_rng(seed)

    @property
    def dtype(self):
        return self.__dtype

    def add(self, name, array):
        if name in self.__params:
            raise ConfigurationError("duplicate parameter name %r" % name)
        arr = np.array(array, dtype=self.__dtype)
        self.__params[name] = arr
        self.__grads[name] = np.zeros_like(arr)
        return arr

    def addZeros(self, name, shape):
        return self.add(name, np.zeros(shape))

    def addUniform(self, name, shape, scale):
        return self.add(name, self.rng.uniform(-scale, scale, size=shape))

    def addGlorot(self, name, shape, fanIn=None, fanOut=None):
        fanIn = fanIn if fanIn is not None else int(np.prod(shape[:-1]))
        fanOut = fanOut if fanOut is not None else shape[-1]
        return self.addUniform(name, shape, math.sqrt(6.0 / (fanIn + fanOut)))

    def set(self, name, array):
        arr = np.array(array, dtype=self.__dtype)
        if arr.shape != self.__params[name].shape:
            raise ConfigurationError("shape mismatch for %r: %r != %r" % (name, arr.shape, self.__params[name].shape))
        self.__params[name] = arr

    def get(self, name):
        return self.__params[name]

    def __getitem__(self, name):
        return self.__params[name]

    def __contains__(self, name):
        return name in self.__params

    def __len__(self):
        return len(self.__params)

    def names(self):
        return list(self.__params.keys())

    def items(self):
        return list(self.__params.items())

    def asDict(self):
        return dict(self.__params)

    def shapes(self):
        return collections.OrderedDict((k, v.shape) for k, v in self.__params.items())

    def numParams(self):
        return int(sum(v.size for v in self.__params.values()))

    def grad(self, name):
        return self.__grads[name]

    def grads(self):
        return collections.OrderedDict(self.__grads)

    def accumulate(self, gradD):
        """Add gradients (name -> array) into the registry accumulators."""
        for name, gV in gradD.items():
            if name not in self.__grads:
                continue
            gV = np.asarray(gV)
            if gV.shape != self.__grads[name].shape:
                raise NumericError("gradient shape %r does not match parameter %r" % (gV.shape, self.__grads[name].shape), name=name)
            self.__grads[name] += gV.astype(self.__dtype)

    def zeroGrad(self):
        for name in self.__grads:
            self.__grads[name][...] = 0.0

    def astype(self, dtype):
        """Copy of the registry in another floating point precision."""
        pR = ParamRegistry(dtype=dtype)
        for name, arr in self.__params.items():
            pR.add(name, arr)
        return pR


# --- primitives ---


def linear(x, weight, bias=None):
    y = anp.dot(x, weight)
    return y + bias if bias is not None else y


def concat(arrays, axis=-1):
    return anp.concatenate(arrays, axis=axis)


def sigmoid(x):
    return 0.5 * (anp.tanh(0.5 * x) + 1.0)


def relu(x):
    return anp.maximum(x, 0.0)


def softmax(x, axis=-1):
    return anp.exp(x - logsumexp(x, axis=axis, keepdims=True))


def conv1d(x, weight, bias=None):
    """Same-padded 1-D convolution over the second to last axis.

    Args:
        x (array): (..., N, C_in) input
        weight (array): (k, C_in, C_out) kernel, k odd
        bias (array, optional): (C_out,) bias

    Returns:
        (array): (..., N, C_out)
    """
    kSize = weight.shape[0]
    if kSize % 2 == 0:
        raise ConfigurationError("convolution kernel size must be odd (got %d)" % kSize)
    half = (kSize - 1) // 2
    num = x.shape[-2]
    if half:
        padShape = x.shape[:-2] + (half, x.shape[-1])
        pad = anp.zeros(padShape, dtype=x.dtype)
        xp = anp.concatenate([pad, x, pad], axis=-2)
    else:
        xp = x
    out = None
    for jj in range(kSize):
        term = anp.dot(xp[..., jj : jj + num, :], weight[jj])
        out = term if out is None else out + term
    return out + bias if bias is not None else out


def dropout(x, rate, training, rng):
    """Inverted dropout; identity at inference time or for rate 0."""
    if rate < 0.0 or rate >= 1.0:
        raise ConfigurationError("dropout rate must be in [0, 1) (got %r)" % rate)
    if not training or rate == 0.0:
        return x
    keep = (rng.random(x.shape) >= rate).astype(x.dtype) / x.dtype.type(1.0 - rate)
    return x * keep


def lstmCell(xt, hPrev, cPrev, wInput, wHidden, bias):
    """Standard LSTM cell without peepholes, gate order (input, forget, cell, output)."""
    gates = anp.dot(xt, wInput) + anp.dot(hPrev, wHidden) + bias
    return _lstmGates(gates, cPrev)


def _lstmGates(gates, cPrev):
    hid = cPrev.shape[-1]
    iG = sigmoid(gates[..., :hid])
    fG = sigmoid(gates[..., hid : 2 * hid])
    gG = anp.tanh(gates[..., 2 * hid : 3 * hid])
    oG = sigmoid(gates[..., 3 * hid :])
    cNext = fG * cPrev + iG * gG
    hNext = oG * anp.tanh(cNext)
    return hNext, cNext


def lstmEncode(inputs, wInput, wHidden, bias, reverse=False, mask=None):
    """Run one LSTM direction over the second to last axis of (..., N, d_in) inputs.

    With a (..., N) mask of right-padded sequences the state is carried unchanged across
    padded steps, so each sequence gets the states of its unpadded prefix.

    Returns:
        (array): (..., N, hidden) states
    """
    num = inputs.shape[-2]
    hid = wHidden.shape[0]
    proj = anp.dot(inputs, wInput) + bias
    hT = anp.zeros(inputs.shape[:-2] + (hid,), dtype=inputs.dtype)
    cT = anp.zeros(inputs.shape[:-2] + (hid,), dtype=inputs.dtype)
    steps = range(num - 1, -1, -1) if reverse else range(num)
    outL = [None] * num
    for ii in steps:
        hN, cN = _lstmGates(proj[..., ii, :] + anp.dot(hT, wHidden), cT)
        if mask is not None:
            keep = mask[..., ii, None]
            hN = keep * hN + (1.0 - keep) * hT
            cN = keep * cN + (1.0 - keep) * cT
        hT, cT = hN, cN
        outL[ii] = hT
    return anp.stack(outL, axis=-2)


def addLstmParams(registry, prefix, inputDim, hidden):
    """Register forward/backward LSTM parameters for a BiLSTM of total size hidden."""
    if hidden % 2 != 0 or hidden <= 0:
        raise ConfigurationError("BiLSTM hidden size must be positive and even (got %r)" % hidden)
    half = hidden // 2
    for direction in ("fw", "bw"):
        registry.addGlorot("%s.%s.w_input" % (prefix, direction), (inputDim, 4 * half), fanIn=inputDim + half, fanOut=4 * half)
        registry.addGlorot("%s.%s.w_hidden" % (prefix, direction), (half, 4 * half), fanIn=inputDim + half, fanOut=4 * half)
        bias = np.zeros(4 * half)
        bias[half : 2 * half] = 1.0
        registry.add("%s.%s.bias" % (prefix, direction), bias)


def bilstmEncode(inputs, params, prefix, mask=None):
    """Bidirectional LSTM: h_i = [forward_i; backward_i].

    Args:
        inputs (array): (N, d_in) sequence or (B, N, d_in) right-padded batch
        params (dict): parameter dictionary holding <prefix>.{fw,bw}.{w_input,w_hidden,bias}
        prefix (str): parameter name prefix
        mask (array, optional): (B, N) 1/0 positions of a padded batch

    Returns:
        (array): (N, hidden) or (B, N, hidden) states
    """
    if inputs.shape[-2] == 0:
        raise DataError("cannot encode an empty sequence")
    fw = lstmEncode(inputs, params[prefix + ".fw.w_input"], params[prefix + ".fw.w_hidden"], params[prefix + ".fw.bias"], mask=mask)
    bw = lstmEncode(inputs, params[prefix + ".bw.w_input"], params[prefix + ".bw.w_hidden"], params[prefix + ".bw.bias"], reverse=True, mask=mask)
    return anp.concatenate([fw, bw], axis=-1)


def rowNorms(x):
    return anp.sqrt(anp.sum(x * x, axis=-1))


def cosineMatrix(a, b, name="cosine", mask=None):
    """Cosine similarities between the rows of a (..., N, d) and b (P, d).

    Masked rows of a are zeroed and score 0 against every row of b.
    """
    if mask is not None:
        a = a * mask[..., None]
    na = rowNorms(a)
    nb = rowNorms(b)
    live = value(na) if mask is None else value(na)[np.asarray(mask) > 0]
    if np.any(live == 0.0) or np.any(value(nb) == 0.0):
        raise NumericError("zero-norm vector in cosine similarity", name=name)
    if mask is not None:
        na = na + (1.0 - mask)
    return anp.dot(a / na[..., None], (b / nb[:, None]).T)


def maskScores(scores, mask):
    """Scores with masked entries pushed to MASKED_SCORE (softmax weight 0)."""
    if mask is None:
        return scores
    return scores * mask + (1.0 - mask) * MASKED_SCORE


def paddingMask(lengths, dtype="float32"):
    """(B, max length) mask with ones over the first lengths[b] positions of row b."""
    num = max(lengths)
    mask = np.zeros((len(lengths), num), dtype=np.dtype(dtype))
    for ii, length in enumerate(lengths):
        mask[ii, :length] = 1.0
    return mask
