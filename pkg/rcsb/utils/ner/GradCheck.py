##
# File:    GradCheck.py
# Date:    18-Oct-2026
# Version: 0.001
#
# Updated:
#
##
"""
Finite-difference verification of reverse-mode gradients.

The relative error of a comparison is |analytic - numeric| / max(|analytic|, |numeric|, floor)
with floor 1e-8 by default.  Numeric derivatives use the fourth-order central stencil
(-f(p+2e) + 8 f(p+e) - 8 f(p-e) + f(p-2e)) / 12e.

In "element" mode every entry of a parameter is perturbed separately and the error is the
maximum over entries.  In "direction" mode each parameter is perturbed once along a random unit
direction u and the check compares the projection grad . u; an error confined to a few entries of
a large parameter is scaled down by their share of u, so direction mode is a smoke check for
large or non-smooth parameters and element mode the exact one.
"""
__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"

import collections
import logging

import numpy as np
from autograd import value_and_grad

from rcsb.utils.ner.NerErrors import ConfigurationError, NumericError

logger = logging.getLogger(__name__)


class GradCheck(object):
    def __init__(self, eps=1.0e-4, mode="direction", seed=0, floor=1.0e-8):
        if mode not in ("direction", "element"):
            raise ConfigurationError("unknown gradient check mode %r" % mode)
        self.__eps = eps
        self.__mode = mode
        self.__seed = seed
        self.__floor = floor
        self.__report = collections.OrderedDict()

    def report(self):
        """Per-parameter maximum relative error of the last check."""
        return self.__report

    def __relErr(self, analytic, numeric):
        return abs(analytic - numeric) / max(abs(analytic), abs(numeric), self.__floor)

    def __evalLoss(self, lossFn, paramD):
        loss = float(lossFn(paramD))
        if not np.isfinite(loss):
            raise NumericError("non-finite loss in gradient check")
        return loss

    def __numericDirectional(self, lossFn, paramD, name, direction):
        base = paramD[name]
        eps = self.__eps
        vals = []
        for step in (2.0, 1.0, -1.0, -2.0):
            pD = dict(paramD)
            pD[name] = base + step * eps * direction
            vals.append(self.__evalLoss(lossFn, pD))
        return (-vals[0] + 8.0 * vals[1] - 8.0 * vals[2] + vals[3]) / (12.0 * eps)

    def check(self, lossFn, params, names=None):
        """Compare autograd gradients of lossFn with finite differences.

        Args:
            lossFn (callable): dict(name -> array) -> scalar loss, deterministic
            params (ParamRegistry or dict): parameter values (cast to float64)
            names (list, optional): subset of parameter names to check. Defaults to all.

        Raises:
            NumericError: non-finite loss

        Returns:
            (float): maximum relative error over the checked parameters
        """
        items = params.items() if hasattr(params, "items") else params
        paramD = {k: np.array(v, dtype=np.float64) for k, v in items}
        names = names if names is not None else list(paramD.keys())
        loss, gradD = value_and_grad(lossFn)(paramD)
        if not np.isfinite(float(loss)):
            raise NumericError("non-finite loss in gradient check")
        rng = np.random.default_rng(self.__seed)
        self.__report = collections.OrderedDict()
        maxErr = 0.0
        for name in names:
            grad = np.asarray(gradD[name], dtype=np.float64)
            if self.__mode == "element":
                errMax = 0.0
                for idx in np.ndindex(*paramD[name].shape):
                    direction = np.zeros_like(paramD[name])
                    direction[idx] = 1.0
                    numeric = self.__numericDirectional(lossFn, paramD, name, direction)
                    errMax = max(errMax, self.__relErr(float(grad[idx]), numeric))
            else:
                direction = rng.standard_normal(paramD[name].shape)
                direction /= max(np.linalg.norm(direction), 1.0e-12)
                analytic = float(np.sum(grad * direction))
                numeric = self.__numericDirectional(lossFn, paramD, name, direction)
                errMax = self.__relErr(analytic, numeric)
            self.__report[name] = errMax
            maxErr = max(maxErr, errMax)
        logger.debug("Gradient check over %d parameters max relative error %.3e", len(names), maxErr)
        return maxErr


def gradCheck(lossFn, params, eps=1.0e-4, mode="direction", seed=0, names=None, floor=1.0e-8):
    return GradCheck(eps=eps, mode=mode, seed=seed, floor=floor).check(lossFn, params, names=names)
