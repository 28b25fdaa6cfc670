"""Vectorised element-wise activations shared by the samplers and the oracles."""
from typing import Callable, Dict

import numpy as np
from scipy.special import expit

from archmetrics.graph.models import ActivationFn

LEAKY_RELU_SLOPE = 0.01
ELU_ALPHA = 1.0


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def elu(x: np.ndarray) -> np.ndarray:
    return np.where(x > 0, x, ELU_ALPHA * np.expm1(np.minimum(x, 0.0)))


def leaky_relu(x: np.ndarray) -> np.ndarray:
    return np.where(x > 0, x, LEAKY_RELU_SLOPE * x)


def swish(x: np.ndarray) -> np.ndarray:
    return x * expit(x)


def linear(x: np.ndarray) -> np.ndarray:
    return x


ELEMENTWISE: Dict[ActivationFn, Callable[[np.ndarray], np.ndarray]] = {
    ActivationFn.RELU: relu,
    ActivationFn.ELU: elu,
    ActivationFn.LEAKY_RELU: leaky_relu,
    ActivationFn.SWISH: swish,
    ActivationFn.TANH: np.tanh,
    ActivationFn.SIGMOID: expit,
    ActivationFn.LINEAR: linear,
}
