"""Noisy variational-landscape simulation, Fourier diagnostics and spectral
error mitigation."""

from qsl._core import *  # noqa: F401,F403
from qsl._core import __version__  # noqa: F401
