"""Quaternion offset linear canonical transforms on sampled 2-D signals.

Signals are numpy arrays of shape (n1, n2, 4) holding (q0, q1, q2, q3) on a Grid.
"""

from ._core import (
    Grid,
    InvalidArgument,
    IoError,
    OffsetParams,
    Plan,
    PreconditionViolation,
    direct,
    forward,
    gaussian,
    gaussian_closed_form,
    heisenberg,
    inverse,
    l2_norm,
    log_up,
    log_up_constant,
    pitt,
    qft,
    quartet_norm,
    read_signal,
    verify,
    write_signal,
)

__all__ = [
    "Grid",
    "InvalidArgument",
    "IoError",
    "OffsetParams",
    "Plan",
    "PreconditionViolation",
    "direct",
    "forward",
    "gaussian",
    "gaussian_closed_form",
    "heisenberg",
    "inverse",
    "l2_norm",
    "log_up",
    "log_up_constant",
    "pitt",
    "qft",
    "quartet_norm",
    "read_signal",
    "verify",
    "write_signal",
]
