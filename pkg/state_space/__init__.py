"""State-space and transfer-function algebra on the unit circle."""

from .compose import error_system, inverse, parallel, series
from .frequency import (
    check_filter_dims,
    error_operator_sample,
    eval_adjoint,
    eval_adjoint_batch,
    eval_plant_channels,
    eval_plant_channels_batch,
    eval_transfer,
    eval_transfer_batch,
)
from .systems import LtiFilter, StateSpaceModel, TransferSample

__all__ = [
    "StateSpaceModel",
    "LtiFilter",
    "TransferSample",
    "eval_transfer",
    "eval_transfer_batch",
    "eval_adjoint",
    "eval_adjoint_batch",
    "eval_plant_channels",
    "eval_plant_channels_batch",
    "error_operator_sample",
    "check_filter_dims",
    "series",
    "parallel",
    "inverse",
    "error_system",
]
