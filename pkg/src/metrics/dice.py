"""Dice overlap between predicted and ground-truth masks, in percent."""

from typing import AbstractSet, Optional

import numpy as np

from src.errors import DimMismatchError, UndefinedDiceError
from src.metrics.volume import BinaryMask, LabelVolume, merge_labels


def dice(pred: BinaryMask, gt: BinaryMask) -> float:
    """Dice coefficient 100 * 2|A∩B| / (|A| + |B|).

    Raises:
        DimMismatchError: If the masks have different dims.
        UndefinedDiceError: If both masks are empty.
    """
    if pred.dims != gt.dims:
        raise DimMismatchError(f"mask dims differ: {list(pred.dims)} vs {list(gt.dims)}")

    total = pred.count() + gt.count()
    if total == 0:
        raise UndefinedDiceError("Dice is undefined when both masks are empty")
    overlap = int(np.count_nonzero(pred.voxels & gt.voxels))
    return 100.0 * (2 * overlap) / total


def dice_from_volumes(
    pred: LabelVolume,
    gt: LabelVolume,
    labels: AbstractSet[int],
    empty_value: Optional[float] = None,
) -> float:
    """Merge `labels` in both volumes and return their Dice.

    Args:
        pred: Predicted labelmap.
        gt: Ground-truth labelmap.
        labels: Foreground labels to merge.
        empty_value: Returned when both merged masks are empty; when None
            that case raises.

    Raises:
        UndefinedDiceError: Both masks empty and no empty_value given.
    """
    try:
        return dice(merge_labels(pred, labels), merge_labels(gt, labels))
    except UndefinedDiceError:
        if empty_value is None:
            raise
        return float(empty_value)
