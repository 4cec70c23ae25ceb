# Segmentation metrics
from src.metrics.volume import (
    LabelVolume,
    BinaryMask,
    VolumeHeader,
    merge_labels,
    single_label_mask,
    load_volume,
    save_volume,
)
from src.metrics.dice import (
    dice,
    dice_from_volumes,
)
