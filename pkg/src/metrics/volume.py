"""Label volumes, binary masks and their on-disk container.

A volume is stored as two files sharing a stem:

    <stem>.json   {"dims": [x, y, z], "dtype": "uint8", "order": "C",
                   "labels": {"1": "anterior", "2": "posterior"},
                   "payload": "<stem>.raw"}
    <stem>.raw    x*y*z unsigned bytes, row-major with x slowest

Label 0 is background.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import AbstractSet, Dict, Literal, Optional, Tuple, Union

import numpy as np
import pydantic
from pydantic import BaseModel, Field

from src.errors import BackgroundInLabelSetError, DataError, EmptyLabelSetError, ParseError

Dims = Tuple[int, int, int]
PathLike = Union[str, Path]

BACKGROUND = 0


def _check_dims(dims: Dims, size: int) -> Dims:
    dims = tuple(int(d) for d in dims)
    if len(dims) != 3 or any(d < 1 for d in dims):
        raise DataError(f"dims must be three positive integers, got {list(dims)}")
    if size != dims[0] * dims[1] * dims[2]:
        raise DataError(f"{size} voxels do not match dims {list(dims)}")
    return dims


@dataclass(frozen=True, eq=False)
class LabelVolume:
    """Dense 3-D labelmap.

    Attributes:
        dims: (x, y, z) extents.
        voxels: uint8 labels, flat in row-major order.
        labels: Optional names for label values.
    """
    dims: Dims
    voxels: np.ndarray
    labels: Dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        voxels = np.asarray(self.voxels)
        if voxels.size and (voxels.min() < 0 or voxels.max() > 255):
            raise DataError("labels must fit in 8 bits")
        voxels = np.ascontiguousarray(voxels, dtype=np.uint8).reshape(-1)
        object.__setattr__(self, "dims", _check_dims(self.dims, voxels.size))
        object.__setattr__(self, "voxels", voxels)


@dataclass(frozen=True, eq=False)
class BinaryMask:
    """Dense 3-D boolean mask, flat in row-major order."""
    dims: Dims
    voxels: np.ndarray

    def __post_init__(self):
        voxels = np.ascontiguousarray(self.voxels, dtype=bool).reshape(-1)
        object.__setattr__(self, "dims", _check_dims(self.dims, voxels.size))
        object.__setattr__(self, "voxels", voxels)

    def count(self) -> int:
        return int(np.count_nonzero(self.voxels))


def merge_labels(volume: LabelVolume, labels: AbstractSet[int]) -> BinaryMask:
    """Binarize a volume: true where the voxel's label is in `labels`.

    Raises:
        EmptyLabelSetError: If labels is empty.
        BackgroundInLabelSetError: If labels contains the background label 0.
    """
    if not labels:
        raise EmptyLabelSetError("label set must not be empty")
    if BACKGROUND in labels:
        raise BackgroundInLabelSetError("background label 0 cannot be merged into the foreground")
    wanted = np.fromiter(sorted(labels), dtype=np.int64)
    return BinaryMask(volume.dims, np.isin(volume.voxels, wanted))


def single_label_mask(volume: LabelVolume, label: int) -> BinaryMask:
    """Mask of a single label."""
    return merge_labels(volume, {label})


class VolumeHeader(BaseModel):
    """JSON header of the volume container."""
    dims: Tuple[int, int, int]
    dtype: Literal["uint8"] = "uint8"
    order: Literal["C"] = "C"
    labels: Dict[int, str] = Field(default_factory=dict)
    payload: str


def _header_path(path: PathLike) -> Path:
    path = Path(path)
    return path if path.suffix == ".json" else path.with_suffix(".json")


def load_volume(path: PathLike) -> LabelVolume:
    """Read a volume from its JSON header (or stem) and raw payload.

    Raises:
        ParseError: If the header is malformed or the payload size is wrong.
    """
    header_path = _header_path(path)
    text = header_path.read_text(encoding="utf-8")
    try:
        header = VolumeHeader.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise ParseError(f"{header_path}: {e.msg}", line=e.lineno, offset=e.colno) from e
    except pydantic.ValidationError as e:
        raise ParseError(f"{header_path}: invalid volume header: {e.errors()[0]['msg']}") from e

    if any(d < 1 for d in header.dims):
        raise ParseError(f"{header_path}: dims must be positive, got {list(header.dims)}")

    payload = (header_path.parent / header.payload).read_bytes()
    expected = header.dims[0] * header.dims[1] * header.dims[2]
    if len(payload) != expected:
        raise ParseError(
            f"{header.payload}: payload has {len(payload)} bytes, dims {list(header.dims)} need {expected}"
        )

    voxels = np.frombuffer(payload, dtype="<u1")
    return LabelVolume(header.dims, voxels, dict(header.labels))


def save_volume(volume: LabelVolume, path: PathLike, labels: Optional[Dict[int, str]] = None) -> Path:
    """Write a volume as <stem>.json plus <stem>.raw.

    Returns:
        Path of the written header.
    """
    header_path = _header_path(path)
    payload_path = header_path.with_suffix(".raw")
    header = VolumeHeader(
        dims=volume.dims,
        labels=labels if labels is not None else volume.labels,
        payload=payload_path.name,
    )
    payload_path.write_bytes(volume.voxels.astype("<u1").tobytes(order="C"))
    header_path.write_text(header.model_dump_json() + "\n", encoding="utf-8")
    return header_path
