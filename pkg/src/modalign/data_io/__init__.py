from .phantom import generate_phantom
from .preprocess import augment, normalize_image, preprocess
from .records import AugmentSpec, DomainLabel, PhantomSpec, SliceRecord
from .storage import SPLITS, SliceDataset, load_slice_dataset, save_slice_dataset

__all__ = [
    "AugmentSpec",
    "DomainLabel",
    "PhantomSpec",
    "SliceRecord",
    "SliceDataset",
    "SPLITS",
    "augment",
    "generate_phantom",
    "load_slice_dataset",
    "normalize_image",
    "preprocess",
    "save_slice_dataset",
]
