"""Band distance for time series, with k-medoids, spectral features and simulations."""

from ._core import (
    BandDistError,
    adjusted_rand_index,
    band_distance_matrix,
    fit_seasonal,
    kmeans,
    kmedoids,
    lp_distance_matrix,
    naive_band_distance_matrix,
    periodogram,
    pidist_distance_matrix,
    rand_index,
    remove_seasonal,
    simulate,
    smoothed_periodogram,
    stft,
)

__version__ = "0.1.0"

__all__ = [
    "BandDistError",
    "adjusted_rand_index",
    "band_distance_matrix",
    "fit_seasonal",
    "kmeans",
    "kmedoids",
    "lp_distance_matrix",
    "naive_band_distance_matrix",
    "periodogram",
    "pidist_distance_matrix",
    "rand_index",
    "remove_seasonal",
    "simulate",
    "smoothed_periodogram",
    "stft",
]
