"""Ratio and fraction views of a loaded dataset."""

from dataclasses import dataclass

import numpy as np

from app.application.exceptions import DataFormatError
from app.application.ports.dataset_reader import DatasetSchema, LoadedDataset
from app.domain.services.regression import (
    fraction_from_counts,
    fraction_to_ratio,
    ratio_to_fraction,
)
from app.domain.value_objects import ScatterData, XKind


@dataclass(frozen=True)
class ParameterizedData:
    data: ScatterData
    n_loaded: int
    n_excluded: int


def scatter_views(dataset: LoadedDataset, x_var: XKind) -> dict[XKind, ParameterizedData]:
    """Both parameterizations of the predictor.

    Rows with N = 0 (or fraction 1) have no ratio and are left out of the
    ratio view only.
    """
    loaded = dataset.row_count
    if dataset.schema is DatasetSchema.RECORDS:
        outcomes = np.array([r.outcome for r in dataset.records])
        fractions = np.array(
            [fraction_from_counts(r.p_count, r.n_count) for r in dataset.records]
        )
        has_ratio = np.array([r.ratio is not None for r in dataset.records])
        ratios = np.array([r.ratio for r in dataset.records if r.ratio is not None])
        fraction_view = ScatterData.from_arrays(fractions, outcomes, XKind.FRACTION)
        ratio_view = ScatterData.from_arrays(ratios, outcomes[has_ratio], XKind.RATIO)
    elif dataset.schema is DatasetSchema.SCATTER and dataset.scatter is not None:
        scatter = dataset.scatter
        if x_var is XKind.RATIO:
            ratio_view = scatter
            fraction_view = scatter.with_x(
                [ratio_to_fraction(float(x)) for x in scatter.x], XKind.FRACTION
            )
        else:
            fraction_view = scatter
            keep = scatter.x < 1.0
            ratio_view = ScatterData.from_arrays(
                [fraction_to_ratio(float(x)) for x in scatter.x[keep]],
                scatter.y[keep],
                XKind.RATIO,
            )
    else:
        raise DataFormatError(
            f"expected columns {DatasetSchema.RECORDS} or {DatasetSchema.SCATTER}, "
            f"got {','.join(dataset.columns)}"
        )
    return {
        XKind.RATIO: ParameterizedData(ratio_view, loaded, loaded - ratio_view.n),
        XKind.FRACTION: ParameterizedData(fraction_view, loaded, loaded - fraction_view.n),
    }
