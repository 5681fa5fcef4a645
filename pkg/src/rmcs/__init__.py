"""Recommender-based multiple classifier system built on formal concept analysis."""
from .classifiers import ClassifierSpec, TrainedModel, fit, majority_vote, predict
from .cxt import parse_cxt, format_cxt, read_cxt, write_cxt
from .data import Dataset, DistanceSpec, distance, k_nearest, load_csv, split
from .ensembles import AdaBoostModel, BaggingModel, adaboost_fit, adaboost_predict, bagging_fit, bagging_predict
from .fca import (FormalConcept, FormalContext, closure_attributes, closure_objects, derive_attributes,
                  derive_objects, top_cbo)
from .recommender import (LEAVE_ONE_OUT, RmcsConfig, build_classification_context, predict_table,
                          rmcs_classify, run_rmcs, select_classifiers)

__version__ = "0.1.0"
