"""Named codes and campaign drivers."""

from qgraph.catalog.campaigns import (ClassificationReport, Classifier, CodeClass, SearchReport, classify,
                                      run_search)
from qgraph.catalog.codes import CodeDescriptor, catalog_entry, list_catalog, star_family_size, verify_descriptor

__all__ = [
    "ClassificationReport",
    "Classifier",
    "CodeClass",
    "CodeDescriptor",
    "SearchReport",
    "catalog_entry",
    "classify",
    "list_catalog",
    "run_search",
    "star_family_size",
    "verify_descriptor",
]
