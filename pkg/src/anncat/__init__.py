"""Verification and construction engine for Ann-categories (categorified rings)."""

from .ann import AnnCat, check_ann_functor, check_zero_properties, derive_zero_isos, verify_ann
from .core import Bifunctor, Category, FinCategory, FunctorData, NatFamily, validate_category
from .errors import AnnCatError, SchemaError, ValidationError
from .examples import (AbelianGroup, BimoduleData, CochainSet, RingTable, from_bimodule, from_ring,
                       pic_from_cocycle, search_constraint_families, zmod)
from .report import AxiomReport, DiagramReport, Report, machine_lines, text_lines
from .structures import MonoidalData, PicData, check_acu, check_au, check_pic

__version__ = "0.1.0"

__all__ = [
    "AnnCat", "check_ann_functor", "check_zero_properties", "derive_zero_isos", "verify_ann",
    "Bifunctor", "Category", "FinCategory", "FunctorData", "NatFamily", "validate_category",
    "AnnCatError", "SchemaError", "ValidationError",
    "AbelianGroup", "BimoduleData", "CochainSet", "RingTable", "from_bimodule", "from_ring",
    "pic_from_cocycle", "search_constraint_families", "zmod",
    "AxiomReport", "DiagramReport", "Report", "machine_lines", "text_lines",
    "MonoidalData", "PicData", "check_acu", "check_au", "check_pic",
]
