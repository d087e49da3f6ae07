"""Exact homological algebra over Z and Z_(p)."""
from .functors import homology_functor, homology_via_resolution
from .modules import FgZModule, LocalizedModule, MatlisModule
from .oracle import (
    ass_cosyzygy,
    bass_number_oracle,
    colocalize_finite,
    colocalize_inverse_limit,
    cotilting_membership,
    localize_module,
    matlis_dual,
    tilting_membership,
    verify_cartanei,
    verify_dual_coloc,
)
from .snf import IntMatrix, smith_normal_form
