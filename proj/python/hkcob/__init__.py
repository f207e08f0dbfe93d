"""Exact Chern numbers of Hilbert schemes of points and generalized Kummer varieties."""

from ._core import (
    Engine,
    __version__,
    chern_numbers,
    closed_form_hilb_top,
    closed_form_kummer_double,
    closed_form_kummer_top,
    conventions_hash,
    euler_affine_check,
    from_chern_numbers,
    genus,
    gottsche_betti,
    gottsche_soergel_kummer_chi,
)

__all__ = [
    "Engine",
    "__version__",
    "chern_numbers",
    "closed_form_hilb_top",
    "closed_form_kummer_double",
    "closed_form_kummer_top",
    "conventions_hash",
    "euler_affine_check",
    "from_chern_numbers",
    "genus",
    "gottsche_betti",
    "gottsche_soergel_kummer_chi",
]
