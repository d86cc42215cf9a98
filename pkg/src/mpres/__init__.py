"""Exact multipersistent homology modules and their combinatorial free resolutions."""

from .algebra import FreeModule, GradedMatrix, compose, evaluate_at, join, leq
from .chains import (boundary_matrix, chain_complex, decompose, fundamental_elements,
                     homology_module, syzygy_binomials)
from .field import get_field, set_field
from .filtration import MultiFiltration, Simplex, grid_bound, parse, serialize, slice_at
from .gridmodule import (GridModule, betti_numbers, free_cover, hilbert_function, kernel,
                         minimal_generators, minimal_presentation)
from .onecritical import (acyclicity_defect, cellular_chain_complex, check_equality_with_C,
                          labelled_complex)
from .resolution import (FreeChainComplex, Resolution, lift_chain_map, mapping_cone, minimize,
                         resolve_boundaries, resolve_chains, resolve_homology, resolve_module,
                         taylor_resolution, verify_resolution)

__version__ = "0.1.0"
