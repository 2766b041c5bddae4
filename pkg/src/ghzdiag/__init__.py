"""Entanglement and full-separability analysis of GHZ-diagonal states."""

from .core import (
    EPS_VALID,
    PauliString,
    StabCoeffs,
    Validity,
    bits_to_str,
    compatible,
    ky_pauli,
    random_state,
    read_svector,
    str_to_bits,
    support,
    validate_state,
    write_svector,
)
from .separability import (
    Certificate,
    Verdict,
    casebook_alpha,
    certify,
    even_sector_min,
    find_sign_vector,
    odd_sector_l1,
    separable_budget,
)
from .spectra import fwht, npt_scan, pt_spectrum, state_spectrum
from .witness import WitnessIndex, optimal_witness, projector_form, witness_expectation

__version__ = "0.1.0"
