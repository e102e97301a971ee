"""Higher Hochschild complexes of wedges of circles and of suspensions."""
from .complexes import (ComplexSlice, HomologyResult, SliceSelector, SuspensionSignature,
                        SymmetricModule, TensorPowerModule, TwistedComplex, build_cobar_slice,
                        build_gr_slice, build_slice, build_suspension_slice, build_wedge_slice,
                        check_d_squared, cobar_complex, euler_characteristic, gr_complex, homology,
                        slice_to_json, suspension_complex, wedge_complex)

__all__ = [
    "ComplexSlice", "HomologyResult", "SliceSelector", "SuspensionSignature", "SymmetricModule",
    "TensorPowerModule", "TwistedComplex", "build_cobar_slice", "build_gr_slice", "build_slice",
    "build_suspension_slice", "build_wedge_slice", "check_d_squared", "cobar_complex",
    "euler_characteristic", "gr_complex", "homology", "slice_to_json", "suspension_complex",
    "wedge_complex",
]
