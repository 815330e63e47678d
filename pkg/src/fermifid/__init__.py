"""Ground-state fidelity, criticality and entanglement for variable-range
free-fermion graphs."""

from .errors import (ConsistencyError, DegenerateEndpointError,
                     DegeneratePointError, FermifidError,
                     NotCayleyRepresentableError, OddParityError,
                     ParameterError, SingularPointError, SizeGuardError,
                     StencilCrossingError, WindowError)
from .model import (Boundary, CouplingModel, ModelParams, Sign, build,
                    build_cyclic, build_free_ends, full_range)
from .solver import (CanonicalSpectrum, PolarForm, SpectralList,
                     canonical_decompose, circulant_eigvals,
                     ground_energy_and_gap, polar_T, spectral_list,
                     zeta_fully_connected, zeta_variable_range)
from .gsfid import (FidelityValue, GroundStateForm, cayley_G, fidelity,
                    fidelity_circulant, fidelity_from_G, inverse_cayley,
                    state_angles)
from .crit import (BoundaryPoint, EnergyDerivatives, HessianAtZero,
                   ScalingSeries, SweepSpec, TPrimeZero, energy_derivatives,
                   first_order_boundary, h_analytic_cyclic, h_asymptotic,
                   hessian_fd, peak_scan, t_prime_zero)
from .ent import SingleSiteRecord, binary_entropy, entropy_derivative_diag, \
    si_tdl, single_site, tii_tdl
from .oracle import (FockState, OracleResult, annihilator_residuals,
                     fock_hamiltonian_gs, gs_from_G, overlap)
from .scan import GridAxis, ScanRow, ScanSpec, ScanTable, emit, run_scan

__version__ = "0.1.0"
