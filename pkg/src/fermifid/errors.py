"""Exception hierarchy shared by all fermifid modules."""


class FermifidError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(FermifidError, ValueError):
    """Invalid model or scan parameters (bad range, size, grid spec, ...)."""


class SizeGuardError(ParameterError):
    """Requested Fock-space size exceeds the brute-force guard."""


class DegenerateEndpointError(FermifidError):
    """A fidelity endpoint sits on a level crossing (det Z = 0); the
    orthogonal polar factor, and hence the fidelity, is undefined there."""


class DegeneratePointError(FermifidError):
    """A spectral quantity was requested at a point with a vanishing
    single-particle energy."""


class OddParityError(FermifidError):
    """The ground state has odd fermion parity (det T = -1), so no
    pair-condensate matrix G exists."""


class NotCayleyRepresentableError(FermifidError):
    """-1 is an eigenvalue of the polar factor T; the Cayley matrix G of the
    ground state only exists in a limiting sense."""


class StencilCrossingError(FermifidError):
    """A finite-difference stencil straddles a first-order boundary
    (det Z changes sign inside the stencil)."""


class SingularPointError(FermifidError):
    """The requested closed form is singular at this parameter point."""


class WindowError(FermifidError):
    """A peak search window contains no interior minimum."""


class ConsistencyError(FermifidError):
    """Internal cross-check failed; indicates a bug, not a user error."""
