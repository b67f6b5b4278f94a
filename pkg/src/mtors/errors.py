"""Exception types shared across the package."""


class MtorsError(Exception):
    """Base class for all package errors."""


class SingularOperator(MtorsError):
    """An operator expected to be invertible on the cuspidal space is not."""


class NotSublattice(MtorsError):
    """The claimed sublattice is not contained in the ambient lattice."""


class NotStable(MtorsError):
    """An endomorphism does not preserve the lattice pair it must act on."""


class InfiniteOrder(MtorsError):
    """A generator is not torsion modulo the given lattice."""


class BadLevel(MtorsError):
    """Level must be a prime >= 5 for this operation."""


class BadUnit(MtorsError):
    """Residue is not a unit modulo the level."""


class BadSymbol(MtorsError):
    """Pair (u, v) is not coprime to the level."""


class NoValidEta(MtorsError):
    """No annihilator prime below the policy bound has invertible action."""


class NotGenerator(MtorsError):
    """d does not generate (Z/pZ)^x / {+-1}."""


class ProjectionFailed(MtorsError):
    """No Hecke polynomial product separates the cuspidal part."""
