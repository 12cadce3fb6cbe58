"""Exception types shared across the package."""


class RRBLieError(Exception):
    pass


class FieldMismatch(RRBLieError):
    pass


class ShapeError(RRBLieError):
    pass


class NotASubspace(RRBLieError):
    pass


class SingularMatrix(RRBLieError):
    pass


class InvalidInput(RRBLieError):
    pass


class DegreeOutOfRange(RRBLieError):
    pass


class DegreeError(RRBLieError):
    pass


class NotACocycle(RRBLieError):
    pass


class InvalidCocycle(RRBLieError):
    pass


class ModeUnsupported(RRBLieError):
    pass


class BoundExceeded(RRBLieError):
    pass


class NotAbelian(RRBLieError):
    pass


class NotAbelianExtension(RRBLieError):
    pass


class NotPreservingKernel(RRBLieError):
    pass


class SingularAutomorphism(RRBLieError):
    pass


class NotInKernel(RRBLieError):
    pass


class NotMembers(RRBLieError):
    pass
