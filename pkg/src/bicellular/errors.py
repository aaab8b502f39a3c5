"""Exception hierarchy shared by all modules."""


class BicellularError(Exception):
    """Base class for every error raised by the package."""


class MapError(BicellularError, ValueError):
    pass


class NotInvolution(MapError):
    pass


class DomainMismatch(MapError):
    pass


class Disconnected(MapError):
    pass


class NotPlanted(MapError):
    pass


class SurgeryError(BicellularError, ValueError):
    pass


class NotIntertwined(SurgeryError):
    pass


class NotSameVertex(SurgeryError):
    pass


class NotTrisection(SurgeryError):
    pass


class NotDistributed(SurgeryError):
    pass


class DuplicateVertex(SurgeryError):
    pass


class IllegalSignature(SurgeryError):
    pass


class MarkPlacementMismatch(SurgeryError):
    pass


class EmptyFamily(BicellularError, ValueError):
    """The requested combinatorial family has no members."""


class InvalidRange(BicellularError, ValueError):
    pass


class NoSuccessor(BicellularError, RuntimeError):
    pass


class InfeasibleTransition(BicellularError, RuntimeError):
    pass


class DiagramError(BicellularError, ValueError):
    pass


class DiagramSyntaxError(DiagramError):
    pass


class EndpointReuse(DiagramError):
    pass


class OutOfRange(DiagramError):
    pass


class NoExternalArc(DiagramError):
    pass


class AlreadyPlanted(DiagramError):
    pass


class TooLarge(BicellularError, ValueError):
    """Brute-force enumeration refused because of its size guard."""


class SupportMismatch(BicellularError, AssertionError):
    """A sample fell outside the enumerated support."""
