"""Exception hierarchy.

Every error carries a short ``category`` string; the CLI prints it so
callers can branch on failures without parsing messages.
"""


class SwtlgError(Exception):
    category = "error"


class InvalidArgumentError(SwtlgError, ValueError):
    category = "invalid-argument"


class ConfigError(SwtlgError):
    category = "config"


class SingularityError(SwtlgError, ArithmeticError):
    category = "singularity"


class EvanescentError(SwtlgError):
    """No real frequency (negative radicand) or no propagating wave at the requested point."""

    category = "evanescent"

    def __init__(self, message, radicand=None, field_t=None):
        super().__init__(message)
        self.radicand = radicand
        self.field_t = field_t


class BelowBandError(EvanescentError):
    category = "below-band"


class AmbiguousBranchError(SwtlgError):
    category = "ambiguous-branch"

    def __init__(self, message, roots):
        super().__init__(message)
        self.roots = list(roots)


class CalibrationRangeError(SwtlgError):
    category = "calibration-range"


class CalibrationAmbiguityError(SwtlgError):
    category = "calibration-ambiguity"


class NetlistError(SwtlgError):
    category = "netlist"


class UnresolvedSignalError(NetlistError, KeyError):
    category = "unresolved-signal"

    def __str__(self):
        return Exception.__str__(self)


class CyclicNetlistError(NetlistError):
    category = "cyclic-netlist"


class CapacityError(SwtlgError):
    category = "capacity"


class PhaseBudgetError(SwtlgError):
    category = "phase-budget"

    def __init__(self, message, gate_id, vector, net_phase_deg):
        super().__init__(message)
        self.gate_id = gate_id
        self.vector = tuple(vector)
        self.net_phase_deg = net_phase_deg
