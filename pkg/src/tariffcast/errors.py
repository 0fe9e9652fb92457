"""Exception hierarchy shared by all tariffcast modules."""


class TariffcastError(Exception):
    """Base class for every error raised by this package."""


# --- series / shared numerics ---

class SeriesTooShort(TariffcastError):
    pass


class LagTooLarge(TariffcastError):
    pass


class ConstantSeries(TariffcastError):
    pass


class NonPositiveValue(TariffcastError):
    pass


# --- metrics ---

class EmptyInput(TariffcastError):
    pass


class ZeroActual(TariffcastError):
    pass


# --- regression ---

class TooFewObservations(TariffcastError):
    pass


class RankDeficient(TariffcastError):
    pass


# --- smoothing ---

class BadAlpha(TariffcastError):
    pass


class BadParams(TariffcastError):
    pass


# --- arima ---

class NonStationaryParams(TariffcastError):
    pass


class OptimizationDiverged(TariffcastError):
    pass


class AllFitsFailed(TariffcastError):
    pass


# --- tournament ---

class ApproachInfeasible(TariffcastError):
    """An approach's preconditions failed for the given series; recorded, not fatal."""


class NoFeasibleApproach(TariffcastError):
    pass


class HoldoutTooShort(TariffcastError):
    pass


# --- dataset / cli ---

class ParseError(TariffcastError):
    pass


class GapInCalendar(TariffcastError):
    pass


class NonPositivePrice(TariffcastError):
    pass


class ConfigError(TariffcastError):
    pass
