"""Exception hierarchy shared by every module of the toolkit."""


class SelmerToolError(Exception):
    """Base class for all toolkit errors."""


class InvalidParameter(SelmerToolError, ValueError):
    pass


class ResourceLimit(SelmerToolError):
    pass


class BadReduction(SelmerToolError):
    def __init__(self, ell: int):
        super().__init__(f"model has bad reduction at {ell}")
        self.ell = ell


class MissingTrace(SelmerToolError):
    def __init__(self, ell: int, detail: str = ""):
        msg = f"no trace of Frobenius available at {ell}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.ell = ell


class TraceTableError(SelmerToolError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NonPrimeKey(TraceTableError):
    def __init__(self, key: int, line: int | None = None):
        super().__init__(f"NonPrimeKey({key})", line)
        self.key = key


class DuplicatePrime(TraceTableError):
    def __init__(self, key: int, line: int | None = None):
        super().__init__(f"DuplicatePrime({key})", line)
        self.key = key


class ValueOutOfRange(TraceTableError):
    def __init__(self, key: int, value: int, line: int | None = None):
        super().__init__(f"ValueOutOfRange({key}: {value})", line)
        self.key = key
        self.value = value


class HypothesisViolated(SelmerToolError):
    """A prime l = +-1 (mod p) divides the Serre conductor."""

    def __init__(self, prime: int):
        super().__init__(f"HypothesisViolated({prime})")
        self.prime = prime


class CapExceeded(SelmerToolError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"CapExceeded({count}) with cap {cap}")
        self.count = count
        self.cap = cap


class RelationViolated(SelmerToolError):
    pass


class PrecisionInsufficient(SelmerToolError):
    pass


class ConfigError(SelmerToolError, ValueError):
    pass
