"""Exception hierarchy shared by every module."""


class HyperxorError(Exception):
    """Base class for library errors."""


class DomainError(HyperxorError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class CapacityError(HyperxorError):
    """The requested size exceeds a materialization bound."""


class UnsupportedSignatureError(HyperxorError):
    """The algebra lacks the structure the operation needs (e.g. a diagonal basis)."""


class UnknownPresetError(HyperxorError, KeyError):
    """No preset matches the given name."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown preset"


class NonInvertibleError(DomainError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"element is not invertible: diagonal coordinate {index} = {value!r}")


class PowerDomainError(DomainError):
    def __init__(self, index, value, exponent):
        self.index = index
        self.value = value
        self.exponent = exponent
        super().__init__(
            f"power {exponent!r} undefined: diagonal coordinate {index} = {value!r}"
        )
