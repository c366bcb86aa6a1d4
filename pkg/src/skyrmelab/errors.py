"""Error taxonomy shared across the package.

DomainError     : an argument is outside the mathematical domain of an operation
ContractError   : a structural precondition is violated (e.g. wrong parity)
ConfigError     : invalid run configuration; carries (line, message) pairs when
                  raised by the config parser, so every problem in a file is
                  reported at once instead of first-error-only
"""


class DomainError(ValueError):
    pass


class ContractError(ValueError):
    pass


class ConfigError(ValueError):
    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [(None, errors)]
        self.errors = list(errors)
        super().__init__("; ".join(m if ln is None else f"line {ln}: {m}" for ln, m in self.errors))
