"""Exception hierarchy.

Validation problems (bad inputs) derive from ``ValueError``; failures while
computing a physically valid request derive from ``ArithmeticError``. The CLI
maps the two families to exit codes 2 and 1.
"""


class NCQError(Exception):
    pass


class ValidationError(NCQError, ValueError):
    pass


class DomainError(ValidationError):
    pass


class ComputationError(NCQError, ArithmeticError):
    pass


class PartitionDivergenceError(ComputationError):
    pass


class DegenerateCycleError(ComputationError):
    def __init__(self, message, heats=None, work=None):
        super().__init__(message)
        self.heats = heats
        self.work = work


class NotRefrigeratorError(ComputationError):
    def __init__(self, message, heats=None, work=None, q_cold=None):
        super().__init__(message)
        self.heats = heats
        self.work = work
        self.q_cold = q_cold
