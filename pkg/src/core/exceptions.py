class CommandException(Exception):

    def __init__(self, exit_code: int, detail: str):
        super().__init__(detail)

        self.exit_code = exit_code
        self.detail = detail


class UsageException(CommandException):

    def __init__(self, detail: str):
        super().__init__(1, detail)


class InputValidationException(CommandException):

    def __init__(self, detail: str):
        super().__init__(2, detail)


class GridException(InputValidationException):
    pass


class ParityViolationException(InputValidationException):
    pass


class BelowFloorException(InputValidationException):
    pass


class ZeroCoefficientsException(InputValidationException):
    pass
