"""Exception hierarchy shared by every hookdet module."""


class HookdetError(Exception):
    pass


class InvalidOrder(HookdetError, ValueError):
    pass


class IndexOutOfRange(HookdetError, IndexError):
    pass


class DimensionMismatch(HookdetError, ValueError):
    pass


class SizeMismatch(HookdetError, ValueError):
    pass


class CyclicGraph(HookdetError, ValueError):
    pass


class ParseError(HookdetError, ValueError):
    pass


class MissingVariable(HookdetError, KeyError):
    def __init__(self, var):
        super().__init__(var)
        self.var = var

    def __str__(self):
        return f"no value assigned to {self.var}"


class GuardAbort(HookdetError):
    """A desk-scale safety limit was hit; the work was refused, not failed."""


class OrderTooLarge(GuardAbort):
    pass


class ExplosionGuard(GuardAbort):
    pass
