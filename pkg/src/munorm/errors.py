"""Exception types shared across the package."""


class CapExceeded(RuntimeError):
    """A configured resource cap (enumeration terms, band, period) was exceeded.

    Raised instead of silently truncating; the message states the required
    amount and the cap that blocked it.
    """
