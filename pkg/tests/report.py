"""Shared record of acceptance outcomes, printed at the end of the run."""

# criterion number -> (passed, detail)
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
