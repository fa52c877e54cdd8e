from .commands import COMMANDS, handle_errors

__all__ = ["COMMANDS", "handle_errors"]
