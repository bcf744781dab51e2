"""Bilateral price-negotiation arena.

Everything is re-exported from the compiled ``_core`` extension: the message
protocol (two grammars), catalog loading and scenario synthesis, the episode
engine driving scripted agents, surplus reward, metrics aggregation, and the
desk-scale group-relative toy trainer. The HTTP chat transport and the CLI
are native-only; use the ``arena`` binary for those.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
