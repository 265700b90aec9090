"""Registry of named property suites."""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from ..errors import UnknownSuite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    func: Callable
    description: str
    modes: Tuple[str, ...]

    @property
    def preferred_mode(self) -> str:
        return self.modes[0]


class SuiteRegistry:
    """
    Collects suite functions registered with the ``suite`` decorator.

    Suites are looked up by name from the harness; the registration order is
    the order in which ``all`` runs them.
    """

    def __init__(self, name: str):
        self.name = name
        self._suites: Dict[str, SuiteEntry] = {}

    def suite(self, name: str, description: str, modes: Tuple[str, ...] = ("rational", "float")):
        """
        Register a suite function under ``name``.

        Args:
            name: Suite name used on the command line.
            description: One line shown by ``list-suites``.
            modes: Supported scalar modes, preferred mode first.
        """
        def decorator(func: Callable) -> Callable:
            if name in self._suites:
                raise ValueError(f"Suite '{name}' is already registered.")
            self._suites[name] = SuiteEntry(name, func, description, tuple(modes))
            logger.debug(f"Registered suite '{name}'")
            return func

        return decorator

    def get(self, name: str) -> SuiteEntry:
        try:
            return self._suites[name]
        except KeyError:
            raise UnknownSuite(
                f"Unknown suite '{name}'. Available suites: {', '.join(self.names())}, all"
            ) from None

    def names(self) -> List[str]:
        return list(self._suites)

    def entries(self) -> List[SuiteEntry]:
        return list(self._suites.values())
