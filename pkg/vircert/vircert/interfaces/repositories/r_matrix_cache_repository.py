from abc import ABC, abstractmethod
from typing import Optional, Tuple

from vircert.domain.cyclotomic import Cyclotomic

Labels = Tuple[int, int, int, int, int, int]


class RMatrixCacheRepository(ABC):
    """Interface for persistent r-matrix memo storage.

    Entries are keyed by (p, primed, labels). A cache is advisory:
    removing entries never changes computed values.
    """

    @abstractmethod
    def get(
        self, p: int, primed: bool, labels: Labels
    ) -> Optional[Cyclotomic]:
        """Retrieves a stored r-matrix entry.

        Args:
            p (int): Minimal model parameter.
            primed (bool): Whether the entry belongs to the primed table.
            labels (Labels): (a, m, n, c, b, d).

        Returns:
            Optional[Cyclotomic]: The stored value, or None on a miss.
        """
        pass

    @abstractmethod
    def add(
        self, p: int, primed: bool, labels: Labels, value: Cyclotomic
    ) -> None:
        """Stores an r-matrix entry, replacing any previous value."""
        pass

    @abstractmethod
    def discard(self, p: int, primed: bool, labels: Labels) -> None:
        """Removes one entry if present."""
        pass

    @abstractmethod
    def clear(self) -> None:
        """Removes every entry."""
        pass
