from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

from hindlab.core.arithmetic.schemas import PosRational
from hindlab.core.families.schemas import IndexSet


class Coloring(ABC):
    """r-coloring C: ℚ₊ → {1..r}.

    A coloring is total; partial colorings narrow :meth:`defined` and the
    consistency predicates read an undefined color as a failure.
    """

    @property
    @abstractmethod
    def r(self) -> int:
        ...

    @abstractmethod
    def color(self, q: PosRational) -> int:
        ...

    @abstractmethod
    def descriptor(self) -> Dict[str, Any]:
        """JSON spec accepted back by ``coloring_from_spec``."""

    def defined(self, q: PosRational) -> bool:
        return True

    def __call__(self, q) -> int:
        return self.color(q)


class PointColoring(ABC):
    """Coloring of points (u; x) of X.

    ``support`` is the tag S when the coloring lies in 𝒞_S, i.e. factors
    through x·Π_{s∈S} u_s; ``None`` for untagged colorings.
    """

    @property
    @abstractmethod
    def r(self) -> int:
        ...

    @property
    def support(self) -> Optional[IndexSet]:
        return None

    @abstractmethod
    def color(self, pt) -> int:
        ...

    def defined(self, pt) -> bool:
        return True

    def __call__(self, pt) -> int:
        return self.color(pt)
