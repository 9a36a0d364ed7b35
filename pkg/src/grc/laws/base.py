"""Base classes and decorators for laws."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from hypothesis import strategies as st


@dataclass(frozen=True)
class LawEnv:
    """Parameters every strategy and check sees."""
    max_dim: int = 5
    max_denominator: int = 64
    tol: float = 1e-9
    entropy_samples: int = 50
    base: float = 2.0


Strategy = Callable[[LawEnv], st.SearchStrategy[tuple]]
Check = Callable[..., bool]


@dataclass
class Law:
    """A property checked on cases drawn from ``strategy(env)``.

    ``check(*case, env)`` returns True when the property holds. Laws with a
    premise hold vacuously on cases that do not satisfy it.
    """

    id: str
    description: str
    strategy: Strategy
    check: Check
    tags: list[str] = field(default_factory=list)

    def holds(self, case: tuple, env: LawEnv) -> bool:
        return bool(self.check(*case, env))

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, "description": self.description, "tags": self.tags}


class LawRegistry:
    """Registry for all laws."""

    def __init__(self):
        self._laws: dict[str, Law] = {}

    def register(self, law: Law) -> None:
        self._laws[law.id] = law

    def get(self, law_id: str) -> Law | None:
        return self._laws.get(law_id)

    def list(self, prefix: str | None = None) -> list[Law]:
        laws = list(self._laws.values())
        if prefix:
            stem = prefix.rstrip(".")
            laws = [w for w in laws if w.id == stem or w.id.startswith(stem + ".")]
        return sorted(laws, key=lambda w: w.id)


# Global registry instance
_registry = LawRegistry()


def law(
    law_id: str,
    description: str | None = None,
    strategy: Strategy | None = None,
    tags: list[str] | None = None,
):
    """Decorator to register a check function as a law.

    Usage:
        @law("core.compose_associative", strategy=composable_triples)
        def _(m, n, k, env) -> bool:
            ...
    """
    if strategy is None:
        raise TypeError(f"law {law_id!r} needs a strategy")

    def decorator(func: Check) -> Check:
        desc = description or func.__doc__ or law_id
        _registry.register(Law(
            id=law_id,
            description=desc.strip().split("\n")[0],
            strategy=strategy,
            check=func,
            tags=tags or [law_id.split(".")[0]],
        ))
        return func

    return decorator


def get_law_registry() -> LawRegistry:
    """Get the global law registry."""
    return _registry
