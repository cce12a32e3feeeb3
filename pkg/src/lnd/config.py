"""Budget configuration shared by the scripts and the command line."""
from dataclasses import asdict, dataclass, replace

from .derivation import DEFAULT_NILPOTENCY_CAP
from .groebner import DEFAULT_MAX_STEPS
from .kernel import DEFAULT_MAX_NEW, DEFAULT_ORACLE_DEGREE, DEFAULT_ROUNDS, DEFAULT_SLICE_CAP


@dataclass(frozen=True)
class Budgets:
    """Every resource limit in one place.  Exceeding one yields "unknown",
    never a wrong answer."""
    max_steps: int = DEFAULT_MAX_STEPS
    nilpotency_cap: int = DEFAULT_NILPOTENCY_CAP
    rounds: int = DEFAULT_ROUNDS
    oracle_degree: int = DEFAULT_ORACLE_DEGREE
    slice_cap: int = DEFAULT_SLICE_CAP
    max_new_per_round: int = DEFAULT_MAX_NEW

    def with_(self, **changes) -> "Budgets":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return asdict(self)

    def rounds_kwargs(self) -> dict:
        """Keyword arguments for ``kernel_generator_rounds``."""
        return {"rounds": self.rounds, "oracle_degree": self.oracle_degree,
                "slice_cap": self.slice_cap, "max_steps": self.max_steps,
                "max_new_per_round": self.max_new_per_round}
