import os
import pathlib
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from quantum_clifford.roots import ROOT_TYPES
from quantum_clifford.utils.helpers import content_hash

CACHE_DIR_ENV = "QUANTUM_CLIFFORD_CACHE_DIR"


def default_cache_dir() -> pathlib.Path:
    """$QUANTUM_CLIFFORD_CACHE_DIR when set, else ~/.cache/quantum-clifford."""
    override = os.getenv(CACHE_DIR_ENV)
    if override:
        return pathlib.Path(override)
    return pathlib.Path.home() / ".cache" / "quantum-clifford"


class RunConfig(BaseModel):
    """
    Pydantic model for one batch run: the root datum, the optional node and
    weight, and the knobs of the computation.
    """

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "root_type": "A",
                "rank": 2,
                "node": 1,
                "weight": [1, 0],
                "denominator": None,
                "degree": 4,
                "max_tensor_dim": 20000,
                "probe_degree": 2,
                "star_preset": "standard",
                "q_values": [0.5, 2.0],
                "output_format": "json",
                "cache_dir": "~/.cache/quantum-clifford",
            }
        },
    )

    root_type: str = Field(description="Cartan type, one of A-G")
    rank: int = Field(ge=1, description="Rank of the root system")
    node: int | None = Field(
        default=None, ge=1, description="Cominuscule node s, 1-based Bourbaki numbering"
    )
    weight: tuple[int, ...] | None = Field(
        default=None, description="Highest weight in fundamental-weight coordinates"
    )
    denominator: int | None = Field(
        default=None, ge=1, description="D with u = q^(1/D); automatic when unset"
    )
    degree: int = Field(default=4, ge=0, le=12, description="Degree cutoff for Hilbert series")
    max_tensor_dim: int = Field(
        default=20000, ge=1, description="Largest tensor power dimension that may be built"
    )
    probe_degree: Literal[1, 2] = Field(
        default=2, description="1: fundamental modules, 2: also their pairwise tensors"
    )
    star_preset: Literal["standard", "rescaled"] = Field(
        default="standard", description="Base scale of the inner product on u_+"
    )
    q_values: tuple[float, ...] = Field(
        default=(), description="Positive parameter values for numeric sweeps"
    )
    output_format: Literal["json", "csv", "pretty"] = Field(default="json")
    cache_dir: pathlib.Path | None = Field(
        default_factory=default_cache_dir, description="Cache directory; None disables caching"
    )

    @staticmethod
    def from_cli_options(
        root_type: str,
        rank: int,
        *,
        node: int | None = None,
        weight: str | None = None,
        no_cache: bool = False,
        cache_dir: str | None = None,
        q0: tuple[float, ...] = (),
        **options,
    ) -> "RunConfig":
        """
        Creates a RunConfig from the raw values of the command line.

        Args:
            root_type: Cartan type letter (case-insensitive)
            rank: rank of the root system
            node: 1-based cominuscule node
            weight: comma separated highest weight, e.g. "1,0"
            no_cache: disable the cache
            cache_dir: explicit cache directory
            q0: parameter values for numeric sweeps

        Returns:
            RunConfig: A validated configuration
        """
        values = dict(options)
        if weight is not None:
            values["weight"] = tuple(part.strip() for part in weight.split(",") if part.strip())
        if no_cache:
            values["cache_dir"] = None
        elif cache_dir is not None:
            values["cache_dir"] = pathlib.Path(cache_dir)
        return RunConfig(
            root_type=root_type, rank=rank, node=node, q_values=tuple(q0), **values
        )

    def __str__(self):
        parts = [f"{self.root_type}{self.rank}"]
        if self.node is not None:
            parts.append(f"s={self.node}")
        if self.weight is not None:
            parts.append(f"weight={','.join(map(str, self.weight))}")
        return f"RunConfig({', '.join(parts)})"

    @field_validator("root_type")
    def validate_root_type(cls, v: str) -> str:
        """Normalize to an upper-case Cartan letter."""
        letter = v.strip().upper()
        if letter not in ROOT_TYPES or len(letter) != 1:
            raise ValueError(f"Invalid root system type: {v}")
        return letter

    @field_validator("q_values")
    def validate_q_values(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        for q0 in v:
            if q0 <= 0:
                raise ValueError(f"Parameter values must be positive: {q0}")
        return v

    @model_validator(mode="after")
    def validate_datum(self) -> "RunConfig":
        """Cross-field checks: the rank fits the type, node and weight fit the rank."""
        bounds = {"B": 2, "C": 2, "D": 4}
        exact = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
        if self.root_type in exact and self.rank not in exact[self.root_type]:
            raise ValueError(f"Type {self.root_type} has no rank {self.rank}")
        if self.rank < bounds.get(self.root_type, 1):
            raise ValueError(f"Type {self.root_type} needs rank >= {bounds[self.root_type]}")
        if self.node is not None and self.node > self.rank:
            raise ValueError(f"Node {self.node} exceeds rank {self.rank}")
        if self.weight is not None:
            if len(self.weight) != self.rank:
                raise ValueError(f"Weight {self.weight} does not have {self.rank} coordinates")
            if any(c < 0 for c in self.weight):
                raise ValueError(f"Weight {self.weight} is not dominant")
        return self

    def content_hash(self) -> str:
        """sha256 of the canonical JSON of the fields that determine a result."""
        payload = self.model_dump(mode="json", exclude={"cache_dir", "output_format"})
        return content_hash(payload)
