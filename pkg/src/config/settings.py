import hashlib
import logging
from fractions import Fraction
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.errors import DomainError
from src.padic.scalar import ExactRational, check_prime
from src.reynolds import OmegaSet, RepSpec, default_omega
from src.tree import CompactGroupSpec, default_window
from src.tree.lattice import LatticeClass
from src.ultranorm import DiagonalUltraNorm

logger = logging.getLogger(__name__)


class RepConfig(BaseModel):
    n: int = Field(default=2, ge=1, description="Rank n of SL_n")
    tag: Literal["standard", "adjoint", "sym"] = Field(default="standard", description="Representation tag")
    degree: int = Field(default=1, ge=1, description="Degree d for sym representations")


class OmegaConfig(BaseModel):
    half_width: Optional[int] = Field(
        default=None, ge=0, description="J for Omega = {p^(j lambda_0) : |j| <= J}; derived from dim C_H when unset"
    )
    elements: Optional[List[List[int]]] = Field(
        default=None, description="Explicit cocharacters (free coordinates) of the elements of Omega"
    )


class ValuationRange(BaseModel):
    low: int
    high: int

    @model_validator(mode="after")
    def _ordered(self) -> "ValuationRange":
        if self.low > self.high:
            raise ValueError(f"empty valuation range [{self.low}, {self.high}]")
        return self


class HarnessConfig(BaseModel):
    """Everything a stability run depends on; its hash identifies the run"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    prime: int = Field(default=3, description="Residue characteristic p")
    rep: RepConfig = Field(default_factory=RepConfig)
    omega: OmegaConfig = Field(default_factory=OmegaConfig)
    window_half_length: int = Field(default=1, ge=0, description="Half length of the window C along the apartment")
    norm_weights: Optional[List[ExactRational]] = Field(
        default=None, description="Weight exponents of the diagonal norm on V; the sup norm when unset"
    )
    level: int = Field(default=2, ge=1, description="Congruence level of the SL_2(Z/p^N) enumeration behind c3")
    level_cap: int = Field(default=4, ge=1, description="Largest congruence level orbits may escalate to")
    samples: int = Field(default=1000, ge=1, description="Samples in the main verification sweep")
    chain_samples: int = Field(default=200, ge=1, description="Samples per inequality-chain sweep")
    decomposition_samples: int = Field(default=200, ge=1, description="Samples in the decomposition sweep")
    seed: int = Field(default=20240917, ge=0, description="Root seed of every random stream")
    workers: int = Field(default=1, ge=1, description="Worker processes for the verification sweep")
    vector_valuations: ValuationRange = Field(default_factory=lambda: ValuationRange(low=-3, high=3))
    group_valuations: ValuationRange = Field(default_factory=lambda: ValuationRange(low=-5, high=5))
    translation_exponents: ValuationRange = Field(default_factory=lambda: ValuationRange(low=-1, high=1))
    translation_units: List[int] = Field(default_factory=lambda: [1], description="Units u in z = diag(u p^j, u^-1 p^-j)")
    enumeration_budget: int = Field(default=20000, ge=1, description="Largest enumeration of SL_2(Z/p^N) allowed")
    bit_length_cap: Optional[int] = Field(default=4096, ge=64, description="Largest numerator or denominator bit length")

    @field_validator("prime")
    @classmethod
    def _prime(cls, value: int) -> int:
        try:
            check_prime(value)
        except DomainError as error:
            raise ValueError(error.message) from error
        if value == 2:
            logger.warning("p = 2 is experimental: the torus fixes vertices far from the apartment")
        return value

    @model_validator(mode="after")
    def _consistent(self) -> "HarnessConfig":
        if self.level > self.level_cap:
            raise ValueError(f"level {self.level} exceeds the level cap {self.level_cap}")
        if any(u % self.prime == 0 for u in self.translation_units):
            raise ValueError("translation units must be prime to p")
        if self.norm_weights is not None and len(self.norm_weights) != self.rep_spec().dimension:
            raise ValueError(f"{len(self.norm_weights)} norm weights for a representation of dimension {self.rep_spec().dimension}")
        return self

    def rep_spec(self) -> RepSpec:
        return RepSpec(self.rep.n, self.rep.tag, self.prime, self.rep.degree)

    def norm(self) -> DiagonalUltraNorm:
        m = self.rep_spec().dimension
        if self.norm_weights is None:
            return DiagonalUltraNorm.sup(m, self.prime)
        return DiagonalUltraNorm(m, tuple(Fraction(w) for w in self.norm_weights), self.prime)

    def omega_set(self) -> OmegaSet:
        if self.omega.elements is not None:
            return OmegaSet.from_exponents(self.omega.elements, self.prime)
        return default_omega(self.rep_spec(), self.omega.half_width)

    def torus(self) -> CompactGroupSpec:
        return CompactGroupSpec.torus(self.prime, level=1, level_cap=self.level_cap)

    def window(self) -> list[LatticeClass]:
        return default_window(self.prime, self.window_half_length)

    def config_hash(self) -> str:
        return hashlib.sha256(self.model_dump_json().encode("utf-8")).hexdigest()
