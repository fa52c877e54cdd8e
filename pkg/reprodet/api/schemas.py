from typing import Optional, List, Dict, Any, Literal, Tuple, Union
from pydantic import BaseModel, Field, StrictStr, validator, root_validator

from ..core.exceptions import InvalidSystem, ReprodetError
from ..core.kernel import SextupleSystem, kernel_matrix
from ..core.matrix import det_exact
from ..core.scalars import field_from_spec, format_scalar, parse_scalar
from ..core.suite import MODES, SUITES
from ..core.symmetric import SymmetricSystem, lift
from ..utils.validators import validate_field_spec

SCHEMA_VERSION = "1"

Triplet = Tuple[StrictStr, StrictStr, StrictStr]


def _check_scalar(text: str, field_spec: Optional[str]) -> None:
    try:
        parse_scalar(text, field_from_spec(field_spec or "rational"))
    except ReprodetError as e:
        raise ValueError(e.detail)


class InstanceFile(BaseModel):
    """Serialized instance: every scalar is a "p" or "p/q" string"""
    schema_version: StrictStr = Field(
        SCHEMA_VERSION,
        description="Instance file schema version"
    )
    mode: Literal["general", "symmetric"] = Field(
        description="general: left and right triplets; symmetric: triplets only"
    )
    n: int = Field(
        ge=0,
        description="Number of base pairs; there are n+1 triplets per side"
    )
    field_spec: StrictStr = Field(
        "rational",
        alias="field",
        description="'rational' or 'prime:P'"
    )
    left: List[Triplet] = Field(
        description="Triplets (u_i, v_i, k_i); the last one is distinguished"
    )
    right: Optional[List[Triplet]] = Field(
        default=None,
        description="Triplets (x_j, y_j, l_j) of a general instance"
    )
    seed: Optional[int] = Field(
        default=None,
        description="Generator seed the instance came from"
    )
    value_range: Optional[int] = Field(
        default=None,
        alias="range",
        description="Generator range the instance came from"
    )
    kernel: Optional[List[List[StrictStr]]] = Field(
        default=None,
        description="Stored (n+1)x(n+1) kernel matrix, compared on verify"
    )
    det: Optional[StrictStr] = Field(
        default=None,
        description="Stored D_{n+1}, compared on verify"
    )

    class Config:
        extra = "forbid"
        allow_population_by_field_name = True

    @validator("schema_version")
    def known_version(cls, v):
        if v != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version '{v}', expected '{SCHEMA_VERSION}'")
        return v

    @validator("field_spec")
    def known_field(cls, v):
        try:
            return validate_field_spec(v)
        except ReprodetError as e:
            raise ValueError(e.detail)

    @validator("left", "right", each_item=True)
    def scalar_triplets(cls, v, values):
        for text in v:
            _check_scalar(text, values.get("field_spec"))
        return v

    @validator("kernel", each_item=True)
    def scalar_rows(cls, v, values):
        for text in v:
            _check_scalar(text, values.get("field_spec"))
        return v

    @validator("det")
    def scalar_det(cls, v, values):
        if v is not None:
            _check_scalar(v, values.get("field_spec"))
        return v

    @root_validator(skip_on_failure=True)
    def consistent_sizes(cls, values):
        n, mode = values["n"], values["mode"]
        if len(values["left"]) != n + 1:
            raise ValueError(f"left holds {len(values['left'])} triplets, expected n+1 = {n + 1}")
        right = values.get("right")
        if mode == "general":
            if right is None or len(right) != n + 1:
                raise ValueError(f"a general instance needs n+1 = {n + 1} right triplets")
        elif right is not None:
            raise ValueError("a symmetric instance has no right triplets")
        kernel = values.get("kernel")
        if kernel is not None and (len(kernel) != n + 1 or any(len(row) != n + 1 for row in kernel)):
            raise ValueError(f"stored kernel must be {n + 1}x{n + 1}")
        return values

    @property
    def scalar_field(self):
        return field_from_spec(self.field_spec)

    def to_system(self) -> Union[SextupleSystem, SymmetricSystem]:
        """Build the system; invariant violations raise InvalidSystem"""
        field = self.scalar_field

        def parse(triplets: List[Triplet]) -> Tuple[Tuple[Any, ...], ...]:
            return tuple(tuple(parse_scalar(text, field) for text in t) for t in triplets)

        if self.mode == "symmetric":
            return SymmetricSystem(parse(self.left), field)
        return SextupleSystem(parse(self.left), parse(self.right), field)

    def stored_kernel(self) -> Optional[List[List[Any]]]:
        if self.kernel is None:
            return None
        field = self.scalar_field
        return [[parse_scalar(text, field) for text in row] for row in self.kernel]

    def stored_det(self) -> Optional[Any]:
        return None if self.det is None else parse_scalar(self.det, self.scalar_field)

    @classmethod
    def from_system(
        cls,
        system: Union[SextupleSystem, SymmetricSystem],
        seed: Optional[int] = None,
        value_range: Optional[int] = None,
        with_derived: bool = True
    ) -> "InstanceFile":
        """Serialize a system, optionally with its kernel matrix and determinant"""
        def text(triplets) -> List[List[str]]:
            return [[format_scalar(s) for s in t] for t in triplets]

        if isinstance(system, SymmetricSystem):
            mode, left, right, general = "symmetric", text(system.triplets), None, lift(system)
        elif isinstance(system, SextupleSystem):
            mode, left, right, general = "general", text(system.left), text(system.right), system
        else:
            raise InvalidSystem(f"Cannot serialize {type(system).__name__}")

        kernel = det = None
        if with_derived:
            matrix = kernel_matrix(general, general.n + 1)
            kernel = [[format_scalar(e) for e in row] for row in matrix.to_rows()]
            det = format_scalar(det_exact(matrix))

        return cls(
            mode=mode,
            n=system.n,
            field_spec=system.field.name,
            left=left,
            right=right,
            seed=seed,
            value_range=value_range,
            kernel=kernel,
            det=det,
        )

    def dumps(self) -> str:
        """Canonical JSON text; identical instances give identical bytes"""
        return self.json(by_alias=True, exclude_none=True, indent=2) + "\n"


class GenRequest(BaseModel):
    """Request schema for instance generation"""
    mode: Literal["general", "symmetric"] = Field(
        default="general",
        description="Instance type"
    )
    n: int = Field(
        ge=0,
        description="Number of base pairs"
    )
    seed: int = Field(
        default=0,
        description="Generator seed"
    )
    value_range: int = Field(
        default=20,
        ge=1,
        description="Integers are drawn from [-range, range]"
    )
    field_spec: str = Field(
        default="rational",
        description="'rational' or 'prime:P'"
    )
    max_attempts: int = Field(
        default=10000,
        ge=1,
        description="Rejection sampling budget"
    )

    @validator("field_spec")
    def known_field(cls, v):
        try:
            return validate_field_spec(v)
        except ReprodetError as e:
            raise ValueError(e.detail)


class VerifyRequest(BaseModel):
    """Request schema for identity verification"""
    suite: str = Field(
        default="all",
        description=f"One of {', '.join(SUITES)}"
    )
    primes: int = Field(
        default=3,
        ge=0,
        description="Random prime fields to replay rational instances over"
    )

    @validator("suite")
    def known_suite(cls, v):
        if v not in SUITES:
            raise ValueError(f"unknown suite '{v}', expected one of {SUITES}")
        return v


class BatchRequest(VerifyRequest):
    """Request schema for seed-split batches"""
    mode: str = Field(
        default="general",
        description=f"One of {', '.join(MODES)}"
    )
    n: int = Field(
        ge=0,
        description="Number of base pairs"
    )
    seed: int = Field(
        default=0,
        description="Master seed"
    )
    trials: int = Field(
        default=10,
        ge=1,
        description="Number of generated instances"
    )
    jobs: int = Field(
        default=1,
        ge=1,
        description="Worker processes"
    )

    @validator("mode")
    def known_mode(cls, v):
        if v not in MODES:
            raise ValueError(f"unknown mode '{v}', expected one of {MODES}")
        return v


class BenchRequest(BaseModel):
    """Request schema for benchmarking"""
    sizes: List[int] = Field(
        description="System sizes n"
    )
    reps: int = Field(
        default=5,
        ge=1,
        description="Repetitions per engine"
    )
    seed: int = Field(
        default=0,
        description="Seed of the instance set"
    )


class CommandResponse(BaseModel):
    """Base response model for all command outputs"""
    success: bool = Field(
        description="Whether the command succeeded and every identity held"
    )
    message: str = Field(
        description="Human-readable message describing the result"
    )
    data: Optional[Dict[str, Any]] = Field(
        default=None,
        description="Optional data payload"
    )


class BenchRowResponse(BaseModel):
    """Median seconds per engine for one n"""
    n: int
    det_exact: float
    det_multimodular: float
    prime_verify: float
    det_by_bordering: float
    bordering_fallback: bool


class BenchResponse(BaseModel):
    """Machine-readable benchmark table"""
    seed: int
    reps: int
    rows: List[BenchRowResponse]


class ErrorResponse(BaseModel):
    """Response schema for errors"""
    error: str = Field(
        description="Error code"
    )
    detail: str = Field(
        description="Human-readable error description"
    )
    exit_code: int = Field(
        description="Process exit code"
    )
