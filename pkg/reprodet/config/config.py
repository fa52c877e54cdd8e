import os
import tomli
from pathlib import Path
from typing import Any, Dict, List, Optional, get_origin
from pydantic import BaseModel, Field, validator
from pydantic.fields import ModelField

ENV_PREFIX = "REPRODET_"


def _env_value(target: ModelField, raw: str) -> Any:
    """List-valued settings take comma-separated env values; pydantic coerces the rest"""
    if get_origin(target.outer_type_) is list:
        return [part.strip() for part in raw.split(",") if part.strip()]
    return raw.strip()


class Settings(BaseModel):
    class Generator(BaseModel):
        range: int = Field(20, ge=1, description="Integer parameters are drawn from [-range, range]")
        max_attempts: int = Field(10000, ge=1, description="Rejection sampling budget per instance")

    class Verify(BaseModel):
        primes: int = Field(3, ge=0, description="Random prime fields each rational instance is replayed over")
        prime_bits: int = Field(62, ge=8, description="Bit length of the replay primes")
        primality_rounds: int = Field(40, ge=1, description="Miller-Rabin rounds for probable primes")
        laplace_max_size: int = Field(9, ge=1, description="Largest matrix the cofactor oracle accepts")
        clear_denominator_bits: int = Field(64, ge=1, description="Denominator width up to which det_exact clears to integers")
        jobs: int = Field(1, ge=1, description="Worker processes for batch runs")

    class Bench(BaseModel):
        sizes: List[int] = Field([4, 6, 8], description="System sizes n to benchmark")
        reps: int = Field(5, ge=1, description="Repetitions per engine; the median is reported")
        seed: int = Field(0, description="Seed of the benchmark instance set")
        max_size: int = Field(24, ge=0, description="Largest n the benchmark accepts")

        @validator("sizes", each_item=True)
        def non_negative(cls, v):
            if v < 0:
                raise ValueError("sizes must be non-negative")
            return v

    class Logging(BaseModel):
        level: str = Field("WARNING", description="Root log level")
        debug: bool = Field(False, description="Force DEBUG logging")

        @validator("level")
        def known_level(cls, v):
            v = v.upper()
            if v not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
                raise ValueError(f"unknown log level {v}")
            return v

    generator: Generator = Generator()
    verify: Verify = Verify()
    bench: Bench = Bench()
    logging: Logging = Logging()

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "Settings":
        """Load settings from TOML file with environment variable override"""
        if config_path is None:
            base_dir = Path(__file__).parent
            config_path = os.path.join(base_dir, "default.toml")

        config_data: Dict[str, Any] = {}
        if os.path.exists(config_path):
            with open(config_path, "rb") as f:
                config_data = tomli.load(f)

        # Format: REPRODET_VERIFY_PRIMES, REPRODET_BENCH_SIZES=4,6,8, etc.
        for env_name, env_value in os.environ.items():
            if env_name.startswith(ENV_PREFIX):
                parts = env_name[len(ENV_PREFIX):].lower().split("_")
                if len(parts) >= 2:
                    section, key = parts[0], "_".join(parts[1:])
                    section_field = cls.__fields__.get(section)
                    if section_field is None or key not in section_field.type_.__fields__:
                        continue
                    section_data = config_data.setdefault(section, {})
                    if isinstance(section_data, dict):
                        section_data[key] = _env_value(section_field.type_.__fields__[key], env_value)

        # Env values go through the same validators as file values
        return cls.parse_obj(config_data)
