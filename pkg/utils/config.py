"""
Environment-driven settings for qscatter
"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv

from utils.errors import InvalidArgumentError

load_dotenv()


@dataclass(frozen=True)
class Settings:
    """Runtime knobs read from the environment (or a .env file)"""
    threads: int = 1
    fd_step: float = 1e-5
    oracle_step: float = 5e-4
    seed: int = 20240521
    log_level: str = 'WARNING'
    log_file: str = 'logs/qscatter.log'

    @classmethod
    def from_env(cls) -> 'Settings':
        try:
            threads = int(os.getenv('QSCATTER_THREADS', 1))
            fd_step = float(os.getenv('QSCATTER_FD_STEP', 1e-5))
            oracle_step = float(os.getenv('QSCATTER_ORACLE_STEP', 5e-4))
            seed = int(os.getenv('QSCATTER_SEED', 20240521))
        except ValueError as e:
            raise InvalidArgumentError(f"Malformed QSCATTER_* setting: {e}") from e

        # the oracle itself rejects steps above its accuracy limit
        if not fd_step > 0 or not oracle_step > 0:
            raise InvalidArgumentError("QSCATTER_FD_STEP and QSCATTER_ORACLE_STEP must be positive")

        return cls(
            threads=max(1, threads),
            fd_step=fd_step,
            oracle_step=oracle_step,
            seed=seed,
            log_level=os.getenv('LOG_LEVEL', 'WARNING').upper(),
            log_file=os.getenv('LOG_FILE', 'logs/qscatter.log'),
        )
