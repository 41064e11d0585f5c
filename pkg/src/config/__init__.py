from src.config.config_loader import ConfigLoader, build_config, environment_overrides
from src.config.settings import HarnessConfig, OmegaConfig, RepConfig, ValuationRange

__all__ = [
    "ConfigLoader",
    "HarnessConfig",
    "OmegaConfig",
    "RepConfig",
    "ValuationRange",
    "build_config",
    "environment_overrides",
]
