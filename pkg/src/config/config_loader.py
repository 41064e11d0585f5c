import copy
import logging
import os
import yaml
from pathlib import Path
from typing import Dict, Any, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from src.config.settings import HarnessConfig
from src.errors import ConfigError

logger = logging.getLogger(__name__)

ENV_PREFIX = "ULTRASTAB_"

# environment variable suffix -> dotted config key
ENV_OVERRIDES = {
    "P": "prime",
    "REP": "rep.tag",
    "LEVEL": "level",
    "LEVEL_CAP": "level_cap",
    "WINDOW": "window_half_length",
    "SEED": "seed",
    "SAMPLES": "samples",
    "WORKERS": "workers",
    "BIT_CAP": "bit_length_cap",
}


def set_dotted(data: Dict[str, Any], key: str, value: Any) -> None:
    """Set data["a"]["b"] for key "a.b", creating intermediate sections"""
    *sections, leaf = key.split(".")
    for section in sections:
        data = data.setdefault(section, {})
    data[leaf] = value


class ConfigLoader:
    """Utility class for loading harness configuration profiles from YAML files"""

    def __init__(self, config_root: Optional[str] = None):
        if config_root is None:
            project_root = Path(__file__).parent.parent.parent
            self.config_root = project_root / "config"
        else:
            self.config_root = Path(config_root)

    def load_harness_profiles(self, config_file: str = "default.yaml") -> Dict[str, Any]:
        """Load every named harness profile from a YAML file"""
        config_path = self.config_root / "harness" / config_file
        return self._load_yaml_file(config_path)

    def _load_yaml_file(self, file_path: Path) -> Dict[str, Any]:
        """Load a YAML (or JSON) file and return its contents"""
        if not file_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {file_path}")
        try:
            with open(file_path, "r", encoding="utf-8") as file:
                content = yaml.safe_load(file)
        except yaml.YAMLError as e:
            raise ValueError(f"Error parsing YAML file {file_path}: {e}")
        if content is None or not isinstance(content, dict):
            raise ValueError(f"Empty or invalid YAML file: {file_path}")
        return content

    def get_harness_config(
        self,
        profile: str = "standard",
        config_file: str = "default.yaml",
        overrides: Optional[Dict[str, Any]] = None,
    ) -> HarnessConfig:
        """Get a validated harness configuration for a named profile"""
        profiles = self.load_harness_profiles(config_file)
        if profile not in profiles:
            raise KeyError(f"Profile '{profile}' not found in configuration file")
        return build_config(profiles[profile], overrides)

    def load_config_path(self, path: str, overrides: Optional[Dict[str, Any]] = None) -> HarnessConfig:
        """Load a config from an explicit file: a bare config or a file of profiles (first one wins)"""
        content = self._load_yaml_file(Path(path))
        if "prime" not in content and all(isinstance(v, dict) for v in content.values()):
            name = next(iter(content))
            logger.info("using profile '%s' from %s", name, path)
            content = content[name]
        return build_config(content, overrides)


def environment_overrides(environ: Optional[Dict[str, str]] = None) -> Dict[str, Any]:
    """ULTRASTAB_* variables (after loading .env) as dotted config keys"""
    if environ is None:
        load_dotenv()
        environ = dict(os.environ)
    found = {}
    for suffix, key in ENV_OVERRIDES.items():
        value = environ.get(ENV_PREFIX + suffix)
        if value is not None and value != "":
            found[key] = value
    return found


def build_config(
    data: Dict[str, Any],
    overrides: Optional[Dict[str, Any]] = None,
    environ: Optional[Dict[str, str]] = None,
) -> HarnessConfig:
    """File values, then environment overrides, then explicit overrides (CLI flags)"""
    merged = copy.deepcopy(data)
    for key, value in environment_overrides(environ).items():
        set_dotted(merged, key, value)
    for key, value in (overrides or {}).items():
        if value is not None:
            set_dotted(merged, key, value)
    try:
        return HarnessConfig.model_validate(merged)
    except ValidationError as e:
        raise ConfigError(f"Invalid harness configuration: {e}") from e
