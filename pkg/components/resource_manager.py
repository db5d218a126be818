#!/usr/bin/env python3
"""
Resource Manager for handling bundled data files and machine resources.
Provides standardized access to config files and worker counts across
development checkouts and installed packages.
"""

import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import mpmath
import psutil


class ResourceManager:
    """Manages resource paths for both development and installed environments."""

    def __init__(self):
        # Setup logger
        self.logger = logging.getLogger(__name__)

        self._base_path: Optional[Path] = None
        self._resources_path: Optional[Path] = None
        self._json_cache: Dict[str, Any] = {}
        self._initialize_paths()

    def _initialize_paths(self):
        """Initialize all resource paths based on current environment."""
        # Import here to avoid circular imports
        from .logger_config import is_debug_enabled

        current_file = Path(__file__).resolve()
        project_root = current_file.parent.parent  # Go up from components/

        self._base_path = project_root
        override = os.environ.get('XIBASIN_CONFIG_DIR')
        if override:
            self._resources_path = Path(override)
        else:
            self._resources_path = project_root / 'config'

        if not self._resources_path.exists():
            self.logger.error(f"Config directory not found: {self._resources_path}")
        elif is_debug_enabled():
            self.logger.debug("Path verification:")
            self.logger.debug(f"base_path exists: {self._base_path.exists()} -> {self._base_path}")
            self.logger.debug(f"resources_path exists: {self._resources_path.exists()} -> {self._resources_path}")

    @property
    def base_path(self) -> Path:
        """Get the base resource path."""
        return self._base_path

    @property
    def resources_path(self) -> Path:
        """Get the resources directory path."""
        return self._resources_path

    def get_config_file(self, filename: str) -> Optional[Path]:
        """Get path to a configuration file."""
        # Try in resources directory first
        config_path = self._resources_path / filename
        if config_path.exists():
            return config_path

        # Fallback to base path for bundled files
        fallback_path = self._base_path / filename
        return fallback_path if fallback_path.exists() else None

    def load_json(self, filename: str) -> Any:
        """Load and cache a bundled JSON file."""
        if filename in self._json_cache:
            return self._json_cache[filename]

        path = self.get_config_file(filename)
        if path is None:
            raise FileNotFoundError(f"Bundled config file not found: {filename}")

        self.logger.debug(f"Loading {filename} from: {path}")
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
        self._json_cache[filename] = data
        return data

    def default_workers(self) -> int:
        """Number of worker processes for parallel sweeps (physical cores)."""
        try:
            cores = psutil.cpu_count(logical=False)
        except Exception as e:
            self.logger.warning(f"Could not query physical cores: {e}")
            cores = None
        if not cores:
            cores = os.cpu_count() or 1
        return max(1, int(cores))

    def debug_info(self) -> dict:
        """Get debug information about current paths and machine resources."""
        memory = psutil.virtual_memory()
        return {
            'executable': sys.executable,
            'base_path': str(self._base_path),
            'resources_path': str(self._resources_path),
            'resources_exists': self._resources_path.exists(),
            'physical_cores': psutil.cpu_count(logical=False),
            'logical_cores': psutil.cpu_count(logical=True),
            'memory_total_mb': memory.total // (1024 * 1024),
            'memory_available_mb': memory.available // (1024 * 1024),
            'mpmath_version': mpmath.__version__,
            'mpmath_backend': mpmath.libmp.BACKEND,
        }


# Global instance
_resource_manager: Optional[ResourceManager] = None


def get_resource_manager() -> ResourceManager:
    """Get the global ResourceManager instance."""
    global _resource_manager
    if _resource_manager is None:
        _resource_manager = ResourceManager()
    return _resource_manager


# Convenience functions
def load_config_json(filename: str) -> Any:
    """Load a bundled JSON file using ResourceManager."""
    return get_resource_manager().load_json(filename)


def default_workers() -> int:
    """Default worker count using ResourceManager."""
    return get_resource_manager().default_workers()
