"""Configuration module for superoptimalCF"""

from .settings import Settings
from .fixtures import FIXTURES, fixture_path, load_fixture

__all__ = ['Settings', 'FIXTURES', 'fixture_path', 'load_fixture']
