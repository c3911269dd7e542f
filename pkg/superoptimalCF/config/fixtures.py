"""
Bundled decimal fixtures
"""
from ..core.errors import BadParameter
from .settings import Settings

FIXTURES = {
    'pi': 'pi_minus_3.txt',      # 500 decimals of pi - 3
}


def fixture_path(name):
    """
    Resolve a fixture name to its file under the data folder

    Raises:
        BadParameter: for unknown names
    """
    try:
        return Settings.DATA_FOLDER / FIXTURES[name]
    except KeyError:
        known = ', '.join(sorted(FIXTURES))
        raise BadParameter(f"unknown fixture {name!r} (known: {known})") from None


def load_fixture(name):
    return fixture_path(name).read_text(encoding='utf-8')
