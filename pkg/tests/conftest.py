import os
import sys
import pytest
from pathlib import Path

root_dir = Path(__file__).parent.parent
sys.path.append(str(root_dir))
os.environ["PADIC_EULER_HOME"] = str(root_dir / ".appdata")

from padic_euler import util
from padic_euler.settings import settings


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", help="run the full identity suite")


@pytest.fixture(scope="session", autouse=True)
def clear_appdata():
    user_dir = util.user_data_dir
    assert user_dir.name == ".appdata", "expected local test appdata dir"

    settings_file = user_dir / "settings.json"
    if settings_file.exists():
        settings_file.unlink()


@pytest.fixture(autouse=True)
def default_settings():
    settings.restore()
    yield
    settings.restore()
