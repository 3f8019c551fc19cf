"""
Test configuration and fixtures for renorm-lab
"""

import copy
import json

# Add src to path for imports
import sys
from pathlib import Path
from typing import Any, Dict
from unittest.mock import Mock

import pytest

sys.path.append(str(Path(__file__).parent.parent / "src"))

from matcore import Matrix  # noqa: E402
from sequences import MatrixSequence, SymbolStream  # noqa: E402
from utils.config_manager import DEFAULT_CONFIG, ConfigManager  # noqa: E402

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(autouse=True, scope="session")
def _log_directory(tmp_path_factory):
    """Keep log files of the whole session out of the working tree"""
    patcher = pytest.MonkeyPatch()
    patcher.setenv("RENORM_LOG_DIR", str(tmp_path_factory.mktemp("logs")))
    yield
    patcher.undo()


@pytest.fixture
def nilpotent_pair():
    """The horocycle generators [[0,1],[0,0]] and [[0,0],[1,0]]"""
    return Matrix.from_rows([[0, 1], [0, 0]]), Matrix.from_rows([[0, 0], [1, 0]])


@pytest.fixture
def alternating_sequence(nilpotent_pair) -> MatrixSequence:
    """Periodic stream 1, 2, 1, 2, ... over the horocycle generators"""
    A1, A2 = nilpotent_pair
    return MatrixSequence.from_stream(SymbolStream.periodic([1, 2]), {1: A1, 2: A2})


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def golden_symbols(data_dir):
    """First 16 symbols of Bernoulli(0.5, 0.5) with seed 42"""
    lines = (data_dir / "bernoulli_seed42.txt").read_text(encoding="utf-8").split()
    return [int(line) for line in lines]


@pytest.fixture
def sample_config(tmp_path) -> Dict[str, Any]:
    """Default configuration writing into a temporary directory"""
    config = copy.deepcopy(DEFAULT_CONFIG)
    config["output"]["directory"] = str(tmp_path / "results")
    config["logging"]["directory"] = str(tmp_path / "logs")
    config["parameters"]["n_grid"] = [100, 1000]
    return config


@pytest.fixture
def temp_config_file(sample_config, tmp_path) -> Path:
    """Create a temporary config file for testing"""
    path = tmp_path / "config.json"
    path.write_text(json.dumps(sample_config, indent=2), encoding="utf-8")
    return path


@pytest.fixture
def config_manager(temp_config_file) -> ConfigManager:
    return ConfigManager(temp_config_file)


@pytest.fixture
def mock_config_manager(sample_config):
    """Mock ConfigManager for testing"""
    mock = Mock(spec=ConfigManager)
    mock.get_config.return_value = sample_config
    mock.get_section.side_effect = lambda section: sample_config.get(section, {})
    return mock
