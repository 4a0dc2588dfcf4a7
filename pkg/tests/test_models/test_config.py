import pathlib

import pytest
from pydantic import ValidationError

from quantum_clifford.models.config import CACHE_DIR_ENV, RunConfig, default_cache_dir
from quantum_clifford.utils.helpers import content_hash


@pytest.fixture
def config_data():
    return {"root_type": "A", "rank": 2, "node": 1, "weight": (1, 0), "cache_dir": None}


class TestRunConfig:
    def test_create_valid_config(self, config_data):
        """Test creating a valid config with defaults filled in."""
        config = RunConfig(**config_data)
        assert config.root_type == "A"
        assert config.weight == (1, 0)
        assert config.degree == 4
        assert config.probe_degree == 2
        assert config.star_preset == "standard"
        assert config.output_format == "json"

    def test_root_type_is_normalized(self, config_data):
        """Test that the Cartan letter is upper-cased."""
        config_data["root_type"] = " c "
        assert RunConfig(**config_data).root_type == "C"

    @pytest.mark.parametrize(
        "root_type, rank",
        [("H", 3), ("AB", 2), ("E", 5), ("G", 3), ("F", 5), ("B", 1), ("D", 3)],
    )
    def test_invalid_root_datum(self, root_type, rank):
        """Test that pairs outside the classification are rejected."""
        with pytest.raises(ValidationError):
            RunConfig(root_type=root_type, rank=rank, cache_dir=None)

    def test_node_exceeds_rank(self, config_data):
        """Test that the node is bounded by the rank."""
        config_data["node"] = 3
        with pytest.raises(ValidationError, match="exceeds rank"):
            RunConfig(**config_data)

    def test_node_is_one_based(self, config_data):
        """Test that node 0 is rejected."""
        config_data["node"] = 0
        with pytest.raises(ValidationError):
            RunConfig(**config_data)

    @pytest.mark.parametrize("weight", [(1,), (1, 0, 0), (1, -1)])
    def test_invalid_weight(self, config_data, weight):
        """Test that the weight must be dominant with one coordinate per node."""
        config_data["weight"] = weight
        with pytest.raises(ValidationError):
            RunConfig(**config_data)

    def test_q_values_must_be_positive(self, config_data):
        """Test that numeric sweeps only accept q > 0."""
        config_data["q_values"] = (2.0, -1.0)
        with pytest.raises(ValidationError, match="positive"):
            RunConfig(**config_data)

    def test_config_is_frozen(self, config_data):
        """Test that a validated config cannot be mutated."""
        config = RunConfig(**config_data)
        with pytest.raises(ValidationError):
            config.rank = 3

    def test_str(self, config_data):
        """Test the short description used in log lines."""
        assert str(RunConfig(**config_data)) == "RunConfig(A2, s=1, weight=1,0)"
        assert str(RunConfig(root_type="G", rank=2, cache_dir=None)) == "RunConfig(G2)"


class TestFromCliOptions:
    def test_weight_string_is_parsed(self):
        """Test that "1, 0" becomes the tuple (1, 0)."""
        config = RunConfig.from_cli_options("a", 2, weight="1, 0", no_cache=True)
        assert config.root_type == "A"
        assert config.weight == (1, 0)
        assert config.cache_dir is None

    def test_malformed_weight(self):
        """Test that a non-numeric weight raises a validation error."""
        with pytest.raises(ValidationError):
            RunConfig.from_cli_options("A", 2, weight="1,x", no_cache=True)

    def test_explicit_cache_dir(self, tmp_path):
        """Test that --cache-dir overrides the default location."""
        config = RunConfig.from_cli_options("A", 1, cache_dir=str(tmp_path))
        assert config.cache_dir == tmp_path

    def test_q0_values_and_options(self):
        """Test that repeated --q0 values and remaining options pass through."""
        config = RunConfig.from_cli_options(
            "A", 2, node=1, q0=(0.5, 3.0), degree=6, star_preset="rescaled", no_cache=True
        )
        assert config.q_values == (0.5, 3.0)
        assert config.degree == 6
        assert config.star_preset == "rescaled"

    def test_default_cache_dir_env_override(self, monkeypatch, tmp_path):
        """Test that the environment variable moves the cache."""
        monkeypatch.setenv(CACHE_DIR_ENV, str(tmp_path))
        assert default_cache_dir() == tmp_path
        monkeypatch.delenv(CACHE_DIR_ENV)
        assert default_cache_dir() == pathlib.Path.home() / ".cache" / "quantum-clifford"


class TestContentHash:
    def test_hash_is_deterministic(self, config_data):
        """Test that equal configs hash equally."""
        assert RunConfig(**config_data).content_hash() == RunConfig(**config_data).content_hash()

    def test_hash_ignores_presentation(self, config_data, tmp_path):
        """Test that the output format and cache location do not change the key."""
        first = RunConfig(**config_data)
        second = RunConfig(**{**config_data, "output_format": "csv", "cache_dir": tmp_path})
        assert first.content_hash() == second.content_hash()

    def test_hash_tracks_inputs(self, config_data):
        """Test that a different weight or degree gives a different key."""
        base = RunConfig(**config_data).content_hash()
        assert RunConfig(**{**config_data, "weight": (0, 1)}).content_hash() != base
        assert RunConfig(**{**config_data, "degree": 5}).content_hash() != base

    def test_hash_is_the_shared_cache_key(self, config_data):
        """Test that the config key is the content hash of its result-determining fields."""
        config = RunConfig(**config_data)
        payload = config.model_dump(mode="json", exclude={"cache_dir", "output_format"})
        assert config.content_hash() == content_hash(payload)
