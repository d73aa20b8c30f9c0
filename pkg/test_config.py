"""
Test configuration loading
"""
import importlib
import os


def _reload_config():
    import qqcheck.config
    return importlib.reload(qqcheck.config).Config


def test_env_loading():
    """Test that environment variables are loaded correctly"""
    overrides = {'QQCHECK_REPS': '20000', 'QQCHECK_SEED': '7', 'QQCHECK_ALPHAS': '0.05, 0.1'}
    saved = {key: os.environ.get(key) for key in overrides}
    os.environ.update(overrides)
    try:
        config = _reload_config()()
        print("\nChecking qqcheck configuration:")
        print(f"Replications: {config.DEFAULT_REPS}")
        print(f"Seed: {config.DEFAULT_SEED}")
        print(f"Alphas: {config.DEFAULT_ALPHAS}")
        assert config.DEFAULT_REPS == 20000
        assert config.DEFAULT_SEED == 7
        assert config.DEFAULT_ALPHAS == (0.05, 0.1)
        assert config.MIN_REPS <= config.DEFAULT_REPS <= config.FULL_REPS
    finally:
        for key, value in saved.items():
            if value is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = value
        _reload_config()


if __name__ == "__main__":
    print("Testing configuration loading...")
    try:
        test_env_loading()
        success = True
    except AssertionError as e:
        print(f"\nError loading configuration: {e}")
        success = False
    print(f"\nConfiguration test {'passed' if success else 'failed'}")
