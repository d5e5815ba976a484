from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    PROJECT_NAME: str = "bottleneck"
    LOG_LEVEL: str = "WARNING"
    DEFAULT_SEED: int = 0
    # 0 selects default_k(n) at solve time
    DEFAULT_K: int = 0
    # 0 selects the automatic cap (restricted edge count + 2)
    DEPTH_LIMIT: int = 0
    COUNTERS_ENABLED: bool = True
    PATH_ORACLE_MAX_NODES: int = 10
    CHECK_RANDOM_NODES: int = 8

    model_config = SettingsConfigDict(
        case_sensitive=True,
        env_prefix="BOTTLENECK_",
        env_file=".env",
        extra="ignore",
    )


settings = Settings()
if settings.PROJECT_NAME:
    settings.PROJECT_NAME = settings.PROJECT_NAME.strip()
if settings.LOG_LEVEL:
    settings.LOG_LEVEL = settings.LOG_LEVEL.strip().upper()
