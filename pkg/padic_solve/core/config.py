from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Scan Configuration
    ceiling: int = 10**7
    window_ceiling: int = 2**62
    periodicity_samples: int = 50

    # Service Configuration
    service_name: str = "padic-solve"
    version: str = "1.0.0"
    log_level: str = "WARNING"

    # Performance Configuration
    max_instances: int = 10**5
    scan_workers: int = 2
    scan_chunk_size: int = 4096

    model_config = SettingsConfigDict(env_prefix="PADIC_SOLVE_", env_file=".env", extra="ignore")


settings = Settings()
