from pydantic_settings import BaseSettings

class Settings(BaseSettings):
    # Enumeration settings
    enum_bound: int = 100_000
    root_candidate_cap: int = 100_000

    # Torsion / isogeny settings
    max_division_l: int = 13
    isogeny_combination_cap: int = 5000
    hensel_extra_precision: int = 2

    # Runtime settings
    max_workers: int = 1
    log_level: str = "WARNING"

    class Config:
        env_file = ".env"
        env_prefix = "VCHOW_"
        extra = "ignore"  # Ignore extra fields

settings = Settings()
