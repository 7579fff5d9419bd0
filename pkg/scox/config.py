"""
Configuration management using Pydantic settings

Search bounds are read here once; scox.bounds turns them into the
SearchBounds objects the services take.
"""
from pydantic import Field
from pydantic_settings import BaseSettings
from typing import Optional, List

class Settings(BaseSettings):
    """Application settings"""

    # ============================================================================
    # APP SETTINGS
    # ============================================================================
    APP_NAME: str = "scox"
    APP_VERSION: str = "0.1.0"
    ENVIRONMENT: str = "development"  # development, production
    DEBUG: bool = False

    # ============================================================================
    # SEARCH BOUNDS (exceeding one exits with status 2)
    # ============================================================================
    SCOX_MAX_VERTICES: int = Field(1_000_000, gt=0)       # rex sets, rex-graph BFS, complexes
    SCOX_ENUMERATION_BOUND: int = Field(1_000_000, gt=0)  # group and coset element enumeration
    SCOX_MAX_ROTATION_STEPS: int = Field(512, gt=0)       # delta search of a rotation sequence
    SCOX_MAX_WEB_LAYERS: int = Field(24, gt=0)            # web enumeration depth

    # ============================================================================
    # CONCURRENCY
    # ============================================================================
    SCOX_THREADS: int = Field(1, ge=1)  # matsumoto_verify workers

    # ============================================================================
    # API
    # ============================================================================
    API_HOST: str = "0.0.0.0"
    API_PORT: int = 8000
    CORS_ORIGINS: List[str] = ["*"]
    CORS_ALLOW_CREDENTIALS: bool = True
    CORS_ALLOW_METHODS: List[str] = ["*"]
    CORS_ALLOW_HEADERS: List[str] = ["*"]

    # ============================================================================
    # LOGGING & MONITORING
    # ============================================================================
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[str] = None    # JSON lines; stderr only when unset
    ENABLE_METRICS: bool = True

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"

    @property
    def is_production(self) -> bool:
        return self.ENVIRONMENT.lower() == "production"

    @property
    def is_development(self) -> bool:
        return self.ENVIRONMENT.lower() == "development"

settings = Settings()
