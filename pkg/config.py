"""
PCMAS Configuration Management
Handles environment variables and application settings
"""
import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()


@dataclass
class Config:
    """Application configuration class"""

    # Service Configuration
    FLASK_ENV: str = os.getenv('FLASK_ENV', 'development')
    SECRET_KEY: str = os.getenv('SECRET_KEY', 'dev-key-change-in-production')
    API_HOST: str = os.getenv('API_HOST', '127.0.0.1')
    API_PORT: int = int(os.getenv('API_PORT', '5001'))

    # Logging
    LOG_LEVEL: str = os.getenv('LOG_LEVEL', 'INFO')
    LOG_DIR: str = os.getenv('LOG_DIR', 'logs')

    # Experiment harness
    PCMAS_THREADS: int = int(os.getenv('PCMAS_THREADS', '1'))
    PCMAS_SEED: int = int(os.getenv('PCMAS_SEED', '1996'))
    POLICY_DIR: str = os.getenv('POLICY_DIR', 'policies')
    RESULTS_DIR: str = os.getenv('RESULTS_DIR', 'results')
    POLICY_PATH: str = os.getenv('POLICY_PATH', '')

    # Teacher MDP defaults
    TMDP_CELLS: int = int(os.getenv('TMDP_CELLS', '200'))
    TMDP_GAMMA0: float = float(os.getenv('TMDP_GAMMA0', '0.99'))
    TMDP_TOL: float = float(os.getenv('TMDP_TOL', '1e-6'))

    # Learner defaults
    LEARNING_RATE: float = float(os.getenv('LEARNING_RATE', '0.1'))
    STUDENT_DISCOUNT: float = float(os.getenv('STUDENT_DISCOUNT', '0.9'))

    # Punishment design
    MAL_VS_MAL_PAYOFF: float = float(os.getenv('MAL_VS_MAL_PAYOFF', '0.0'))

    # API input limits
    MAX_GAME_ACTIONS: int = int(os.getenv('MAX_GAME_ACTIONS', '64'))
    MAX_POPULATION: int = int(os.getenv('MAX_POPULATION', '100000'))

    @property
    def is_development(self) -> bool:
        """Check if running in development mode"""
        return self.FLASK_ENV == 'development'

    @property
    def is_production(self) -> bool:
        """Check if running in production mode"""
        return self.FLASK_ENV == 'production'

    def validate(self) -> list[str]:
        """Validate configuration and return list of errors"""
        errors = []

        if self.PCMAS_THREADS < 1:
            errors.append(f"PCMAS_THREADS must be at least 1, got {self.PCMAS_THREADS}")

        if not 0.0 <= self.TMDP_GAMMA0 < 1.0:
            errors.append(f"TMDP_GAMMA0 must lie in [0, 1), got {self.TMDP_GAMMA0}")

        if self.TMDP_CELLS < 2:
            errors.append(f"TMDP_CELLS must be at least 2, got {self.TMDP_CELLS}")

        if self.TMDP_TOL <= 0:
            errors.append(f"TMDP_TOL must be positive, got {self.TMDP_TOL}")

        if not 0.0 <= self.LEARNING_RATE <= 1.0:
            errors.append(f"LEARNING_RATE must lie in [0, 1], got {self.LEARNING_RATE}")

        if not 0.0 <= self.STUDENT_DISCOUNT < 1.0:
            errors.append(f"STUDENT_DISCOUNT must lie in [0, 1), got {self.STUDENT_DISCOUNT}")

        if self.is_production:
            if self.SECRET_KEY == 'dev-key-change-in-production':
                errors.append("SECRET_KEY must be changed in production")

            if not os.path.isdir(self.POLICY_DIR):
                errors.append(f"Policy directory not found: {self.POLICY_DIR}")

        return errors


# Global configuration instance
config = Config()
