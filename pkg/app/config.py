import os
from dotenv import load_dotenv

load_dotenv()

class Settings:
    PROJECT_NAME: str = "Classical Limits Verifier"
    PROJECT_VERSION: str = "1.0.0"

    # Worker pool and windows
    VERIFY_JOBS = int(os.getenv("VERIFY_JOBS", 1))
    VERIFY_WINDOW = int(os.getenv("VERIFY_WINDOW", 3))

    # Randomized mode
    VERIFY_RANDOM_POINTS = int(os.getenv("VERIFY_RANDOM_POINTS", 3))
    VERIFY_RANDOM_RETRIES = int(os.getenv("VERIFY_RANDOM_RETRIES", 16))
    VERIFY_RANDOM_BOUND = int(os.getenv("VERIFY_RANDOM_BOUND", 999))

    # Reports
    VERIFY_MAX_FAILURES = int(os.getenv("VERIFY_MAX_FAILURES", 10))

    # Number of symbolic a-parameters carried by the coefficient field
    VERIFY_SYMBOLIC_A = int(os.getenv("VERIFY_SYMBOLIC_A", 6))

    LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()

settings = Settings()
