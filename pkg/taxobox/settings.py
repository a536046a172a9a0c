from pathlib import Path
import environ

env = environ.Env(
    DEBUG=(bool, False),
    TAXO_STORE=(str, None),
    TAXO_LOCK_TIMEOUT=(float, 5.0),
    TAXO_LOCK_POLL=(float, 0.05),
    TAXO_LOG_LEVEL=(str, "WARNING"),
    TAXO_MINT_ATTEMPTS=(int, 64),
    TAXO_INDEX_INTERVAL=(int, 64),
)
environ.Env.read_env()

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = env("SECRET_KEY", default="taxobox-local-only")
DEBUG = env("DEBUG")
ALLOWED_HOSTS = []

INSTALLED_APPS = [
    "core",
    "taxonomy",
    "classification",
    "codec",
    "analysis",
    "registry",
    "render",
]

# No database: every store in this project is file-backed.
DATABASES = {}

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

# ===== Registry =====
TAXO_STORE = env("TAXO_STORE")
TAXO_LOCK_TIMEOUT = env("TAXO_LOCK_TIMEOUT")
TAXO_LOCK_POLL = env("TAXO_LOCK_POLL")
TAXO_MINT_ATTEMPTS = env("TAXO_MINT_ATTEMPTS")
TAXO_INDEX_INTERVAL = env("TAXO_INDEX_INTERVAL")

# ===== Logging =====
TAXO_LOG_LEVEL = env("TAXO_LOG_LEVEL").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {"format": "{levelname} {name}: {message}", "style": "{"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "verbose",
        },
    },
    "loggers": {
        app: {"handlers": ["console"], "level": TAXO_LOG_LEVEL, "propagate": False}
        for app in INSTALLED_APPS
    },
}
