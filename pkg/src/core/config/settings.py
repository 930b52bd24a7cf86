from core.schemes.settings import Settings

settings = Settings()
