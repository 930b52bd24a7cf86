from contextlib import contextmanager
from sys import stderr

from loguru import logger

from core.config.settings import settings
from core.objects.pool import executor


class Lifespan:

    @staticmethod
    def __on_startup():
        executor.start()

        logger.remove()

        logger.add(
            stderr, level=settings.logs.level,
            backtrace=True, diagnose=True
        )

        if settings.logs.directory is not None:
            settings.logs.directory.mkdir(parents=True, exist_ok=True)

            logger.add(
                settings.logs.directory / 'info.log', level='INFO',
                backtrace=True, diagnose=True, enqueue=True,
                compression='tar.xz', retention='10 days', rotation='100 MB'
            )

            logger.add(
                settings.logs.directory / 'debug.log', level='DEBUG',
                backtrace=True, diagnose=True, enqueue=True,
                compression='tar.xz', retention='10 days', rotation='100 MB'
            )

        logger.debug(f'widthforge {settings.version} запущен')

    @staticmethod
    def __on_shutdown():
        executor.shutdown()

        logger.debug('widthforge остановлен')

    @classmethod
    @contextmanager
    def run(cls):
        cls.__on_startup()

        try:
            yield
        finally:
            cls.__on_shutdown()
